#pragma once

#include <string>

#include "dissim/image.hpp"
#include "dissim/window_stats.hpp"

namespace dissim {

/// regularized uses C1 = (k1*L)^2, C2 = (k2*L)^2; exact_zero sets both
/// constants to 0, exposing the raw ratios.
enum class EpsilonMode { regularized, exact_zero };

struct MetricParams {
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;  // L; 1.0 for normalized images
    EpsilonMode mode = EpsilonMode::regularized;

    double c1() const;
    double c2() const;
    double c3() const;  // C2 / 2
};

/// Per-pixel metric field plus metadata. In exact_zero mode, pixels with
/// an undefined 0/0 ratio are NaN (or the documented limit value for the
/// symmetric forms) and counted in degenerate_count.
struct MetricMap {
    std::string name;
    MetricParams params;
    int width = 0;
    int height = 0;
    std::vector<double> values;
    double range_lo = 0.0;  // documented value interval
    double range_hi = 1.0;
    int degenerate_count = 0;
};

/// Classic three-factor SSIM: luminance * contrast * structure, with
/// C3 = C2/2 so the product collapses to the two-term form.
MetricMap ssim_three_term(const StatsField& s, const MetricParams& p);

/// Two-term SSIM: [(2*mu1*mu2+C1)/(mu1^2+mu2^2+C1)] *
/// [(2*cov+C2)/(var1+var2+C2)].
MetricMap ssim_two_term(const StatsField& s, const MetricParams& p);

/// Covariance-free variance-contrast index
/// S_V = (var+ - var- + 2*C2)/(var+ + var- + 2*C2); the 2*C2 offset
/// makes it equal the two-term variance factor computed from StatsField.
/// The fully degenerate window (var+ = var- = 0, exact_zero) is 1.
MetricMap sv_map(const SymStatsField& y, const MetricParams& p);

/// Luminance-contrast index (mu+^2 - mu-^2 + 2*C1)/(mu+^2 + mu-^2 + 2*C1).
MetricMap sl_map(const SymStatsField& y, const MetricParams& p);

/// Normalized dissimilarity 1 - S_V = 2*var- / (var+ + var- + 2*C2).
MetricMap dissimilarity_map(const SymStatsField& y, const MetricParams& p);

/// Dissimilarity Quotient D = sigma- / sqrt(var+ + var- + 2*C2), in
/// [0, 1]. The fully degenerate window (exact_zero, var+ = var- = 0) is
/// defined as 0: identical constants show no visible difference.
MetricMap dq_map(const SymStatsField& y, const MetricParams& p);

/// Global normalized RMS error ||f2 - f1|| / ||f1|| (reference-norm
/// convention). Throws if the reference has zero norm.
double nrmse(const Image& f1, const Image& f2);

struct MseCheckResult {
    /// max |var- - windowed_mean((f2-f1)^2)| over windows with
    /// |mu-| < 1e-12; 0 when no such window exists.
    double zero_mean_residual = 0;
    /// max |var- + mu-^2 - windowed_mean((f2-f1)^2)| over all windows.
    double general_residual = 0;
    int zero_mean_windows = 0;
};

/// Checks that the difference variance is the windowed mean square error
/// up to the local mean: var- = MSE_w - mu-^2.
MseCheckResult mse_window_check(const SymStatsField& y, const Image& f1,
                                const Image& f2, const WindowSpec& spec);

}  // namespace dissim
