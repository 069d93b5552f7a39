#pragma once

#include "dissim/image.hpp"

namespace dissim {

enum class WindowKind { gaussian, uniform };

/// valid_only shrinks the output grid by size-1 per axis; symmetric_pad
/// keeps the full grid using mirror-reflected borders.
enum class BorderMode { valid_only, symmetric_pad };

/// Sliding-window definition. size must be odd so the window has a
/// center pixel; sigma applies to gaussian windows only.
struct WindowSpec {
    WindowKind kind = WindowKind::gaussian;
    int size = 11;
    double sigma = 1.5;
    BorderMode border = BorderMode::valid_only;
};

/// size x size weight grid, row-major, nonnegative, summing to 1.
struct Kernel {
    int size = 0;
    std::vector<double> weights;
};

/// Per-pixel local statistics of an image pair: means, population
/// variances and covariance under the window weights.
struct StatsField {
    int width = 0;
    int height = 0;
    std::vector<double> mu1, mu2, var1, var2, cov;
};

/// Per-pixel local statistics of the sum and difference images.
struct SymStatsField {
    int width = 0;
    int height = 0;
    std::vector<double> mu_plus, mu_minus, var_plus, var_minus;
};

/// Max absolute residuals of the six algebraic identities linking the
/// two parameterizations, taken over all pixels.
struct IdentityResiduals {
    double mu_plus = 0;        // mu+ = mu2 + mu1
    double mu_minus = 0;       // mu- = mu2 - mu1
    double cov_quad = 0;       // 4*sigma12 = var+ - var-
    double var_sum = 0;        // 2*(var1 + var2) = var+ + var-
    double mu_product = 0;     // 4*mu1*mu2 = mu+^2 - mu-^2
    double mu_square_sum = 0;  // 2*(mu1^2 + mu2^2) = mu+^2 + mu-^2

    double max() const;
};

Kernel make_kernel(const WindowSpec& spec);

/// The 1-D factor of the (separable) window, normalized to sum 1.
std::vector<double> kernel_1d(const WindowSpec& spec);

/// Windowed weighted mean of a single image under spec.
Image local_mean(const Image& img, const WindowSpec& spec);

/// Weighted local mu1, mu2, var1, var2, cov of the pair. Weights sum to
/// 1 (population variance, no Bessel correction); tiny negative variance
/// residue from rounding is clamped to 0.
StatsField local_stats(const Image& f1, const Image& f2, const WindowSpec& spec);

/// Local statistics of the sum and difference images f2+f1, f2-f1 under
/// the same window and border policy.
SymStatsField sym_stats(const Image& f1, const Image& f2, const WindowSpec& spec);

IdentityResiduals identity_breakdown(const StatsField& s, const SymStatsField& y);

/// Max absolute residual over all pixels and all six identities.
double identity_residuals(const StatsField& s, const SymStatsField& y);

}  // namespace dissim
