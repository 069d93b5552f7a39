#include "dissim/metrics.hpp"

#include <cmath>
#include <limits>

namespace dissim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MetricMap make_map(std::string name, const MetricParams& p, int w, int h, double lo,
                   double hi) {
    MetricMap m;
    m.name = std::move(name);
    m.params = p;
    m.width = w;
    m.height = h;
    m.values.resize(static_cast<size_t>(w) * h);
    m.range_lo = lo;
    m.range_hi = hi;
    return m;
}

}  // namespace

double MetricParams::c1() const {
    if (mode == EpsilonMode::exact_zero) return 0.0;
    const double c = k1 * dynamic_range;
    return c * c;
}

double MetricParams::c2() const {
    if (mode == EpsilonMode::exact_zero) return 0.0;
    const double c = k2 * dynamic_range;
    return c * c;
}

double MetricParams::c3() const { return c2() / 2.0; }

MetricMap ssim_three_term(const StatsField& s, const MetricParams& p) {
    MetricMap m = make_map("ssim_three_term", p, s.width, s.height, -1.0, 1.0);
    const double C1 = p.c1(), C2 = p.c2(), C3 = p.c3();
    for (size_t i = 0; i < m.values.size(); ++i) {
        const double s1 = std::sqrt(s.var1[i]);
        const double s2 = std::sqrt(s.var2[i]);
        const double den_l = s.mu1[i] * s.mu1[i] + s.mu2[i] * s.mu2[i] + C1;
        const double den_c = s.var1[i] + s.var2[i] + C2;
        const double den_s = s1 * s2 + C3;
        if (den_l == 0 || den_c == 0 || den_s == 0) {
            m.values[i] = kNaN;
            ++m.degenerate_count;
            continue;
        }
        const double lum = (2.0 * s.mu1[i] * s.mu2[i] + C1) / den_l;
        const double con = (2.0 * s1 * s2 + C2) / den_c;
        const double str = (s.cov[i] + C3) / den_s;
        m.values[i] = lum * con * str;
    }
    return m;
}

MetricMap ssim_two_term(const StatsField& s, const MetricParams& p) {
    MetricMap m = make_map("ssim", p, s.width, s.height, -1.0, 1.0);
    const double C1 = p.c1(), C2 = p.c2();
    for (size_t i = 0; i < m.values.size(); ++i) {
        const double den_l = s.mu1[i] * s.mu1[i] + s.mu2[i] * s.mu2[i] + C1;
        const double den_v = s.var1[i] + s.var2[i] + C2;
        if (den_l == 0 || den_v == 0) {
            m.values[i] = kNaN;
            ++m.degenerate_count;
            continue;
        }
        m.values[i] = ((2.0 * s.mu1[i] * s.mu2[i] + C1) / den_l) *
                      ((2.0 * s.cov[i] + C2) / den_v);
    }
    return m;
}

MetricMap sv_map(const SymStatsField& y, const MetricParams& p) {
    MetricMap m = make_map("s_v", p, y.width, y.height, -1.0, 1.0);
    const double twoC2 = 2.0 * p.c2();
    for (size_t i = 0; i < m.values.size(); ++i) {
        const double den = y.var_plus[i] + y.var_minus[i] + twoC2;
        if (den == 0) {
            // identical constant windows: no structure to disagree on
            m.values[i] = 1.0;
            ++m.degenerate_count;
            continue;
        }
        m.values[i] = (y.var_plus[i] - y.var_minus[i] + twoC2) / den;
    }
    return m;
}

MetricMap sl_map(const SymStatsField& y, const MetricParams& p) {
    MetricMap m = make_map("s_l", p, y.width, y.height, -1.0, 1.0);
    const double twoC1 = 2.0 * p.c1();
    for (size_t i = 0; i < m.values.size(); ++i) {
        const double mp2 = y.mu_plus[i] * y.mu_plus[i];
        const double mm2 = y.mu_minus[i] * y.mu_minus[i];
        const double den = mp2 + mm2 + twoC1;
        if (den == 0) {
            m.values[i] = kNaN;
            ++m.degenerate_count;
            continue;
        }
        m.values[i] = (mp2 - mm2 + twoC1) / den;
    }
    return m;
}

MetricMap dissimilarity_map(const SymStatsField& y, const MetricParams& p) {
    MetricMap m = make_map("dissimilarity", p, y.width, y.height, 0.0, 2.0);
    const double twoC2 = 2.0 * p.c2();
    for (size_t i = 0; i < m.values.size(); ++i) {
        const double den = y.var_plus[i] + y.var_minus[i] + twoC2;
        if (den == 0) {
            m.values[i] = 0.0;
            ++m.degenerate_count;
            continue;
        }
        m.values[i] = 2.0 * y.var_minus[i] / den;
    }
    return m;
}

MetricMap dq_map(const SymStatsField& y, const MetricParams& p) {
    MetricMap m = make_map("dq", p, y.width, y.height, 0.0, 1.0);
    const double twoC2 = 2.0 * p.c2();
    for (size_t i = 0; i < m.values.size(); ++i) {
        const double den = y.var_plus[i] + y.var_minus[i] + twoC2;
        if (den == 0) {
            m.values[i] = 0.0;  // both windows constant: nothing visible
            ++m.degenerate_count;
            continue;
        }
        m.values[i] = std::sqrt(y.var_minus[i]) / std::sqrt(den);
    }
    return m;
}

double nrmse(const Image& f1, const Image& f2) {
    if (!f1.same_size(f2)) throw std::invalid_argument("nrmse requires equal dimensions");
    double num = 0, den = 0;
    for (size_t i = 0; i < f1.pixel_count(); ++i) {
        const double d = f2.values[i] - f1.values[i];
        num += d * d;
        den += f1.values[i] * f1.values[i];
    }
    if (den == 0) throw std::invalid_argument("nrmse reference has zero norm");
    return std::sqrt(num) / std::sqrt(den);
}

MseCheckResult mse_window_check(const SymStatsField& y, const Image& f1, const Image& f2,
                                const WindowSpec& spec) {
    if (!f1.same_size(f2)) {
        throw std::invalid_argument("mse_window_check requires equal dimensions");
    }
    std::vector<double> sqdiff(f1.pixel_count());
    for (size_t i = 0; i < sqdiff.size(); ++i) {
        const double d = f2.values[i] - f1.values[i];
        sqdiff[i] = d * d;
    }
    const Image mse = local_mean(Image(f1.width, f1.height, std::move(sqdiff)), spec);
    if (mse.width != y.width || mse.height != y.height) {
        throw std::invalid_argument("stats field does not match the window spec");
    }
    MseCheckResult r;
    for (size_t i = 0; i < mse.pixel_count(); ++i) {
        const double mu = y.mu_minus[i];
        r.general_residual = std::max(
            r.general_residual, std::abs(y.var_minus[i] + mu * mu - mse.values[i]));
        if (std::abs(mu) < 1e-12) {
            ++r.zero_mean_windows;
            r.zero_mean_residual =
                std::max(r.zero_mean_residual, std::abs(y.var_minus[i] - mse.values[i]));
        }
    }
    return r;
}

}  // namespace dissim
