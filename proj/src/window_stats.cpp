#include "dissim/window_stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dissim {

namespace {

void check_spec(const WindowSpec& spec) {
    if (spec.size <= 0 || spec.size % 2 == 0) {
        std::ostringstream msg;
        msg << "window size must be odd and positive, got " << spec.size;
        throw std::invalid_argument(msg.str());
    }
    if (spec.kind == WindowKind::gaussian && !(spec.sigma > 0)) {
        throw std::invalid_argument("gaussian window requires sigma > 0");
    }
}

void check_fits(const Image& img, const WindowSpec& spec) {
    if (spec.border == BorderMode::valid_only &&
        (img.width < spec.size || img.height < spec.size)) {
        std::ostringstream msg;
        msg << "window " << spec.size << "x" << spec.size << " does not fit a " << img.width
            << "x" << img.height << " image under valid_only";
        throw std::invalid_argument(msg.str());
    }
}

// Symmetric (edge-repeating) mirror index with period 2n, valid for any i.
int mirror_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

struct Plane {
    int width = 0;
    int height = 0;
    std::vector<double> values;
};

// Horizontal then vertical weighted sums; summation order inside each
// window is fixed, so results are deterministic.
Plane conv_rows(const Plane& in, const std::vector<double>& w, BorderMode border) {
    const int size = static_cast<int>(w.size());
    const int radius = size / 2;
    Plane out;
    out.height = in.height;
    out.width = border == BorderMode::valid_only ? in.width - size + 1 : in.width;
    out.values.resize(static_cast<size_t>(out.width) * out.height);
    for (int y = 0; y < in.height; ++y) {
        const double* row = &in.values[static_cast<size_t>(y) * in.width];
        double* orow = &out.values[static_cast<size_t>(y) * out.width];
        if (border == BorderMode::valid_only) {
            for (int x = 0; x < out.width; ++x) {
                double acc = 0;
                for (int k = 0; k < size; ++k) acc += w[k] * row[x + k];
                orow[x] = acc;
            }
        } else {
            for (int x = 0; x < out.width; ++x) {
                double acc = 0;
                for (int k = 0; k < size; ++k) {
                    acc += w[k] * row[mirror_index(x + k - radius, in.width)];
                }
                orow[x] = acc;
            }
        }
    }
    return out;
}

Plane conv_cols(const Plane& in, const std::vector<double>& w, BorderMode border) {
    const int size = static_cast<int>(w.size());
    const int radius = size / 2;
    Plane out;
    out.width = in.width;
    out.height = border == BorderMode::valid_only ? in.height - size + 1 : in.height;
    out.values.resize(static_cast<size_t>(out.width) * out.height);
    for (int y = 0; y < out.height; ++y) {
        double* orow = &out.values[static_cast<size_t>(y) * out.width];
        for (int x = 0; x < out.width; ++x) {
            double acc = 0;
            if (border == BorderMode::valid_only) {
                for (int k = 0; k < size; ++k) {
                    acc += w[k] * in.values[static_cast<size_t>(y + k) * in.width + x];
                }
            } else {
                for (int k = 0; k < size; ++k) {
                    const int yy = mirror_index(y + k - radius, in.height);
                    acc += w[k] * in.values[static_cast<size_t>(yy) * in.width + x];
                }
            }
            orow[x] = acc;
        }
    }
    return out;
}

Plane smooth(const std::vector<double>& values, int width, int height,
             const std::vector<double>& w1d, BorderMode border) {
    Plane p{width, height, values};
    return conv_cols(conv_rows(p, w1d, border), w1d, border);
}

std::vector<double> pointwise_product(const std::vector<double>& a,
                                      const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

}  // namespace

double IdentityResiduals::max() const {
    return std::max({mu_plus, mu_minus, cov_quad, var_sum, mu_product, mu_square_sum});
}

std::vector<double> kernel_1d(const WindowSpec& spec) {
    check_spec(spec);
    std::vector<double> w(static_cast<size_t>(spec.size));
    if (spec.kind == WindowKind::uniform) {
        std::fill(w.begin(), w.end(), 1.0 / spec.size);
        return w;
    }
    const int radius = spec.size / 2;
    double sum = 0;
    for (int i = 0; i < spec.size; ++i) {
        const double d = i - radius;
        w[i] = std::exp(-(d * d) / (2.0 * spec.sigma * spec.sigma));
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
}

Kernel make_kernel(const WindowSpec& spec) {
    const std::vector<double> w1d = kernel_1d(spec);
    Kernel k;
    k.size = spec.size;
    k.weights.resize(static_cast<size_t>(spec.size) * spec.size);
    for (int j = 0; j < spec.size; ++j) {
        for (int i = 0; i < spec.size; ++i) {
            k.weights[static_cast<size_t>(j) * spec.size + i] = w1d[j] * w1d[i];
        }
    }
    return k;
}

Image local_mean(const Image& img, const WindowSpec& spec) {
    check_spec(spec);
    check_fits(img, spec);
    Plane m = smooth(img.values, img.width, img.height, kernel_1d(spec), spec.border);
    return Image(m.width, m.height, std::move(m.values), img.range_hint);
}

StatsField local_stats(const Image& f1, const Image& f2, const WindowSpec& spec) {
    if (!f1.same_size(f2)) throw std::invalid_argument("local_stats requires equal dimensions");
    check_spec(spec);
    check_fits(f1, spec);
    const std::vector<double> w1d = kernel_1d(spec);
    const int w = f1.width, h = f1.height;

    Plane m1 = smooth(f1.values, w, h, w1d, spec.border);
    Plane m2 = smooth(f2.values, w, h, w1d, spec.border);
    Plane m11 = smooth(pointwise_product(f1.values, f1.values), w, h, w1d, spec.border);
    Plane m22 = smooth(pointwise_product(f2.values, f2.values), w, h, w1d, spec.border);
    Plane m12 = smooth(pointwise_product(f1.values, f2.values), w, h, w1d, spec.border);

    StatsField out;
    out.width = m1.width;
    out.height = m1.height;
    const size_t n = m1.values.size();
    out.mu1 = std::move(m1.values);
    out.mu2 = std::move(m2.values);
    out.var1.resize(n);
    out.var2.resize(n);
    out.cov.resize(n);
    for (size_t i = 0; i < n; ++i) {
        out.var1[i] = std::max(0.0, m11.values[i] - out.mu1[i] * out.mu1[i]);
        out.var2[i] = std::max(0.0, m22.values[i] - out.mu2[i] * out.mu2[i]);
        out.cov[i] = m12.values[i] - out.mu1[i] * out.mu2[i];
    }
    return out;
}

SymStatsField sym_stats(const Image& f1, const Image& f2, const WindowSpec& spec) {
    if (!f1.same_size(f2)) throw std::invalid_argument("sym_stats requires equal dimensions");
    check_spec(spec);
    check_fits(f1, spec);
    const auto [plus, minus] = sum_diff(f1, f2);
    const std::vector<double> w1d = kernel_1d(spec);
    const int w = f1.width, h = f1.height;

    Plane mp = smooth(plus.values, w, h, w1d, spec.border);
    Plane mm = smooth(minus.values, w, h, w1d, spec.border);
    Plane mpp = smooth(pointwise_product(plus.values, plus.values), w, h, w1d, spec.border);
    Plane mmm = smooth(pointwise_product(minus.values, minus.values), w, h, w1d, spec.border);

    SymStatsField out;
    out.width = mp.width;
    out.height = mp.height;
    const size_t n = mp.values.size();
    out.mu_plus = std::move(mp.values);
    out.mu_minus = std::move(mm.values);
    out.var_plus.resize(n);
    out.var_minus.resize(n);
    for (size_t i = 0; i < n; ++i) {
        out.var_plus[i] = std::max(0.0, mpp.values[i] - out.mu_plus[i] * out.mu_plus[i]);
        out.var_minus[i] = std::max(0.0, mmm.values[i] - out.mu_minus[i] * out.mu_minus[i]);
    }
    return out;
}

IdentityResiduals identity_breakdown(const StatsField& s, const SymStatsField& y) {
    if (s.width != y.width || s.height != y.height) {
        throw std::invalid_argument("stats grids do not match");
    }
    IdentityResiduals r;
    const size_t n = s.mu1.size();
    for (size_t i = 0; i < n; ++i) {
        const double mp = y.mu_plus[i], mm = y.mu_minus[i];
        const double vp = y.var_plus[i], vm = y.var_minus[i];
        r.mu_plus = std::max(r.mu_plus, std::abs(mp - (s.mu2[i] + s.mu1[i])));
        r.mu_minus = std::max(r.mu_minus, std::abs(mm - (s.mu2[i] - s.mu1[i])));
        r.cov_quad = std::max(r.cov_quad, std::abs(4.0 * s.cov[i] - (vp - vm)));
        r.var_sum =
            std::max(r.var_sum, std::abs(2.0 * (s.var1[i] + s.var2[i]) - (vp + vm)));
        r.mu_product =
            std::max(r.mu_product, std::abs(4.0 * s.mu1[i] * s.mu2[i] - (mp * mp - mm * mm)));
        r.mu_square_sum =
            std::max(r.mu_square_sum, std::abs(2.0 * (s.mu1[i] * s.mu1[i] + s.mu2[i] * s.mu2[i]) -
                                               (mp * mp + mm * mm)));
    }
    return r;
}

double identity_residuals(const StatsField& s, const SymStatsField& y) {
    return identity_breakdown(s, y).max();
}

}  // namespace dissim
