#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dissim/metrics.hpp"
#include "dissim/transforms.hpp"
#include "test_util.hpp"

using namespace dissim;

namespace {

Image ramp_x(int w, int h) {
    Image img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.at(x, y) = x;
    }
    return img;
}

// O(N^4) reference DFT used only to cross-check the FFT path.
std::vector<std::complex<double>> naive_dft2(const Image& img) {
    const int w = img.width, h = img.height;
    std::vector<std::complex<double>> out(img.pixel_count());
    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            std::complex<double> acc = 0;
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const double phase = -2.0 * std::numbers::pi *
                                         (static_cast<double>(u) * x / w +
                                          static_cast<double>(v) * y / h);
                    acc += img.at(x, y) * std::complex<double>(std::cos(phase), std::sin(phase));
                }
            }
            out[static_cast<size_t>(v) * w + u] = acc;
        }
    }
    return out;
}

std::pair<Image, Image> naive_riesz(const Image& img) {
    const int w = img.width, h = img.height;
    const auto spectrum = naive_dft2(img);
    Image r1(w, h), r2(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::complex<double> acc1 = 0, acc2 = 0;
            for (int kv = 0; kv < h; ++kv) {
                const bool nyq_v = h % 2 == 0 && kv == h / 2;
                const int v = kv < (h + 1) / 2 ? kv : kv - h;
                for (int ku = 0; ku < w; ++ku) {
                    const bool nyq_u = w % 2 == 0 && ku == w / 2;
                    const int u = ku < (w + 1) / 2 ? ku : ku - w;
                    if ((u == 0 && v == 0) || nyq_u || nyq_v) continue;
                    const double norm = std::sqrt(static_cast<double>(u) * u +
                                                  static_cast<double>(v) * v);
                    const std::complex<double> h1(0, -u / norm), h2(0, -v / norm);
                    const double phase = 2.0 * std::numbers::pi *
                                         (static_cast<double>(ku) * x / w +
                                          static_cast<double>(kv) * y / h);
                    const std::complex<double> e(std::cos(phase), std::sin(phase));
                    const std::complex<double> f = spectrum[static_cast<size_t>(kv) * w + ku];
                    acc1 += h1 * f * e;
                    acc2 += h2 * f * e;
                }
            }
            r1.at(x, y) = acc1.real() / (static_cast<double>(w) * h);
            r2.at(x, y) = acc2.real() / (static_cast<double>(w) * h);
        }
    }
    return {r1, r2};
}

}  // namespace

TEST_CASE("gradient magnitude") {
    SUBCASE("constant image is flat") {
        Image img(8, 8);
        for (double& v : img.values) v = 0.4;
        for (double v : gradient_magnitude(img).values) CHECK(v == 0.0);
    }
    SUBCASE("horizontal ramp has unit gradient") {
        const Image g = gradient_magnitude(ramp_x(9, 7));
        for (double v : g.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("diagonal ramp has gradient sqrt(2)") {
        Image img(9, 9);
        for (int y = 0; y < 9; ++y) {
            for (int x = 0; x < 9; ++x) img.at(x, y) = x + y;
        }
        const Image g = gradient_magnitude(img);
        for (int y = 1; y < 8; ++y) {
            for (int x = 1; x < 8; ++x) {
                CHECK(g.at(x, y) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
            }
        }
    }
    SUBCASE("too small") {
        CHECK_THROWS_AS(gradient_magnitude(Image(2, 5)), std::invalid_argument);
    }
}

TEST_CASE("laplacian") {
    SUBCASE("annihilates constants and ramps") {
        Image c(7, 7);
        for (double& v : c.values) v = 0.9;
        for (double v : laplacian(c).values) CHECK(v == 0.0);
        for (double v : laplacian(ramp_x(7, 7)).values) CHECK(v == 0.0);
    }
    SUBCASE("quadratic has curvature 2") {
        Image img(9, 9);
        for (int y = 0; y < 9; ++y) {
            for (int x = 0; x < 9; ++x) img.at(x, y) = static_cast<double>(x) * x;
        }
        const Image l = laplacian(img);
        for (int y = 1; y < 8; ++y) {
            for (int x = 1; x < 8; ++x) CHECK(l.at(x, y) == doctest::Approx(2.0).epsilon(1e-13));
        }
        for (int x = 0; x < 9; ++x) CHECK(l.at(x, 0) == 0.0);  // border
    }
    SUBCASE("too small") { CHECK_THROWS_AS(laplacian(Image(5, 2)), std::invalid_argument); }
}

TEST_CASE("riesz multipliers have unit modulus off DC") {
    CHECK(riesz_multiplier(0, 0).h1 == std::complex<double>(0, 0));
    for (int u = -8; u <= 8; ++u) {
        for (int v = -8; v <= 8; ++v) {
            if (u == 0 && v == 0) continue;
            const RieszMultiplier m = riesz_multiplier(u, v);
            CHECK(std::abs(std::norm(m.h1) + std::norm(m.h2) - 1.0) < 1e-12);
            CHECK(m.h1.real() == 0.0);  // pure phase shifter
            CHECK(m.h2.real() == 0.0);
        }
    }
}

TEST_CASE("riesz of a constant image is zero") {
    Image img(12, 10);
    for (double& v : img.values) v = 0.7;
    for (double v : riesz_magnitude(img).values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("riesz of an on-grid cosine is the quadrature sine") {
    const int w = 64, h = 32, k = 5;
    Image img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.at(x, y) = std::cos(2.0 * std::numbers::pi * k * x / w);
        }
    }
    const auto [r1, r2] = riesz_pair(img);
    const Image mag = riesz_magnitude(img);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double sine = std::sin(2.0 * std::numbers::pi * k * x / w);
            CHECK(std::abs(r1.at(x, y) - sine) < 1e-6);
            CHECK(std::abs(r2.at(x, y)) < 1e-6);
            // in-phase + quadrature envelope is unity everywhere
            const double env = std::sqrt(img.at(x, y) * img.at(x, y) +
                                         mag.at(x, y) * mag.at(x, y));
            CHECK(std::abs(env - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("riesz preserves off-DC energy on odd grids") {
    const Image img = testutil::random_image(31, 45, 77);
    const auto [r1, r2] = riesz_pair(img);
    double mean = 0;
    for (double v : img.values) mean += v;
    mean /= static_cast<double>(img.pixel_count());
    double lhs = 0, rhs = 0;
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        lhs += r1.values[i] * r1.values[i] + r2.values[i] * r2.values[i];
        const double d = img.values[i] - mean;
        rhs += d * d;
    }
    CHECK(std::abs(lhs - rhs) < 1e-9 * rhs);
}

TEST_CASE("riesz matches a naive dft oracle") {
    for (const auto [w, h] : {std::pair{7, 5}, std::pair{8, 6}}) {
        const Image img = testutil::random_image(w, h, 1234);
        const auto [r1, r2] = riesz_pair(img);
        const auto [n1, n2] = naive_riesz(img);
        for (size_t i = 0; i < img.pixel_count(); ++i) {
            CHECK(std::abs(r1.values[i] - n1.values[i]) < 1e-10);
            CHECK(std::abs(r2.values[i] - n2.values[i]) < 1e-10);
        }
    }
}

TEST_CASE("transforms are gain equivariant and offset invariant") {
    const Image img = testutil::random_image(17, 14, 33);
    for (const TransformKind kind :
         {TransformKind::gradient_magnitude, TransformKind::laplacian,
          TransformKind::riesz_magnitude}) {
        const Image base = apply_transform(kind, img);
        for (const double a : {2.0, 10.0}) {
            Image scaled = img;
            for (double& v : scaled.values) v *= a;
            const Image out = apply_transform(kind, scaled);
            for (size_t i = 0; i < out.pixel_count(); ++i) {
                CHECK(std::abs(out.values[i] - a * base.values[i]) < 1e-12);
            }
        }
        Image shifted = img;
        for (double& v : shifted.values) v += 0.45;
        const Image out = apply_transform(kind, shifted);
        for (size_t i = 0; i < out.pixel_count(); ++i) {
            CHECK(std::abs(out.values[i] - base.values[i]) < 1e-9);
        }
    }
}

TEST_CASE("apply_transform dispatch") {
    const Image img = testutil::random_image(16, 16, 3);
    CHECK(apply_transform(TransformKind::none, img).values == img.values);

    Image flat(8, 8);
    for (double& v : flat.values) v = 0.3;
    for (double v : apply_transform(TransformKind::gradient_magnitude, flat).values) {
        CHECK(v == 0.0);
    }

    // identical inputs stay identical under any transform, so dq is 0
    const Image t = apply_transform(TransformKind::laplacian, img);
    const WindowSpec spec{WindowKind::gaussian, 11, 1.5, BorderMode::valid_only};
    for (double v : dq_map(sym_stats(t, t, spec), MetricParams{}).values) {
        CHECK(v == 0.0);
    }
}
