#include "dissim/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <vector>

namespace dissim {

namespace {

void check_min_size(const Image& img, int min_side, const char* what) {
    if (img.width < min_side || img.height < min_side) {
        throw std::invalid_argument(std::string(what) + " requires at least " +
                                    std::to_string(min_side) + "x" + std::to_string(min_side));
    }
}

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

using cvec = std::vector<std::complex<double>>;

cvec dft2(const cvec& in, int width, int height, int sign) {
    cvec out(in.size());
    // fftw_complex and std::complex<double> are layout-compatible
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_2d(height, width, src, dst, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

int signed_frequency(int k, int n) { return k < (n + 1) / 2 ? k : k - n; }

}  // namespace

Image gradient_magnitude(const Image& img) {
    check_min_size(img, 3, "gradient_magnitude");
    Image out(img.width, img.height, img.range_hint);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double gx, gy;
            if (x == 0) {
                gx = img.at(1, y) - img.at(0, y);
            } else if (x == img.width - 1) {
                gx = img.at(x, y) - img.at(x - 1, y);
            } else {
                gx = (img.at(x + 1, y) - img.at(x - 1, y)) / 2.0;
            }
            if (y == 0) {
                gy = img.at(x, 1) - img.at(x, 0);
            } else if (y == img.height - 1) {
                gy = img.at(x, y) - img.at(x, y - 1);
            } else {
                gy = (img.at(x, y + 1) - img.at(x, y - 1)) / 2.0;
            }
            out.at(x, y) = std::sqrt(gx * gx + gy * gy);
        }
    }
    return out;
}

Image laplacian(const Image& img) {
    check_min_size(img, 3, "laplacian");
    Image out(img.width, img.height, img.range_hint);
    for (int y = 1; y < img.height - 1; ++y) {
        for (int x = 1; x < img.width - 1; ++x) {
            out.at(x, y) = img.at(x + 1, y) + img.at(x - 1, y) + img.at(x, y + 1) +
                           img.at(x, y - 1) - 4.0 * img.at(x, y);
        }
    }
    return out;
}

RieszMultiplier riesz_multiplier(int u, int v) {
    if (u == 0 && v == 0) return {{0, 0}, {0, 0}};
    const double norm = std::sqrt(static_cast<double>(u) * u + static_cast<double>(v) * v);
    return {std::complex<double>(0, -u / norm), std::complex<double>(0, -v / norm)};
}

std::pair<Image, Image> riesz_pair(const Image& img) {
    check_min_size(img, 2, "riesz transform");
    const int w = img.width, h = img.height;
    const size_t n = img.pixel_count();

    cvec field(n);
    for (size_t i = 0; i < n; ++i) field[i] = img.values[i];
    const cvec spectrum = dft2(field, w, h, FFTW_FORWARD);

    // Unpaired Nyquist bins of even dimensions are zeroed: the odd
    // multiplier cannot be Hermitian there, and zeroing keeps the
    // components exactly real.
    cvec spec1(n), spec2(n);
    for (int ky = 0; ky < h; ++ky) {
        const bool nyq_y = (h % 2 == 0) && ky == h / 2;
        const int v = signed_frequency(ky, h);
        for (int kx = 0; kx < w; ++kx) {
            const bool nyq_x = (w % 2 == 0) && kx == w / 2;
            const size_t i = static_cast<size_t>(ky) * w + kx;
            if (nyq_x || nyq_y) {
                spec1[i] = spec2[i] = 0;
                continue;
            }
            const RieszMultiplier mult = riesz_multiplier(signed_frequency(kx, w), v);
            spec1[i] = mult.h1 * spectrum[i];
            spec2[i] = mult.h2 * spectrum[i];
        }
    }
    const cvec back1 = dft2(spec1, w, h, FFTW_BACKWARD);
    const cvec back2 = dft2(spec2, w, h, FFTW_BACKWARD);

    const double scale = 1.0 / (static_cast<double>(w) * h);
    std::vector<double> r1(n), r2(n);
    for (size_t i = 0; i < n; ++i) {
        r1[i] = back1[i].real() * scale;
        r2[i] = back2[i].real() * scale;
    }
    return {Image(w, h, std::move(r1), img.range_hint),
            Image(w, h, std::move(r2), img.range_hint)};
}

Image riesz_magnitude(const Image& img) {
    const auto [r1, r2] = riesz_pair(img);
    std::vector<double> mag(img.pixel_count());
    for (size_t i = 0; i < mag.size(); ++i) {
        mag[i] = std::sqrt(r1.values[i] * r1.values[i] + r2.values[i] * r2.values[i]);
    }
    return Image(img.width, img.height, std::move(mag), img.range_hint);
}

Image apply_transform(TransformKind kind, const Image& img) {
    switch (kind) {
        case TransformKind::none:
            return img;
        case TransformKind::gradient_magnitude:
            return gradient_magnitude(img);
        case TransformKind::laplacian:
            return laplacian(img);
        case TransformKind::riesz_magnitude:
            return riesz_magnitude(img);
    }
    throw std::invalid_argument("unknown transform kind");
}

}  // namespace dissim
