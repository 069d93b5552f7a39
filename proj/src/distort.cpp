#include "dissim/distort.hpp"

#include <cmath>
#include <random>

namespace dissim {

namespace {

void check_spec(const DistortionSpec& spec) {
    if (!(spec.level >= 0) || !std::isfinite(spec.level)) {
        throw std::invalid_argument("distortion level must be finite and >= 0");
    }
}

// Marsaglia polar method over mt19937_64 uniforms; both are pinned
// algorithms, so a seed reproduces the field on any conforming platform
// (up to libm rounding in log/sqrt).
class NormalSampler {
public:
    explicit NormalSampler(uint64_t seed) : rng_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double a, b, s;
        do {
            a = 2.0 * uniform01() - 1.0;
            b = 2.0 * uniform01() - 1.0;
            s = a * a + b * b;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = b * m;
        has_spare_ = true;
        return a * m;
    }

private:
    double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    double spare_ = 0;
    bool has_spare_ = false;
};

}  // namespace

uint64_t split_seed(uint64_t seed, uint64_t index) {
    // splitmix64 finalizer over golden-ratio spaced streams
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Image normal_field(int width, int height, uint64_t seed) {
    Image out(width, height);
    NormalSampler sampler(seed);
    for (double& v : out.values) v = sampler.next();
    return out;
}

Image apply_distortion(const Image& img, const DistortionSpec& spec) {
    check_spec(spec);
    switch (spec.kind) {
        case DistortionKind::gaussian_noise: {
            if (spec.level == 0) return img;
            const Image noise = normal_field(img.width, img.height, spec.seed);
            std::vector<double> vals(img.pixel_count());
            for (size_t i = 0; i < vals.size(); ++i) {
                vals[i] = img.values[i] + spec.level * noise.values[i];
            }
            return Image(img.width, img.height, std::move(vals), img.range_hint);
        }
        case DistortionKind::gaussian_blur: {
            if (spec.level == 0) return img;
            const int radius = static_cast<int>(std::ceil(3.0 * spec.level));
            WindowSpec blur{WindowKind::gaussian, 2 * radius + 1, spec.level,
                            BorderMode::symmetric_pad};
            return local_mean(img, blur);
        }
        case DistortionKind::gain: {
            std::vector<double> vals(img.pixel_count());
            for (size_t i = 0; i < vals.size(); ++i) vals[i] = spec.level * img.values[i];
            return Image(img.width, img.height, std::move(vals), img.range_hint);
        }
        case DistortionKind::offset: {
            std::vector<double> vals(img.pixel_count());
            for (size_t i = 0; i < vals.size(); ++i) vals[i] = img.values[i] + spec.level;
            return Image(img.width, img.height, std::move(vals), img.range_hint);
        }
    }
    throw std::invalid_argument("unknown distortion kind");
}

std::vector<SweepRecord> sweep(const Image& reference, DistortionKind kind,
                               const std::vector<double>& levels, uint64_t seed,
                               const PipelineConfig& config) {
    if (levels.empty()) throw std::invalid_argument("sweep requires at least one level");
    for (size_t i = 1; i < levels.size(); ++i) {
        if (!(levels[i] > levels[i - 1])) {
            throw std::invalid_argument("sweep levels must be strictly ascending");
        }
    }
    std::vector<SweepRecord> records;
    records.reserve(levels.size());
    for (const double level : levels) {
        const Image distorted = apply_distortion(reference, {kind, level, seed});
        const CompareResult r = compare_images(reference, distorted, config);
        records.push_back({level, r.ssim, r.one_minus_ssim, r.dq, r.nrmse});
    }
    return records;
}

}  // namespace dissim
