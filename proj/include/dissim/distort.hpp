#pragma once

#include <cstdint>
#include <vector>

#include "dissim/image.hpp"
#include "dissim/pipeline.hpp"

namespace dissim {

enum class DistortionKind { gaussian_noise, gaussian_blur, gain, offset };

/// level is sigma (normalized units) for noise, sigma in pixels for
/// blur, the multiplier for gain, the additive constant for offset.
/// Outputs are never clipped; clipping would skew the statistics.
struct DistortionSpec {
    DistortionKind kind = DistortionKind::gaussian_noise;
    double level = 0.0;
    uint64_t seed = 0;  // noise only
};

/// Derives an independent stream seed from (seed, index) via splitmix64.
uint64_t split_seed(uint64_t seed, uint64_t index);

/// Deterministic unit-variance normal field. Generator: std::mt19937_64
/// seeded with seed; uniforms are (x >> 11) * 2^-53; normals via the
/// Marsaglia polar method. The sequence is fixed by the C++ standard's
/// mt19937_64 definition, so a seed pins the field.
Image normal_field(int width, int height, uint64_t seed);

/// Applies one distortion. Noise and blur at level 0 are the identity.
/// Blur uses a normalized truncated gaussian (radius = ceil(3*sigma))
/// with symmetric padding.
Image apply_distortion(const Image& img, const DistortionSpec& spec);

struct SweepRecord {
    double level = 0;
    double ssim = 0;
    double one_minus_ssim = 0;
    double dq = 0;
    double nrmse = 0;
};

/// Distorts the reference at each level (same seed per level, so noise
/// fields scale comparably) and records the pooled metrics. Levels must
/// be strictly ascending.
std::vector<SweepRecord> sweep(const Image& reference, DistortionKind kind,
                               const std::vector<double>& levels, uint64_t seed,
                               const PipelineConfig& config);

}  // namespace dissim
