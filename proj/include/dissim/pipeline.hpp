#pragma once

#include "dissim/image.hpp"
#include "dissim/metrics.hpp"
#include "dissim/transforms.hpp"
#include "dissim/window_stats.hpp"

namespace dissim {

/// Full metric pipeline configuration: transform -> window statistics ->
/// metric maps -> pooling. The transform is applied to both images
/// before any statistic, including NRMSE.
struct PipelineConfig {
    WindowSpec window{};
    MetricParams params{};
    TransformKind transform = TransformKind::none;
    double pool_exponent = 1.0;   // Minkowski p for DQ pooling
    bool with_luminance = false;  // also report the combined S_L * S_V
};

struct CompareResult {
    double ssim = 0;            // mean two-term SSIM
    double ssim_three = 0;      // mean three-term SSIM
    double s_l = 0;             // mean luminance index
    double s_v = 0;             // mean variance-contrast index
    double one_minus_ssim = 0;  // 1 - mean two-term SSIM
    double dq = 0;              // Minkowski-pooled Dissimilarity Quotient
    double nrmse = 0;
    double sl_sv = 0;           // mean S_L*S_V; NaN unless with_luminance
    int degenerate_pixels = 0;  // total across the computed maps
};

/// Runs the whole pipeline on one image pair. Inputs are used as given;
/// callers normalize first when working from 8-bit data.
CompareResult compare_images(const Image& reference, const Image& test,
                             const PipelineConfig& config);

}  // namespace dissim
