#include "dissim/pipeline.hpp"

#include <limits>

#include "dissim/eval.hpp"

namespace dissim {

CompareResult compare_images(const Image& reference, const Image& test,
                             const PipelineConfig& config) {
    if (!reference.same_size(test)) {
        throw std::invalid_argument("compare requires equal dimensions");
    }
    const Image t1 = apply_transform(config.transform, reference);
    const Image t2 = apply_transform(config.transform, test);

    const StatsField stats = local_stats(t1, t2, config.window);
    const SymStatsField sym = sym_stats(t1, t2, config.window);

    const MetricMap two = ssim_two_term(stats, config.params);
    const MetricMap three = ssim_three_term(stats, config.params);
    const MetricMap sl = sl_map(sym, config.params);
    const MetricMap sv = sv_map(sym, config.params);
    const MetricMap dq = dq_map(sym, config.params);

    CompareResult r;
    r.ssim = pool_mean_ssim(two);
    r.ssim_three = pool_mean_ssim(three);
    r.s_l = pool_mean_ssim(sl);
    r.s_v = pool_mean_ssim(sv);
    r.one_minus_ssim = 1.0 - r.ssim;
    r.dq = pool_minkowski(dq, config.pool_exponent);
    r.nrmse = nrmse(t1, t2);
    r.degenerate_pixels = two.degenerate_count + three.degenerate_count +
                          sl.degenerate_count + sv.degenerate_count + dq.degenerate_count;
    if (config.with_luminance) {
        std::vector<double> combined(sl.values.size());
        for (size_t i = 0; i < combined.size(); ++i) combined[i] = sl.values[i] * sv.values[i];
        r.sl_sv = pool_mean(combined);
    } else {
        r.sl_sv = std::numeric_limits<double>::quiet_NaN();
    }
    return r;
}

}  // namespace dissim
