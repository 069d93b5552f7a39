#pragma once

#include <string>
#include <vector>

#include "dissim/metrics.hpp"

namespace dissim {

struct PoolingSpec {
    double exponent = 1.0;
    bool absolute_values = false;
};

struct ScoreRow {
    std::string id;
    double metric = 0;
    double score = 0;
};

struct ScoreTable {
    std::vector<ScoreRow> rows;
};

/// Minkowski pooling (mean |v|^p)^(1/p). Signed inputs require an even
/// integer exponent or absolute_values = true. Uses compensated
/// summation, so the result is independent of pixel order.
double pool_minkowski(const std::vector<double>& values, double p,
                      bool absolute_values = false);
double pool_minkowski(const MetricMap& map, double p, bool absolute_values = false);

/// Classic mean-SSIM pooling: the arithmetic mean of the map.
double pool_mean(const std::vector<double>& values);
double pool_mean_ssim(const MetricMap& map);

/// Sample Pearson linear correlation, clamped to [-1, 1]. Requires
/// length >= 3 and nonzero variance on both sides.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

/// Pearson correlation of ranks; ties receive average ranks.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

/// Parses a CSV with header "id,metric,score". Blank lines are skipped;
/// malformed rows, non-numeric fields and duplicate ids raise io_error
/// with the offending line number.
ScoreTable load_scores_csv(const std::string& path);

}  // namespace dissim
