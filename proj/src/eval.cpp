#include "dissim/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace dissim {

namespace {

// Kahan-compensated sum: pooled values are independent of pixel order.
class CompensatedSum {
public:
    void add(double v) {
        const double y = v - compensation_;
        const double t = sum_ + y;
        compensation_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0;
    double compensation_ = 0;
};

bool is_even_integer(double p) {
    return p == std::floor(p) && std::fmod(p, 2.0) == 0.0;
}

std::vector<double> average_ranks(const std::vector<double>& xs) {
    const size_t n = xs.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&xs](size_t a, size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& field, int line, const char* what) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != field.size() || field.empty() || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << "line " << line << ": non-numeric " << what << " '" << field << "'";
        throw io_error(msg.str());
    }
    return v;
}

}  // namespace

double pool_minkowski(const std::vector<double>& values, double p, bool absolute_values) {
    if (values.empty()) throw std::invalid_argument("cannot pool an empty map");
    if (!(p > 0)) throw std::invalid_argument("pooling exponent must be > 0");
    if (!absolute_values && !is_even_integer(p)) {
        for (double v : values) {
            if (v < 0) {
                throw std::invalid_argument(
                    "signed map needs an even integer exponent or absolute-value mode");
            }
        }
    }
    CompensatedSum sum;
    if (p == 1.0) {
        for (double v : values) sum.add(std::abs(v));
        return sum.value() / static_cast<double>(values.size());
    }
    if (p == 2.0) {
        for (double v : values) sum.add(v * v);
        return std::sqrt(sum.value() / static_cast<double>(values.size()));
    }
    for (double v : values) sum.add(std::pow(std::abs(v), p));
    return std::pow(sum.value() / static_cast<double>(values.size()), 1.0 / p);
}

double pool_minkowski(const MetricMap& map, double p, bool absolute_values) {
    return pool_minkowski(map.values, p, absolute_values);
}

double pool_mean(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("cannot pool an empty map");
    CompensatedSum sum;
    for (double v : values) sum.add(v);
    return sum.value() / static_cast<double>(values.size());
}

double pool_mean_ssim(const MetricMap& map) { return pool_mean(map.values); }

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("pearson length mismatch");
    if (xs.size() < 3) throw std::invalid_argument("pearson requires at least 3 samples");
    const double mx = pool_mean(xs);
    const double my = pool_mean(ys);
    double sxx = 0, syy = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0 || syy == 0) throw std::invalid_argument("pearson input has zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("spearman length mismatch");
    if (xs.size() < 3) throw std::invalid_argument("spearman requires at least 3 samples");
    return pearson(average_ranks(xs), average_ranks(ys));
}

ScoreTable load_scores_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "'");

    ScoreTable table;
    std::unordered_set<std::string> seen;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) continue;
        if (!header_seen) {
            if (text != "id,metric,score") {
                std::ostringstream msg;
                msg << "line " << line_no << ": expected header 'id,metric,score', got '"
                    << text << "'";
                throw io_error(msg.str());
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream row(text);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(trim(field));
        if (!text.empty() && text.back() == ',') fields.push_back("");
        if (fields.size() != 3) {
            std::ostringstream msg;
            msg << "line " << line_no << ": expected 3 columns, got " << fields.size();
            throw io_error(msg.str());
        }
        ScoreRow r;
        r.id = fields[0];
        r.metric = parse_number(fields[1], line_no, "metric");
        r.score = parse_number(fields[2], line_no, "score");
        if (!seen.insert(r.id).second) {
            std::ostringstream msg;
            msg << "duplicate id '" << r.id << "' at line " << line_no;
            throw io_error(msg.str());
        }
        table.rows.push_back(std::move(r));
    }
    if (!header_seen) throw io_error("empty scores file '" + path + "'");
    return table;
}

}  // namespace dissim
