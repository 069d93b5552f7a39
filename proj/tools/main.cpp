#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "dissim/distort.hpp"
#include "dissim/eval.hpp"
#include "dissim/pipeline.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace dissim;

constexpr double kSelftestTolerance = 1e-10;

struct PipelineOpts {
    std::string window = "gaussian";
    int size = 11;
    double sigma = 1.5;
    std::string border = "valid";
    double k1 = 0.01;
    double k2 = 0.03;
    double range = 1.0;
    bool exact_zero = false;
    std::string transform = "none";
    double pool = 1.0;
    bool with_luminance = false;
};

struct OutputOpts {
    std::string out;
    std::string format = "json";
};

void add_pipeline_flags(CLI::App* cmd, PipelineOpts& o) {
    cmd->add_option("--window", o.window, "Window kind")
        ->check(CLI::IsMember({"gaussian", "uniform"}))
        ->capture_default_str();
    cmd->add_option("--size", o.size, "Window size (odd)")->capture_default_str();
    cmd->add_option("--sigma", o.sigma, "Gaussian window sigma in pixels")
        ->capture_default_str();
    cmd->add_option("--border", o.border, "Border policy")
        ->check(CLI::IsMember({"valid", "pad"}))
        ->capture_default_str();
    cmd->add_option("--k1", o.k1, "Luminance regularization factor")->capture_default_str();
    cmd->add_option("--k2", o.k2, "Variance regularization factor")->capture_default_str();
    cmd->add_option("--range", o.range, "Dynamic range L for the constants")
        ->capture_default_str();
    cmd->add_flag("--exact-zero", o.exact_zero, "Drop the regularization constants");
    cmd->add_option("--transform", o.transform, "Pre-transform applied to both images")
        ->check(CLI::IsMember({"none", "grad", "laplacian", "riesz"}))
        ->capture_default_str();
    cmd->add_option("--pool", o.pool, "Minkowski exponent for DQ pooling")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_flag("--with-luminance", o.with_luminance,
                  "Also report the combined S_L*S_V index");
}

PipelineConfig to_config(const PipelineOpts& o) {
    PipelineConfig cfg;
    cfg.window.kind = o.window == "uniform" ? WindowKind::uniform : WindowKind::gaussian;
    cfg.window.size = o.size;
    cfg.window.sigma = o.sigma;
    cfg.window.border =
        o.border == "pad" ? BorderMode::symmetric_pad : BorderMode::valid_only;
    cfg.params.k1 = o.k1;
    cfg.params.k2 = o.k2;
    cfg.params.dynamic_range = o.range;
    cfg.params.mode = o.exact_zero ? EpsilonMode::exact_zero : EpsilonMode::regularized;
    if (o.transform == "grad") {
        cfg.transform = TransformKind::gradient_magnitude;
    } else if (o.transform == "laplacian") {
        cfg.transform = TransformKind::laplacian;
    } else if (o.transform == "riesz") {
        cfg.transform = TransformKind::riesz_magnitude;
    }
    cfg.pool_exponent = o.pool;
    cfg.with_luminance = o.with_luminance;
    return cfg;
}

json config_json(const PipelineConfig& cfg) {
    json j;
    j["window"] = {
        {"kind", cfg.window.kind == WindowKind::uniform ? "uniform" : "gaussian"},
        {"size", cfg.window.size},
        {"sigma", cfg.window.sigma},
        {"border", cfg.window.border == BorderMode::symmetric_pad ? "pad" : "valid"}};
    j["params"] = {{"k1", cfg.params.k1},
                   {"k2", cfg.params.k2},
                   {"dynamic_range", cfg.params.dynamic_range},
                   {"epsilon_mode", cfg.params.mode == EpsilonMode::exact_zero
                                        ? "exact_zero"
                                        : "regularized"}};
    switch (cfg.transform) {
        case TransformKind::none: j["transform"] = "none"; break;
        case TransformKind::gradient_magnitude: j["transform"] = "grad"; break;
        case TransformKind::laplacian: j["transform"] = "laplacian"; break;
        case TransformKind::riesz_magnitude: j["transform"] = "riesz"; break;
    }
    j["pool_exponent"] = cfg.pool_exponent;
    return j;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + out_path + "' for writing");
    out << text;
    if (!out) throw io_error("write failed for '" + out_path + "'");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int cmd_compare(const std::string& ref_path, const std::string& test_path,
                const PipelineOpts& opts, const OutputOpts& output) {
    const Image ref = normalize(read_pgm(ref_path));
    const Image test = normalize(read_pgm(test_path));
    const PipelineConfig cfg = to_config(opts);
    const CompareResult r = compare_images(ref, test, cfg);

    if (output.format == "csv") {
        std::string text = "ssim,ssim_three,s_l,s_v,one_minus_ssim,dq,nrmse\n";
        text += format_double(r.ssim) + "," + format_double(r.ssim_three) + "," +
                format_double(r.s_l) + "," + format_double(r.s_v) + "," +
                format_double(r.one_minus_ssim) + "," + format_double(r.dq) + "," +
                format_double(r.nrmse) + "\n";
        emit(text, output.out);
        return 0;
    }
    json j;
    j["schema"] = 1;
    j.update(config_json(cfg));
    j["ssim"] = r.ssim;
    j["ssim_three"] = r.ssim_three;
    j["s_l"] = r.s_l;
    j["s_v"] = r.s_v;
    j["one_minus_ssim"] = r.one_minus_ssim;
    j["dq"] = r.dq;
    j["nrmse"] = r.nrmse;
    if (cfg.with_luminance) j["sl_sv"] = r.sl_sv;
    j["degenerate_pixels"] = r.degenerate_pixels;
    emit(j.dump(2) + "\n", output.out);
    return 0;
}

int cmd_map(const std::string& ref_path, const std::string& test_path,
            const std::string& metric, const PipelineOpts& opts,
            const std::string& out_base) {
    const Image ref = normalize(read_pgm(ref_path));
    const Image test = normalize(read_pgm(test_path));
    const PipelineConfig cfg = to_config(opts);
    const Image t1 = apply_transform(cfg.transform, ref);
    const Image t2 = apply_transform(cfg.transform, test);

    MetricMap map;
    if (metric == "ssim" || metric == "ssim3") {
        const StatsField stats = local_stats(t1, t2, cfg.window);
        map = metric == "ssim" ? ssim_two_term(stats, cfg.params)
                               : ssim_three_term(stats, cfg.params);
    } else {
        const SymStatsField sym = sym_stats(t1, t2, cfg.window);
        if (metric == "sl") {
            map = sl_map(sym, cfg.params);
        } else if (metric == "sv") {
            map = sv_map(sym, cfg.params);
        } else if (metric == "dissim") {
            map = dissimilarity_map(sym, cfg.params);
        } else {
            map = dq_map(sym, cfg.params);
        }
    }

    double lo = map.values[0], hi = map.values[0];
    for (double v : map.values) {
        if (std::isnan(v)) {
            throw std::invalid_argument(
                "map contains degenerate pixels; rerun without --exact-zero");
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double scale = hi > lo ? (hi - lo) / 255.0 : 0.0;
    Image pgm(map.width, map.height, 255.0);
    if (hi > lo) {
        for (size_t i = 0; i < pgm.pixel_count(); ++i) {
            pgm.values[i] = (map.values[i] - lo) * 255.0 / (hi - lo);
        }
    }
    write_pgm(pgm, out_base + ".pgm");

    // Sidecar records the affine map: value = offset + scale * byte.
    json j;
    j["schema"] = 1;
    j["metric"] = map.name;
    j["width"] = map.width;
    j["height"] = map.height;
    j["affine"] = {{"offset", lo}, {"scale", scale}};
    j["degenerate_pixels"] = map.degenerate_count;
    j.update(config_json(cfg));
    emit(j.dump(2) + "\n", out_base + ".json");
    return 0;
}

int cmd_sweep(const std::string& ref_path, const std::string& distortion,
              const std::vector<double>& levels, uint64_t seed, const PipelineOpts& opts,
              const OutputOpts& output) {
    const Image ref = normalize(read_pgm(ref_path));
    DistortionKind kind = DistortionKind::gaussian_noise;
    if (distortion == "blur") {
        kind = DistortionKind::gaussian_blur;
    } else if (distortion == "gain") {
        kind = DistortionKind::gain;
    } else if (distortion == "offset") {
        kind = DistortionKind::offset;
    }
    const auto records = sweep(ref, kind, levels, seed, to_config(opts));
    std::string text = "level,ssim,one_minus_ssim,dq,nrmse\n";
    for (const auto& rec : records) {
        text += format_double(rec.level) + "," + format_double(rec.ssim) + "," +
                format_double(rec.one_minus_ssim) + "," + format_double(rec.dq) + "," +
                format_double(rec.nrmse) + "\n";
    }
    emit(text, output.out);
    return 0;
}

int cmd_correlate(const std::string& scores_path, const std::string& metric_name,
                  double pool_exponent, const OutputOpts& output) {
    const ScoreTable table = load_scores_csv(scores_path);
    std::vector<double> metric, score;
    metric.reserve(table.rows.size());
    score.reserve(table.rows.size());
    bool nonnegative = true;
    for (const auto& row : table.rows) {
        metric.push_back(row.metric);
        score.push_back(row.score);
        if (row.metric < 0) nonnegative = false;
    }

    json j;
    j["schema"] = 1;
    j["metric"] = metric_name;
    j["n"] = table.rows.size();
    j["p"] = pool_exponent;
    j["pooled"] = pool_minkowski(metric, pool_exponent, true);
    j["pearson_raw"] = pearson(metric, score);
    if (nonnegative) {
        std::vector<double> roots(metric.size());
        for (size_t i = 0; i < metric.size(); ++i) roots[i] = std::sqrt(metric[i]);
        j["pearson_sqrt"] = pearson(roots, score);
    } else {
        j["pearson_sqrt"] = nullptr;
    }
    j["spearman"] = spearman(metric, score);
    emit(j.dump(2) + "\n", output.out);
    return 0;
}

int cmd_selftest(int trials, uint64_t seed, int image_size) {
    if (trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (image_size < 11) throw std::invalid_argument("--image-size must be >= 11");

    const MetricParams params{};  // regularized defaults
    const WindowSpec configs[] = {
        {WindowKind::gaussian, 11, 1.5, BorderMode::valid_only},
        {WindowKind::gaussian, 11, 1.5, BorderMode::symmetric_pad},
        {WindowKind::uniform, 11, 1.5, BorderMode::valid_only},
        {WindowKind::uniform, 11, 1.5, BorderMode::symmetric_pad},
    };

    IdentityResiduals worst;
    double sv_cross = 0, dissim_link = 0, dq_link = 0;
    for (int t = 0; t < trials; ++t) {
        std::mt19937_64 rng(split_seed(seed, static_cast<uint64_t>(t)));
        Image f1(image_size, image_size);
        Image f2(image_size, image_size);
        for (double& v : f1.values) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        for (double& v : f2.values) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;

        for (const WindowSpec& spec : configs) {
            const StatsField s = local_stats(f1, f2, spec);
            const SymStatsField y = sym_stats(f1, f2, spec);
            const IdentityResiduals r = identity_breakdown(s, y);
            worst.mu_plus = std::max(worst.mu_plus, r.mu_plus);
            worst.mu_minus = std::max(worst.mu_minus, r.mu_minus);
            worst.cov_quad = std::max(worst.cov_quad, r.cov_quad);
            worst.var_sum = std::max(worst.var_sum, r.var_sum);
            worst.mu_product = std::max(worst.mu_product, r.mu_product);
            worst.mu_square_sum = std::max(worst.mu_square_sum, r.mu_square_sum);

            const MetricMap sv = sv_map(y, params);
            const MetricMap dis = dissimilarity_map(y, params);
            const MetricMap dq = dq_map(y, params);
            const double C2 = params.c2();
            for (size_t i = 0; i < sv.values.size(); ++i) {
                const double direct =
                    (2.0 * s.cov[i] + C2) / (s.var1[i] + s.var2[i] + C2);
                sv_cross = std::max(sv_cross, std::abs(sv.values[i] - direct));
                dissim_link =
                    std::max(dissim_link, std::abs(dis.values[i] - (1.0 - sv.values[i])));
                dq_link = std::max(
                    dq_link,
                    std::abs(dq.values[i] - std::sqrt((1.0 - sv.values[i]) / 2.0)));
            }
        }
    }

    const struct {
        const char* name;
        double value;
    } rows[] = {
        {"mu_plus = mu2 + mu1", worst.mu_plus},
        {"mu_minus = mu2 - mu1", worst.mu_minus},
        {"4*cov = var_plus - var_minus", worst.cov_quad},
        {"2*(var1 + var2) = var_plus + var_minus", worst.var_sum},
        {"4*mu1*mu2 = mu_plus^2 - mu_minus^2", worst.mu_product},
        {"2*(mu1^2 + mu2^2) = mu_plus^2 + mu_minus^2", worst.mu_square_sum},
        {"s_v symmetric form = covariance form", sv_cross},
        {"dissimilarity = 1 - s_v", dissim_link},
        {"dq = sqrt((1 - s_v)/2)", dq_link},
    };
    bool ok = true;
    for (const auto& row : rows) {
        const bool pass = row.value < kSelftestTolerance;
        ok = ok && pass;
        std::printf("%-45s max residual %.3e  %s\n", row.name, row.value,
                    pass ? "ok" : "FAIL");
    }
    std::printf("selftest: %s (%d trials, %dx%d, tolerance %.0e)\n", ok ? "PASS" : "FAIL",
                trials, image_size, image_size, kSelftestTolerance);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SSIM, symmetric SSIM, and Dissimilarity Quotient image metrics"};
    app.require_subcommand(1);

    PipelineOpts popts;
    OutputOpts output;
    std::string ref_path, test_path, metric = "dq", distortion = "noise";
    std::string scores_path, metric_name = "metric";
    std::string map_out = "map";
    std::vector<double> levels;
    uint64_t seed = 1;
    int trials = 100;
    int image_size = 64;

    CLI::App* compare = app.add_subcommand("compare", "Pooled metrics for an image pair");
    compare->add_option("reference", ref_path, "Reference PGM")->required();
    compare->add_option("test", test_path, "Test PGM")->required();
    add_pipeline_flags(compare, popts);
    compare->add_option("--out", output.out, "Output path (default stdout)");
    compare->add_option("--format", output.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    CLI::App* map_cmd = app.add_subcommand("map", "Write a per-pixel metric map");
    map_cmd->add_option("reference", ref_path, "Reference PGM")->required();
    map_cmd->add_option("test", test_path, "Test PGM")->required();
    map_cmd->add_option("--metric", metric, "Which map to write")
        ->check(CLI::IsMember({"ssim", "ssim3", "sl", "sv", "dissim", "dq"}))
        ->capture_default_str();
    add_pipeline_flags(map_cmd, popts);
    map_cmd->add_option("--out", map_out, "Output base path (.pgm and .json)")
        ->capture_default_str();

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Distortion level sweep as CSV");
    sweep_cmd->add_option("reference", ref_path, "Reference PGM")->required();
    sweep_cmd->add_option("--distortion", distortion, "Distortion kind")
        ->check(CLI::IsMember({"noise", "blur", "gain", "offset"}))
        ->required();
    sweep_cmd->add_option("--levels", levels, "Ascending distortion levels")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--seed", seed, "Noise seed")->capture_default_str();
    add_pipeline_flags(sweep_cmd, popts);
    sweep_cmd->add_option("--out", output.out, "Output path (default stdout)");

    CLI::App* correlate =
        app.add_subcommand("correlate", "Correlate metric values with observer scores");
    correlate->add_option("scores", scores_path, "CSV with header id,metric,score")
        ->required();
    correlate->add_option("--metric-name", metric_name, "Label for the report")
        ->capture_default_str();
    correlate->add_option("--pool", popts.pool, "Minkowski exponent for the pooled column")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    correlate->add_option("--out", output.out, "Output path (default stdout)");

    CLI::App* selftest = app.add_subcommand("selftest", "Run the algebraic identity battery");
    selftest->add_option("--trials", trials, "Number of random image pairs")
        ->capture_default_str();
    selftest->add_option("--seed", seed, "Battery seed")->capture_default_str();
    selftest->add_option("--image-size", image_size, "Test image side length")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (compare->parsed()) return cmd_compare(ref_path, test_path, popts, output);
        if (map_cmd->parsed()) return cmd_map(ref_path, test_path, metric, popts, map_out);
        if (sweep_cmd->parsed()) {
            return cmd_sweep(ref_path, distortion, levels, seed, popts, output);
        }
        if (correlate->parsed()) {
            return cmd_correlate(scores_path, metric_name, popts.pool, output);
        }
        if (selftest->parsed()) return cmd_selftest(trials, seed, image_size);
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
