#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dissim/distort.hpp"
#include "dissim/eval.hpp"
#include "dissim/pipeline.hpp"

namespace py = pybind11;
using namespace dissim;

namespace {

py::array_t<double> plane_to_array(int width, int height, const std::vector<double>& v) {
    py::array_t<double> out({height, width});
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Image image_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                       double range_hint) {
    if (a.ndim() != 2) throw std::invalid_argument("expected a 2-D array");
    const int height = static_cast<int>(a.shape(0));
    const int width = static_cast<int>(a.shape(1));
    std::vector<double> vals(a.data(), a.data() + a.size());
    return Image(width, height, std::move(vals), range_hint);
}

py::dict result_to_dict(const CompareResult& r, bool with_luminance) {
    py::dict d;
    d["ssim"] = r.ssim;
    d["ssim_three"] = r.ssim_three;
    d["s_l"] = r.s_l;
    d["s_v"] = r.s_v;
    d["one_minus_ssim"] = r.one_minus_ssim;
    d["dq"] = r.dq;
    d["nrmse"] = r.nrmse;
    if (with_luminance) d["sl_sv"] = r.sl_sv;
    d["degenerate_pixels"] = r.degenerate_pixels;
    return d;
}

}  // namespace

PYBIND11_MODULE(_dissim, m) {
    m.doc() = "SSIM, symmetric SSIM, and Dissimilarity Quotient image metrics";

    py::register_exception<io_error>(m, "IoError", PyExc_IOError);

    py::enum_<WindowKind>(m, "WindowKind")
        .value("gaussian", WindowKind::gaussian)
        .value("uniform", WindowKind::uniform);
    py::enum_<BorderMode>(m, "BorderMode")
        .value("valid_only", BorderMode::valid_only)
        .value("symmetric_pad", BorderMode::symmetric_pad);
    py::enum_<EpsilonMode>(m, "EpsilonMode")
        .value("regularized", EpsilonMode::regularized)
        .value("exact_zero", EpsilonMode::exact_zero);
    py::enum_<TransformKind>(m, "TransformKind")
        .value("none", TransformKind::none)
        .value("gradient_magnitude", TransformKind::gradient_magnitude)
        .value("laplacian", TransformKind::laplacian)
        .value("riesz_magnitude", TransformKind::riesz_magnitude);
    py::enum_<DistortionKind>(m, "DistortionKind")
        .value("gaussian_noise", DistortionKind::gaussian_noise)
        .value("gaussian_blur", DistortionKind::gaussian_blur)
        .value("gain", DistortionKind::gain)
        .value("offset", DistortionKind::offset);

    py::class_<Image>(m, "Image")
        .def(py::init(&image_from_array), py::arg("array"), py::arg("range_hint") = 1.0)
        .def_readonly("width", &Image::width)
        .def_readonly("height", &Image::height)
        .def_readwrite("range_hint", &Image::range_hint)
        .def_property_readonly(
            "array",
            [](const Image& img) { return plane_to_array(img.width, img.height, img.values); })
        .def("__repr__", [](const Image& img) {
            return "<Image " + std::to_string(img.width) + "x" + std::to_string(img.height) +
                   " L=" + std::to_string(img.range_hint) + ">";
        });

    py::class_<WindowSpec>(m, "WindowSpec")
        .def(py::init([](WindowKind kind, int size, double sigma, BorderMode border) {
                 return WindowSpec{kind, size, sigma, border};
             }),
             py::arg("kind") = WindowKind::gaussian, py::arg("size") = 11,
             py::arg("sigma") = 1.5, py::arg("border") = BorderMode::valid_only)
        .def_readwrite("kind", &WindowSpec::kind)
        .def_readwrite("size", &WindowSpec::size)
        .def_readwrite("sigma", &WindowSpec::sigma)
        .def_readwrite("border", &WindowSpec::border);

    py::class_<MetricParams>(m, "MetricParams")
        .def(py::init([](double k1, double k2, double dynamic_range, EpsilonMode mode) {
                 return MetricParams{k1, k2, dynamic_range, mode};
             }),
             py::arg("k1") = 0.01, py::arg("k2") = 0.03, py::arg("dynamic_range") = 1.0,
             py::arg("mode") = EpsilonMode::regularized)
        .def_readwrite("k1", &MetricParams::k1)
        .def_readwrite("k2", &MetricParams::k2)
        .def_readwrite("dynamic_range", &MetricParams::dynamic_range)
        .def_readwrite("mode", &MetricParams::mode)
        .def_property_readonly("c1", &MetricParams::c1)
        .def_property_readonly("c2", &MetricParams::c2)
        .def_property_readonly("c3", &MetricParams::c3);

    py::class_<StatsField>(m, "StatsField")
        .def_readonly("width", &StatsField::width)
        .def_readonly("height", &StatsField::height)
        .def_property_readonly("mu1", [](const StatsField& s) {
            return plane_to_array(s.width, s.height, s.mu1);
        })
        .def_property_readonly("mu2", [](const StatsField& s) {
            return plane_to_array(s.width, s.height, s.mu2);
        })
        .def_property_readonly("var1", [](const StatsField& s) {
            return plane_to_array(s.width, s.height, s.var1);
        })
        .def_property_readonly("var2", [](const StatsField& s) {
            return plane_to_array(s.width, s.height, s.var2);
        })
        .def_property_readonly("cov", [](const StatsField& s) {
            return plane_to_array(s.width, s.height, s.cov);
        });

    py::class_<SymStatsField>(m, "SymStatsField")
        .def_readonly("width", &SymStatsField::width)
        .def_readonly("height", &SymStatsField::height)
        .def_property_readonly("mu_plus", [](const SymStatsField& s) {
            return plane_to_array(s.width, s.height, s.mu_plus);
        })
        .def_property_readonly("mu_minus", [](const SymStatsField& s) {
            return plane_to_array(s.width, s.height, s.mu_minus);
        })
        .def_property_readonly("var_plus", [](const SymStatsField& s) {
            return plane_to_array(s.width, s.height, s.var_plus);
        })
        .def_property_readonly("var_minus", [](const SymStatsField& s) {
            return plane_to_array(s.width, s.height, s.var_minus);
        });

    py::class_<MetricMap>(m, "MetricMap")
        .def_readonly("name", &MetricMap::name)
        .def_readonly("width", &MetricMap::width)
        .def_readonly("height", &MetricMap::height)
        .def_readonly("degenerate_count", &MetricMap::degenerate_count)
        .def_property_readonly("range", [](const MetricMap& mm) {
            return py::make_tuple(mm.range_lo, mm.range_hi);
        })
        .def_property_readonly("values", [](const MetricMap& mm) {
            return plane_to_array(mm.width, mm.height, mm.values);
        });

    m.def("read_pgm", &read_pgm, py::arg("path"));
    m.def("write_pgm", &write_pgm, py::arg("image"), py::arg("path"));
    m.def("normalize", &normalize, py::arg("image"));
    m.def("sum_diff", &sum_diff, py::arg("f1"), py::arg("f2"));
    m.def("rotate90", &rotate90, py::arg("image"));

    m.def(
        "make_kernel",
        [](const WindowSpec& spec) {
            const Kernel k = make_kernel(spec);
            return plane_to_array(k.size, k.size, k.weights);
        },
        py::arg("spec"));
    m.def("local_mean", &local_mean, py::arg("image"), py::arg("spec"));
    m.def("local_stats", &local_stats, py::arg("f1"), py::arg("f2"), py::arg("spec"));
    m.def("sym_stats", &sym_stats, py::arg("f1"), py::arg("f2"), py::arg("spec"));
    m.def("identity_residuals", &identity_residuals, py::arg("stats"), py::arg("sym"));

    m.def("ssim_two_term", &ssim_two_term, py::arg("stats"), py::arg("params"));
    m.def("ssim_three_term", &ssim_three_term, py::arg("stats"), py::arg("params"));
    m.def("sv_map", &sv_map, py::arg("sym"), py::arg("params"));
    m.def("sl_map", &sl_map, py::arg("sym"), py::arg("params"));
    m.def("dissimilarity_map", &dissimilarity_map, py::arg("sym"), py::arg("params"));
    m.def("dq_map", &dq_map, py::arg("sym"), py::arg("params"));
    m.def("nrmse", &nrmse, py::arg("f1"), py::arg("f2"));

    m.def("gradient_magnitude", &gradient_magnitude, py::arg("image"));
    m.def("laplacian", &laplacian, py::arg("image"));
    m.def("riesz_magnitude", &riesz_magnitude, py::arg("image"));
    m.def("riesz_pair", &riesz_pair, py::arg("image"));
    m.def("apply_transform", &apply_transform, py::arg("kind"), py::arg("image"));

    m.def("split_seed", &split_seed, py::arg("seed"), py::arg("index"));
    m.def("normal_field", &normal_field, py::arg("width"), py::arg("height"), py::arg("seed"));
    m.def(
        "apply_distortion",
        [](const Image& img, DistortionKind kind, double level, uint64_t seed) {
            return apply_distortion(img, {kind, level, seed});
        },
        py::arg("image"), py::arg("kind"), py::arg("level"), py::arg("seed") = 0);

    m.def(
        "pool_minkowski",
        [](const MetricMap& map, double p, bool absolute_values) {
            return pool_minkowski(map, p, absolute_values);
        },
        py::arg("map"), py::arg("p"), py::arg("absolute_values") = false);
    m.def("pool_mean_ssim", &pool_mean_ssim, py::arg("map"));
    m.def("pearson", &pearson, py::arg("xs"), py::arg("ys"));
    m.def("spearman", &spearman, py::arg("xs"), py::arg("ys"));

    m.def(
        "compare",
        [](const Image& reference, const Image& test, const WindowSpec& window,
           const MetricParams& params, TransformKind transform, double pool_exponent,
           bool with_luminance) {
            PipelineConfig cfg{window, params, transform, pool_exponent, with_luminance};
            return result_to_dict(compare_images(reference, test, cfg), with_luminance);
        },
        py::arg("reference"), py::arg("test"), py::arg("window") = WindowSpec{},
        py::arg("params") = MetricParams{}, py::arg("transform") = TransformKind::none,
        py::arg("pool_exponent") = 1.0, py::arg("with_luminance") = false,
        "Run the full pipeline on an image pair and return the pooled metrics.");
}
