#include <doctest.h>

#include <cmath>

#include "dissim/distort.hpp"
#include "dissim/eval.hpp"
#include "test_util.hpp"

using namespace dissim;

TEST_CASE("zero-level noise, unit gain, and zero offset are the identity") {
    const Image img = testutil::random_image(16, 16, 1);
    CHECK(apply_distortion(img, {DistortionKind::gaussian_noise, 0.0, 7}).values == img.values);
    CHECK(apply_distortion(img, {DistortionKind::gaussian_blur, 0.0, 0}).values == img.values);
    CHECK(apply_distortion(img, {DistortionKind::gain, 1.0, 0}).values == img.values);
    CHECK(apply_distortion(img, {DistortionKind::offset, 0.0, 0}).values == img.values);
}

TEST_CASE("distortion specs are validated") {
    const Image img = testutil::random_image(8, 8, 2);
    CHECK_THROWS_AS(apply_distortion(img, {DistortionKind::gaussian_noise, -0.1, 0}),
                    std::invalid_argument);
}

TEST_CASE("noise variance matches the requested level") {
    const Image img = testutil::random_image(256, 256, 3);
    const Image noisy = apply_distortion(img, {DistortionKind::gaussian_noise, 0.1, 99});
    double mean = 0;
    for (size_t i = 0; i < img.pixel_count(); ++i) mean += noisy.values[i] - img.values[i];
    mean /= static_cast<double>(img.pixel_count());
    double var = 0;
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        const double d = noisy.values[i] - img.values[i] - mean;
        var += d * d;
    }
    var /= static_cast<double>(img.pixel_count());
    CHECK(var > 0.009);
    CHECK(var < 0.011);
}

TEST_CASE("distortions are deterministic in the seed") {
    const Image img = testutil::random_image(32, 32, 4);
    const DistortionSpec spec{DistortionKind::gaussian_noise, 0.07, 1234};
    const Image a = apply_distortion(img, spec);
    const Image b = apply_distortion(img, spec);
    CHECK(a.values == b.values);
    const Image c = apply_distortion(img, {DistortionKind::gaussian_noise, 0.07, 1235});
    CHECK(a.values != c.values);
}

TEST_CASE("normal_field is standard normal at scale") {
    const Image field = normal_field(256, 256, 42);
    double mean = 0;
    for (double v : field.values) mean += v;
    mean /= static_cast<double>(field.pixel_count());
    double var = 0;
    for (double v : field.values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(field.pixel_count());
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("split_seed separates streams") {
    CHECK(split_seed(1, 0) != split_seed(1, 1));
    CHECK(split_seed(1, 0) != split_seed(2, 0));
    CHECK(split_seed(1, 0) == split_seed(1, 0));
}

TEST_CASE("blur preserves constant images") {
    Image img(24, 24);
    for (double& v : img.values) v = 0.6;
    const Image blurred = apply_distortion(img, {DistortionKind::gaussian_blur, 2.0, 0});
    CHECK(blurred.width == 24);
    CHECK(blurred.height == 24);
    for (double v : blurred.values) CHECK(std::abs(v - 0.6) < 1e-12);
}

TEST_CASE("blur averages locally") {
    // single bright pixel spreads but keeps total mass
    Image img(31, 31);
    img.at(15, 15) = 1.0;
    const Image blurred = apply_distortion(img, {DistortionKind::gaussian_blur, 1.0, 0});
    CHECK(blurred.at(15, 15) < 1.0);
    CHECK(blurred.at(15, 15) > blurred.at(12, 15));
    double sum = 0;
    for (double v : blurred.values) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sweep contracts") {
    const Image ref = testutil::make_texture(48, 48, 5);
    PipelineConfig cfg;

    SUBCASE("levels must be nonempty and ascending") {
        CHECK_THROWS_AS(sweep(ref, DistortionKind::gaussian_noise, {}, 1, cfg),
                        std::invalid_argument);
        CHECK_THROWS_AS(sweep(ref, DistortionKind::gaussian_noise, {0.1, 0.1}, 1, cfg),
                        std::invalid_argument);
        CHECK_THROWS_AS(sweep(ref, DistortionKind::gaussian_noise, {0.2, 0.1}, 1, cfg),
                        std::invalid_argument);
    }
    SUBCASE("level zero gives the identity record") {
        const auto records = sweep(ref, DistortionKind::gaussian_noise, {0.0}, 1, cfg);
        REQUIRE(records.size() == 1);
        CHECK(records[0].dq == 0.0);
        CHECK(records[0].ssim == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(records[0].nrmse == 0.0);
    }
    SUBCASE("noise sweeps are strictly monotone in dq") {
        const auto records =
            sweep(ref, DistortionKind::gaussian_noise, {0.02, 0.05, 0.1}, 7, cfg);
        REQUIRE(records.size() == 3);
        CHECK(records[0].dq > 0.0);
        CHECK(records[1].dq > records[0].dq);
        CHECK(records[2].dq > records[1].dq);
    }
    SUBCASE("gain distorts the test image only, so dq reacts off unity") {
        const auto records = sweep(ref, DistortionKind::gain, {0.5, 1.0, 2.0}, 1, cfg);
        CHECK(records[0].dq > 1e-3);
        CHECK(std::abs(records[1].dq) < 1e-12);  // gain 1 is the identity
        CHECK(records[2].dq > 1e-3);
    }
}

TEST_CASE("joint gain on both images cancels out of dq") {
    const Image ref = testutil::make_texture(48, 48, 6);
    const Image noisy = apply_distortion(ref, {DistortionKind::gaussian_noise, 0.05, 11});
    PipelineConfig cfg;
    cfg.params.mode = EpsilonMode::exact_zero;
    const double base = compare_images(ref, noisy, cfg).dq;
    for (const double a : {0.5, 2.0, 10.0}) {
        Image g1 = ref, g2 = noisy;
        for (double& v : g1.values) v *= a;
        for (double& v : g2.values) v *= a;
        CHECK(std::abs(compare_images(g1, g2, cfg).dq - base) < 1e-12);
    }
}

TEST_CASE("zero-mean noise leaves the pooled luminance index near one") {
    const Image ref = testutil::make_texture(96, 96, 7);
    const Image noisy = apply_distortion(ref, {DistortionKind::gaussian_noise, 0.1, 13});
    PipelineConfig cfg;
    const CompareResult r = compare_images(ref, noisy, cfg);
    CHECK(std::abs(r.s_l - 1.0) < 0.01);
}
