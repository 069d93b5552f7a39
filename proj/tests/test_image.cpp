#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "dissim/image.hpp"
#include "test_util.hpp"

using namespace dissim;
namespace fs = std::filesystem;

namespace {

fs::path scratch_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "dissim_image_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out << bytes;
}

}  // namespace

TEST_CASE("image constructor enforces invariants") {
    CHECK_THROWS_AS(Image(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(Image(2, 2, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Image(1, 1, {std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Image(1, 1, {std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
    const Image img(2, 1, {-0.5, 3.0});  // negative values are allowed
    CHECK(img.at(0, 0) == -0.5);
}

TEST_CASE("read_pgm parses P2") {
    const auto path = scratch_file("ascii.pgm");
    write_file(path, "P2 2 1 255\n0 255\n");
    const Image img = read_pgm(path.string());
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.range_hint == 255.0);
    CHECK(img.values == std::vector<double>{0.0, 255.0});
}

TEST_CASE("read_pgm parses P5 byte for byte") {
    const auto path = scratch_file("binary.pgm");
    write_file(path, std::string("P5\n2 2\n255\n") + '\x01' + '\x02' + '\x03' + '\xfe');
    const Image img = read_pgm(path.string());
    CHECK(img.values == std::vector<double>{1.0, 2.0, 3.0, 254.0});
}

TEST_CASE("read_pgm skips comments between header tokens") {
    const auto path = scratch_file("comments.pgm");
    write_file(path, "P2 # color would be P6\n# a comment line\n2 # width\n1 255\n7 8\n");
    const Image img = read_pgm(path.string());
    CHECK(img.values == std::vector<double>{7.0, 8.0});
}

TEST_CASE("read_pgm rejects bad input") {
    const auto p6 = scratch_file("color.pgm");
    write_file(p6, "P6\n1 1\n255\nxxx");
    CHECK_THROWS_AS(read_pgm(p6.string()), io_error);

    const auto deep = scratch_file("deep.pgm");
    write_file(deep, "P5\n1 1\n65535\n\x01\x01");
    CHECK_THROWS_AS(read_pgm(deep.string()), io_error);

    const auto truncated = scratch_file("short.pgm");
    write_file(truncated, std::string("P5\n2 2\n255\n") + '\x01');
    CHECK_THROWS_AS(read_pgm(truncated.string()), io_error);

    const auto garbled = scratch_file("garbled.pgm");
    write_file(garbled, "P5\n-3 2\n255\n");
    CHECK_THROWS_AS(read_pgm(garbled.string()), io_error);

    CHECK_THROWS_AS(read_pgm("/no/such/file.pgm"), io_error);
}

TEST_CASE("write_pgm writes a single zero byte for a 1x1 zero image") {
    const auto path = scratch_file("zero.pgm");
    write_pgm(Image(1, 1, {0.0}, 255.0), path.string());
    std::ifstream in(path, std::ios::binary);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    CHECK(content == std::string("P5\n1 1\n255\n") + '\x00');
}

TEST_CASE("write_pgm rounds half-up") {
    const auto path = scratch_file("round.pgm");
    write_pgm(Image(3, 1, {127.5, 127.4, 128.5}, 255.0), path.string());
    const Image back = read_pgm(path.string());
    CHECK(back.values == std::vector<double>{128.0, 127.0, 129.0});
}

TEST_CASE("write_pgm rejects out-of-range values") {
    const auto path = scratch_file("range.pgm");
    CHECK_THROWS_AS(write_pgm(Image(1, 1, {-1.0}, 255.0), path.string()),
                    std::invalid_argument);
    CHECK_THROWS_AS(write_pgm(Image(1, 1, {256.0}, 255.0), path.string()),
                    std::invalid_argument);
}

TEST_CASE("pgm roundtrip is lossless for 8-bit values") {
    std::mt19937_64 rng(11);
    Image img(23, 17, 255.0);
    for (double& v : img.values) v = static_cast<double>(rng() % 256);
    const auto path = scratch_file("roundtrip.pgm");
    write_pgm(img, path.string());
    const Image back = read_pgm(path.string());
    CHECK(back.values == img.values);
    CHECK(back.range_hint == 255.0);
}

TEST_CASE("normalize divides by the range hint") {
    const Image img(2, 1, {0.0, 255.0}, 255.0);
    const Image out = normalize(img);
    CHECK(out.range_hint == 1.0);
    CHECK(out.values[0] == 0.0);
    CHECK(out.values[1] == 1.0);

    const Image mid = normalize(Image(1, 1, {128.0}, 255.0));
    CHECK(mid.values[0] == doctest::Approx(128.0 / 255.0).epsilon(1e-15));

    const Image unit(2, 1, {0.25, 0.75}, 1.0);
    CHECK(normalize(unit).values == unit.values);

    CHECK_THROWS_AS(normalize(Image(1, 1, {1.0}, 0.0)), std::invalid_argument);
}

TEST_CASE("sum_diff matches the pointwise definition") {
    const Image f1(2, 1, {0.0, 1.0});
    SUBCASE("identical images") {
        const auto [plus, minus] = sum_diff(f1, f1);
        CHECK(plus.values == std::vector<double>{0.0, 2.0});
        CHECK(minus.values == std::vector<double>{0.0, 0.0});
    }
    SUBCASE("worked example") {
        const Image f2(2, 1, {0.0, 0.5});
        const auto [plus, minus] = sum_diff(f1, f2);
        CHECK(plus.values == std::vector<double>{0.0, 1.5});
        CHECK(minus.values == std::vector<double>{0.0, -0.5});
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(sum_diff(f1, Image(1, 2)), std::invalid_argument);
    }
}

TEST_CASE("sum_diff inversion is bitwise exact") {
    const Image f1 = testutil::random_image(19, 13, 101);
    const Image f2 = testutil::random_image(19, 13, 102);
    const auto [plus, minus] = sum_diff(f1, f2);
    for (size_t i = 0; i < f1.pixel_count(); ++i) {
        CHECK(plus.values[i] - minus.values[i] == 2.0 * f1.values[i]);
        CHECK(plus.values[i] + minus.values[i] == 2.0 * f2.values[i]);
    }
}

TEST_CASE("rotate90 permutes pixels and four turns restore the image") {
    const Image img = testutil::random_image(7, 5, 55);
    const Image once = rotate90(img);
    CHECK(once.width == img.height);
    CHECK(once.height == img.width);
    CHECK(once.at(0, img.width - 1) == img.at(0, 0));
    const Image full = rotate90(rotate90(rotate90(once)));
    CHECK(full.values == img.values);
}
