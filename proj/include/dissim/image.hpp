#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dissim {

/// Thrown for file problems: unreadable paths, malformed or unsupported
/// PGM/CSV content, truncated payloads, failed writes.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grayscale image: a row-major grid of doubles, top-left origin.
///
/// Values may be negative (difference images, transform outputs).
/// range_hint carries the declared dynamic range L: 255 for raw 8-bit
/// data, 1.0 after normalize(). Instances are immutable by convention
/// once constructed; every operation returns a new Image.
struct Image {
    int width = 0;
    int height = 0;
    double range_hint = 1.0;
    std::vector<double> values;

    Image() = default;
    Image(int w, int h, double range = 1.0);
    Image(int w, int h, std::vector<double> vals, double range = 1.0);

    double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
    size_t pixel_count() const { return values.size(); }
    bool same_size(const Image& other) const {
        return width == other.width && height == other.height;
    }
};

/// Reads a PGM file (binary P5 or ASCII P2, maxval <= 255). '#' comments
/// between header tokens are skipped. range_hint is set to maxval.
Image read_pgm(const std::string& path);

/// Writes a binary P5 file with maxval 255. Values must already lie in
/// [0, 255]; they are rounded half-up to the nearest integer.
void write_pgm(const Image& img, const std::string& path);

/// Divides every value by range_hint; the result has range_hint 1.0.
Image normalize(const Image& img);

/// Returns the sum and difference images (f2 + f1, f2 - f1).
/// The inverse is exact: 2*f1 = plus - minus, 2*f2 = plus + minus.
std::pair<Image, Image> sum_diff(const Image& f1, const Image& f2);

/// Counterclockwise quarter-turn; an exact pixel permutation.
Image rotate90(const Image& img);

}  // namespace dissim
