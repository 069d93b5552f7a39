#include "dissim/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace dissim {

namespace {

void check_dimensions(int w, int h) {
    if (w <= 0 || h <= 0) {
        std::ostringstream msg;
        msg << "image dimensions must be positive, got " << w << "x" << h;
        throw std::invalid_argument(msg.str());
    }
}

void check_finite(const std::vector<double>& vals) {
    for (double v : vals) {
        if (!std::isfinite(v)) throw std::invalid_argument("image values must be finite");
    }
}

// Next whitespace-separated header token; '#' starts a comment running
// to end of line. Consumes exactly one delimiter after the token, which
// positions the stream at the start of a P5 payload.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) continue;
        tok.push_back(static_cast<char>(c));
        while ((c = in.get()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(c));
        break;
    }
    return tok;
}

int parse_header_int(std::istream& in, const char* what) {
    const std::string tok = next_token(in);
    if (tok.empty()) throw io_error(std::string("malformed PGM header: missing ") + what);
    size_t pos = 0;
    long value = 0;
    try {
        value = std::stol(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size() || value <= 0) {
        throw io_error(std::string("malformed PGM header: bad ") + what + " '" + tok + "'");
    }
    return static_cast<int>(value);
}

}  // namespace

Image::Image(int w, int h, double range) : width(w), height(h), range_hint(range) {
    check_dimensions(w, h);
    values.assign(static_cast<size_t>(w) * h, 0.0);
}

Image::Image(int w, int h, std::vector<double> vals, double range)
    : width(w), height(h), range_hint(range), values(std::move(vals)) {
    check_dimensions(w, h);
    if (values.size() != static_cast<size_t>(w) * h) {
        throw std::invalid_argument("value count does not match width*height");
    }
    check_finite(values);
}

Image read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open '" + path + "'");

    const std::string magic = next_token(in);
    if (magic != "P5" && magic != "P2") {
        throw io_error("unsupported format '" + magic + "' in '" + path +
                       "' (only P5/P2 grayscale PGM)");
    }
    const int width = parse_header_int(in, "width");
    const int height = parse_header_int(in, "height");
    const int maxval = parse_header_int(in, "maxval");
    if (maxval > 255) {
        std::ostringstream msg;
        msg << "unsupported maxval " << maxval << " in '" << path << "' (must be <= 255)";
        throw io_error(msg.str());
    }

    const size_t count = static_cast<size_t>(width) * height;
    std::vector<double> vals(count);
    if (magic == "P5") {
        std::vector<uint8_t> bytes(count);
        in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(count));
        if (static_cast<size_t>(in.gcount()) != count) {
            throw io_error("truncated PGM payload in '" + path + "'");
        }
        for (size_t i = 0; i < count; ++i) {
            if (bytes[i] > maxval) throw io_error("pixel exceeds maxval in '" + path + "'");
            vals[i] = bytes[i];
        }
    } else {
        for (size_t i = 0; i < count; ++i) {
            const std::string tok = next_token(in);
            if (tok.empty()) throw io_error("truncated PGM payload in '" + path + "'");
            size_t pos = 0;
            long v = -1;
            try {
                v = std::stol(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || v < 0 || v > maxval) {
                throw io_error("bad pixel value '" + tok + "' in '" + path + "'");
            }
            vals[i] = static_cast<double>(v);
        }
    }
    return Image(width, height, std::move(vals), static_cast<double>(maxval));
}

void write_pgm(const Image& img, const std::string& path) {
    for (double v : img.values) {
        if (!(v >= 0.0 && v <= 255.0)) {
            throw std::invalid_argument("write_pgm requires values in [0, 255]");
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<uint8_t> bytes(img.pixel_count());
    for (size_t i = 0; i < bytes.size(); ++i) {
        bytes[i] = static_cast<uint8_t>(std::floor(img.values[i] + 0.5));  // half-up
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("write failed for '" + path + "'");
}

Image normalize(const Image& img) {
    if (!(img.range_hint > 0)) {
        throw std::invalid_argument("normalize requires a positive range_hint");
    }
    std::vector<double> vals(img.pixel_count());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = img.values[i] / img.range_hint;
    return Image(img.width, img.height, std::move(vals), 1.0);
}

std::pair<Image, Image> sum_diff(const Image& f1, const Image& f2) {
    if (!f1.same_size(f2)) throw std::invalid_argument("sum_diff requires equal dimensions");
    std::vector<double> plus(f1.pixel_count());
    std::vector<double> minus(f1.pixel_count());
    for (size_t i = 0; i < plus.size(); ++i) {
        plus[i] = f2.values[i] + f1.values[i];
        minus[i] = f2.values[i] - f1.values[i];
    }
    return {Image(f1.width, f1.height, std::move(plus), f1.range_hint),
            Image(f1.width, f1.height, std::move(minus), f1.range_hint)};
}

Image rotate90(const Image& img) {
    Image out(img.height, img.width, img.range_hint);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            out.at(y, img.width - 1 - x) = img.at(x, y);
        }
    }
    return out;
}

}  // namespace dissim
