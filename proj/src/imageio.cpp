/*
 * Copyright 2026 The chaostream authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "chaostream/imageio.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chaostream {

namespace {

// PGM header tokenizer: whitespace separated, '#' starts a comment that
// runs to the end of the line.
class HeaderScanner {
public:
    explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    long next_int() {
        skip();
        if (pos_ >= bytes_.size() || !is_digit(bytes_[pos_])) {
            throw std::invalid_argument("pgm: malformed header (expected an integer)");
        }
        long v = 0;
        while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1 << 30) throw std::invalid_argument("pgm: header value out of range");
            ++pos_;
        }
        return v;
    }

    // single whitespace byte after the maxval, then the payload begins
    std::size_t payload_offset() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            throw std::invalid_argument("pgm: missing separator before the pixel payload");
        }
        return pos_ + 1;
    }

private:
    static bool is_space(std::uint8_t c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    }
    static bool is_digit(std::uint8_t c) { return c >= '0' && c <= '9'; }

    void skip() {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                return;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

GrayImage pgm_read(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        if (bytes.size() >= 2 && bytes[0] == 'P') {
            throw std::invalid_argument(std::string("pgm: unsupported magic 'P") +
                                        static_cast<char>(bytes[1]) + "' (only binary P5)");
        }
        throw std::invalid_argument("pgm: bad magic (expected P5)");
    }
    HeaderScanner scan(bytes.subspan(2));
    const long w = scan.next_int();
    const long h = scan.next_int();
    const long maxval = scan.next_int();
    if (w <= 0 || h <= 0) {
        throw std::invalid_argument("pgm: zero image dimensions");
    }
    if (maxval != 255) {
        throw std::invalid_argument("pgm: maxval " + std::to_string(maxval) +
                                    " unsupported (must be 255)");
    }
    const std::size_t offset = 2 + scan.payload_offset();
    const std::size_t need = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (bytes.size() - offset < need) {
        throw std::invalid_argument("pgm: truncated payload");
    }
    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(h);
    img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                      bytes.begin() + static_cast<std::ptrdiff_t>(offset + need));
    return img;
}

std::vector<std::uint8_t> pgm_write(const GrayImage& img) {
    if (img.width <= 0 || img.height <= 0 ||
        img.pixels.size() != static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height)) {
        throw std::invalid_argument("pgm: inconsistent image dimensions");
    }
    const std::string header =
        "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

double corr2(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height) {
        throw std::invalid_argument("corr2: image dimensions differ");
    }
    const std::size_t n = a.pixels.size();
    std::uint64_t sa = 0, sb = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sa += a.pixels[i];
        sb += b.pixels[i];
    }
    const double ma = static_cast<double>(sa) / static_cast<double>(n);
    const double mb = static_cast<double>(sb) / static_cast<double>(n);
    double cross = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a.pixels[i] - ma;
        const double db = b.pixels[i] - mb;
        cross += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) {
        throw std::invalid_argument("corr2: image has zero pixel variance");
    }
    return cross / std::sqrt(va * vb);
}

GrayImage bitmap_render(const BitSequence& bits, int width) {
    if (width < 1) {
        throw std::invalid_argument("bitmap: width must be at least 1");
    }
    const std::size_t n = bits.size();
    const std::size_t height = (n + static_cast<std::size_t>(width) - 1) /
                               static_cast<std::size_t>(width);
    GrayImage img;
    img.width = width;
    img.height = static_cast<int>(height);
    img.pixels.assign(static_cast<std::size_t>(width) * height, 255);
    for (std::size_t i = 0; i < n; ++i) {
        if (bits.bit(i)) img.pixels[i] = 0;
    }
    return img;
}

}  // namespace chaostream
