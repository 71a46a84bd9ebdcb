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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "chaostream/bitseq.hpp"

namespace chaostream {

/// 8-bit grayscale image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;
};

/// Binary PGM ("P5", maxval 255) with '#' comments allowed in the header.
GrayImage pgm_read(std::span<const std::uint8_t> bytes);

/// Canonical form: "P5\n<w> <h>\n255\n" followed by the raw payload.
std::vector<std::uint8_t> pgm_write(const GrayImage& img);

/// Pearson correlation over all pixels; requires equal dimensions and
/// nonzero variance on both sides.
double corr2(const GrayImage& a, const GrayImage& b);

/// Bit matrix as an image: 1 -> black (0), 0 -> white (255); rows of
/// `width` pixels, trailing cells white.
GrayImage bitmap_render(const BitSequence& bits, int width);

}  // namespace chaostream
