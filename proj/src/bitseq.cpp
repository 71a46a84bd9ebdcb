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

#include "chaostream/bitseq.hpp"

#include <stdexcept>

namespace chaostream {

BitSequence BitSequence::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
    if (nbits == 0) {
        throw std::invalid_argument("bit sequence: length must be at least 1");
    }
    if (nbits > bytes.size() * 8) {
        throw std::invalid_argument("bit sequence: length exceeds the supplied bytes");
    }
    BitSequence s;
    s.length_ = nbits;
    s.bytes_.assign(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>((nbits + 7) / 8));
    const unsigned rem = nbits % 8;
    if (rem) s.bytes_.back() &= static_cast<std::uint8_t>(0xFF << (8 - rem));
    return s;
}

BitSequence BitSequence::from_bits(std::span<const std::uint8_t> bits) {
    if (bits.empty()) {
        throw std::invalid_argument("bit sequence: length must be at least 1");
    }
    BitSequence s;
    s.length_ = bits.size();
    s.bytes_.assign((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] & 1) s.bytes_[i >> 3] |= static_cast<std::uint8_t>(0x80 >> (i & 7));
    }
    return s;
}

BitSequence BitSequence::from_string(std::string_view zeros_and_ones) {
    std::vector<std::uint8_t> bits;
    bits.reserve(zeros_and_ones.size());
    for (char c : zeros_and_ones) {
        if (c == '0' || c == '1') bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return from_bits(bits);
}

}  // namespace chaostream
