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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace chaostream {

/// Packed bit sequence, first bit in the most significant position of
/// byte 0. Bits past `length` are kept zero.
class BitSequence {
public:
    BitSequence() = default;

    static BitSequence from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);
    static BitSequence from_bits(std::span<const std::uint8_t> bits);  // one 0/1 per element
    static BitSequence from_string(std::string_view zeros_and_ones);

    std::size_t size() const { return length_; }
    int bit(std::size_t i) const {
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
    }
    const std::vector<std::uint8_t>& bytes() const { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t length_ = 0;
};

}  // namespace chaostream
