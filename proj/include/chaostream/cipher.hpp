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
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaostream/keystream.hpp"

namespace chaostream {

inline constexpr int kCipherPrecision = 32;   // state and STM gamma precision
inline constexpr int kCipherLfsrOrder = 31;   // default-taps 31-bit register
inline constexpr int kMlmGammaIntBits = 4;    // key gamma field: 4.28 fixed point
inline constexpr int kMlmGammaFracBits = 28;

/// 95-bit cipher key. Hex layout (24 chars, 96 bits, top bit zero):
/// bits 94..63 = x0, bits 62..31 = gamma, bits 30..0 = LFSR seed.
///   x0:    raw fixed point at n=32, nonzero
///   gamma: STM: raw fixed point at n=32, nonzero (value in (0,1))
///          MLM: 4.28 fixed point, value in (4,16) and not a multiple of 4
///   seed:  31-bit register contents, nonzero
struct Key {
    MapFamily family = MapFamily::Stm;
    std::uint32_t x0_bits = 0;
    std::uint32_t gamma_bits = 0;
    std::uint32_t lfsr_seed = 0;
};

/// Throws std::invalid_argument naming the offending field.
void key_validate(const Key& key);

/// Parses 24 hex characters; validates every field invariant.
Key key_parse(std::string_view hex, MapFamily family);

/// Canonical lowercase 24-character encoding; inverse of key_parse.
std::string key_encode(const Key& key);

/// Fills a key from 32-bit entropy words, redrawing any field that violates
/// its invariant (rejection sampling; deterministic given the word stream).
Key keygen(MapFamily family, const std::function<std::uint32_t()>& entropy);

/// Same, drawing from the platform entropy source.
Key keygen(MapFamily family);

/// Map parameters encoded by the key (STM gamma at n=32, or MLM constants
/// derived from the 4.28 gamma field widened to 4.32).
MapKind key_map(const Key& key);

GeneratorState make_cipher_generator(const Key& key);

/// Keystream XOR. Length preserving, no header, no padding; decrypt is the
/// same operation. There is no nonce: a key must never be reused across
/// messages.
std::vector<std::uint8_t> encrypt(const Key& key, std::span<const std::uint8_t> data);
std::vector<std::uint8_t> decrypt(const Key& key, std::span<const std::uint8_t> data);

}  // namespace chaostream
