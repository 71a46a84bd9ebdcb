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

namespace chaostream {

using uint128 = unsigned __int128;

inline constexpr int kMinPrecision = 8;
inline constexpr int kMaxPrecision = 64;

/// Unsigned fixed point in [0,1): represented value = raw / 2^bits.
/// Bit-exact across platforms; the whole keystream pipeline runs on it.
struct FixedPointValue {
    int bits = 32;           // precision n, kMinPrecision..kMaxPrecision
    std::uint64_t raw = 0;   // < 2^bits

    long double to_real() const;
    friend bool operator==(const FixedPointValue&, const FixedPointValue&) = default;
};

/// 2^bits (needs 128 bits when bits = 64).
constexpr uint128 fp_one(int bits) { return uint128{1} << bits; }

/// Largest representable raw value, 2^bits - 1.
constexpr std::uint64_t fp_max_raw(int bits) {
    return static_cast<std::uint64_t>(fp_one(bits) - 1);
}

/// Round a real in [0,1) to n fractional bits (nearest, half up),
/// clamping results that would round to 1.0 down to 2^n - 1.
FixedPointValue fp_from_real(long double value, int bits);

/// Wrap an already-quantized raw value; validates raw < 2^bits.
FixedPointValue fp_from_raw(int bits, std::uint64_t raw);

}  // namespace chaostream
