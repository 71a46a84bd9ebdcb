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

#include "chaostream/fixed_point.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chaostream {

namespace {

void check_bits(int bits) {
    if (bits < kMinPrecision || bits > kMaxPrecision) {
        throw std::invalid_argument("fixed point: precision " + std::to_string(bits) +
                                    " outside [" + std::to_string(kMinPrecision) + ", " +
                                    std::to_string(kMaxPrecision) + "]");
    }
}

}  // namespace

long double FixedPointValue::to_real() const {
    // raw has at most 64 significant bits; exact in an x87 long double.
    return std::ldexp(static_cast<long double>(raw), -bits);
}

FixedPointValue fp_from_real(long double value, int bits) {
    check_bits(bits);
    if (!(value >= 0.0L) || value >= 1.0L) {
        throw std::invalid_argument("fixed point: value outside [0,1)");
    }
    long double scaled = std::ldexp(value, bits);
    long double ip = std::floor(scaled);
    uint128 raw = static_cast<uint128>(ip);
    if (scaled - ip >= 0.5L) raw += 1;
    if (raw > fp_max_raw(bits)) raw = fp_max_raw(bits);
    return FixedPointValue{bits, static_cast<std::uint64_t>(raw)};
}

FixedPointValue fp_from_raw(int bits, std::uint64_t raw) {
    check_bits(bits);
    if (uint128{raw} >= fp_one(bits)) {
        throw std::invalid_argument("fixed point: raw value does not fit in " +
                                    std::to_string(bits) + " bits");
    }
    return FixedPointValue{bits, raw};
}

}  // namespace chaostream
