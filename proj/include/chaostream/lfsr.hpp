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

#include <array>
#include <cstdint>
#include <optional>

#include "chaostream/fixed_point.hpp"  // uint128

namespace chaostream {

/// Admitted register orders: Mersenne exponents, so the full period
/// 2^k - 1 is prime and irreducible feedback implies maximal period.
inline constexpr std::array<int, 9> kMersenneOrders = {3, 5, 7, 13, 17, 19, 31, 61, 89};

bool is_mersenne_order(int order);

/// 2^order - 1 (does not fit in 64 bits for order 89).
uint128 mersenne_period(int order);

/// Feedback polynomial f(x) = x^order + sum_{taps bit i} x^(i+1) + 1.
/// Tap bit i selects the x^(i+1) term; x^order and the constant term are
/// implicit, so valid masks are nonzero and below 2^(order-1).
struct LfsrConfig {
    int order = 31;
    uint128 taps = 0;
};

/// Fibonacci register, right shift, output taken before the shift:
///   out = reg bit 0
///   fb  = out XOR parity((reg >> 1) & taps)
///   reg = (reg >> 1) | (fb << (order-1))
struct LfsrState {
    LfsrConfig config;
    uint128 reg = 0;

    int step();
    friend bool operator==(const LfsrState&, const LfsrState&) = default;
};

/// Known primitive polynomial for each admitted order.
uint128 lfsr_default_taps(int order);

/// Builds a validated register: order admitted, taps irreducible,
/// seed nonzero and within order bits. Omitting taps uses the default table.
LfsrState lfsr_new(int order, uint128 seed);
LfsrState lfsr_new(int order, uint128 taps, uint128 seed);

/// Exhaustive walk from register 1 until it recurs; exact for order <= 19.
/// Returns 0 if register 1 never recurs within 2^order steps (possible only
/// for reducible taps, where the walk can fall into a disjoint cycle).
std::uint64_t lfsr_period(const LfsrConfig& config);

/// True iff x^order + taps-terms + 1 is irreducible over GF(2), via the
/// squaring chain x -> x^(2^order) mod f. For the prime orders admitted
/// here this is equivalent to primitivity (the period 2^order - 1 is prime).
bool is_irreducible(uint128 taps, int order);

}  // namespace chaostream
