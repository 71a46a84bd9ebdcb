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
#include <variant>

#include "chaostream/fixed_point.hpp"

namespace chaostream {

enum class MapFamily { Stm, Mlm };

/// Piecewise-linear tent map with breakpoint gamma in (0,1):
///   x <= gamma : x / gamma
///   x >  gamma : (1 - x) / (1 - gamma)
struct StmParams {
    FixedPointValue gamma;
};

/// Validates gamma in the open interval (0,1) at its own precision.
StmParams stm_params(FixedPointValue gamma);

/// Logistic map gamma*x*(1-x) with gamma > 4, folded back into [0,1) by a
/// mod-1 step; the central interval [eta1, eta2], where the parabola rises
/// above floor(gamma/4), is additionally renormalized by d = frac(gamma/4).
/// eta1 and eta2 are the two roots of gamma*x*(1-x) = floor(gamma/4),
/// symmetric around 1/2.
struct MlmParams {
    int bits = 32;                 // fractional precision n (shared with the state)
    int gamma_int_bits = 4;        // g: gamma < 2^g
    uint128 gamma_raw = 0;         // gamma at scale 2^bits
    std::uint64_t floor_quarter = 0;
    FixedPointValue eta1;
    FixedPointValue eta2;
    FixedPointValue d;             // frac(gamma/4) at n bits, never zero
};

/// Derives floor(gamma/4), d and the interval roots from a real gamma,
/// quantized to gamma_int_bits.bits fixed point first.
/// Errors: gamma <= 4, gamma >= 2^gamma_int_bits, gamma (once quantized)
/// an exact multiple of 4 (d would be zero).
MlmParams mlm_derive_constants(long double gamma, int bits, int gamma_int_bits = 4);

/// Same, from an already-quantized gamma at scale 2^bits. The roots are
/// polished to the raw values minimizing |gamma*eta*(1-eta) - floor(gamma/4)|
/// exactly in integer arithmetic.
MlmParams mlm_derive_constants_raw(uint128 gamma_raw, int bits, int gamma_int_bits = 4);

using MapKind = std::variant<StmParams, MlmParams>;

/// One tent-map step. Divisions truncate; a quotient of exactly 1.0
/// saturates to 2^n - 1 so the state never leaves [0,1).
FixedPointValue stm_step(FixedPointValue x, const StmParams& p);

/// One modified-logistic step: t = gamma*x*(1-x) computed exactly in wide
/// integer arithmetic, v = top n fractional bits of t (truncated mod 1);
/// inside [eta1, eta2] the result is floor(v * 2^n / d), saturated.
FixedPointValue mlm_step(FixedPointValue x, const MlmParams& p);

FixedPointValue map_step(FixedPointValue x, const MapKind& m);

int map_precision(const MapKind& m);
MapFamily map_family(const MapKind& m);

}  // namespace chaostream
