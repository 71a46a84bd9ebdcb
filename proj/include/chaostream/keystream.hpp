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
#include <optional>
#include <span>
#include <vector>

#include "chaostream/chaotic_maps.hpp"
#include "chaostream/lfsr.hpp"

namespace chaostream {

/// Perturbed chaotic generator. Each step:
///   y = LSB(x);  z = LFSR output;  w = y XOR z   (the keystream bit)
///   x~ = x with LSB replaced by w  (= x.raw XOR z in bit 0)
///   x  = map(x~)
/// The LFSR clocks exactly once per map iteration, output before shift.
struct GeneratorState {
    MapKind map;
    FixedPointValue x;
    LfsrState lfsr;
    std::uint64_t steps = 0;

    int next_bit();
};

GeneratorState make_generator(MapKind map, FixedPointValue x0, LfsrState lfsr);

/// `count` keystream bits, one 0/1 per element. Identical to `count`
/// single-bit steps.
std::vector<std::uint8_t> ks_bits(GeneratorState& g, std::size_t count);

/// `count` keystream bytes; each packs 8 consecutive bits with the
/// first-emitted bit in the most significant position.
std::vector<std::uint8_t> ks_bytes(GeneratorState& g, std::size_t count);

/// LSBs of the bare (unperturbed) map orbit, for the contrast experiments.
std::vector<std::uint8_t> bare_map_bits(const MapKind& map, FixedPointValue x0,
                                        std::size_t count);

struct PeriodReport {
    std::uint64_t state_period = 0;  // cycle length of the composite state
    std::uint64_t tail_length = 0;   // pre-periodic prefix
    std::uint64_t bit_period = 0;    // minimal period of the emitted bits on the cycle
    std::uint64_t lfsr_period_pz = 0;  // 2^k - 1, or 0 when no LFSR is attached
    bool multiple_of_pz = false;     // bit_period % pz == 0
    bool truncated = false;          // cycle not found within the step budget
};

/// Brent cycle detection over the composite (x, register) state under the
/// keystream transition; with no LFSR the transition is the bare map and the
/// observed bit is LSB(x). The bit period is the smallest divisor p of the
/// state period for which the cycle's bit sequence is p-periodic.
PeriodReport measure_period(const MapKind& map, FixedPointValue x0,
                            const std::optional<LfsrState>& lfsr,
                            std::uint64_t max_steps);

/// Exact minimal period of w(p) = y(p) XOR z(p) by brute force over
/// lcm(|y|, |z|) positions. Inputs are one full period of each sequence.
std::uint64_t xor_period_oracle(std::span<const std::uint8_t> y,
                                std::span<const std::uint8_t> z);

struct Prop1Trial {
    std::uint64_t x0_raw = 0;
    std::uint64_t gamma_raw = 0;  // scale 2^n (MLM carries its integer bits here too)
    std::uint64_t lfsr_seed = 0;
    PeriodReport bare;
    PeriodReport perturbed;
};

struct Prop1Summary {
    int trials = 0;
    int precision = 0;
    int lfsr_order = 0;
    std::uint64_t pz = 0;
    std::vector<Prop1Trial> rows;
    int divisible_count = 0;          // perturbed bit periods divisible by pz
    std::uint64_t bare_median_state = 0;
    std::uint64_t perturbed_median_state = 0;
};

/// Runs `trials` random keys through measure_period with and without the
/// LFSR attached. Deterministic for a given seed. Desk scale: n <= 16,
/// order in {3, 5, 7}.
Prop1Summary check_proposition1(int trials, int precision, int order,
                                MapFamily family, std::uint64_t seed);

}  // namespace chaostream
