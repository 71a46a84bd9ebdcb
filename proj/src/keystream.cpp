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

#include "chaostream/keystream.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace chaostream {

namespace {

// Composite state for cycle detection. The register field is unused in the
// bare-map regime.
struct CompositeState {
    std::uint64_t x;
    uint128 reg;

    bool operator==(const CompositeState&) const = default;
};

struct Transition {
    const MapKind* map;
    int lfsr_order = 0;
    uint128 lfsr_taps = 0;
    bool has_lfsr = false;
    int precision;

    int emitted_bit(const CompositeState& s) const {
        const int y = static_cast<int>(s.x & 1);
        return has_lfsr ? y ^ static_cast<int>(s.reg & 1) : y;
    }

    CompositeState advance(const CompositeState& s) const {
        std::uint64_t x = s.x;
        uint128 reg = s.reg;
        if (has_lfsr) {
            LfsrState l{LfsrConfig{lfsr_order, lfsr_taps}, reg};
            const int z = l.step();
            reg = l.reg;
            x ^= static_cast<std::uint64_t>(z);
        }
        const FixedPointValue next = map_step(FixedPointValue{precision, x}, *map);
        return CompositeState{next.raw, reg};
    }
};

std::uint64_t median_of(std::vector<std::uint64_t> v) {
    if (v.empty()) return 0;
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

int GeneratorState::next_bit() {
    const int y = static_cast<int>(x.raw & 1);
    const int z = lfsr.step();
    const int w = y ^ z;
    x.raw ^= static_cast<std::uint64_t>(z);  // replace the LSB with w
    x = map_step(x, map);
    ++steps;
    return w;
}

GeneratorState make_generator(MapKind map, FixedPointValue x0, LfsrState lfsr) {
    if (x0.bits != map_precision(map)) {
        throw std::invalid_argument("generator: state precision does not match map parameters");
    }
    if (lfsr.reg == 0) {
        throw std::invalid_argument("generator: LFSR register must be nonzero");
    }
    return GeneratorState{std::move(map), x0, lfsr, 0};
}

std::vector<std::uint8_t> ks_bits(GeneratorState& g, std::size_t count) {
    std::vector<std::uint8_t> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = static_cast<std::uint8_t>(g.next_bit());
    }
    return out;
}

std::vector<std::uint8_t> ks_bytes(GeneratorState& g, std::size_t count) {
    std::vector<std::uint8_t> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        unsigned byte = 0;
        for (int j = 0; j < 8; ++j) {
            byte = (byte << 1) | static_cast<unsigned>(g.next_bit());
        }
        out[i] = static_cast<std::uint8_t>(byte);
    }
    return out;
}

std::vector<std::uint8_t> bare_map_bits(const MapKind& map, FixedPointValue x0,
                                        std::size_t count) {
    if (x0.bits != map_precision(map)) {
        throw std::invalid_argument("bare_map_bits: state precision does not match map parameters");
    }
    std::vector<std::uint8_t> out(count);
    FixedPointValue x = x0;
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = static_cast<std::uint8_t>(x.raw & 1);
        x = map_step(x, map);
    }
    return out;
}

PeriodReport measure_period(const MapKind& map, FixedPointValue x0,
                            const std::optional<LfsrState>& lfsr,
                            std::uint64_t max_steps) {
    Transition t;
    t.map = &map;
    t.precision = map_precision(map);
    if (x0.bits != t.precision) {
        throw std::invalid_argument("measure_period: state precision does not match map parameters");
    }
    PeriodReport report;
    CompositeState start{x0.raw, 0};
    if (lfsr) {
        t.has_lfsr = true;
        t.lfsr_order = lfsr->config.order;
        t.lfsr_taps = lfsr->config.taps;
        start.reg = lfsr->reg;
        report.lfsr_period_pz = static_cast<std::uint64_t>(mersenne_period(t.lfsr_order));
    }

    std::uint64_t budget = max_steps;
    auto advance = [&](const CompositeState& s) -> std::optional<CompositeState> {
        if (budget == 0) return std::nullopt;
        --budget;
        return t.advance(s);
    };

    // Brent: find the cycle length lambda, then the tail length mu.
    std::uint64_t power = 1, lambda = 1;
    CompositeState tortoise = start;
    std::optional<CompositeState> hare = advance(start);
    while (hare && !(*hare == tortoise)) {
        if (power == lambda) {
            tortoise = *hare;
            power *= 2;
            lambda = 0;
        }
        hare = advance(*hare);
        ++lambda;
    }
    if (!hare) {
        report.truncated = true;
        return report;
    }
    report.state_period = lambda;

    CompositeState front = start;
    for (std::uint64_t i = 0; i < lambda; ++i) {
        auto next = advance(front);
        if (!next) { report.truncated = true; return report; }
        front = *next;
    }
    CompositeState back = start;
    std::uint64_t mu = 0;
    while (!(front == back)) {
        auto f = advance(front);
        auto b = advance(back);
        if (!f || !b) { report.truncated = true; return report; }
        front = *f;
        back = *b;
        ++mu;
    }
    report.tail_length = mu;

    // Emitted bits around one cycle, then the smallest divisor of lambda
    // that reproduces them.
    std::vector<std::uint8_t> bits(lambda);
    CompositeState s = back;
    for (std::uint64_t i = 0; i < lambda; ++i) {
        bits[i] = static_cast<std::uint8_t>(t.emitted_bit(s));
        s = t.advance(s);
    }
    report.bit_period = lambda;
    for (std::uint64_t p = 1; p <= lambda / 2; ++p) {
        if (lambda % p != 0) continue;
        bool ok = true;
        for (std::uint64_t i = p; i < lambda && ok; ++i) {
            ok = bits[i] == bits[i - p];
        }
        if (ok) {
            report.bit_period = p;
            break;
        }
    }
    report.multiple_of_pz =
        report.lfsr_period_pz != 0 && report.bit_period % report.lfsr_period_pz == 0;
    return report;
}

std::uint64_t xor_period_oracle(std::span<const std::uint8_t> y,
                                std::span<const std::uint8_t> z) {
    if (y.empty() || z.empty()) {
        throw std::invalid_argument("xor_period_oracle: empty pattern");
    }
    const std::uint64_t py = y.size(), pz = z.size();
    const std::uint64_t l = std::lcm(py, pz);
    if (l > (std::uint64_t{1} << 26)) {
        throw std::invalid_argument("xor_period_oracle: lcm of periods too large for brute force");
    }
    std::vector<std::uint8_t> w(l);
    for (std::uint64_t i = 0; i < l; ++i) {
        w[i] = y[i % py] ^ z[i % pz];
    }
    for (std::uint64_t p = 1; p < l; ++p) {
        if (l % p != 0) continue;
        bool ok = true;
        for (std::uint64_t i = p; i < l && ok; ++i) {
            ok = w[i] == w[i - p];
        }
        if (ok) return p;
    }
    return l;
}

Prop1Summary check_proposition1(int trials, int precision, int order,
                                MapFamily family, std::uint64_t seed) {
    if (precision > 16) {
        throw std::invalid_argument("check_proposition1: precision above desk scale (n <= 16)");
    }
    if (order != 3 && order != 5 && order != 7) {
        throw std::invalid_argument("check_proposition1: order must be 3, 5 or 7");
    }
    const int n = precision;
    Prop1Summary summary;
    summary.trials = trials;
    summary.precision = n;
    summary.lfsr_order = order;
    summary.pz = static_cast<std::uint64_t>(mersenne_period(order));

    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t lo, std::uint64_t hi) {  // inclusive range
        return lo + rng() % (hi - lo + 1);
    };

    const std::uint64_t budget =
        8 * (std::uint64_t{1} << n) * summary.pz + 1024;

    std::vector<std::uint64_t> bare_periods, pert_periods;
    for (int tindex = 0; tindex < trials; ++tindex) {
        Prop1Trial trial;
        trial.x0_raw = draw(1, fp_max_raw(n));
        MapKind map = StmParams{};
        if (family == MapFamily::Stm) {
            trial.gamma_raw = draw(1, fp_max_raw(n));
            map = stm_params(FixedPointValue{n, trial.gamma_raw});
        } else {
            for (;;) {
                trial.gamma_raw = draw((std::uint64_t{4} << n) + 1,
                                       (std::uint64_t{16} << n) - 1);
                try {
                    map = mlm_derive_constants_raw(trial.gamma_raw, n, 4);
                    break;
                } catch (const std::invalid_argument&) {
                    // gamma landed on (or next to) a multiple of 4; redraw
                }
            }
        }
        trial.lfsr_seed = draw(1, (std::uint64_t{1} << order) - 1);

        const FixedPointValue x0{n, trial.x0_raw};
        trial.bare = measure_period(map, x0, std::nullopt, budget);
        trial.perturbed =
            measure_period(map, x0, lfsr_new(order, trial.lfsr_seed), budget);
        if (trial.perturbed.multiple_of_pz) ++summary.divisible_count;
        bare_periods.push_back(trial.bare.state_period);
        pert_periods.push_back(trial.perturbed.state_period);
        summary.rows.push_back(trial);
    }
    summary.bare_median_state = median_of(bare_periods);
    summary.perturbed_median_state = median_of(pert_periods);
    return summary;
}

}  // namespace chaostream
