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

#include "chaostream/lfsr.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace chaostream {

namespace {

int parity128(uint128 v) {
    const auto lo = static_cast<std::uint64_t>(v);
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    return (__builtin_popcountll(lo) + __builtin_popcountll(hi)) & 1;
}

// GF(2) polynomial as a 256-bit coefficient mask, bit j = coeff of x^j.
// Degrees stay below 2*89, so four limbs are enough.
struct Poly {
    std::array<std::uint64_t, 4> w{};

    bool bit(int j) const { return (w[j >> 6] >> (j & 63)) & 1; }
    void set(int j) { w[j >> 6] |= std::uint64_t{1} << (j & 63); }
    bool is_zero() const { return !(w[0] | w[1] | w[2] | w[3]); }

    int degree() const {
        for (int limb = 3; limb >= 0; --limb) {
            if (w[limb]) return limb * 64 + 63 - __builtin_clzll(w[limb]);
        }
        return -1;
    }

    void operator^=(const Poly& o) {
        for (int i = 0; i < 4; ++i) w[i] ^= o.w[i];
    }
};

Poly shifted(const Poly& p, int by) {
    Poly r;
    const int limb = by >> 6, off = by & 63;
    for (int i = 3; i >= 0; --i) {
        std::uint64_t v = 0;
        if (i - limb >= 0) v = p.w[i - limb] << off;
        if (off && i - limb - 1 >= 0) v |= p.w[i - limb - 1] >> (64 - off);
        r.w[i] = v;
    }
    return r;
}

// square over GF(2): spread every bit j to position 2j
Poly square(const Poly& p, int max_deg) {
    Poly r;
    for (int j = 0; j <= max_deg; ++j) {
        if (p.bit(j)) r.set(2 * j);
    }
    return r;
}

void reduce(Poly& p, const Poly& f, int deg_f) {
    int d;
    while ((d = p.degree()) >= deg_f) {
        p ^= shifted(f, d - deg_f);
    }
}

Poly feedback_poly(uint128 taps, int order) {
    Poly f;
    f.set(0);
    f.set(order);
    for (int i = 0; i < order - 1; ++i) {
        if ((taps >> i) & 1) f.set(i + 1);
    }
    return f;
}

void check_order(int order) {
    if (!is_mersenne_order(order)) {
        throw std::invalid_argument("lfsr: order " + std::to_string(order) +
                                    " is not an admitted Mersenne exponent");
    }
}

}  // namespace

bool is_mersenne_order(int order) {
    return std::find(kMersenneOrders.begin(), kMersenneOrders.end(), order) !=
           kMersenneOrders.end();
}

uint128 mersenne_period(int order) { return (uint128{1} << order) - 1; }

int LfsrState::step() {
    const int out = static_cast<int>(reg & 1);
    const int fb = out ^ parity128((reg >> 1) & config.taps);
    reg = (reg >> 1) | (uint128{static_cast<unsigned>(fb)} << (config.order - 1));
    return out;
}

uint128 lfsr_default_taps(int order) {
    switch (order) {
        case 3:  return 0x1;                  // x^3 + x + 1
        case 5:  return 0x2;                  // x^5 + x^2 + 1
        case 7:  return 0x1;                  // x^7 + x + 1
        case 13: return 0xD;                  // x^13 + x^4 + x^3 + x + 1
        case 17: return 0x4;                  // x^17 + x^3 + 1
        case 19: return 0x13;                 // x^19 + x^5 + x^2 + x + 1
        case 31: return 0x4;                  // x^31 + x^3 + 1
        case 61: return 0x13;                 // x^61 + x^5 + x^2 + x + 1
        case 89: return uint128{1} << 37;     // x^89 + x^38 + 1
        default:
            check_order(order);
            throw std::logic_error("lfsr: no default taps entry");
    }
}

LfsrState lfsr_new(int order, uint128 seed) {
    return lfsr_new(order, lfsr_default_taps(order), seed);
}

LfsrState lfsr_new(int order, uint128 taps, uint128 seed) {
    check_order(order);
    if (taps == 0) {
        throw std::invalid_argument("lfsr: taps mask must be nonzero");
    }
    if (taps >> (order - 1)) {
        throw std::invalid_argument("lfsr: taps mask selects the implicit x^order term");
    }
    if (seed == 0) {
        throw std::invalid_argument("lfsr: seed must be nonzero (all-zero register is a fixed point)");
    }
    if (seed >> order) {
        throw std::invalid_argument("lfsr: seed does not fit in " + std::to_string(order) + " bits");
    }
    if (!is_irreducible(taps, order)) {
        throw std::invalid_argument("lfsr: feedback polynomial is reducible");
    }
    return LfsrState{LfsrConfig{order, taps}, seed};
}

std::uint64_t lfsr_period(const LfsrConfig& config) {
    check_order(config.order);
    if (config.order > 19) {
        throw std::invalid_argument("lfsr_period: exhaustive walk limited to order <= 19");
    }
    LfsrState s{config, 1};
    const std::uint64_t limit = (std::uint64_t{1} << config.order) + 1;
    for (std::uint64_t i = 1; i <= limit; ++i) {
        s.step();
        if (s.reg == 1) return i;
    }
    return 0;
}

bool is_irreducible(uint128 taps, int order) {
    check_order(order);
    if (taps == 0 || (taps >> (order - 1)) != 0) return false;

    const Poly f = feedback_poly(taps, order);
    // A root in GF(2) gives a linear factor: f(0) = 1 by construction,
    // f(1) = parity of the term count. Even term count => divisible by x+1.
    int terms = 2;
    for (int i = 0; i < order - 1; ++i) terms += static_cast<int>((taps >> i) & 1);
    if (terms % 2 == 0) return false;

    // For prime degree k, irreducibility is equivalent to having no linear
    // factor and x^(2^k) == x (mod f): any nontrivial factorization would
    // need factor degrees dividing k.
    Poly r;
    r.set(1);
    for (int i = 0; i < order; ++i) {
        r = square(r, order - 1);
        reduce(r, f, order);
    }
    Poly want;
    want.set(1);
    r ^= want;
    return r.is_zero();
}

}  // namespace chaostream
