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

#include "chaostream/chaotic_maps.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chaostream {

namespace {

// 256-bit helpers for the gamma*x*(1-x) product, which needs g+3n bits.
struct U256 {
    uint128 hi = 0;
    uint128 lo = 0;
};

U256 mul_128(uint128 a, uint128 b) {
    const std::uint64_t a0 = static_cast<std::uint64_t>(a);
    const std::uint64_t a1 = static_cast<std::uint64_t>(a >> 64);
    const std::uint64_t b0 = static_cast<std::uint64_t>(b);
    const std::uint64_t b1 = static_cast<std::uint64_t>(b >> 64);
    const uint128 p00 = uint128{a0} * b0;
    const uint128 p01 = uint128{a0} * b1;
    const uint128 p10 = uint128{a1} * b0;
    const uint128 p11 = uint128{a1} * b1;
    const uint128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) +
                        static_cast<std::uint64_t>(p10);
    U256 r;
    r.lo = (mid << 64) | static_cast<std::uint64_t>(p00);
    r.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    return r;
}

bool less(const U256& a, const U256& b) {
    return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
}

// |a - b|
U256 abs_diff(const U256& a, const U256& b) {
    const U256& hi = less(a, b) ? b : a;
    const U256& lo = less(a, b) ? a : b;
    U256 r;
    r.lo = hi.lo - lo.lo;
    r.hi = hi.hi - lo.hi - (hi.lo < lo.lo ? 1 : 0);
    return r;
}

// bits [shift, shift+n) of a 256-bit value, n <= 64
std::uint64_t extract_bits(const U256& v, int shift, int n) {
    uint128 w;
    if (shift >= 128) {
        w = v.hi >> (shift - 128);
    } else if (shift == 0) {
        w = v.lo;
    } else {
        w = (v.lo >> shift) | (v.hi << (128 - shift));
    }
    const uint128 mask = fp_one(n) - 1;
    return static_cast<std::uint64_t>(w & mask);
}

void check_same_precision(const FixedPointValue& x, int param_bits, const char* what) {
    if (x.bits != param_bits) {
        throw std::invalid_argument(std::string(what) + ": state precision " +
                                    std::to_string(x.bits) + " does not match parameter precision " +
                                    std::to_string(param_bits));
    }
}

// q << 3n as a 256-bit value
U256 shifted_target(std::uint64_t q, int n) {
    U256 t;
    if (3 * n >= 128) {
        t.hi = uint128{q} << (3 * n - 128);
    } else {
        t.lo = uint128{q} << (3 * n);
    }
    return t;
}

// |gamma_raw * r * (2^n - r) - q * 2^(3n)|, exact
U256 root_residual(uint128 gamma_raw, std::uint64_t r, std::uint64_t q, int n) {
    const uint128 parab = uint128{r} * (fp_one(n) - r);
    return abs_diff(mul_128(gamma_raw, parab), shifted_target(q, n));
}

}  // namespace

StmParams stm_params(FixedPointValue gamma) {
    if (gamma.raw == 0) {
        throw std::invalid_argument("stm: gamma must lie in the open interval (0,1)");
    }
    return StmParams{gamma};
}

FixedPointValue stm_step(FixedPointValue x, const StmParams& p) {
    check_same_precision(x, p.gamma.bits, "stm_step");
    if (p.gamma.raw == 0) {
        throw std::invalid_argument("stm_step: gamma is zero");
    }
    const int n = x.bits;
    std::uint64_t out;
    if (n <= 32) {
        const std::uint64_t one = std::uint64_t{1} << n;
        const std::uint64_t q = x.raw <= p.gamma.raw
                                    ? (x.raw << n) / p.gamma.raw
                                    : ((one - x.raw) << n) / (one - p.gamma.raw);
        out = q;
    } else {
        const uint128 one = fp_one(n);
        const uint128 q = x.raw <= p.gamma.raw
                              ? (uint128{x.raw} << n) / p.gamma.raw
                              : ((one - x.raw) << n) / (one - p.gamma.raw);
        out = static_cast<std::uint64_t>(q);
        if (q >= fp_one(n)) out = fp_max_raw(n);
    }
    if (out > fp_max_raw(n)) out = fp_max_raw(n);
    return FixedPointValue{n, out};
}

FixedPointValue mlm_step(FixedPointValue x, const MlmParams& p) {
    check_same_precision(x, p.bits, "mlm_step");
    const int n = p.bits;
    std::uint64_t v;
    if (p.gamma_int_bits + 3 * n <= 128) {
        const uint128 t = p.gamma_raw * (uint128{x.raw} * (fp_one(n) - x.raw));
        v = static_cast<std::uint64_t>((t >> (2 * n)) & (fp_one(n) - 1));
    } else {
        const U256 t = mul_128(p.gamma_raw, uint128{x.raw} * (fp_one(n) - x.raw));
        v = extract_bits(t, 2 * n, n);
    }
    if (x.raw >= p.eta1.raw && x.raw <= p.eta2.raw) {
        const uint128 q = (uint128{v} << n) / p.d.raw;
        return FixedPointValue{n, q >= fp_one(n) ? fp_max_raw(n)
                                                 : static_cast<std::uint64_t>(q)};
    }
    return FixedPointValue{n, v};
}

MlmParams mlm_derive_constants_raw(uint128 gamma_raw, int bits, int gamma_int_bits) {
    const int n = bits;
    const int g = gamma_int_bits;
    if (n < kMinPrecision || n > kMaxPrecision) {
        throw std::invalid_argument("mlm: precision outside [8,64]");
    }
    if (g < 3 || g > 8) {
        throw std::invalid_argument("mlm: gamma integer bits outside [3,8]");
    }
    if (gamma_raw <= (uint128{4} << n)) {
        throw std::invalid_argument("mlm: gamma must exceed 4");
    }
    if (gamma_raw >= (uint128{1} << (g + n))) {
        throw std::invalid_argument("mlm: gamma must be below 2^" + std::to_string(g));
    }
    const uint128 quarter_frac = gamma_raw & ((uint128{1} << (n + 2)) - 1);
    if (quarter_frac == 0) {
        throw std::invalid_argument("mlm: gamma is an exact multiple of 4 (d would be zero)");
    }
    const auto q = static_cast<std::uint64_t>(gamma_raw >> (n + 2));

    // d = frac(gamma/4) rounded to n bits; a zero (or full) result means gamma
    // sits within half a quantum of a multiple of 4.
    uint128 d_raw = (quarter_frac + 2) >> 2;
    if (d_raw == 0) {
        throw std::invalid_argument("mlm: gamma too close to a multiple of 4 at this precision");
    }
    if (d_raw >= fp_one(n)) d_raw = fp_max_raw(n);

    // eta1/eta2 are the roots of gamma*eta*(1-eta) = q: estimate with a long
    // double sqrt, then walk to the raw value with the exactly smallest
    // residual (integer arithmetic, so the result is platform independent).
    const long double gamma_val = std::ldexp(static_cast<long double>(gamma_raw), -n);
    const long double s = std::sqrt(0.25L - static_cast<long double>(q) / gamma_val);
    std::uint64_t eta_raw[2];
    for (int i = 0; i < 2; ++i) {
        const long double est = i == 0 ? 0.5L - s : 0.5L + s;
        std::uint64_t r = fp_from_real(est < 0 ? 0.0L : est, n).raw;
        auto res = [&](std::uint64_t rr) { return root_residual(gamma_raw, rr, q, n); };
        while (r > 0 && less(res(r - 1), res(r))) --r;
        while (r < fp_max_raw(n) && less(res(r + 1), res(r))) ++r;
        // |gamma*eta*(1-eta) - q| <= 2^-(n-2), i.e. residual <= 2^(2n+2) at product scale
        U256 tol;
        tol.lo = uint128{1} << (2 * n + 2);
        if (less(tol, res(r))) {
            throw std::invalid_argument("mlm: interval root residual exceeds 2^-(n-2)");
        }
        eta_raw[i] = r;
    }
    if (eta_raw[0] == 0 || eta_raw[1] <= eta_raw[0]) {
        throw std::invalid_argument("mlm: degenerate interval roots");
    }

    MlmParams p;
    p.bits = n;
    p.gamma_int_bits = g;
    p.gamma_raw = gamma_raw;
    p.floor_quarter = q;
    p.eta1 = FixedPointValue{n, eta_raw[0]};
    p.eta2 = FixedPointValue{n, eta_raw[1]};
    p.d = FixedPointValue{n, static_cast<std::uint64_t>(d_raw)};
    return p;
}

MlmParams mlm_derive_constants(long double gamma, int bits, int gamma_int_bits) {
    if (!(gamma > 4.0L) || gamma >= std::ldexp(1.0L, gamma_int_bits)) {
        throw std::invalid_argument("mlm: gamma must lie in (4, 2^" +
                                    std::to_string(gamma_int_bits) + ")");
    }
    const long double scaled = std::ldexp(gamma, bits);
    const long double ip = std::floor(scaled);
    uint128 raw = static_cast<uint128>(ip);
    if (scaled - ip >= 0.5L) raw += 1;
    return mlm_derive_constants_raw(raw, bits, gamma_int_bits);
}

FixedPointValue map_step(FixedPointValue x, const MapKind& m) {
    return std::visit(
        [&](const auto& p) -> FixedPointValue {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, StmParams>) {
                return stm_step(x, p);
            } else {
                return mlm_step(x, p);
            }
        },
        m);
}

int map_precision(const MapKind& m) {
    return std::holds_alternative<StmParams>(m) ? std::get<StmParams>(m).gamma.bits
                                                : std::get<MlmParams>(m).bits;
}

MapFamily map_family(const MapKind& m) {
    return std::holds_alternative<StmParams>(m) ? MapFamily::Stm : MapFamily::Mlm;
}

}  // namespace chaostream
