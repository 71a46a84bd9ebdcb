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

#include "chaostream/cipher.hpp"

#include <random>
#include <stdexcept>

namespace chaostream {

namespace {

constexpr std::uint32_t kMlmGammaFour = 4u << kMlmGammaFracBits;  // 4.0 in 4.28

bool mlm_gamma_ok(std::uint32_t gamma_bits) {
    if (gamma_bits <= kMlmGammaFour) return false;              // value <= 4
    if ((gamma_bits & ((1u << 30) - 1)) == 0) return false;     // multiple of 4 (8.0, 12.0)
    return true;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

void key_validate(const Key& key) {
    if (key.x0_bits == 0) {
        throw std::invalid_argument("key: x0 must be nonzero (x0 lies in the open interval (0,1))");
    }
    if (key.lfsr_seed == 0) {
        throw std::invalid_argument("key: LFSR seed must be nonzero");
    }
    if (key.lfsr_seed >> kCipherLfsrOrder) {
        throw std::invalid_argument("key: LFSR seed exceeds 31 bits");
    }
    if (key.family == MapFamily::Stm) {
        if (key.gamma_bits == 0) {
            throw std::invalid_argument("key: gamma must be nonzero (gamma lies in (0,1))");
        }
    } else {
        if (key.gamma_bits <= kMlmGammaFour) {
            throw std::invalid_argument("key: gamma must exceed 4");
        }
        if (!mlm_gamma_ok(key.gamma_bits)) {
            throw std::invalid_argument("key: gamma is an exact multiple of 4");
        }
    }
}

Key key_parse(std::string_view hex, MapFamily family) {
    if (hex.size() != 24) {
        throw std::invalid_argument("key: expected exactly 24 hex characters, got " +
                                    std::to_string(hex.size()));
    }
    uint128 value = 0;
    for (char c : hex) {
        const int d = hex_digit(c);
        if (d < 0) {
            throw std::invalid_argument(std::string("key: invalid hex character '") + c + "'");
        }
        value = (value << 4) | static_cast<unsigned>(d);
    }
    if (value >> 95) {
        throw std::invalid_argument("key: top bit of the 96-bit encoding must be zero");
    }
    Key key;
    key.family = family;
    key.x0_bits = static_cast<std::uint32_t>(value >> 63);
    key.gamma_bits = static_cast<std::uint32_t>((value >> 31) & 0xFFFFFFFFu);
    key.lfsr_seed = static_cast<std::uint32_t>(value & 0x7FFFFFFFu);
    key_validate(key);
    return key;
}

std::string key_encode(const Key& key) {
    key_validate(key);
    const uint128 value = (uint128{key.x0_bits} << 63) | (uint128{key.gamma_bits} << 31) |
                          uint128{key.lfsr_seed};
    std::string out(24, '0');
    for (int i = 0; i < 24; ++i) {
        const auto nibble = static_cast<unsigned>((value >> (4 * (23 - i))) & 0xF);
        out[i] = "0123456789abcdef"[nibble];
    }
    return out;
}

Key keygen(MapFamily family, const std::function<std::uint32_t()>& entropy) {
    Key key;
    key.family = family;
    do { key.x0_bits = entropy(); } while (key.x0_bits == 0);
    if (family == MapFamily::Stm) {
        do { key.gamma_bits = entropy(); } while (key.gamma_bits == 0);
    } else {
        do { key.gamma_bits = entropy(); } while (!mlm_gamma_ok(key.gamma_bits));
    }
    do { key.lfsr_seed = entropy() & 0x7FFFFFFFu; } while (key.lfsr_seed == 0);
    return key;
}

Key keygen(MapFamily family) {
    std::random_device rd;
    return keygen(family, [&rd] { return static_cast<std::uint32_t>(rd()); });
}

MapKind key_map(const Key& key) {
    key_validate(key);
    if (key.family == MapFamily::Stm) {
        return stm_params(fp_from_raw(kCipherPrecision, key.gamma_bits));
    }
    // widen the 4.28 key field to 4.32 to share the state precision
    const uint128 gamma_raw = uint128{key.gamma_bits}
                              << (kCipherPrecision - kMlmGammaFracBits);
    return mlm_derive_constants_raw(gamma_raw, kCipherPrecision, kMlmGammaIntBits);
}

GeneratorState make_cipher_generator(const Key& key) {
    return make_generator(key_map(key), fp_from_raw(kCipherPrecision, key.x0_bits),
                          lfsr_new(kCipherLfsrOrder, key.lfsr_seed));
}

std::vector<std::uint8_t> encrypt(const Key& key, std::span<const std::uint8_t> data) {
    GeneratorState g = make_cipher_generator(key);
    std::vector<std::uint8_t> out(data.size());
    constexpr std::size_t kChunk = 1 << 16;
    std::size_t done = 0;
    while (done < data.size()) {
        const std::size_t len = std::min(kChunk, data.size() - done);
        const std::vector<std::uint8_t> ks = ks_bytes(g, len);
        for (std::size_t i = 0; i < len; ++i) {
            out[done + i] = data[done + i] ^ ks[i];
        }
        done += len;
    }
    return out;
}

std::vector<std::uint8_t> decrypt(const Key& key, std::span<const std::uint8_t> data) {
    return encrypt(key, data);
}

}  // namespace chaostream
