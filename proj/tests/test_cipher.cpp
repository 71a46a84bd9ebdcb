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

#include <doctest.h>

#include <stdexcept>

#include <cctype>
#include <cmath>
#include <random>
#include <string>

#include "chaostream/cipher.hpp"

using namespace chaostream;

namespace {

constexpr const char* kStmKey = "121fb54442d1846993198a2e";
constexpr const char* kMlmKey = "1921fb54a80000002a467d3f";

std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng());
    return v;
}

}  // namespace

TEST_CASE("key_parse decodes the documented layout") {
    const Key k = key_parse(kStmKey, MapFamily::Stm);
    CHECK(k.x0_bits == 0x243F6A88u);
    CHECK(k.gamma_bits == 0x85A308D3u);
    CHECK(k.lfsr_seed == 0x13198A2Eu);
    CHECK(key_encode(k) == kStmKey);

    const Key m = key_parse(kMlmKey, MapFamily::Mlm);
    CHECK(m.x0_bits == 0x3243F6A9u);
    CHECK(m.gamma_bits == 0x50000000u);  // gamma = 5.0 in 4.28 fixed point
    CHECK(m.lfsr_seed == 0x2A467D3Fu);
    CHECK(key_encode(m) == kMlmKey);
}

TEST_CASE("key_parse accepts uppercase and canonicalizes to lowercase") {
    std::string upper = kStmKey;
    for (char& c : upper) c = static_cast<char>(std::toupper(c));
    CHECK(key_encode(key_parse(upper, MapFamily::Stm)) == kStmKey);
}

TEST_CASE("key_parse rejects malformed keys with field-specific messages") {
    CHECK_THROWS_WITH_AS(key_parse("000000000000000000000000", MapFamily::Stm),
                         doctest::Contains("x0"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(key_parse("12345", MapFamily::Stm),
                         doctest::Contains("24 hex"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(key_parse("121fb54442d1846993198a2g", MapFamily::Stm),
                         doctest::Contains("hex character"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(key_parse("800000000000000000000000", MapFamily::Stm),
                         doctest::Contains("top bit"), std::invalid_argument);
    // x0 = 1, gamma = 0, seed = 1: STM gamma must be nonzero
    CHECK_THROWS_WITH_AS(key_parse("000000008000000000000001", MapFamily::Stm),
                         doctest::Contains("gamma"), std::invalid_argument);
    // zero seed
    CHECK_THROWS_WITH_AS(key_parse("000000008000000100000000", MapFamily::Stm),
                         doctest::Contains("seed"), std::invalid_argument);
    // MLM gamma exactly 8.0 (multiple of 4)
    CHECK_THROWS_WITH_AS(key_parse("00000000c000000000000001", MapFamily::Mlm),
                         doctest::Contains("multiple of 4"), std::invalid_argument);
    // MLM gamma below 4 (gamma field 0x20000000 = 0.5)
    CHECK_THROWS_WITH_AS(key_parse("000000009000000000000001", MapFamily::Mlm),
                         doctest::Contains("exceed 4"), std::invalid_argument);
}

TEST_CASE("keygen fills every field from the entropy stream with rejection") {
    // scripted entropy: x0 draw hits 0 then a value; gamma for MLM needs
    // two draws (first lands on 8.0); seed draw hits 0 then a value
    std::vector<std::uint32_t> words = {0, 0xDEADBEEF, 0x80000000u, 0x51234567u, 0, 0x00000007u};
    std::size_t i = 0;
    const Key k = keygen(MapFamily::Mlm, [&] { return words.at(i++); });
    CHECK(k.x0_bits == 0xDEADBEEFu);
    CHECK(k.gamma_bits == 0x51234567u);
    CHECK(k.lfsr_seed == 7u);
    CHECK(i == words.size());
    key_validate(k);
}

TEST_CASE("generated keys always validate") {
    std::mt19937_64 rng(31);
    const auto entropy = [&] { return static_cast<std::uint32_t>(rng()); };
    for (int i = 0; i < 10000; ++i) {
        const Key s = keygen(MapFamily::Stm, entropy);
        CHECK_NOTHROW(key_validate(s));
        CHECK(s.gamma_bits != 0);
        const Key m = keygen(MapFamily::Mlm, entropy);
        CHECK_NOTHROW(key_validate(m));
        CHECK(m.gamma_bits > (4u << 28));
        CHECK((m.gamma_bits & ((1u << 30) - 1)) != 0);
    }
}

TEST_CASE("encrypt/decrypt is an involution and preserves length") {
    std::mt19937_64 rng(37);
    for (const char* hex : {kStmKey, kMlmKey}) {
        const MapFamily fam = hex == kStmKey ? MapFamily::Stm : MapFamily::Mlm;
        const Key key = key_parse(hex, fam);
        for (std::size_t len : {std::size_t{0}, std::size_t{1}, std::size_t{1000},
                                std::size_t{65536}}) {
            const auto plain = random_bytes(rng, len);
            const auto cipher = encrypt(key, plain);
            CHECK(cipher.size() == len);
            CHECK(decrypt(key, cipher) == plain);
        }
    }
}

TEST_CASE("all-zero plaintext exposes the raw keystream") {
    const Key key = key_parse(kStmKey, MapFamily::Stm);
    const std::vector<std::uint8_t> zeros(64, 0);
    const auto cipher = encrypt(key, zeros);
    GeneratorState g = make_cipher_generator(key);
    CHECK(cipher == ks_bytes(g, 64));
}

TEST_CASE("keystream does not depend on the plaintext") {
    const Key key = key_parse(kMlmKey, MapFamily::Mlm);
    std::mt19937_64 rng(41);
    const auto m1 = random_bytes(rng, 512);
    const auto m2 = random_bytes(rng, 512);
    const auto c1 = encrypt(key, m1);
    const auto c2 = encrypt(key, m2);
    for (std::size_t i = 0; i < 512; ++i) {
        CHECK((c1[i] ^ m1[i]) == (c2[i] ^ m2[i]));
    }
}

TEST_CASE("a single plaintext bit flip flips exactly one ciphertext bit") {
    const Key key = key_parse(kStmKey, MapFamily::Stm);
    std::mt19937_64 rng(43);
    auto plain = random_bytes(rng, 256);
    const auto base = encrypt(key, plain);
    plain[100] ^= 0x10;
    const auto flipped = encrypt(key, plain);
    std::size_t diff_bits = 0;
    for (std::size_t i = 0; i < plain.size(); ++i) {
        diff_bits += static_cast<std::size_t>(__builtin_popcount(base[i] ^ flipped[i]));
    }
    CHECK(diff_bits == 1);
}

TEST_CASE("decrypting with the wrong key yields uncorrelated bytes") {
    const Key right = key_parse(kStmKey, MapFamily::Stm);
    const Key wrong = key_parse(kMlmKey, MapFamily::Mlm);
    std::mt19937_64 rng(47);
    const auto plain = random_bytes(rng, 65536);
    const auto garbled = decrypt(wrong, encrypt(right, plain));

    double sp = 0, sg = 0;
    for (std::size_t i = 0; i < plain.size(); ++i) {
        sp += plain[i];
        sg += garbled[i];
    }
    const double mp = sp / static_cast<double>(plain.size());
    const double mg = sg / static_cast<double>(plain.size());
    double cross = 0, vp = 0, vg = 0;
    for (std::size_t i = 0; i < plain.size(); ++i) {
        cross += (plain[i] - mp) * (garbled[i] - mg);
        vp += (plain[i] - mp) * (plain[i] - mp);
        vg += (garbled[i] - mg) * (garbled[i] - mg);
    }
    CHECK(std::fabs(cross / std::sqrt(vp * vg)) < 0.05);
}

TEST_CASE("cipher generator wiring matches the documented configuration") {
    const Key key = key_parse(kMlmKey, MapFamily::Mlm);
    const GeneratorState g = make_cipher_generator(key);
    CHECK(g.x.bits == kCipherPrecision);
    CHECK(g.x.raw == key.x0_bits);
    CHECK(g.lfsr.config.order == kCipherLfsrOrder);
    CHECK(g.lfsr.config.taps == lfsr_default_taps(kCipherLfsrOrder));
    const auto& mlm = std::get<MlmParams>(g.map);
    CHECK(mlm.gamma_raw == uint128{key.gamma_bits} << 4);
    CHECK(mlm.d.raw == 0x40000000u);
}
