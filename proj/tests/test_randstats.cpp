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

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "chaostream/randstats.hpp"

using namespace chaostream;

namespace {

// first 100 bits of the binary expansion of pi
constexpr const char* kPi100 =
    "1100100100001111110110101010001000100001011010001100001000110100"
    "110001001100011001100010100010111000";

constexpr const char* kPi64 =
    "1100100100001111110110101010001000100001011010001100001000110100";

// 128-bit reference sequence for the longest-run test
constexpr const char* kLongestRun128 =
    "11001100000101010110110001001100111000000000001001"
    "00110101010001000100111101011010000000110101111100"
    "1100111001101101100010110010";

BitSequence lcg_bits(std::size_t count, std::uint64_t state = 42) {
    std::vector<std::uint8_t> bits(count);
    for (auto& b : bits) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        b = static_cast<std::uint8_t>(state >> 63);
    }
    return BitSequence::from_bits(bits);
}

BitSequence mt_bits(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bits(count);
    for (std::size_t i = 0; i < count; i += 64) {
        std::uint64_t w = rng();
        for (std::size_t j = 0; j < 64 && i + j < count; ++j) {
            bits[i + j] = static_cast<std::uint8_t>((w >> j) & 1);
        }
    }
    return BitSequence::from_bits(bits);
}

// straight O(N^2) evaluation of the spectral peak count
std::size_t direct_peak_count(const BitSequence& bits) {
    const std::size_t n = bits.size();
    const double threshold = std::sqrt(std::log(1.0 / 0.05) * static_cast<double>(n));
    std::size_t count = 0;
    for (std::size_t j = 0; j < n / 2; ++j) {
        std::complex<double> x(0.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            const double s = 2.0 * bits.bit(t) - 1.0;
            const double ang = -2.0 * M_PI * static_cast<double>(j) * static_cast<double>(t) /
                               static_cast<double>(n);
            x += s * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        if (std::abs(x) < threshold) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("erfc reference values and symmetry") {
    CHECK(chaostream::erfc(0.0) == 1.0);
    CHECK(std::fabs(chaostream::erfc(1.0) - 0.157299207050285) < 1e-12);
    for (int i = 0; i < 100; ++i) {
        const double x = -5.0 + 0.1 * i;
        CHECK(std::fabs(chaostream::erfc(x) + chaostream::erfc(-x) - 2.0) < 1e-12);
    }
}

TEST_CASE("igamc identities hold to 1e-9 on 100-point grids") {
    for (int i = 1; i <= 100; ++i) {
        const double x = 0.1 * i;
        CHECK(std::fabs(igamc(1.0, x) - std::exp(-x)) < 1e-9);
        CHECK(std::fabs(igamc(0.5, x) - chaostream::erfc(std::sqrt(x))) < 1e-9);
    }
    CHECK(igamc(3.7, 0.0) == 1.0);
}

TEST_CASE("igamc reference values") {
    CHECK(std::fabs(igamc(1.5, 0.5) - 0.801251956901201) < 1e-12);
    CHECK(std::fabs(igamc(0.5, 2.25) - 0.0338948535246893) < 1e-12);
    CHECK(std::fabs(igamc(4.0, 5.021930853) - 0.261960888890658) < 1e-12);
    // large shape parameter, the block-frequency regime
    CHECK(std::fabs(igamc(3906.0, 3906.0) - 0.497872236723829) < 1e-9);
}

TEST_CASE("igamc rejects invalid domains") {
    CHECK_THROWS_AS(igamc(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(igamc(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(igamc(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("monobit known statistics") {
    std::vector<std::uint8_t> balanced(100, 0);
    for (int i = 0; i < 50; ++i) balanced[static_cast<std::size_t>(i)] = 1;
    const TestResult r0 = run_test(TestKind::Monobit, BitSequence::from_bits(balanced));
    CHECK(r0.statistic == 0.0);
    CHECK(r0.p_values[0] == 1.0);
    CHECK(r0.pass);

    std::vector<std::uint8_t> skewed(100, 0);
    for (int i = 0; i < 58; ++i) skewed[static_cast<std::size_t>(i)] = 1;
    const TestResult r1 = run_test(TestKind::Monobit, BitSequence::from_bits(skewed));
    CHECK(std::fabs(r1.statistic - 1.6) < 1e-12);
    CHECK(std::fabs(r1.p_values[0] - 0.109598583399116) < 1e-12);
}

TEST_CASE("monobit is invariant under global complement") {
    const BitSequence seq = lcg_bits(500);
    std::vector<std::uint8_t> flipped(500);
    for (std::size_t i = 0; i < 500; ++i) {
        flipped[i] = static_cast<std::uint8_t>(1 - seq.bit(i));
    }
    const double p1 = run_test(TestKind::Monobit, seq).p_values[0];
    const double p2 = run_test(TestKind::Monobit, BitSequence::from_bits(flipped)).p_values[0];
    CHECK(p1 == p2);
}

TEST_CASE("monobit enforces its minimum length") {
    CHECK_THROWS_AS(run_test(TestKind::Monobit, BitSequence::from_string("10101")),
                    std::invalid_argument);
}

TEST_CASE("block frequency on the pi sequence") {
    TestParams params;
    params.block_frequency_m = 10;
    const TestResult r = run_test(TestKind::BlockFrequency, BitSequence::from_string(kPi100),
                                  params);
    CHECK(std::fabs(r.statistic - 7.2) < 1e-12);
    CHECK(std::fabs(r.p_values[0] - 0.706438449641) < 1e-10);
}

TEST_CASE("runs reference values") {
    const TestResult a = run_test(TestKind::Runs, BitSequence::from_string("1001101011"));
    CHECK(a.statistic == 7.0);
    CHECK(std::fabs(a.p_values[0] - 0.147232255364) < 1e-10);

    // perfect alternation: far too many runs, fails
    const TestResult b = run_test(TestKind::Runs, BitSequence::from_string("0101010101"));
    CHECK(b.statistic == 10.0);
    CHECK(std::fabs(b.p_values[0] - 0.00156540225800255) < 1e-12);
    CHECK_FALSE(b.pass);

    const TestResult c = run_test(TestKind::Runs, BitSequence::from_string("1111111101"));
    CHECK(std::fabs(c.p_values[0] - 0.0350149810197) < 1e-10);

    const TestResult pi = run_test(TestKind::Runs, BitSequence::from_string(kPi100));
    CHECK(pi.statistic == 52.0);
    CHECK(std::fabs(pi.p_values[0] - 0.500797917887) < 1e-10);
}

TEST_CASE("runs pre-test pins the p-value to zero for unbalanced inputs") {
    std::vector<std::uint8_t> bits(100, 0);
    for (int i = 0; i < 75; ++i) bits[static_cast<std::size_t>(i)] = 1;
    const TestResult r = run_test(TestKind::Runs, BitSequence::from_bits(bits));
    CHECK(r.p_values[0] == 0.0);
    CHECK_FALSE(r.pass);
    CHECK(r.note == "frequency pre-test failed");
}

TEST_CASE("longest run of ones on the 128-bit reference block") {
    const TestResult r = run_test(TestKind::LongestRun, BitSequence::from_string(kLongestRun128));
    CHECK(std::fabs(r.statistic - 4.8824575) < 1e-6);
    CHECK(std::fabs(r.p_values[0] - 0.18060931824) < 1e-9);
    CHECK_THROWS_AS(run_test(TestKind::LongestRun, BitSequence::from_string(kPi100)),
                    std::invalid_argument);
}

TEST_CASE("cumulative sums reference values") {
    const TestResult fwd = run_test(TestKind::CusumForward, BitSequence::from_string("1011010111"));
    CHECK(fwd.statistic == 4.0);
    CHECK(std::fabs(fwd.p_values[0] - 0.411658619154) < 1e-10);

    const TestResult pf = run_test(TestKind::CusumForward, BitSequence::from_string(kPi100));
    CHECK(pf.statistic == 16.0);
    CHECK(std::fabs(pf.p_values[0] - 0.219193993486) < 1e-10);

    const TestResult pb = run_test(TestKind::CusumBackward, BitSequence::from_string(kPi100));
    CHECK(pb.statistic == 19.0);
    CHECK(std::fabs(pb.p_values[0] - 0.114866215303) < 1e-10);
}

TEST_CASE("serial test on the 64-bit pi prefix") {
    const TestResult r = run_test(TestKind::Serial, BitSequence::from_string(kPi64));
    REQUIRE(r.p_values.size() == 2);
    CHECK(std::fabs(r.statistic - 1.8125) < 1e-12);
    CHECK(std::fabs(r.p_values[0] - 0.404036523663) < 1e-10);
    CHECK(std::fabs(r.p_values[1] - 0.617075077452) < 1e-10);
}

TEST_CASE("approximate entropy on the 64-bit pi prefix") {
    const TestResult r = run_test(TestKind::ApproxEntropy, BitSequence::from_string(kPi64));
    CHECK(std::fabs(r.statistic - 2.42746473222) < 1e-9);
    CHECK(std::fabs(r.p_values[0] - 0.657669718234) < 1e-10);
}

TEST_CASE("serial and approximate entropy enforce the pattern-length bound") {
    CHECK_THROWS_AS(run_test(TestKind::Serial, BitSequence::from_string("0011011101")),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_test(TestKind::ApproxEntropy, BitSequence::from_string("0100110101")),
                    std::invalid_argument);
}

TEST_CASE("dft reference value on a 1024-bit LCG stream") {
    const BitSequence seq = lcg_bits(1024);
    CHECK(spectral_peak_count(seq) == 486);
    const TestResult r = run_test(TestKind::Dft, seq);
    CHECK(std::fabs(r.p_values[0] - 0.908676678180) < 1e-9);
    CHECK(r.pass);
}

TEST_CASE("dft fails a constant sequence") {
    const BitSequence ones = BitSequence::from_bits(std::vector<std::uint8_t>(2048, 1));
    const TestResult r = run_test(TestKind::Dft, ones);
    CHECK(r.p_values[0] < 0.01);
    CHECK_FALSE(r.pass);
}

TEST_CASE("dft peak counts match direct evaluation") {
    for (std::size_t n : {std::size_t{1024}, std::size_t{1201}, std::size_t{2048}}) {
        const BitSequence seq = mt_bits(n, 1000 + n);
        CHECK(spectral_peak_count(seq) == direct_peak_count(seq));
    }
}

TEST_CASE("dft enforces its minimum length") {
    CHECK_THROWS_AS(run_test(TestKind::Dft, lcg_bits(512)), std::invalid_argument);
}

TEST_CASE("run_suite executes all nine tests on an adequate sequence") {
    const BitSequence seq = mt_bits(20000, 7);
    const TestReport report = run_suite(seq);
    REQUIRE(report.results.size() == 9);
    for (const TestResult& r : report.results) {
        CAPTURE(r.name);
        CHECK_FALSE(r.skipped);
    }
    CHECK(report.sequence_length == 20000);
    // determinism: identical input gives an identical report
    CHECK(report_text(run_suite(seq)) == report_text(report));
}

TEST_CASE("run_suite records skips for short sequences instead of raising") {
    const BitSequence seq = mt_bits(50, 9);
    const TestReport report = run_suite(seq);
    REQUIRE(report.results.size() == 9);
    CHECK(report.results[0].skipped);        // monobit needs 100
    CHECK(report.results[3].skipped);        // longest_run needs 128
    CHECK(report.results[8].skipped);        // dft needs 1000
    CHECK_FALSE(report.results[2].skipped);  // runs computes
    CHECK_FALSE(report.results[4].skipped);  // cusum computes
}

TEST_CASE("an all-zero sequence fails the suite") {
    const BitSequence zeros = BitSequence::from_bits(std::vector<std::uint8_t>(100000, 0));
    const TestReport report = run_suite(zeros);
    CHECK_FALSE(report.all_pass);
    CHECK(report.results[0].p_values[0] < 1e-10);
}

TEST_CASE("report rendering") {
    const TestReport report = run_suite(mt_bits(20000, 11));
    const std::string text = report_text(report);
    CHECK(text.find("monobit ") != std::string::npos);
    CHECK(text.find("serial_1 ") != std::string::npos);
    CHECK(text.find("serial_2 ") != std::string::npos);
    CHECK(text.find("\nALL ") != std::string::npos);
    const std::string kv = report_kv(report);
    CHECK(kv.find("sequence_length=20000") != std::string::npos);
    CHECK(kv.find("monobit.p=") != std::string::npos);
    CHECK(kv.find("all_pass=") != std::string::npos);
}

TEST_CASE("p-values stay within [0,1] across assorted inputs") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const BitSequence seq = mt_bits(2000 + 517 * static_cast<std::size_t>(trial), rng());
        for (const TestResult& r : run_suite(seq).results) {
            if (r.skipped) continue;
            for (double p : r.p_values) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
            }
        }
    }
}

TEST_CASE("rejection rate of an ideal-uniform reference stays within binomial bounds") {
    // 200 sequences of 1e6 bits; at significance 0.01 each test may reject
    // at most 4% of them
    constexpr int kSequences = 200;
    constexpr std::size_t kBits = 1000000;
    std::vector<int> rejections(9, 0);
    std::vector<std::uint8_t> bits(kBits);
    std::mt19937_64 rng(20260810);
    for (int s = 0; s < kSequences; ++s) {
        for (std::size_t i = 0; i < kBits; i += 64) {
            std::uint64_t w = rng();
            for (std::size_t j = 0; j < 64 && i + j < kBits; ++j) {
                bits[i + j] = static_cast<std::uint8_t>((w >> j) & 1);
            }
        }
        const TestReport report = run_suite(BitSequence::from_bits(bits));
        for (std::size_t t = 0; t < report.results.size(); ++t) {
            REQUIRE_FALSE(report.results[t].skipped);
            if (!report.results[t].pass) ++rejections[t];
        }
    }
    for (std::size_t t = 0; t < rejections.size(); ++t) {
        CAPTURE(t);
        CHECK(rejections[t] <= 8);  // 0.04 * 200
    }
}
