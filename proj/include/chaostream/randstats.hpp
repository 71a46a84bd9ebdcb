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

#include <cstddef>
#include <string>
#include <vector>

#include "chaostream/bitseq.hpp"

namespace chaostream {

/// Complementary error function (absolute error well below 1e-10 on the
/// tested range).
double erfc(double x);

/// Regularized upper incomplete gamma Q(a, x): lower series for x < a+1,
/// modified-Lentz continued fraction otherwise.
double igamc(double a, double x);

enum class TestKind {
    Monobit,
    BlockFrequency,
    Runs,
    LongestRun,
    CusumForward,
    CusumBackward,
    Serial,
    ApproxEntropy,
    Dft,
};

struct TestParams {
    int block_frequency_m = 128;  // block size for the block-frequency test
    int serial_m = 2;             // pattern length for the serial test
    int approx_entropy_m = 2;     // pattern length for approximate entropy
};

struct TestResult {
    std::string name;
    std::vector<double> p_values;  // one per part (serial has two)
    double statistic = 0.0;
    bool pass = false;             // min p-value >= 0.01
    bool skipped = false;          // sequence too short for this test
    std::string note;
};

struct TestReport {
    std::vector<TestResult> results;
    bool all_pass = false;         // over the tests that ran
    std::size_t sequence_length = 0;
};

inline constexpr double kSignificance = 0.01;

/// One test at significance 0.01. Throws when the sequence is shorter than
/// the test's stated minimum (monobit/block frequency 100, longest run 128,
/// dft 1000, serial/approximate entropy m < floor(log2 n) - 2).
TestResult run_test(TestKind kind, const BitSequence& bits, const TestParams& params = {});

/// All nine tests with default parameters; too-short tests are recorded as
/// skipped rather than raised.
TestReport run_suite(const BitSequence& bits, const TestParams& params = {});

/// `name p_value PASS|FAIL` per part plus a final `ALL PASS|FAIL` row.
std::string report_text(const TestReport& report);

/// Machine-readable key=value rendering of the same report.
std::string report_kv(const TestReport& report);

/// Count of DFT moduli below the test threshold over the first floor(n/2)
/// frequencies (the spectral test's integer peak statistic, exposed for
/// cross-checking against direct evaluation).
std::size_t spectral_peak_count(const BitSequence& bits);

}  // namespace chaostream
