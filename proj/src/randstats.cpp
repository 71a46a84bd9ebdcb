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

#include "chaostream/randstats.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>

namespace chaostream {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

void require_length(std::size_t n, std::size_t minimum, const char* test) {
    if (n < minimum) {
        throw std::invalid_argument(std::string(test) + ": sequence of " + std::to_string(n) +
                                    " bits is below the minimum of " + std::to_string(minimum));
    }
}

TestResult make_result(std::string name, std::vector<double> p_values, double statistic) {
    TestResult r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.pass = true;
    for (double p : p_values) {
        if (!(p >= kSignificance)) r.pass = false;
    }
    r.p_values = std::move(p_values);
    return r;
}

TestResult monobit(const BitSequence& bits) {
    const std::size_t n = bits.size();
    require_length(n, 100, "monobit");
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += 2 * bits.bit(i) - 1;
    const double s_obs = std::abs(static_cast<double>(s)) / std::sqrt(static_cast<double>(n));
    return make_result("monobit", {erfc(s_obs / kSqrt2)}, s_obs);
}

TestResult block_frequency(const BitSequence& bits, int M) {
    const std::size_t n = bits.size();
    require_length(n, 100, "block_frequency");
    if (M < 2 || static_cast<std::size_t>(M) > n) {
        throw std::invalid_argument("block_frequency: block size " + std::to_string(M) +
                                    " invalid for " + std::to_string(n) + " bits");
    }
    const std::size_t N = n / static_cast<std::size_t>(M);
    double chi = 0.0;
    for (std::size_t b = 0; b < N; ++b) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(M); ++i) {
            ones += static_cast<std::size_t>(bits.bit(b * M + i));
        }
        const double pi = static_cast<double>(ones) / M;
        chi += (pi - 0.5) * (pi - 0.5);
    }
    chi *= 4.0 * M;
    return make_result("block_frequency", {igamc(static_cast<double>(N) / 2.0, chi / 2.0)}, chi);
}

TestResult runs(const BitSequence& bits) {
    const std::size_t n = bits.size();
    require_length(n, 2, "runs");
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) ones += static_cast<std::size_t>(bits.bit(i));
    const double pi = static_cast<double>(ones) / static_cast<double>(n);
    std::size_t v = 1;
    for (std::size_t i = 1; i < n; ++i) {
        v += static_cast<std::size_t>(bits.bit(i) != bits.bit(i - 1));
    }
    // frequency pre-test: without a roughly balanced sequence the runs
    // statistic is meaningless and the p-value is pinned to zero
    if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n))) {
        TestResult r = make_result("runs", {0.0}, static_cast<double>(v));
        r.note = "frequency pre-test failed";
        return r;
    }
    const double num = std::fabs(static_cast<double>(v) - 2.0 * n * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
    return make_result("runs", {erfc(num / den)}, static_cast<double>(v));
}

TestResult longest_run(const BitSequence& bits) {
    const std::size_t n = bits.size();
    require_length(n, 128, "longest_run");
    int M, K;
    const double* pis;
    const int* vcats;
    static constexpr std::array<double, 4> pi8 = {0.21484375, 0.3671875, 0.23046875, 0.1875};
    static constexpr std::array<int, 4> v8 = {1, 2, 3, 4};
    static constexpr std::array<double, 6> pi128 = {0.1174035788, 0.242955959, 0.249363483,
                                                    0.17517706,   0.102701071, 0.112398847};
    static constexpr std::array<int, 6> v128 = {4, 5, 6, 7, 8, 9};
    static constexpr std::array<double, 7> pi10000 = {0.0882, 0.2092, 0.2483, 0.1933,
                                                      0.1208, 0.0675, 0.0727};
    static constexpr std::array<int, 7> v10000 = {10, 11, 12, 13, 14, 15, 16};
    if (n < 6272) {
        M = 8; K = 3; pis = pi8.data(); vcats = v8.data();
    } else if (n < 750000) {
        M = 128; K = 5; pis = pi128.data(); vcats = v128.data();
    } else {
        M = 10000; K = 6; pis = pi10000.data(); vcats = v10000.data();
    }
    const std::size_t N = n / static_cast<std::size_t>(M);
    std::vector<std::size_t> nu(static_cast<std::size_t>(K) + 1, 0);
    for (std::size_t b = 0; b < N; ++b) {
        int longest = 0, run = 0;
        for (int i = 0; i < M; ++i) {
            run = bits.bit(b * M + static_cast<std::size_t>(i)) ? run + 1 : 0;
            if (run > longest) longest = run;
        }
        int cat;
        if (longest <= vcats[0]) cat = 0;
        else if (longest >= vcats[K]) cat = K;
        else cat = longest - vcats[0];
        ++nu[static_cast<std::size_t>(cat)];
    }
    double chi = 0.0;
    for (int i = 0; i <= K; ++i) {
        const double expect = static_cast<double>(N) * pis[i];
        const double diff = static_cast<double>(nu[static_cast<std::size_t>(i)]) - expect;
        chi += diff * diff / expect;
    }
    return make_result("longest_run", {igamc(K / 2.0, chi / 2.0)}, chi);
}

TestResult cusum(const BitSequence& bits, bool forward) {
    const std::size_t n = bits.size();
    require_length(n, 2, "cusum");
    std::int64_t s = 0, z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t idx = forward ? i : n - 1 - i;
        s += 2 * bits.bit(idx) - 1;
        if (std::llabs(s) > z) z = std::llabs(s);
    }
    const char* name = forward ? "cusum_forward" : "cusum_backward";
    if (z == 0) {
        // impossible for n >= 1 (the first partial sum is +-1)
        return make_result(name, {0.0}, 0.0);
    }
    const auto ni = static_cast<std::int64_t>(n);
    const double sq = std::sqrt(static_cast<double>(n));
    const double zd = static_cast<double>(z);
    // integer loop bounds with C truncation semantics
    double sum1 = 0.0;
    for (std::int64_t k = (-ni / z + 1) / 4; k <= (ni / z - 1) / 4; ++k) {
        sum1 += normal_cdf((4.0 * k + 1.0) * zd / sq) - normal_cdf((4.0 * k - 1.0) * zd / sq);
    }
    double sum2 = 0.0;
    for (std::int64_t k = (-ni / z - 3) / 4; k <= (ni / z - 1) / 4; ++k) {
        sum2 += normal_cdf((4.0 * k + 3.0) * zd / sq) - normal_cdf((4.0 * k + 1.0) * zd / sq);
    }
    double p = 1.0 - sum1 + sum2;
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return make_result(name, {p}, zd);
}

// overlapping m-bit pattern counts with wraparound
std::vector<std::size_t> pattern_counts(const BitSequence& bits, int m) {
    const std::size_t n = bits.size();
    std::vector<std::size_t> counts(std::size_t{1} << m, 0);
    unsigned window = 0;
    const unsigned mask = (1u << m) - 1;
    for (std::size_t i = 0; i < static_cast<std::size_t>(m) - 1; ++i) {
        window = (window << 1) | static_cast<unsigned>(bits.bit(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t next = (i + static_cast<std::size_t>(m) - 1) % n;
        window = ((window << 1) | static_cast<unsigned>(bits.bit(next))) & mask;
        ++counts[window];
    }
    return counts;
}

double psi_sq(const BitSequence& bits, int m) {
    if (m == 0) return 0.0;
    const double n = static_cast<double>(bits.size());
    double sum = 0.0;
    for (std::size_t c : pattern_counts(bits, m)) {
        sum += static_cast<double>(c) * static_cast<double>(c);
    }
    return std::ldexp(sum / n, m) - n;
}

void check_pattern_length(std::size_t n, int m, const char* test) {
    int log2n = 0;
    while ((std::size_t{1} << (log2n + 1)) <= n) ++log2n;
    if (m < 1 || m >= log2n - 2) {
        throw std::invalid_argument(std::string(test) + ": pattern length " + std::to_string(m) +
                                    " must satisfy m < floor(log2 n) - 2 for n = " +
                                    std::to_string(n));
    }
}

TestResult serial(const BitSequence& bits, int m) {
    check_pattern_length(bits.size(), m, "serial");
    if (m < 2) {
        throw std::invalid_argument("serial: pattern length must be at least 2");
    }
    const double pm = psi_sq(bits, m);
    const double pm1 = psi_sq(bits, m - 1);
    const double pm2 = psi_sq(bits, m - 2);
    const double d1 = pm - pm1;
    const double d2 = pm - 2.0 * pm1 + pm2;
    const double p1 = igamc(std::ldexp(1.0, m - 2), std::max(0.0, d1 / 2.0));
    const double p2 = igamc(std::ldexp(1.0, m - 3), std::max(0.0, d2 / 2.0));
    return make_result("serial", {p1, p2}, d1);
}

TestResult approx_entropy(const BitSequence& bits, int m) {
    check_pattern_length(bits.size(), m, "approx_entropy");
    const double n = static_cast<double>(bits.size());
    auto phi = [&](int mm) {
        double sum = 0.0;
        for (std::size_t c : pattern_counts(bits, mm)) {
            if (c == 0) continue;
            const double f = static_cast<double>(c) / n;
            sum += f * std::log(f);
        }
        return sum;
    };
    const double apen = phi(m) - phi(m + 1);
    const double chi = std::max(0.0, 2.0 * n * (std::log(2.0) - apen));
    return make_result("approx_entropy", {igamc(std::ldexp(1.0, m - 1), chi / 2.0)}, chi);
}

std::mutex fftw_planner_mutex;

std::size_t dft_peak_count(const BitSequence& bits) {
    const std::size_t n = bits.size();
    std::vector<double> in(n);
    for (std::size_t i = 0; i < n; ++i) in[i] = 2.0 * bits.bit(i) - 1.0;
    std::vector<double> out(2 * (n / 2 + 1));
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE);
    }
    if (plan == nullptr) {
        throw std::runtime_error("dft: FFTW plan creation failed");
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex);
        fftw_destroy_plan(plan);
    }
    const double threshold = std::sqrt(std::log(1.0 / 0.05) * static_cast<double>(n));
    std::size_t count = 0;
    for (std::size_t j = 0; j < n / 2; ++j) {
        const double re = out[2 * j], im = out[2 * j + 1];
        if (std::sqrt(re * re + im * im) < threshold) ++count;
    }
    return count;
}

TestResult dft(const BitSequence& bits) {
    const std::size_t n = bits.size();
    require_length(n, 1000, "dft");
    const auto count = static_cast<double>(dft_peak_count(bits));
    const double n0 = 0.95 * static_cast<double>(n) / 2.0;
    const double d = (count - n0) / std::sqrt(static_cast<double>(n) * 0.95 * 0.05 / 4.0);
    return make_result("dft", {erfc(std::fabs(d) / kSqrt2)}, d);
}

std::string format_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", p);
    return buf;
}

}  // namespace

double erfc(double x) { return std::erfc(x); }

double igamc(double a, double x) {
    if (!(a > 0.0)) {
        throw std::invalid_argument("igamc: shape parameter must be positive");
    }
    if (!(x >= 0.0)) {
        throw std::invalid_argument("igamc: argument must be nonnegative");
    }
    if (x == 0.0) return 1.0;
    const double lg = std::lgamma(a);
    const double scale = -x + a * std::log(x) - lg;
    if (x < a + 1.0) {
        // lower regularized series, Q = 1 - P
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 100000; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (term < sum * 1e-17) break;
        }
        const double q = 1.0 - sum * std::exp(scale);
        return q < 0.0 ? 0.0 : q;
    }
    // upper continued fraction (modified Lentz)
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 100000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(scale) * h;
}

TestResult run_test(TestKind kind, const BitSequence& bits, const TestParams& params) {
    switch (kind) {
        case TestKind::Monobit:        return monobit(bits);
        case TestKind::BlockFrequency: return block_frequency(bits, params.block_frequency_m);
        case TestKind::Runs:           return runs(bits);
        case TestKind::LongestRun:     return longest_run(bits);
        case TestKind::CusumForward:   return cusum(bits, true);
        case TestKind::CusumBackward:  return cusum(bits, false);
        case TestKind::Serial:         return serial(bits, params.serial_m);
        case TestKind::ApproxEntropy:  return approx_entropy(bits, params.approx_entropy_m);
        case TestKind::Dft:            return dft(bits);
    }
    throw std::logic_error("run_test: unknown test kind");
}

TestReport run_suite(const BitSequence& bits, const TestParams& params) {
    static constexpr std::array<TestKind, 9> kAll = {
        TestKind::Monobit,      TestKind::BlockFrequency, TestKind::Runs,
        TestKind::LongestRun,   TestKind::CusumForward,   TestKind::CusumBackward,
        TestKind::Serial,       TestKind::ApproxEntropy,  TestKind::Dft,
    };
    static constexpr std::array<const char*, 9> kNames = {
        "monobit", "block_frequency", "runs", "longest_run", "cusum_forward",
        "cusum_backward", "serial", "approx_entropy", "dft",
    };
    TestReport report;
    report.sequence_length = bits.size();
    report.all_pass = true;
    for (std::size_t i = 0; i < kAll.size(); ++i) {
        try {
            report.results.push_back(run_test(kAll[i], bits, params));
        } catch (const std::invalid_argument& e) {
            TestResult r;
            r.name = kNames[i];
            r.skipped = true;
            r.note = e.what();
            report.results.push_back(std::move(r));
            continue;
        }
        if (!report.results.back().pass) report.all_pass = false;
    }
    return report;
}

std::string report_text(const TestReport& report) {
    std::string out;
    for (const TestResult& r : report.results) {
        if (r.skipped) {
            out += r.name + " - SKIP (" + r.note + ")\n";
            continue;
        }
        if (r.p_values.size() == 1) {
            out += r.name + " " + format_p(r.p_values[0]) + (r.pass ? " PASS" : " FAIL") + "\n";
        } else {
            for (std::size_t i = 0; i < r.p_values.size(); ++i) {
                const bool part_pass = r.p_values[i] >= kSignificance;
                out += r.name + "_" + std::to_string(i + 1) + " " + format_p(r.p_values[i]) +
                       (part_pass ? " PASS" : " FAIL") + "\n";
            }
        }
    }
    out += std::string("ALL ") + (report.all_pass ? "PASS" : "FAIL") + "\n";
    return out;
}

std::string report_kv(const TestReport& report) {
    std::string out = "sequence_length=" + std::to_string(report.sequence_length) + "\n";
    for (const TestResult& r : report.results) {
        if (r.skipped) {
            out += r.name + ".skipped=true\n";
            continue;
        }
        if (r.p_values.size() == 1) {
            out += r.name + ".p=" + format_p(r.p_values[0]) + "\n";
        } else {
            for (std::size_t i = 0; i < r.p_values.size(); ++i) {
                out += r.name + ".p" + std::to_string(i + 1) + "=" + format_p(r.p_values[i]) + "\n";
            }
        }
        out += r.name + ".pass=" + (r.pass ? "true" : "false") + "\n";
    }
    out += std::string("all_pass=") + (report.all_pass ? "true" : "false") + "\n";
    return out;
}

std::size_t spectral_peak_count(const BitSequence& bits) { return dft_peak_count(bits); }

}  // namespace chaostream
