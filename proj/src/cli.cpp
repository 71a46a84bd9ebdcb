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

#include "chaostream/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include "chaostream/cipher.hpp"
#include "chaostream/imageio.hpp"
#include "chaostream/randstats.hpp"

namespace chaostream {

namespace {

constexpr const char* kKeyReuseWarning =
    "warning: this cipher has no nonce; never encrypt more than one message "
    "with the same key";

// fixed keys for the throughput report, so runs are reproducible
constexpr const char* kBenchStmKey = "121fb54442d1846993198a2e";
constexpr const char* kBenchMlmKey = "1921fb54a80000002a467d3f";

MapFamily parse_family(const std::string& s) {
    return s == "stm" ? MapFamily::Stm : MapFamily::Mlm;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open input file '" + path + "'");
    }
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(f),
                                     std::istreambuf_iterator<char>());
}

std::vector<std::uint8_t> read_stream(std::istream& in) {
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    f.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
    if (!f) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

void write_output(const std::string& path, std::ostream& fallback,
                  std::span<const std::uint8_t> data) {
    if (path.empty()) {
        fallback.write(reinterpret_cast<const char*>(data.data()),
                       static_cast<std::streamsize>(data.size()));
    } else {
        write_file(path, data);
    }
}

// N keystream bits packed MSB-first, zero padded to whole bytes
std::vector<std::uint8_t> keystream_bytes_for_bits(GeneratorState& g, std::uint64_t nbits) {
    std::vector<std::uint8_t> out;
    out.reserve((nbits + 7) / 8);
    std::uint64_t full = nbits / 8;
    while (full > 0) {
        const std::uint64_t chunk = std::min<std::uint64_t>(full, 1 << 16);
        const auto bytes = ks_bytes(g, chunk);
        out.insert(out.end(), bytes.begin(), bytes.end());
        full -= chunk;
    }
    const unsigned rem = nbits % 8;
    if (rem) {
        unsigned byte = 0;
        for (unsigned i = 0; i < rem; ++i) {
            byte |= static_cast<unsigned>(g.next_bit()) << (7 - i);
        }
        out.push_back(static_cast<std::uint8_t>(byte));
    }
    return out;
}

struct PeriodCsvRow {
    int trial;
    std::uint64_t x0, gamma, seed;
    const PeriodReport* bare;
    const PeriodReport* pert;  // may be null in bare-only mode
};

void print_period_csv_header(std::ostream& out, bool with_lfsr) {
    out << "trial,x0_raw,gamma_raw,lfsr_seed,bare_state_period,bare_tail,bare_bit_period";
    if (with_lfsr) {
        out << ",pert_state_period,pert_tail,pert_bit_period,pert_bit_mod_pz";
    }
    out << "\n";
}

void print_period_csv_row(std::ostream& out, const PeriodCsvRow& r, std::uint64_t pz) {
    out << r.trial << "," << r.x0 << "," << r.gamma << "," << r.seed << ","
        << r.bare->state_period << "," << r.bare->tail_length << "," << r.bare->bit_period;
    if (r.pert) {
        out << "," << r.pert->state_period << "," << r.pert->tail_length << ","
            << r.pert->bit_period << "," << (pz ? r.pert->bit_period % pz : 0);
    }
    out << "\n";
}

int cmd_period(std::ostream& out, MapFamily family, int precision,
               const std::string& order_str, int trials, std::uint64_t seed, bool csv) {
    if (order_str == "none") {
        // bare-map statistics only
        std::mt19937_64 rng(seed);
        auto draw = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
        const std::uint64_t budget = 8 * (std::uint64_t{1} << precision) + 1024;
        std::vector<std::uint64_t> periods;
        std::vector<PeriodReport> reports(static_cast<std::size_t>(trials));
        std::vector<std::array<std::uint64_t, 2>> keys(static_cast<std::size_t>(trials));
        for (int i = 0; i < trials; ++i) {
            const std::uint64_t x0 = draw(1, fp_max_raw(precision));
            MapKind map = StmParams{};
            std::uint64_t gamma;
            if (family == MapFamily::Stm) {
                gamma = draw(1, fp_max_raw(precision));
                map = stm_params(FixedPointValue{precision, gamma});
            } else {
                for (;;) {
                    gamma = draw((std::uint64_t{4} << precision) + 1,
                                 (std::uint64_t{16} << precision) - 1);
                    try {
                        map = mlm_derive_constants_raw(gamma, precision, 4);
                        break;
                    } catch (const std::invalid_argument&) {
                    }
                }
            }
            keys[static_cast<std::size_t>(i)] = {x0, gamma};
            reports[static_cast<std::size_t>(i)] =
                measure_period(map, FixedPointValue{precision, x0}, std::nullopt, budget);
            periods.push_back(reports[static_cast<std::size_t>(i)].state_period);
        }
        if (csv) {
            print_period_csv_header(out, false);
            for (int i = 0; i < trials; ++i) {
                PeriodCsvRow row{i, keys[static_cast<std::size_t>(i)][0],
                                 keys[static_cast<std::size_t>(i)][1], 0,
                                 &reports[static_cast<std::size_t>(i)], nullptr};
                print_period_csv_row(out, row, 0);
            }
        } else {
            std::sort(periods.begin(), periods.end());
            out << "map=" << (family == MapFamily::Stm ? "stm" : "mlm")
                << " precision=" << precision << " lfsr=none trials=" << trials << "\n";
            out << "bare median state period: " << periods[periods.size() / 2] << "\n";
            out << "bare max state period: " << periods.back() << "\n";
        }
        return 0;
    }

    const int order = std::stoi(order_str);
    const Prop1Summary s = check_proposition1(trials, precision, order, family, seed);
    if (csv) {
        print_period_csv_header(out, true);
        for (int i = 0; i < trials; ++i) {
            const Prop1Trial& t = s.rows[static_cast<std::size_t>(i)];
            PeriodCsvRow row{i, t.x0_raw, t.gamma_raw, t.lfsr_seed, &t.bare, &t.perturbed};
            print_period_csv_row(out, row, s.pz);
        }
    } else {
        out << "map=" << (family == MapFamily::Stm ? "stm" : "mlm")
            << " precision=" << s.precision << " lfsr_order=" << s.lfsr_order
            << " pz=" << s.pz << " trials=" << s.trials << "\n";
        out << "perturbed bit periods divisible by " << s.pz << ": " << s.divisible_count
            << "/" << s.trials << "\n";
        out << "bare median state period: " << s.bare_median_state << "\n";
        out << "perturbed median state period: " << s.perturbed_median_state << "\n";
        for (int i = 0; i < s.trials; ++i) {
            const Prop1Trial& t = s.rows[static_cast<std::size_t>(i)];
            if (!t.perturbed.multiple_of_pz) {
                out << "exception trial " << i << ": x0=" << t.x0_raw << " gamma=" << t.gamma_raw
                    << " seed=" << t.lfsr_seed << " bit_period=" << t.perturbed.bit_period << "\n";
            }
        }
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"chaostream: chaotic-map + LFSR stream ciphers and analysis tools"};
    app.require_subcommand(1);

    std::string map_str, key_hex, in_path, out_path, path_a, path_b, order_str = "5";
    std::uint64_t nbits = 0, nbytes = 4 << 20, seed = 1;
    int precision = 12, trials = 20, width = 256;
    bool kv = false, csv = false, no_lfsr = false;

    auto add_map = [&](CLI::App* sub) {
        sub->add_option("--map", map_str, "chaotic map: stm or mlm")
            ->required()
            ->check(CLI::IsMember({"stm", "mlm"}));
    };
    auto add_key = [&](CLI::App* sub) {
        sub->add_option("--key", key_hex, "24-hex-character key")->required();
    };

    auto* c_keygen = app.add_subcommand("keygen", "generate a random key");
    add_map(c_keygen);

    auto* c_encrypt = app.add_subcommand(
        "encrypt",
        "XOR the input with the keystream; no header is added, so decryption "
        "needs the same --map and --key supplied out of band");
    add_map(c_encrypt);
    add_key(c_encrypt);
    c_encrypt->add_option("--in", in_path, "input file (default: stdin)");
    c_encrypt->add_option("--out", out_path, "output file (default: stdout)");

    auto* c_decrypt = app.add_subcommand(
        "decrypt", "inverse of encrypt (the identical keystream XOR)");
    add_map(c_decrypt);
    add_key(c_decrypt);
    c_decrypt->add_option("--in", in_path, "input file (default: stdin)");
    c_decrypt->add_option("--out", out_path, "output file (default: stdout)");

    auto* c_keystream = app.add_subcommand("keystream", "emit raw keystream bytes");
    add_map(c_keystream);
    add_key(c_keystream);
    c_keystream->add_option("--bits", nbits, "number of keystream bits")->required();
    c_keystream->add_option("--out", out_path, "output file (default: stdout)");

    auto* c_nist = app.add_subcommand("nist", "randomness test battery over a file's bits");
    c_nist->add_option("--in", in_path, "input file")->required();
    auto* nist_bits_opt = c_nist->add_option("--bits", nbits, "test only the first N bits");
    c_nist->add_flag("--kv", kv, "machine-readable key=value output");

    auto* c_period = app.add_subcommand("period", "period measurements over random keys");
    add_map(c_period);
    c_period->add_option("--precision", precision, "state precision in bits (<= 16)");
    c_period->add_option("--lfsr-order", order_str, "LFSR order (3, 5, 7) or 'none'");
    c_period->add_option("--trials", trials, "number of random keys");
    c_period->add_option("--seed", seed, "experiment RNG seed");
    c_period->add_flag("--csv", csv, "per-trial CSV output");

    auto* c_imgenc = app.add_subcommand("image-encrypt", "encrypt a binary PGM image payload");
    add_map(c_imgenc);
    add_key(c_imgenc);
    c_imgenc->add_option("--in", in_path, "input PGM (P5)")->required();
    c_imgenc->add_option("--out", out_path, "output PGM")->required();

    auto* c_imgcorr = app.add_subcommand("image-corr", "Pearson correlation of two PGM images");
    c_imgcorr->add_option("--a", path_a, "first PGM")->required();
    c_imgcorr->add_option("--b", path_b, "second PGM")->required();

    auto* c_bitmap = app.add_subcommand("bitmap", "render keystream bits as a black/white PGM");
    add_map(c_bitmap);
    add_key(c_bitmap);
    c_bitmap->add_option("--bits", nbits, "number of bits to render")->required();
    c_bitmap->add_option("--width", width, "pixels per row");
    c_bitmap->add_option("--out", out_path, "output PGM")->required();
    c_bitmap->add_flag("--no-lfsr", no_lfsr, "render the bare map's LSB sequence instead");

    auto* c_bench = app.add_subcommand("bench", "keystream throughput report");
    add_map(c_bench);
    c_bench->add_option("--bytes", nbytes, "bytes to generate");

    try {
        std::vector<const char*> argv;
        argv.push_back("chaostream");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        const MapFamily family = parse_family(map_str);

        if (c_keygen->parsed()) {
            out << key_encode(keygen(family)) << "\n";
            return 0;
        }
        if (c_encrypt->parsed() || c_decrypt->parsed()) {
            const Key key = key_parse(key_hex, family);
            err << kKeyReuseWarning << "\n";
            const auto data = in_path.empty() ? read_stream(in) : read_file(in_path);
            write_output(out_path, out, encrypt(key, data));
            return 0;
        }
        if (c_keystream->parsed()) {
            const Key key = key_parse(key_hex, family);
            GeneratorState g = make_cipher_generator(key);
            write_output(out_path, out, keystream_bytes_for_bits(g, nbits));
            return 0;
        }
        if (c_nist->parsed()) {
            const auto data = read_file(in_path);
            const std::uint64_t avail = static_cast<std::uint64_t>(data.size()) * 8;
            std::uint64_t use = nist_bits_opt->count() ? nbits : avail;
            if (use > avail) {
                throw std::invalid_argument("--bits " + std::to_string(use) +
                                            " exceeds the file's " + std::to_string(avail) +
                                            " bits");
            }
            const TestReport report = run_suite(BitSequence::from_bytes(data, use));
            out << (kv ? report_kv(report) : report_text(report));
            return report.all_pass ? 0 : 3;
        }
        if (c_period->parsed()) {
            return cmd_period(out, family, precision, order_str, trials, seed, csv);
        }
        if (c_imgenc->parsed()) {
            const Key key = key_parse(key_hex, family);
            err << kKeyReuseWarning << "\n";
            GrayImage img = pgm_read(read_file(in_path));
            img.pixels = encrypt(key, img.pixels);
            write_file(out_path, pgm_write(img));
            return 0;
        }
        if (c_imgcorr->parsed()) {
            const double r = corr2(pgm_read(read_file(path_a)), pgm_read(read_file(path_b)));
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f\n", r);
            out << buf;
            return 0;
        }
        if (c_bitmap->parsed()) {
            const Key key = key_parse(key_hex, family);
            std::vector<std::uint8_t> bits;
            if (no_lfsr) {
                bits = bare_map_bits(key_map(key), fp_from_raw(kCipherPrecision, key.x0_bits),
                                     nbits);
            } else {
                GeneratorState g = make_cipher_generator(key);
                bits = ks_bits(g, nbits);
            }
            const GrayImage img = bitmap_render(BitSequence::from_bits(bits), width);
            write_file(out_path, pgm_write(img));
            return 0;
        }
        if (c_bench->parsed()) {
            const Key key = key_parse(family == MapFamily::Stm ? kBenchStmKey : kBenchMlmKey,
                                      family);
            GeneratorState g = make_cipher_generator(key);
            const auto start = std::chrono::steady_clock::now();
            std::uint64_t left = nbytes;
            std::uint8_t sink = 0;
            while (left > 0) {
                const std::uint64_t chunk = std::min<std::uint64_t>(left, 1 << 16);
                for (std::uint8_t b : ks_bytes(g, chunk)) sink ^= b;
                left -= chunk;
            }
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "%llu bytes in %.3f s: %.0f bytes/s (%.2f MiB/s) [checksum %02x]\n",
                          static_cast<unsigned long long>(nbytes), dt.count(),
                          static_cast<double>(nbytes) / dt.count(),
                          static_cast<double>(nbytes) / dt.count() / (1024.0 * 1024.0), sink);
            out << buf;
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand selected\n";
    return 1;
}

}  // namespace chaostream
