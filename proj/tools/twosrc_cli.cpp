// Copyright 2026 The twosrc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Links only the C interface.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twosrc/twosrc.h"

namespace {

enum Exit : int {
    kOk = 0,
    kOther = 1,
    kUsage = 2,
    kCapacity = 3,
    kUnsupportedRate = 4,
    kIo = 5,
    kVerification = 6,
};

int exit_code(twosrc_status st) {
    switch (st) {
        case TWOSRC_OK:
            return kOk;
        case TWOSRC_E_INVALID_ARGUMENT:
            return kUsage;
        case TWOSRC_E_CAPACITY:
            return kCapacity;
        case TWOSRC_E_UNSUPPORTED_RATE:
            return kUnsupportedRate;
        case TWOSRC_E_IO:
        case TWOSRC_E_TRUNCATED:
            return kIo;
        case TWOSRC_E_VERIFICATION_FAILED:
            return kVerification;
        default:
            return kOther;
    }
}

struct Failure {
    int code;
};

void check(twosrc_status st) {
    if (st == TWOSRC_OK) {
        return;
    }
    std::cerr << "twosrc: " << twosrc_status_name(st) << ": " << twosrc_last_error() << "\n";
    throw Failure{exit_code(st)};
}

[[noreturn]] void usage_error(const std::string& msg) {
    std::cerr << "twosrc: usage: " << msg << "\n";
    throw Failure{kUsage};
}

struct OwnedString {
    char* p = nullptr;
    ~OwnedString() { twosrc_free_string(p); }
    std::string str() const { return p ? p : ""; }
};

struct Plan {
    twosrc_plan* p = nullptr;
    ~Plan() { twosrc_plan_free(p); }
};

void emit(const std::string& text, const std::string& report_path) {
    if (report_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(report_path, std::ios::trunc);
    out << text;
    if (!out) {
        std::cerr << "twosrc: io: cannot write report to " << report_path << "\n";
        throw Failure{kIo};
    }
}

/// "2^47" or a decimal integer.
std::uint64_t parse_count(const std::string& text, const char* flag) {
    std::uint64_t v = 0;
    try {
        std::size_t pos = 0;
        if (const auto caret = text.find('^'); caret != std::string::npos) {
            if (std::stoull(text.substr(0, caret), &pos) != 2 || pos != caret) {
                usage_error(std::string(flag) + " powers must be of 2");
            }
            const std::string e = text.substr(caret + 1);
            const unsigned long exp = std::stoul(e, &pos);
            if (pos != e.size() || exp > 63) {
                usage_error(std::string(flag) + " exponent must be 0..63");
            }
            return std::uint64_t{1} << exp;
        }
        v = std::stoull(text, &pos);
        if (pos != text.size()) {
            usage_error(std::string("malformed ") + flag + " '" + text + "'");
        }
    } catch (const std::logic_error&) {
        usage_error(std::string("malformed ") + flag + " '" + text + "'");
    }
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "twosrc: io: cannot open " << path << "\n";
        throw Failure{kIo};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct EqFlags {
    unsigned b = 0;
    std::string delta;
    std::string samples;
    std::string sample_bits;
    std::string epsilon = "2^-30";
    std::string plan_path;
};

void add_eq_flags(CLI::App* cmd, EqFlags& f) {
    cmd->add_option("--b", f.b, "bits per sample");
    cmd->add_option("--delta", f.delta, "min-entropy rate, e.g. 10.74/16");
    cmd->add_option("--N", f.samples, "samples per source, e.g. 2^47");
    cmd->add_option("--N-bits", f.sample_bits, "bits per source; must be a multiple of b");
    cmd->add_option("--epsilon", f.epsilon, "target error, e.g. 2^-30")->capture_default_str();
    cmd->add_option("--plan", f.plan_path, "plan report written by 'params'");
}

std::optional<std::uint64_t> samples_from(const EqFlags& f) {
    if (!f.samples.empty() && !f.sample_bits.empty()) {
        usage_error("give either --N or --N-bits, not both");
    }
    if (!f.samples.empty()) {
        return parse_count(f.samples, "--N");
    }
    if (!f.sample_bits.empty()) {
        const std::uint64_t bits = parse_count(f.sample_bits, "--N-bits");
        if (f.b == 0 || bits % f.b != 0) {
            usage_error("--N-bits must be a positive multiple of --b");
        }
        return bits / f.b;
    }
    return std::nullopt;
}

void load_plan(const std::string& path, Plan& plan) { check(twosrc_plan_parse(read_file(path).c_str(), &plan.p)); }

void build_eq_plan(const EqFlags& f, std::optional<std::uint64_t> fallback_samples, Plan& plan) {
    if (!f.plan_path.empty()) {
        load_plan(f.plan_path, plan);
        twosrc_plan_info info{};
        check(twosrc_plan_get_info(plan.p, &info));
        if (info.mode != TWOSRC_MODE_EQ) {
            usage_error("plan file is not an eq plan");
        }
        return;
    }
    if (f.b == 0 || f.delta.empty()) {
        usage_error("--b and --delta are required (or --plan)");
    }
    auto samples = samples_from(f);
    if (!samples) {
        samples = fallback_samples;
    }
    if (!samples) {
        usage_error("--N or --N-bits is required");
    }
    check(twosrc_plan_eq(f.b, *samples, f.delta.c_str(), f.epsilon.c_str(), &plan.p));
}

std::uint64_t file_bits(const std::string& path) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec) {
        std::cerr << "twosrc: io: cannot stat " << path << ": " << ec.message() << "\n";
        throw Failure{kIo};
    }
    return size * 8;
}

int run(int argc, char** argv) {
    CLI::App app{"Seedless two-source randomness extraction over GF(2^q)", "twosrc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", twosrc_version());

    std::string report_path;
    unsigned workers = 1;

    // params
    EqFlags params_flags;
    unsigned params_q1 = 0;
    unsigned params_growth = 0;
    auto* params = app.add_subcommand("params", "derive and print an extraction plan");
    add_eq_flags(params, params_flags);
    auto* params_q1_opt = params->add_option("--q1", params_q1, "first block width (incremental plan)");
    params->add_option("--Delta", params_growth, "width growth per block in samples (incremental plan)");
    params->add_option("--report", report_path, "write the report here instead of stdout");

    // extract-eq
    EqFlags eq_flags;
    std::string x_path;
    std::string y_path;
    std::string out_path;
    auto* extract_eq = app.add_subcommand("extract-eq", "equal-block extraction of two files");
    add_eq_flags(extract_eq, eq_flags);
    for (auto* cmd : {extract_eq}) {
        cmd->add_option("--x", x_path, "first source file")->required();
        cmd->add_option("--y", y_path, "second source file")->required();
        cmd->add_option("--out", out_path, "output file")->required();
        cmd->add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));
        cmd->add_option("--report", report_path, "write the report here instead of stdout");
    }

    // extract-neq
    unsigned neq_b = 0;
    std::string neq_delta;
    unsigned neq_q1 = 0;
    unsigned neq_growth = 0;
    std::string neq_plan_path;
    auto* extract_neq = app.add_subcommand("extract-neq", "incremental-block extraction of two files");
    extract_neq->add_option("--b", neq_b, "bits per sample");
    extract_neq->add_option("--delta", neq_delta, "min-entropy rate");
    extract_neq->add_option("--q1", neq_q1, "first block width in bits");
    extract_neq->add_option("--Delta", neq_growth, "width growth per block in samples");
    extract_neq->add_option("--plan", neq_plan_path, "plan report written by 'params'");
    extract_neq->add_option("--x", x_path, "first source file")->required();
    extract_neq->add_option("--y", y_path, "second source file")->required();
    extract_neq->add_option("--out", out_path, "output file")->required();
    extract_neq->add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));
    extract_neq->add_option("--report", report_path, "write the report here instead of stdout");

    // simulate
    std::string model_arg;
    std::string count_text;
    auto* simulate = app.add_subcommand("simulate", "write samples from a simulated source model");
    simulate->add_option("--model", model_arg, "model JSON file, or inline JSON")->required();
    simulate->add_option("--count", count_text, "number of samples, e.g. 2^20")->required();
    simulate->add_option("--out", out_path, "output file")->required();
    simulate->add_option("--report", report_path, "write the report here instead of stdout");

    // verify
    std::string suite;
    unsigned max_bits = 12;
    std::uint64_t seed = 0x5eed;
    auto* verify = app.add_subcommand("verify", "run brute-force verification suites");
    verify->add_option("--suite", suite, "hadamard, bias, distance, xor, bijection or all")
        ->required()
        ->check(CLI::Validator(
            [](std::string& s) { return twosrc_is_suite(s.c_str()) ? std::string() : "unknown suite '" + s + "'"; },
            "SUITE"));
    verify->add_option("--max-bits", max_bits, "largest q*n to enumerate")->capture_default_str()->check(
        CLI::Range(1u, 16u));
    verify->add_option("--seed", seed, "seed for sampled instances")->capture_default_str();
    verify->add_option("--report", report_path, "write the report here instead of stdout");

    // bench
    EqFlags bench_flags;
    double duration = 2.0;
    std::uint64_t mul_ops = 0;
    auto* bench = app.add_subcommand("bench", "cost model and measured throughput");
    add_eq_flags(bench, bench_flags);
    bench->add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));
    bench->add_option("--duration", duration, "seconds to run")->capture_default_str()->check(
        CLI::PositiveNumber);
    bench->add_option("--mul-ops", mul_ops, "ops per field multiplication in the cost model (0 = default)");
    bench->add_option("--report", report_path, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (params->parsed()) {
        Plan plan;
        if (!params_q1_opt->empty()) {
            if (params_flags.b == 0 || params_flags.delta.empty()) {
                usage_error("--b and --delta are required");
            }
            check(twosrc_plan_neq(params_flags.b, params_flags.delta.c_str(), params_q1, params_growth, &plan.p));
        } else {
            build_eq_plan(params_flags, std::nullopt, plan);
        }
        OwnedString text;
        check(twosrc_plan_report(plan.p, &text.p));
        emit(text.str(), report_path);
        return kOk;
    }

    if (extract_eq->parsed() || extract_neq->parsed()) {
        Plan plan;
        if (extract_eq->parsed()) {
            std::optional<std::uint64_t> fallback;
            if (eq_flags.b > 0) {
                fallback = std::min(file_bits(x_path), file_bits(y_path)) / eq_flags.b;
            }
            build_eq_plan(eq_flags, fallback, plan);
        } else if (!neq_plan_path.empty()) {
            load_plan(neq_plan_path, plan);
        } else {
            if (neq_b == 0 || neq_delta.empty() || neq_q1 == 0) {
                usage_error("--b, --delta and --q1 are required (or --plan)");
            }
            check(twosrc_plan_neq(neq_b, neq_delta.c_str(), neq_q1, neq_growth, &plan.p));
        }
        OwnedString text;
        check(twosrc_extract_files(plan.p, x_path.c_str(), y_path.c_str(), out_path.c_str(), workers, &text.p));
        emit(text.str(), report_path);
        return kOk;
    }

    if (simulate->parsed()) {
        const std::string json = model_arg.find('{') != std::string::npos ? model_arg : read_file(model_arg);
        OwnedString text;
        check(twosrc_simulate(json.c_str(), parse_count(count_text, "--count"), out_path.c_str(), &text.p));
        emit(text.str(), report_path);
        return kOk;
    }

    if (verify->parsed()) {
        OwnedString text;
        std::uint64_t violations = 0;
        const twosrc_status st = twosrc_verify_suite(suite.c_str(), max_bits, seed, &text.p, &violations);
        if (text.p != nullptr) {
            emit(text.str(), report_path);
        }
        check(st);
        return kOk;
    }

    if (bench->parsed()) {
        Plan plan;
        build_eq_plan(bench_flags, std::nullopt, plan);
        OwnedString text;
        check(twosrc_bench(plan.p, workers, duration, mul_ops, &text.p));
        emit(text.str(), report_path);
        return kOk;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Failure& f) {
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "twosrc: " << e.what() << "\n";
        return kOther;
    }
}
