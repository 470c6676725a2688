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

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "twosrc/error.hpp"
#include "twosrc/verify.hpp"

namespace twosrc::verify {
namespace {

constexpr std::array<const char*, 6> kSuites = {"hadamard", "bias", "distance", "xor", "bijection", "all"};

std::string pass_word(bool ok) { return ok ? "pass" : "FAIL"; }

std::string key(const char* suite, unsigned q, unsigned n) {
    return std::string(suite) + ".q" + std::to_string(q) + ".n" + std::to_string(n);
}

void record(SuiteResult& out, const std::string& k, bool ok, const std::string& detail) {
    ++out.checks;
    if (!ok) {
        ++out.violations;
    }
    out.report.set(k, pass_word(ok) + " " + detail);
}

void suite_hadamard(SuiteResult& out, unsigned max_bits) {
    const unsigned limit = std::min(max_bits, 16u);
    for (unsigned q = 1; q <= limit; ++q) {
        const GFContext ctx(q);
        for (unsigned n = 1; q * n <= limit; ++n) {
            const auto rep = check_hadamard(ctx, n);
            std::ostringstream d;
            d << "method=" << rep.method << " sums=" << rep.sums_checked << " nonzero=" << rep.nonzero_sums
              << " premise_checks=" << rep.premise_checks << " premise_failures=" << rep.premise_failures;
            record(out, key("hadamard", q, n), rep.passed(), d.str());
        }
    }
}

void suite_bias(SuiteResult& out, unsigned max_bits, std::uint64_t seed, double budget) {
    const unsigned limit = std::min(max_bits, 12u);
    BiasOptions opts;
    opts.seed = seed;
    opts.work_budget = budget;
    for (unsigned q = 1; q <= limit; ++q) {
        const GFContext ctx(q);
        for (unsigned n = 1; q * n <= limit; ++n) {
            const unsigned t = q * n;
            const auto table = inner_product_table(ctx, n);
            for (unsigned k = 0; k <= t; ++k) {
                const auto rep = check_one_bit_bias(ctx, n, table, k, opts);
                std::ostringstream d;
                d << "max_bias=" << format_double(rep.max_bias) << " bound=" << format_double(rep.bound)
                  << " sources=" << rep.sources_tested << (rep.exhaustive ? " exhaustive" : " sampled")
                  << " functions=" << rep.functions_tested << "/" << rep.functions_total;
                record(out, key("bias", q, n) + ".k" + std::to_string(k), rep.within_bound(), d.str());
            }
        }
    }
}

std::vector<std::uint32_t> random_support(unsigned t, std::uint32_t size, std::mt19937_64& rng) {
    std::vector<std::uint32_t> all(std::size_t{1} << t);
    for (std::uint32_t i = 0; i < all.size(); ++i) {
        all[i] = i;
    }
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    return all;
}

std::vector<double> biased_bits(unsigned t, double p_one) {
    std::vector<double> p(std::size_t{1} << t);
    for (std::size_t x = 0; x < p.size(); ++x) {
        const int ones = std::popcount(x);
        p[x] = std::pow(p_one, ones) * std::pow(1.0 - p_one, static_cast<int>(t) - ones);
    }
    return p;
}

void suite_distance(SuiteResult& out, unsigned max_bits, std::uint64_t seed) {
    const unsigned limit = std::min(max_bits, 12u);
    std::mt19937_64 rng(seed);
    for (unsigned q = 1; q <= limit; ++q) {
        const GFContext ctx(q);
        for (unsigned n = 1; q * n <= limit; ++n) {
            const unsigned t = q * n;
            const auto table = inner_product_table(ctx, n);
            const std::uint32_t blocks = 1u << t;
            const auto uniform = flat_distribution(t, random_support(t, blocks, rng));

            std::vector<std::pair<std::string, std::pair<std::vector<double>, std::vector<double>>>> cases;
            cases.push_back({"uniform", {uniform, uniform}});
            std::vector<std::uint32_t> nonzero(blocks - 1);
            std::iota(nonzero.begin(), nonzero.end(), 1u);
            cases.push_back({"uniform-nonzero-x", {flat_distribution(t, nonzero), uniform}});
            const std::uint32_t zero = 0;
            cases.push_back({"constant-x", {flat_distribution(t, std::span(&zero, 1)), uniform}});
            if (t >= 1) {
                cases.push_back({"flat-k" + std::to_string(t - 1),
                                 {flat_distribution(t, random_support(t, blocks / 2, rng)),
                                  flat_distribution(t, random_support(t, blocks / 2, rng))}});
            }
            const unsigned half = t / 2 + 1;
            if (half < t) {
                cases.push_back({"flat-k" + std::to_string(half),
                                 {flat_distribution(t, random_support(t, 1u << half, rng)),
                                  flat_distribution(t, random_support(t, 1u << half, rng))}});
            }
            if (n >= 2) {
                // X confined to blocks whose first element is zero.
                std::vector<std::uint32_t> sub;
                for (std::uint32_t x = 0; x < blocks; ++x) {
                    if ((x & ((1u << q) - 1)) == 0) {
                        sub.push_back(x);
                    }
                }
                cases.push_back({"subspace-x", {flat_distribution(t, sub), uniform}});
            }
            cases.push_back({"biased-bits", {biased_bits(t, 0.6), biased_bits(t, 0.3)}});

            for (auto& [label, tables] : cases) {
                const auto rep = check_extractor_distance(ctx, n, table, tables.first, tables.second, label);
                bool ok = rep.within_bound() && rep.statistical_distance <= 1.0;
                if (label == "uniform") {
                    // Only X = 0 biases the output: Pr[Z = 0] = 2^-t + (1 - 2^-t) 2^-q.
                    ok = ok && rep.statistical_distance == uniform_pair_distance(q, n);
                } else if (label == "uniform-nonzero-x") {
                    ok = ok && rep.statistical_distance <= 0x1p-40;
                }
                std::ostringstream d;
                d << "distance=" << format_double(rep.statistical_distance) << " bound=" << format_double(rep.bound)
                  << " delta=" << format_double(rep.delta);
                record(out, key("distance", q, n) + "." + label, ok, d.str());
            }
        }
    }
}

std::vector<double> random_joint(std::size_t size, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(size);
    double sum = 0.0;
    for (double& x : v) {
        x = u(rng);
        sum += x;
    }
    for (double& x : v) {
        x /= sum;
    }
    return v;
}

void suite_xor(SuiteResult& out, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x0a0a);
    for (unsigned q = 1; q <= 4; ++q) {
        const std::size_t zs = std::size_t{1} << q;
        auto run = [&](const std::string& label, unsigned sides, const std::vector<double>& joint) {
            const auto rep = check_xor_lemma_instance(q, sides, joint);
            std::ostringstream d;
            d << "lhs=" << format_double(rep.lhs) << " rhs=" << format_double(rep.rhs);
            record(out, "xor.q" + std::to_string(q) + "." + label, rep.holds(), d.str());
        };
        {
            const auto pe = random_joint(4, rng);
            std::vector<double> joint(zs * 4);
            for (std::size_t z = 0; z < zs; ++z) {
                for (unsigned e = 0; e < 4; ++e) {
                    joint[z * 4 + e] = pe[e] / static_cast<double>(zs);
                }
            }
            run("independent-uniform", 4, joint);
        }
        {
            std::vector<double> joint(zs, 0.0);
            joint[0] = 1.0;
            run("constant", 1, joint);
        }
        for (unsigned sides : {2u, 5u, 16u}) {
            for (int rep = 0; rep < 4; ++rep) {
                run("random-e" + std::to_string(sides) + "-" + std::to_string(rep), sides,
                    random_joint(zs * sides, rng));
            }
        }
    }
}

void suite_bijection(SuiteResult& out, unsigned max_bits) {
    const unsigned limit = std::min(max_bits, 10u);
    for (unsigned q = 1; q <= limit; ++q) {
        const auto rep = check_functional_bijection(GFContext(q));
        record(out, "bijection.q" + std::to_string(q), rep.failures == 0,
               "functionals=" + std::to_string(rep.functionals) + " failures=" + std::to_string(rep.failures));
    }
}

}  // namespace

bool is_suite_name(const std::string& name) {
    return std::find(kSuites.begin(), kSuites.end(), name) != kSuites.end();
}

SuiteResult run_suite(const std::string& name, const SuiteLimits& limits) {
    require(is_suite_name(name), "unknown verify suite '" + name + "'");
    require(limits.max_bits >= 1, "max-bits must be positive");
    SuiteResult out;
    out.report.set("kind", "verify");
    out.report.set("suite", name);
    out.report.set("max_bits", limits.max_bits);
    out.report.set("seed", limits.seed);
    const bool all = name == "all";
    if (all || name == "hadamard") {
        suite_hadamard(out, limits.max_bits);
    }
    if (all || name == "bias") {
        suite_bias(out, limits.max_bits, limits.seed, limits.bias_work_budget);
    }
    if (all || name == "distance") {
        suite_distance(out, limits.max_bits, limits.seed);
    }
    if (all || name == "xor") {
        suite_xor(out, limits.seed);
    }
    if (all || name == "bijection") {
        suite_bijection(out, limits.max_bits);
    }
    out.report.set("checks", out.checks);
    out.report.set("violations", out.violations);
    out.report.set("result", out.violations == 0 ? "pass" : "fail");
    return out;
}

}  // namespace twosrc::verify
