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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twosrc/gf2q.hpp"
#include "twosrc/kvtext.hpp"

namespace twosrc::verify {

// Blocks of n field elements are packed into a t = q * n bit integer with
// element i in bits [i q, (i + 1) q). The one-bit functions under test are
// f_a(x, y) = [a * Ext_IP(x, y)]_1, where [.]_1 is the constant coefficient.

/// Exhaustive table of Ext_IP over all block pairs, index (x << t) | y.
/// Requires t <= 12.
std::vector<std::uint16_t> inner_product_table(const GFContext& ctx, unsigned n);

/// Ext_IP on packed blocks, t <= 64.
std::uint64_t inner_product_packed(const GFContext& ctx, unsigned n, std::uint64_t x, std::uint64_t y);

enum class HadamardMethod {
    /// Pairwise when t <= 10 and its cost is moderate, otherwise Difference.
    Auto,
    /// Every nonzero a, every pair x != x', every y. t <= 10.
    Pairwise,
    /// Every nonzero a and nonzero difference d = x xor x', every y, after
    /// checking on the instance that f_a(x, y) + f_a(x', y) = f_a(x xor x', y).
    Difference,
};

struct HadamardReport {
    unsigned q = 0;
    unsigned n = 0;
    const char* method = "";
    std::uint64_t sums_checked = 0;
    std::uint64_t nonzero_sums = 0;
    std::uint64_t premise_checks = 0;
    std::uint64_t premise_failures = 0;
    bool passed() const noexcept { return nonzero_sums == 0 && premise_failures == 0; }
};

/// Checks that every f_a with a != 0 is a hadamard function. t <= 16.
HadamardReport check_hadamard(const GFContext& ctx, unsigned n, HadamardMethod method = HadamardMethod::Auto);

struct BiasReport {
    unsigned t = 0;
    unsigned k = 0;
    double max_bias = 0.0;
    double bound = 0.0;  // 2^(1 - (2k - t) / 2)
    bool exhaustive = false;
    std::uint64_t sources_tested = 0;    // X supports; Y is the worst case for each
    std::uint64_t functions_tested = 0;  // values of a
    std::uint64_t functions_total = 0;
    bool within_bound() const noexcept { return max_bias <= bound; }
};

struct BiasOptions {
    std::uint64_t seed = 0x5eed;
    std::uint64_t sampled_sources = 200;
    std::uint64_t exhaustive_limit = 100000;  // C(2^t, 2^k) at or below this is enumerated
    double work_budget = 0x1p26;               // caps how many values of a are tried
};

/// Max bias |2 Pr[f_a(X, Y) = 1] - 1| over flat X, Y with min-entropy k.
/// For each X the worst Y is found exactly by ranking y by its correlation.
BiasReport check_one_bit_bias(const GFContext& ctx, unsigned n, unsigned k, const BiasOptions& options = {});

/// Same, reusing a table from inner_product_table.
BiasReport check_one_bit_bias(const GFContext& ctx, unsigned n, std::span<const std::uint16_t> table, unsigned k,
                              const BiasOptions& options = {});

struct DistanceReport {
    std::string instance;
    double statistical_distance = 0.0;
    double bound = 1.0;  // min(1, sqrt3 * 2^(-1/4 - (delta/4 - 1/8) q n + 2q))
    double min_entropy_x = 0.0;
    double min_entropy_y = 0.0;
    double delta = 0.0;
    bool within_bound() const noexcept { return statistical_distance <= bound; }
};

/// Exact distance from uniform of Ext_IP(X, Y) for independent X ~ px,
/// Y ~ py over {0,1}^(qn). delta is min(H(X), H(Y)) / (qn); a claimed delta
/// above that is rejected. t <= 12.
DistanceReport check_extractor_distance(const GFContext& ctx, unsigned n, std::span<const double> px,
                                        std::span<const double> py, std::string instance = {},
                                        std::optional<double> claimed_delta = std::nullopt);

/// Same, reusing a table from inner_product_table.
DistanceReport check_extractor_distance(const GFContext& ctx, unsigned n, std::span<const std::uint16_t> table,
                                        std::span<const double> px, std::span<const double> py,
                                        std::string instance = {});

/// Exact distance of Ext_IP(X, Y) from uniform for X, Y uniform on all
/// blocks: (1 - 2^-q) 2^-(qn). Nonzero because X = 0 forces the output to 0.
double uniform_pair_distance(unsigned q, unsigned n);

struct XorLemmaReport {
    double lhs = 0.0;  // ||P_ZE - U_q x P_E||_1
    double rhs = 0.0;  // 2^q * sum over S != 0 of ||P_(S.Z)E - U_1 x P_E||_1
    bool holds() const noexcept { return lhs <= rhs + 1e-12; }
};

/// joint[z * side_values + e] = Pr[Z = z, E = e]. q <= 4, side_values <= 16.
XorLemmaReport check_xor_lemma_instance(unsigned q, unsigned side_values, std::span<const double> joint);

struct BijectionReport {
    unsigned q = 0;
    std::uint64_t functionals = 0;
    std::uint64_t failures = 0;  // S with zero or several matching a
};

/// For every nonzero S in {0,1}^q there is exactly one a with S.Z = [a * Z]_1
/// for all Z. q <= 10.
BijectionReport check_functional_bijection(const GFContext& ctx);

/// Uniform distribution over a support, as a probability table of size 2^t.
std::vector<double> flat_distribution(unsigned t, std::span<const std::uint32_t> support);

struct SuiteLimits {
    unsigned max_bits = 12;
    std::uint64_t seed = 0x5eed;
    double bias_work_budget = 0x1p21;  // per (q, n, k); see BiasOptions
};

struct SuiteResult {
    KvDocument report;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
};

/// Named suites: hadamard, bias, distance, xor, bijection, all.
SuiteResult run_suite(const std::string& name, const SuiteLimits& limits);

bool is_suite_name(const std::string& name);

}  // namespace twosrc::verify
