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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "twosrc/error.hpp"
#include "twosrc/verify.hpp"

using namespace twosrc;
using namespace twosrc::verify;

namespace {

std::vector<double> uniform_table(unsigned t) {
    return std::vector<double>(std::size_t{1} << t, std::exp2(-static_cast<double>(t)));
}

}  // namespace

TEST(Tables, PackedMatchesTable) {
    for (unsigned q : {1u, 2u, 3u, 4u}) {
        const GFContext f(q);
        for (unsigned n = 1; q * n <= 8; ++n) {
            const unsigned t = q * n;
            const auto table = inner_product_table(f, n);
            for (std::uint64_t x = 0; x < (1u << t); x += 3) {
                for (std::uint64_t y = 0; y < (1u << t); y += 5) {
                    ASSERT_EQ(table[(x << t) | y], inner_product_packed(f, n, x, y));
                }
            }
        }
    }
    EXPECT_THROW(inner_product_table(GFContext(13), 1), Error);
}

TEST(Hadamard, WorkedExamples) {
    // q = 1, n = 2 is the inner product mod 2
    auto r = check_hadamard(GFContext(1), 2);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.sums_checked, 6u);  // one a, C(4, 2) pairs
    // q = 2, n = 1: three values of a, six pairs each
    r = check_hadamard(GFContext(2), 1, HadamardMethod::Pairwise);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.sums_checked, 18u);
    EXPECT_TRUE(check_hadamard(GFContext(2), 2).passed());
}

TEST(Hadamard, MethodsAgreeAndPremisesHold) {
    for (unsigned q : {1u, 2u, 3u, 5u}) {
        const GFContext f(q);
        for (unsigned n = 1; q * n <= 8; ++n) {
            const auto p = check_hadamard(f, n, HadamardMethod::Pairwise);
            const auto d = check_hadamard(f, n, HadamardMethod::Difference);
            EXPECT_TRUE(p.passed()) << q << "," << n;
            EXPECT_TRUE(d.passed()) << q << "," << n;
            EXPECT_GT(d.premise_checks, 0u);
            EXPECT_EQ(d.premise_failures, 0u);
        }
    }
}

TEST(Hadamard, InfeasibleAboveSixteenBits) {
    try {
        check_hadamard(GFContext(17), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Infeasible);
    }
    EXPECT_THROW(check_hadamard(GFContext(4), 5), Error);
    EXPECT_THROW(check_hadamard(GFContext(11), 1, HadamardMethod::Pairwise), Error);
}

TEST(Bias, FullEntropyBiasIsTheZeroBlockMass) {
    // X = 0 forces f = 0; any other x makes f balanced over uniform Y.
    for (unsigned q : {1u, 2u, 3u}) {
        const GFContext f(q);
        for (unsigned n = 1; q * n <= 6; ++n) {
            const auto r = check_one_bit_bias(f, n, q * n);
            EXPECT_EQ(r.max_bias, std::exp2(-static_cast<double>(q * n))) << q << "," << n;
            EXPECT_TRUE(r.exhaustive);
        }
    }
}

TEST(Bias, WorkedExamplesStayBelowBound) {
    auto r = check_one_bit_bias(GFContext(1), 4, 3);
    EXPECT_DOUBLE_EQ(r.bound, 1.0);
    EXPECT_LE(r.max_bias, r.bound);
    r = check_one_bit_bias(GFContext(2), 2, 3);
    EXPECT_DOUBLE_EQ(r.bound, 1.0);
    EXPECT_TRUE(r.within_bound());
    EXPECT_LT(r.max_bias, 1.0);
    EXPECT_TRUE(r.exhaustive);  // C(16, 8) = 12870 <= 1e5
}

TEST(Bias, NonIncreasingInKOnExhaustiveFamilies) {
    BiasOptions opts;
    opts.work_budget = 1e12;  // every a
    for (auto [q, n] : {std::pair{1u, 3u}, std::pair{3u, 1u}, std::pair{1u, 4u}, std::pair{2u, 2u}}) {
        const GFContext f(q);
        double prev = 2.0;
        for (unsigned k = 0; k <= q * n; ++k) {
            const auto r = check_one_bit_bias(f, n, k, opts);
            ASSERT_TRUE(r.exhaustive) << q << "," << n << "," << k;
            ASSERT_EQ(r.functions_tested, r.functions_total);
            EXPECT_LE(r.max_bias, prev + 1e-15) << q << "," << n << "," << k;
            EXPECT_TRUE(r.within_bound());
            prev = r.max_bias;
        }
    }
}

TEST(Bias, ZeroEntropyIsFullyBiased) {
    // X and Y point masses: f is a constant, bias 1.
    const auto r = check_one_bit_bias(GFContext(2), 2, 0);
    EXPECT_DOUBLE_EQ(r.max_bias, 1.0);
    EXPECT_TRUE(r.within_bound());  // bound 2^(1 + 2) is vacuous
}

TEST(Distance, UniformSourcesGiveTheExactXZeroExcess) {
    for (unsigned q : {1u, 2u, 3u}) {
        const GFContext f(q);
        for (unsigned n = 1; q * n <= 9; ++n) {
            const auto u = uniform_table(q * n);
            const auto r = check_extractor_distance(f, n, u, u, "uniform");
            EXPECT_EQ(r.statistical_distance, uniform_pair_distance(q, n));
            EXPECT_TRUE(r.within_bound());
            EXPECT_DOUBLE_EQ(r.delta, 1.0);
        }
    }
}

TEST(Distance, UniformYWithNonzeroXIsExactlyUniform) {
    const GFContext f(2);
    std::vector<std::uint32_t> nonzero(15);
    std::iota(nonzero.begin(), nonzero.end(), 1u);
    const auto r = check_extractor_distance(f, 2, flat_distribution(4, nonzero), uniform_table(4));
    EXPECT_LE(r.statistical_distance, 0x1p-40);
}

TEST(Distance, ConstantXGivesOneMinusTwoToMinusQ) {
    const GFContext f(2);
    const std::uint32_t zero = 0;
    const auto r = check_extractor_distance(f, 2, flat_distribution(4, std::span(&zero, 1)), uniform_table(4));
    EXPECT_DOUBLE_EQ(r.statistical_distance, 0.75);
    EXPECT_DOUBLE_EQ(r.bound, 1.0);
    EXPECT_EQ(r.min_entropy_x, 0.0);
}

TEST(Distance, FlatK3SourcesWithinBound) {
    const GFContext f(2);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        std::vector<std::uint32_t> all(16);
        std::iota(all.begin(), all.end(), 0u);
        std::shuffle(all.begin(), all.end(), rng);
        const auto px = flat_distribution(4, std::span(all).first(8));
        std::shuffle(all.begin(), all.end(), rng);
        const auto py = flat_distribution(4, std::span(all).first(8));
        const auto r = check_extractor_distance(f, 2, px, py, "flat", 0.75);
        EXPECT_TRUE(r.within_bound());
        EXPECT_LE(r.statistical_distance, 1.0);
    }
}

TEST(Distance, RejectsOverclaimedEntropyAndBadTables) {
    const GFContext f(2);
    const std::uint32_t zero = 0;
    const auto point = flat_distribution(4, std::span(&zero, 1));
    const auto u = uniform_table(4);
    try {
        check_extractor_distance(f, 2, point, u, "", 0.5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
    std::vector<double> bad(16, 0.1);
    EXPECT_THROW(check_extractor_distance(f, 2, bad, u), Error);
    EXPECT_THROW(check_extractor_distance(f, 1, u, u), Error);  // wrong size
    try {
        check_extractor_distance(GFContext(13), 1, u, u);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Infeasible);
    }
}

TEST(XorLemma, WorkedExamples) {
    // Z uniform and independent of a 4-valued E
    std::vector<double> joint(4 * 4);
    const double pe[4] = {0.1, 0.2, 0.3, 0.4};
    for (int z = 0; z < 4; ++z) {
        for (int e = 0; e < 4; ++e) {
            joint[z * 4 + e] = pe[e] / 4;
        }
    }
    auto r = check_xor_lemma_instance(2, 4, joint);
    EXPECT_NEAR(r.lhs, 0.0, 1e-15);
    EXPECT_NEAR(r.rhs, 0.0, 1e-15);
    // Z constant, E trivial, q = 1
    r = check_xor_lemma_instance(1, 1, std::vector<double>{1.0, 0.0});
    EXPECT_DOUBLE_EQ(r.lhs, 1.0);
    EXPECT_DOUBLE_EQ(r.rhs, 2.0);
    EXPECT_TRUE(r.holds());
    // random 2-bit Z correlated with a 2-valued E
    std::mt19937_64 rng(2);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> j(8);
        double sum = 0;
        for (auto& v : j) {
            v = std::uniform_real_distribution<double>(0, 1)(rng);
            sum += v;
        }
        for (auto& v : j) {
            v /= sum;
        }
        EXPECT_TRUE(check_xor_lemma_instance(2, 2, j).holds());
    }
    EXPECT_THROW(check_xor_lemma_instance(5, 1, std::vector<double>(32, 1.0 / 32)), Error);
    EXPECT_THROW(check_xor_lemma_instance(1, 1, std::vector<double>{0.5, 0.6}), Error);
}

TEST(Bijection, EveryFunctionalHasExactlyOneMultiplier) {
    for (unsigned q = 1; q <= 10; ++q) {
        const auto r = check_functional_bijection(GFContext(q));
        EXPECT_EQ(r.failures, 0u) << q;
        EXPECT_EQ(r.functionals, (1u << q) - 1);
    }
    // Independent of the modulus choice.
    const auto aes = check_functional_bijection(GFContext(8, Gf2Poly::from_exponents({8, 4, 3, 1, 0})));
    EXPECT_EQ(aes.failures, 0u);
}

TEST(Suites, NamesAndSmallRuns) {
    EXPECT_TRUE(is_suite_name("all"));
    EXPECT_FALSE(is_suite_name("nope"));
    EXPECT_THROW(run_suite("nope", {}), Error);
    SuiteLimits limits;
    limits.max_bits = 6;
    for (const char* s : {"hadamard", "bias", "distance", "xor", "bijection"}) {
        const auto r = run_suite(s, limits);
        EXPECT_EQ(r.violations, 0u) << s;
        EXPECT_GT(r.checks, 0u) << s;
        EXPECT_EQ(r.report.get_string("result"), "pass");
    }
}
