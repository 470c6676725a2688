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

#include <random>
#include <set>

#include "twosrc/error.hpp"
#include "twosrc/gf2q.hpp"

using namespace twosrc;

namespace {

// Modulus without its leading term, as a q-bit value.
u128 taps_of(const Gf2Poly& m, unsigned q) {
    return q == 128 ? m.low() : (m.low() & ((u128{1} << q) - 1));
}

// Shift-and-add multiplication, independent of clmul and of the tap folding.
u128 ref_mul(u128 a, u128 b, unsigned q, u128 taps) {
    const u128 mask = q == 128 ? ~u128{0} : (u128{1} << q) - 1;
    u128 r = 0;
    for (unsigned i = 0; i < q; ++i) {
        if ((b >> i) & 1) {
            r ^= a;
        }
        const bool top = (a >> (q - 1)) & 1;
        a = (a << 1) & mask;
        if (top) {
            a ^= taps;
        }
    }
    return r;
}

u128 random_bits(std::mt19937_64& rng, unsigned q) {
    u128 v = (u128{rng()} << 64) | rng();
    return q == 128 ? v : v & ((u128{1} << q) - 1);
}

}  // namespace

TEST(Gf2Poly, DegreeAndFormatting) {
    EXPECT_EQ(Gf2Poly().degree(), -1);
    EXPECT_EQ(Gf2Poly::monomial(0).degree(), 0);
    EXPECT_EQ(Gf2Poly::monomial(200).degree(), 200);
    EXPECT_EQ(shipped_modulus(80).to_string(), "x^80 + x^9 + x^4 + x^2 + 1");
    EXPECT_EQ(shipped_modulus(128).to_string(), "x^128 + x^7 + x^2 + x + 1");
    EXPECT_EQ(shipped_modulus(1).to_string(), "x + 1");
    EXPECT_EQ(Gf2Poly::from_exponents({3, 1, 0}) ^ Gf2Poly::monomial(1), Gf2Poly::from_exponents({3, 0}));
}

TEST(Gf2Poly, ModAndGcd) {
    // (x^2 + 1) = (x + 1)^2 over GF(2)
    const auto x1 = Gf2Poly::from_exponents({1, 0});
    EXPECT_EQ(poly_gcd(Gf2Poly::from_exponents({2, 0}), x1), x1);
    EXPECT_TRUE(poly_mod(Gf2Poly::from_exponents({2, 0}), x1).is_zero());
    EXPECT_EQ(poly_mod(Gf2Poly::monomial(3), Gf2Poly::from_exponents({2, 1, 0})), Gf2Poly::monomial(0));
}

TEST(Irreducibility, KnownSmallCases) {
    EXPECT_TRUE(is_irreducible(Gf2Poly::from_exponents({2, 1, 0})));
    EXPECT_FALSE(is_irreducible(Gf2Poly::from_exponents({2, 0})));
    EXPECT_TRUE(is_irreducible(Gf2Poly::from_exponents({8, 4, 3, 1, 0})));  // AES
    EXPECT_FALSE(is_irreducible(Gf2Poly::from_exponents({4, 2, 0})));
    EXPECT_THROW(is_irreducible(Gf2Poly::monomial(0)), Error);
    EXPECT_THROW(is_irreducible(Gf2Poly::monomial(129)), Error);
}

TEST(Irreducibility, AgreesWithTrialDivisionUpToDegree16) {
    // All irreducibles of degree <= 8 by sieving, then trial division.
    std::vector<std::uint32_t> small;
    for (std::uint32_t p = 2; p < (1u << 9); ++p) {
        const int deg = 31 - __builtin_clz(p);
        bool irr = deg >= 1;
        for (std::uint32_t d : small) {
            const int dd = 31 - __builtin_clz(d);
            if (2 * dd > deg) {
                break;
            }
            if (poly_mod(Gf2Poly(p, 0), Gf2Poly(d, 0)).is_zero()) {
                irr = false;
                break;
            }
        }
        if (irr) {
            small.push_back(p);
        }
    }
    std::mt19937_64 rng(11);
    auto trial = [&](std::uint32_t p) {
        const int deg = 31 - __builtin_clz(p);
        for (std::uint32_t d : small) {
            if (2 * (31 - __builtin_clz(d)) > deg) {
                break;
            }
            if (poly_mod(Gf2Poly(p, 0), Gf2Poly(d, 0)).is_zero()) {
                return false;
            }
        }
        return true;
    };
    for (std::uint32_t p = 2; p < (1u << 11); ++p) {
        ASSERT_EQ(is_irreducible(Gf2Poly(p, 0)), trial(p)) << p;
    }
    for (int i = 0; i < 3000; ++i) {
        const std::uint32_t p = static_cast<std::uint32_t>(rng() % (1u << 17)) | (1u << 16) >> (rng() % 6);
        if (p < 2) {
            continue;
        }
        ASSERT_EQ(is_irreducible(Gf2Poly(p, 0)), trial(p)) << p;
    }
}

TEST(Moduli, EveryShippedModulusIsIrreducibleAndLowWeight) {
    for (unsigned q = 1; q <= 128; ++q) {
        const auto m = shipped_modulus(q);
        ASSERT_EQ(m.degree(), static_cast<int>(q));
        ASSERT_TRUE(m.coefficient(0));
        ASSERT_TRUE(is_irreducible(m)) << q;
        int weight = 0;
        for (unsigned i = 0; i <= q; ++i) {
            weight += m.coefficient(i);
        }
        EXPECT_TRUE(weight == 3 || weight == 5 || q == 1) << q;
    }
    EXPECT_THROW(shipped_modulus(0), Error);
    EXPECT_THROW(shipped_modulus(129), Error);
}

TEST(FieldElement, ValidationAndStrings) {
    EXPECT_THROW(FieldElement(0, 0), Error);
    EXPECT_THROW(FieldElement(129, 0), Error);
    EXPECT_THROW(FieldElement(3, 8), Error);
    EXPECT_EQ(FieldElement::from_string("10"), FieldElement(2, 2));
    EXPECT_EQ(FieldElement(4, 5).to_string(), "0101");
    EXPECT_TRUE(FieldElement(4, 5).bit(0));
    EXPECT_FALSE(FieldElement(4, 5).bit(1));
}

TEST(GFContext, RejectsBadModuli) {
    EXPECT_THROW(GFContext(0), Error);
    EXPECT_THROW(GFContext(129), Error);
    EXPECT_THROW(GFContext(2, Gf2Poly::from_exponents({2, 0})), Error);     // reducible
    EXPECT_THROW(GFContext(3, Gf2Poly::from_exponents({2, 1, 0})), Error);  // wrong degree
    EXPECT_NO_THROW(GFContext(8, Gf2Poly::from_exponents({8, 4, 3, 1, 0})));
}

TEST(GFContext, WidthMismatchIsAnError) {
    const GFContext f(4);
    EXPECT_THROW(f.mul(FieldElement(4, 1), FieldElement(5, 1)), Error);
    EXPECT_THROW(f.add(FieldElement(3, 1), FieldElement(4, 1)), Error);
}

TEST(GFContext, KnownProducts) {
    // GF(4) with x^2 + x + 1: x * x = x + 1
    const GFContext f2(2);
    EXPECT_EQ(f2.mul(f2.element(2), f2.element(2)), f2.element(3));
    // AES field: 0x57 * 0x83 = 0xc1
    const GFContext aes(8, Gf2Poly::from_exponents({8, 4, 3, 1, 0}));
    EXPECT_EQ(aes.mul(aes.element(0x57), aes.element(0x83)), aes.element(0xc1));
    // GCM-style reduction: x^127 * x = x^7 + x^2 + x + 1 for q = 128
    const GFContext f128(128);
    EXPECT_EQ(f128.mul_raw(u128{1} << 127, 2), u128{0x87});
}

TEST(FieldAxioms, ExhaustiveUpToQ3) {
    for (unsigned q = 1; q <= 3; ++q) {
        const GFContext f(q);
        const unsigned size = 1u << q;
        for (unsigned a = 0; a < size; ++a) {
            const auto ea = f.element(a);
            EXPECT_EQ(f.add(ea, f.zero()), ea);
            EXPECT_EQ(f.mul(ea, f.one()), ea);
            EXPECT_EQ(f.add(ea, ea), f.zero());
            for (unsigned b = 0; b < size; ++b) {
                const auto eb = f.element(b);
                EXPECT_EQ(f.add(ea, eb), f.add(eb, ea));
                EXPECT_EQ(f.mul(ea, eb), f.mul(eb, ea));
                for (unsigned c = 0; c < size; ++c) {
                    const auto ec = f.element(c);
                    EXPECT_EQ(f.add(f.add(ea, eb), ec), f.add(ea, f.add(eb, ec)));
                    EXPECT_EQ(f.mul(f.mul(ea, eb), ec), f.mul(ea, f.mul(eb, ec)));
                    EXPECT_EQ(f.mul(ea, f.add(eb, ec)), f.add(f.mul(ea, eb), f.mul(ea, ec)));
                }
            }
        }
    }
}

class RandomizedAxioms : public ::testing::TestWithParam<unsigned> {};

TEST_P(RandomizedAxioms, TenThousandTriples) {
    const unsigned q = GetParam();
    const GFContext f(q);
    const u128 taps = taps_of(f.modulus(), q);
    std::mt19937_64 rng(1000 + q);
    int failures = 0;
    for (int i = 0; i < 10000; ++i) {
        const u128 a = random_bits(rng, q);
        const u128 b = random_bits(rng, q);
        const u128 c = random_bits(rng, q);
        const u128 ab = f.mul_raw(a, b);
        failures += ab != ref_mul(a, b, q, taps);
        failures += ab != f.mul_raw(b, a);
        failures += f.mul_raw(ab, c) != f.mul_raw(a, f.mul_raw(b, c));
        failures += f.mul_raw(a, b ^ c) != (ab ^ f.mul_raw(a, c));
        failures += f.mul_raw(a, 1) != a;
        failures += f.mul_raw(a, 0) != 0;
    }
    EXPECT_EQ(failures, 0);
}

INSTANTIATE_TEST_SUITE_P(Widths, RandomizedAxioms, ::testing::Values(4u, 8u, 16u, 80u, 128u));

TEST(FieldAxioms, InversesExistUpToQ8) {
    for (unsigned q = 1; q <= 8; ++q) {
        const GFContext f(q);
        const unsigned size = 1u << q;
        for (unsigned a = 1; a < size; ++a) {
            int inverses = 0;
            for (unsigned b = 1; b < size; ++b) {
                inverses += f.mul_raw(a, b) == 1;
            }
            ASSERT_EQ(inverses, 1) << "q=" << q << " a=" << a;
        }
    }
}

TEST(FieldAxioms, MultiplicationByNonzeroIsABijection) {
    for (unsigned q : {4u, 8u, 12u}) {
        const GFContext f(q);
        const unsigned size = 1u << q;
        for (unsigned a : {1u, 2u, 3u, size - 1}) {
            std::set<u128> image;
            for (unsigned b = 0; b < size; ++b) {
                image.insert(f.mul_raw(a, b));
            }
            EXPECT_EQ(image.size(), size) << q;
        }
    }
}

TEST(Clmul, PortableMatchesDispatch) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20000; ++i) {
        const u128 a = random_bits(rng, 128);
        const u128 b = random_bits(rng, 128);
        ASSERT_EQ(detail::clmul(a, b), detail::clmul_portable(a, b));
    }
    // (x^127)^2 = x^254
    EXPECT_EQ(detail::clmul_portable(u128{1} << 127, u128{1} << 127), Gf2Poly::monomial(254));
    RecordProperty("hardware_clmul", detail::clmul_has_hardware() ? "yes" : "no");
}

TEST(Clmul, EveryWidthMatchesReference) {
    std::mt19937_64 rng(9);
    for (unsigned q = 1; q <= 128; ++q) {
        const GFContext f(q);
        const u128 taps = taps_of(f.modulus(), q);
        for (int i = 0; i < 200; ++i) {
            const u128 a = random_bits(rng, q);
            const u128 b = random_bits(rng, q);
            ASSERT_EQ(f.mul_raw(a, b), ref_mul(a, b, q, taps)) << q;
        }
    }
}
