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
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace twosrc {

using u128 = unsigned __int128;

inline constexpr unsigned kMaxFieldBits = 128;

/// Polynomial over GF(2) of degree at most 255, bit i holding the
/// coefficient of x^i.
class Gf2Poly {
  public:
    constexpr Gf2Poly() = default;
    constexpr Gf2Poly(u128 lo, u128 hi) : lo_(lo), hi_(hi) {}

    static Gf2Poly from_exponents(std::initializer_list<unsigned> exponents);
    static Gf2Poly monomial(unsigned exponent);

    /// Degree of the polynomial; -1 for the zero polynomial.
    int degree() const noexcept;
    bool coefficient(unsigned i) const noexcept;
    bool is_zero() const noexcept { return lo_ == 0 && hi_ == 0; }

    u128 low() const noexcept { return lo_; }
    u128 high() const noexcept { return hi_; }

    Gf2Poly operator^(const Gf2Poly& o) const noexcept { return {lo_ ^ o.lo_, hi_ ^ o.hi_}; }
    Gf2Poly& operator^=(const Gf2Poly& o) noexcept {
        lo_ ^= o.lo_;
        hi_ ^= o.hi_;
        return *this;
    }
    Gf2Poly operator<<(unsigned s) const noexcept;
    Gf2Poly operator>>(unsigned s) const noexcept;

    friend bool operator==(const Gf2Poly&, const Gf2Poly&) = default;

    /// Renders as "x^80 + x^9 + x^4 + x^2 + 1".
    std::string to_string() const;

  private:
    u128 lo_ = 0;
    u128 hi_ = 0;
};

/// Remainder and gcd in GF(2)[x].
Gf2Poly poly_mod(Gf2Poly a, const Gf2Poly& m);
Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b);

/// Ben-Or test: gcd(poly, x^(2^i) - x mod poly) = 1 for every i <= d/2.
/// Accepts degrees 1..128.
bool is_irreducible(const Gf2Poly& poly);

/// The shipped low-weight modulus for GF(2^q): trinomial x^q + x^k + 1 with
/// the smallest k, else the pentanomial minimizing its middle exponents from
/// the top down. q = 1 uses x + 1.
Gf2Poly shipped_modulus(unsigned q);

/// An element of GF(2^q). Bit i is the coefficient of x^i.
class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(unsigned width, u128 bits);

    static FieldElement zero(unsigned width) { return {width, 0}; }
    static FieldElement one(unsigned width) { return {width, 1}; }
    /// Parses a binary string written highest coefficient first, so "10"
    /// is the polynomial x.
    static FieldElement from_string(std::string_view binary);

    unsigned width() const noexcept { return width_; }
    u128 bits() const noexcept { return bits_; }
    bool bit(unsigned i) const noexcept { return i < width_ && ((bits_ >> i) & 1) != 0; }
    bool is_zero() const noexcept { return bits_ == 0; }

    /// Highest coefficient first, the inverse of from_string.
    std::string to_string() const;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

  private:
    u128 bits_ = 0;
    unsigned width_ = 0;
};

/// Arithmetic context for GF(2^q), 1 <= q <= 128. Immutable once built.
class GFContext {
  public:
    /// Uses the shipped modulus for q.
    explicit GFContext(unsigned q);
    /// Custom modulus; must have degree q, constant term 1 and be irreducible.
    GFContext(unsigned q, const Gf2Poly& modulus);

    unsigned q() const noexcept { return q_; }
    const Gf2Poly& modulus() const noexcept { return modulus_; }
    u128 mask() const noexcept { return mask_; }
    std::uint64_t order() const;  // 2^q, only for q < 64

    FieldElement zero() const { return FieldElement::zero(q_); }
    FieldElement one() const { return FieldElement::one(q_); }
    FieldElement element(u128 bits) const { return {q_, bits}; }

    FieldElement add(const FieldElement& x, const FieldElement& y) const;
    FieldElement mul(const FieldElement& x, const FieldElement& y) const;

    /// Unchecked product of two reduced q-bit values.
    u128 mul_raw(u128 x, u128 y) const noexcept;
    /// Reduces a product of degree < 2q.
    u128 reduce(const Gf2Poly& product) const noexcept;

  private:
    void check_width(const FieldElement& e) const;

    unsigned q_;
    Gf2Poly modulus_;
    u128 mask_;
    std::vector<unsigned> taps_;  // exponents of modulus - x^q
};

FieldElement gf_add(const GFContext& ctx, const FieldElement& x, const FieldElement& y);
FieldElement gf_mul(const GFContext& ctx, const FieldElement& x, const FieldElement& y);

namespace detail {

/// Carry-less product of two 128-bit polynomials.
Gf2Poly clmul(u128 a, u128 b) noexcept;
Gf2Poly clmul_portable(u128 a, u128 b) noexcept;
bool clmul_has_hardware() noexcept;

}  // namespace detail

}  // namespace twosrc
