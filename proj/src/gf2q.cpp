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

#include "twosrc/gf2q.hpp"

#include <bit>

#if defined(__x86_64__)
#include <immintrin.h>
#endif

#include "twosrc/error.hpp"

namespace twosrc {
namespace {

int degree128(u128 v) noexcept {
    auto hi = static_cast<std::uint64_t>(v >> 64);
    auto lo = static_cast<std::uint64_t>(v);
    if (hi != 0) {
        return 127 - std::countl_zero(hi);
    }
    if (lo != 0) {
        return 63 - std::countl_zero(lo);
    }
    return -1;
}

Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m) {
    return poly_mod(detail::clmul(a.low(), b.low()), m);
}

}  // namespace

// ---------------------------------------------------------------------------
// Gf2Poly

Gf2Poly Gf2Poly::monomial(unsigned exponent) {
    require(exponent < 256, "monomial exponent out of range");
    if (exponent < 128) {
        return {u128{1} << exponent, 0};
    }
    return {0, u128{1} << (exponent - 128)};
}

Gf2Poly Gf2Poly::from_exponents(std::initializer_list<unsigned> exponents) {
    Gf2Poly p;
    for (unsigned e : exponents) {
        p ^= monomial(e);
    }
    return p;
}

int Gf2Poly::degree() const noexcept {
    if (hi_ != 0) {
        return 128 + degree128(hi_);
    }
    return degree128(lo_);
}

bool Gf2Poly::coefficient(unsigned i) const noexcept {
    if (i < 128) {
        return ((lo_ >> i) & 1) != 0;
    }
    if (i < 256) {
        return ((hi_ >> (i - 128)) & 1) != 0;
    }
    return false;
}

Gf2Poly Gf2Poly::operator<<(unsigned s) const noexcept {
    if (s == 0) {
        return *this;
    }
    if (s >= 256) {
        return {};
    }
    if (s >= 128) {
        return {0, lo_ << (s - 128)};
    }
    return {lo_ << s, (hi_ << s) | (lo_ >> (128 - s))};
}

Gf2Poly Gf2Poly::operator>>(unsigned s) const noexcept {
    if (s == 0) {
        return *this;
    }
    if (s >= 256) {
        return {};
    }
    if (s >= 128) {
        return {hi_ >> (s - 128), 0};
    }
    return {(lo_ >> s) | (hi_ << (128 - s)), hi_ >> s};
}

std::string Gf2Poly::to_string() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        if (!coefficient(static_cast<unsigned>(i))) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        if (i == 0) {
            out += "1";
        } else if (i == 1) {
            out += "x";
        } else {
            out += "x^" + std::to_string(i);
        }
    }
    return out;
}

Gf2Poly poly_mod(Gf2Poly a, const Gf2Poly& m) {
    const int dm = m.degree();
    require(dm >= 0, "polynomial division by zero");
    for (int da = a.degree(); da >= dm; da = a.degree()) {
        a ^= m << static_cast<unsigned>(da - dm);
    }
    return a;
}

Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b) {
    while (!b.is_zero()) {
        Gf2Poly r = poly_mod(a, b);
        a = b;
        b = r;
    }
    return a;
}

bool is_irreducible(const Gf2Poly& poly) {
    const int d = poly.degree();
    if (d < 1) {
        fail(ErrorCode::InvalidArgument, "irreducibility needs degree >= 1");
    }
    if (d > static_cast<int>(kMaxFieldBits)) {
        fail(ErrorCode::Capacity, "irreducibility test supports degree <= 128");
    }
    if (d == 1) {
        return true;
    }
    const Gf2Poly x = Gf2Poly::monomial(1);
    const Gf2Poly one = Gf2Poly::monomial(0);
    Gf2Poly power = poly_mod(x, poly);
    for (int i = 1; i <= d / 2; ++i) {
        power = mulmod(power, power, poly);
        if (poly_gcd(poly, power ^ x) != one) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// carry-less multiplication

namespace detail {

Gf2Poly clmul_portable(u128 a, u128 b) noexcept {
    Gf2Poly table[16];
    const Gf2Poly base(a, 0);
    for (unsigned v = 1; v < 16; ++v) {
        Gf2Poly t;
        for (unsigned bit = 0; bit < 4; ++bit) {
            if ((v >> bit) & 1) {
                t ^= base << bit;
            }
        }
        table[v] = t;
    }
    Gf2Poly acc;
    const int top = degree128(b);
    for (int shift = top < 0 ? -1 : (top / 4) * 4; shift >= 0; shift -= 4) {
        acc = acc << 4;
        acc ^= table[static_cast<unsigned>(b >> shift) & 15u];
    }
    return acc;
}

#if defined(__x86_64__)
namespace {

__attribute__((target("pclmul,sse2"))) Gf2Poly clmul_pclmul(u128 a, u128 b) noexcept {
    const __m128i va = _mm_set_epi64x(static_cast<long long>(a >> 64),
                                      static_cast<long long>(static_cast<std::uint64_t>(a)));
    const __m128i vb = _mm_set_epi64x(static_cast<long long>(b >> 64),
                                      static_cast<long long>(static_cast<std::uint64_t>(b)));
    const __m128i lo = _mm_clmulepi64_si128(va, vb, 0x00);
    const __m128i hi = _mm_clmulepi64_si128(va, vb, 0x11);
    const __m128i mid = _mm_xor_si128(_mm_clmulepi64_si128(va, vb, 0x10),
                                      _mm_clmulepi64_si128(va, vb, 0x01));
    alignas(16) std::uint64_t w[6];
    _mm_store_si128(reinterpret_cast<__m128i*>(&w[0]), lo);
    _mm_store_si128(reinterpret_cast<__m128i*>(&w[2]), hi);
    _mm_store_si128(reinterpret_cast<__m128i*>(&w[4]), mid);
    auto to_u128 = [&w](int i) { return (u128{w[i + 1]} << 64) | w[i]; };
    return Gf2Poly(to_u128(0), to_u128(2)) ^ (Gf2Poly(to_u128(4), 0) << 64);
}

const bool kHasPclmul = __builtin_cpu_supports("pclmul");

}  // namespace

bool clmul_has_hardware() noexcept { return kHasPclmul; }

Gf2Poly clmul(u128 a, u128 b) noexcept {
    return kHasPclmul ? clmul_pclmul(a, b) : clmul_portable(a, b);
}
#else
bool clmul_has_hardware() noexcept { return false; }

Gf2Poly clmul(u128 a, u128 b) noexcept { return clmul_portable(a, b); }
#endif

}  // namespace detail

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(unsigned width, u128 bits) : bits_(bits), width_(width) {
    if (width == 0 || width > kMaxFieldBits) {
        fail(ErrorCode::Capacity, "field width must be in 1..128, got " + std::to_string(width));
    }
    require(width == kMaxFieldBits || (bits >> width) == 0,
            "element has bits above width " + std::to_string(width));
}

FieldElement FieldElement::from_string(std::string_view binary) {
    require(!binary.empty(), "empty field element literal");
    u128 bits = 0;
    for (char c : binary) {
        require(c == '0' || c == '1', "field element literal must be binary");
        bits = (bits << 1) | static_cast<u128>(c == '1');
    }
    return {static_cast<unsigned>(binary.size()), bits};
}

std::string FieldElement::to_string() const {
    std::string out(width_, '0');
    for (unsigned i = 0; i < width_; ++i) {
        if (bit(i)) {
            out[width_ - 1 - i] = '1';
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// GFContext

GFContext::GFContext(unsigned q) : GFContext(q, shipped_modulus(q)) {}

GFContext::GFContext(unsigned q, const Gf2Poly& modulus) : q_(q), modulus_(modulus) {
    if (q == 0 || q > kMaxFieldBits) {
        fail(ErrorCode::Capacity, "field width must be in 1..128, got " + std::to_string(q));
    }
    require(modulus.degree() == static_cast<int>(q), "modulus degree must equal q");
    require(modulus.coefficient(0), "modulus must have constant term 1");
    require(is_irreducible(modulus), "modulus " + modulus.to_string() + " is reducible");
    mask_ = q == kMaxFieldBits ? ~u128{0} : (u128{1} << q) - 1;
    for (unsigned i = 0; i < q; ++i) {
        if (modulus.coefficient(i)) {
            taps_.push_back(i);
        }
    }
}

std::uint64_t GFContext::order() const {
    require(q_ < 64, "field order does not fit 64 bits");
    return std::uint64_t{1} << q_;
}

u128 GFContext::reduce(const Gf2Poly& product) const noexcept {
    Gf2Poly p = product;
    for (;;) {
        const Gf2Poly high = p >> q_;
        if (high.is_zero()) {
            return p.low();
        }
        p = Gf2Poly(p.low() & mask_, 0);
        for (unsigned tap : taps_) {
            p ^= high << tap;
        }
    }
}

u128 GFContext::mul_raw(u128 x, u128 y) const noexcept {
    return reduce(detail::clmul(x, y));
}

void GFContext::check_width(const FieldElement& e) const {
    if (e.width() != q_) {
        fail(ErrorCode::InvalidArgument, "element width " + std::to_string(e.width()) +
                                             " does not match field q=" + std::to_string(q_));
    }
}

FieldElement GFContext::add(const FieldElement& x, const FieldElement& y) const {
    check_width(x);
    check_width(y);
    return {q_, x.bits() ^ y.bits()};
}

FieldElement GFContext::mul(const FieldElement& x, const FieldElement& y) const {
    check_width(x);
    check_width(y);
    return {q_, mul_raw(x.bits(), y.bits())};
}

FieldElement gf_add(const GFContext& ctx, const FieldElement& x, const FieldElement& y) {
    return ctx.add(x, y);
}

FieldElement gf_mul(const GFContext& ctx, const FieldElement& x, const FieldElement& y) {
    return ctx.mul(x, y);
}

}  // namespace twosrc
