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

#include "twosrc/params.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>
#include <tuple>

#include "twosrc/error.hpp"
#include "twosrc/gf2q.hpp"

namespace twosrc {
namespace {

using u128 = unsigned __int128;

constexpr unsigned kMaxSampleBits = 64;

// Parses an unsigned decimal such as "10.74" into digits / 10^scale.
std::pair<u128, u128> parse_decimal(std::string_view text) {
    require(!text.empty(), "empty number");
    u128 digits = 0;
    u128 scale = 1;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : text) {
        if (c == '.') {
            require(!seen_point, "malformed number '" + std::string(text) + "'");
            seen_point = true;
            continue;
        }
        require(c >= '0' && c <= '9', "malformed number '" + std::string(text) + "'");
        seen_digit = true;
        digits = digits * 10 + static_cast<unsigned>(c - '0');
        if (seen_point) {
            scale *= 10;
        }
        require(digits < (u128{1} << 100) && scale < (u128{1} << 100),
                "number '" + std::string(text) + "' has too many digits");
    }
    require(seen_digit, "malformed number '" + std::string(text) + "'");
    return {digits, scale};
}

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

unsigned bit_width128(u128 v) {
    auto hi = static_cast<std::uint64_t>(v >> 64);
    return hi != 0 ? 64 + static_cast<unsigned>(std::bit_width(hi))
                   : static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(v)));
}

// a * 2^sa >= c * 2^sc, exactly.
bool scaled_ge(u128 a, unsigned sa, u128 c, unsigned sc) {
    const unsigned common = std::min(sa, sc);
    sa -= common;
    sc -= common;
    if (sa > 0 && bit_width128(a) + sa > 127) {
        return a != 0;
    }
    if (sc > 0 && bit_width128(c) + sc > 127) {
        return c == 0;
    }
    return (a << sa) >= (c << sc);
}

long double block_exponent(unsigned n, long double q, const MinEntropyRate& delta) {
    // (delta/4 - 1/8) = (2 num - den) / (8 den)
    const long double slope =
        (2.0L * static_cast<long double>(delta.num()) - static_cast<long double>(delta.den())) /
        (8.0L * static_cast<long double>(delta.den()));
    return static_cast<long double>(log2_bound_constant()) - slope * q * n + 2.0L * q;
}

long double log2_add(long double a, long double b) {
    if (std::isinf(a) && a < 0) {
        return b;
    }
    const long double hi = std::max(a, b);
    const long double lo = std::min(a, b);
    return hi + std::log2(1.0L + std::exp2(lo - hi));
}

void check_sample_bits(unsigned b) {
    require(b >= 1 && b <= kMaxSampleBits, "sample width b must be in 1..64");
}

}  // namespace

// ---------------------------------------------------------------------------

MinEntropyRate::MinEntropyRate(std::uint64_t num, std::uint64_t den) {
    require(den != 0, "min-entropy rate denominator is zero");
    require(num <= den, "min-entropy rate cannot exceed 1");
    const std::uint64_t g = num == 0 ? den : std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

MinEntropyRate MinEntropyRate::parse(std::string_view text) {
    const auto slash = text.find('/');
    auto [a, sa] = parse_decimal(text.substr(0, slash));
    u128 c = 1;
    u128 sc = 1;
    if (slash != std::string_view::npos) {
        std::tie(c, sc) = parse_decimal(text.substr(slash + 1));
    }
    require(c != 0, "min-entropy rate denominator is zero");
    // (a / sa) / (c / sc) = a sc / (sa c)
    u128 g1 = gcd128(a, c);
    u128 g2 = gcd128(sc, sa);
    if (g1 == 0) {
        g1 = 1;
    }
    a /= g1;
    c /= g1;
    sc /= g2;
    sa /= g2;
    require(bit_width128(a) + bit_width128(sc) <= 127 && bit_width128(sa) + bit_width128(c) <= 127,
            "min-entropy rate '" + std::string(text) + "' is too precise");
    u128 num = a * sc;
    u128 den = sa * c;
    const u128 g = num == 0 ? den : gcd128(num, den);
    num /= g;
    den /= g;
    require(den <= UINT64_MAX, "min-entropy rate '" + std::string(text) + "' is too precise");
    require(num <= den, "min-entropy rate '" + std::string(text) + "' exceeds 1");
    return {static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den)};
}

std::string MinEntropyRate::to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Epsilon Epsilon::from_log2(double v) {
    require(std::isfinite(v) && v < 0.0, "epsilon must lie in (0, 1)");
    return Epsilon{v};
}

Epsilon Epsilon::from_value(double v) {
    require(std::isfinite(v) && v > 0.0 && v < 1.0, "epsilon must lie in (0, 1)");
    return Epsilon{std::log2(v)};
}

Epsilon Epsilon::parse(std::string_view text) {
    auto parse_double = [&](std::string_view s) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        require(ec == std::errc() && ptr == s.data() + s.size(),
                "malformed epsilon '" + std::string(text) + "'");
        return v;
    };
    if (text.starts_with("2^")) {
        return from_log2(parse_double(text.substr(2)));
    }
    return from_value(parse_double(text));
}

double Epsilon::value() const { return std::exp2(log2); }

bool Epsilon::is_power_of_two() const { return std::floor(log2) == log2; }

std::string Epsilon::to_string() const {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, log2);
    return "2^" + std::string(buf, ptr);
}

std::uint64_t NeqPlan::width(std::uint64_t block) const {
    require(block >= 1, "block index is 1-based");
    return q1 + (block - 1) * static_cast<std::uint64_t>(growth) * b;
}

std::uint64_t NeqPlan::output_bits_after(std::uint64_t blocks) const {
    if (blocks == 0) {
        return 0;
    }
    return blocks * q1 + (blocks - 1) * blocks * static_cast<std::uint64_t>(growth) * b / 2;
}

double log2_bound_constant() { return 0.5 * std::log2(3.0) - 0.25; }

unsigned samples_per_block_for(const MinEntropyRate& delta) {
    if (!delta.above_half()) {
        fail(ErrorCode::UnsupportedRate,
             "min-entropy rate " + delta.to_string() + " is not above 1/2; the two-source "
             "inner-product extractor requires delta > 1/2");
    }
    const u128 num = u128{24} * delta.den();
    const u128 den = 2 * u128{delta.num()} - delta.den();
    const u128 n = (num + den - 1) / den;
    require(n <= (u128{1} << 31), "min-entropy rate too close to 1/2");
    return static_cast<unsigned>(n);
}

EqPlan plan_eq(unsigned b, std::uint64_t samples, const MinEntropyRate& delta, const Epsilon& epsilon) {
    check_sample_bits(b);
    require(samples >= 1, "sample count N must be positive");
    require(std::isfinite(epsilon.log2) && epsilon.log2 < 0.0, "epsilon must lie in (0, 1)");

    EqPlan plan;
    plan.b = b;
    plan.samples = samples;
    plan.delta = delta;
    plan.epsilon = epsilon;
    plan.n = samples_per_block_for(delta);

    // Smallest q = j b, j >= 1, with 2^q >= N / (epsilon n).
    auto large_enough = [&](unsigned q) {
        if (epsilon.is_power_of_two() && -epsilon.log2 < 4096) {
            const auto e = static_cast<unsigned>(-epsilon.log2);
            return scaled_ge(plan.n, q, samples, e);
        }
        const long double target = std::log2(static_cast<long double>(samples)) -
                                   static_cast<long double>(epsilon.log2) -
                                   std::log2(static_cast<long double>(plan.n));
        return static_cast<long double>(q) >= target;
    };
    unsigned q = b;
    while (!large_enough(q)) {
        q += b;
        if (q > kMaxFieldBits) {
            fail(ErrorCode::Capacity, "derived field width exceeds 128 bits; reduce N or raise epsilon");
        }
    }

    const u128 total_bits = u128{samples} * b;
    for (;;) {
        if (q > kMaxFieldBits) {
            fail(ErrorCode::Capacity, "derived field width exceeds 128 bits; reduce N or raise epsilon");
        }
        plan.q = q;
        plan.num_blocks = static_cast<std::uint64_t>(total_bits / (u128{q} * plan.n));
        plan.output_bits = plan.num_blocks * q;
        plan.log2_error = error_bound_eq(plan);
        if (plan.log2_error <= epsilon.log2) {
            return plan;
        }
        q += b;
        ++plan.q_bumps;
    }
}

NeqPlan plan_neq(unsigned b, const MinEntropyRate& delta, unsigned q1, unsigned growth) {
    check_sample_bits(b);
    require(q1 >= 1, "q1 must be positive");
    require(q1 % b == 0, "q1 must be a multiple of b");
    if (q1 > kMaxFieldBits) {
        fail(ErrorCode::Capacity, "q1 exceeds 128 bits");
    }
    NeqPlan plan;
    plan.b = b;
    plan.delta = delta;
    plan.n = samples_per_block_for(delta);
    plan.q1 = q1;
    plan.growth = growth;
    if (growth > 0) {
        plan.log2_error_limit = error_bound_neq(plan, std::nullopt);
    }
    return plan;
}

double error_bound_block(unsigned n, unsigned q, const MinEntropyRate& delta) {
    require(n >= 1 && q >= 1, "error bound needs n, q >= 1");
    return static_cast<double>(block_exponent(n, q, delta));
}

double error_bound_blocks(unsigned n, unsigned q, const MinEntropyRate& delta, std::uint64_t blocks) {
    if (blocks == 0) {
        return -INFINITY;
    }
    return static_cast<double>(std::log2(static_cast<long double>(blocks)) + block_exponent(n, q, delta));
}

double error_bound_eq(const EqPlan& plan) {
    return error_bound_blocks(plan.n, plan.q, plan.delta, plan.num_blocks);
}

double error_bound_neq(const NeqPlan& plan, std::optional<std::uint64_t> k) {
    require(plan.n >= 1 && plan.q1 >= 1, "malformed incremental plan");
    const long double step = static_cast<long double>(plan.growth) * plan.b;
    if (!k) {
        if (plan.growth == 0) {
            fail(ErrorCode::Divergent, "error sum diverges for growth 0; infinite runs need Delta >= 1");
        }
        const long double tail = std::log1p(-std::exp2(-step)) / std::log(2.0L);
        return static_cast<double>(static_cast<long double>(log2_bound_constant()) - plan.q1 - tail);
    }
    if (*k == 0) {
        return -INFINITY;
    }
    if (plan.growth == 0) {
        return error_bound_blocks(plan.n, plan.q1, plan.delta, *k);
    }
    long double acc = -INFINITY;
    long double previous = INFINITY;
    for (std::uint64_t l = 1; l <= *k; ++l) {
        const long double q = plan.q1 + static_cast<long double>(l - 1) * step;
        const long double term = block_exponent(plan.n, q, plan.delta);
        acc = log2_add(acc, term);
        // Once terms fall geometrically, the whole remaining tail is at most
        // term / (1 - ratio); below 2^-80 of the sum it cannot move the result.
        if (term < previous) {
            const long double ratio = std::exp2(term - previous);
            const long double tail = term - std::log2(1.0L - ratio);
            if (tail < acc - 80.0L) {
                break;
            }
        }
        previous = term;
    }
    return static_cast<double>(acc);
}

ExtractionRate extraction_rate(unsigned n, const MinEntropyRate& delta) {
    require(n >= 1, "n must be positive");
    const double num = static_cast<double>(delta.num());
    const double den = static_cast<double>(delta.den());
    return {den / (2.0 * num * n), (2.0 * num - den) / (48.0 * num)};
}

}  // namespace twosrc
