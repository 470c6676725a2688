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

#include "twosrc/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "twosrc/error.hpp"
#include "twosrc/params.hpp"

namespace twosrc::verify {
namespace {

constexpr unsigned kMaxHadamardBits = 16;
constexpr unsigned kMaxTableBits = 12;
constexpr unsigned kMaxPairwiseBits = 10;
constexpr double kPairwiseAutoBudget = 0x1p29;  // word operations

void check_feasible(bool ok, const std::string& what) {
    if (!ok) {
        fail(ErrorCode::Infeasible, what);
    }
}

std::uint32_t parity(std::uint64_t v) { return static_cast<std::uint32_t>(std::popcount(v) & 1); }

/// exp/log tables for GF(2^q), q <= 16, built from the context's own
/// multiplication by walking the powers of a generator.
class SmallField {
  public:
    explicit SmallField(const GFContext& ctx) : q_(ctx.q()) {
        check_feasible(q_ <= kMaxHadamardBits, "small-field tables need q <= 16");
        const std::uint32_t size = 1u << q_;
        const std::uint32_t order = size - 1;
        log_.assign(size, 0);
        exp_.assign(2 * std::size_t{order} + 1, 0);
        for (std::uint32_t g = 1; g < size; ++g) {
            std::uint32_t v = 1;
            std::uint32_t i = 0;
            bool ok = true;
            for (; i < order; ++i) {
                if (i > 0 && v == 1) {
                    ok = false;
                    break;
                }
                exp_[i] = v;
                v = static_cast<std::uint32_t>(ctx.mul_raw(v, g));
            }
            if (ok && v == 1) {
                break;
            }
            require(g + 1 < size, "no generator found; modulus is not irreducible");
        }
        for (std::uint32_t i = 0; i < order; ++i) {
            exp_[i + order] = exp_[i];
            log_[exp_[i]] = i;
        }
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        if (a == 0 || b == 0) {
            return 0;
        }
        return exp_[log_[a] + log_[b]];
    }

  private:
    unsigned q_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> exp_;
};

// L_a(z) = [a * z]_1 for every z.
std::vector<std::uint8_t> functional_table(const GFContext& ctx, std::uint32_t a) {
    const std::uint32_t size = 1u << ctx.q();
    std::vector<std::uint8_t> out(size);
    for (std::uint32_t z = 0; z < size; ++z) {
        out[z] = static_cast<std::uint8_t>(ctx.mul_raw(a, z) & 1);
    }
    return out;
}

// Coefficients of z -> [a * z]_1 read off the monomials.
std::uint32_t functional_coefficients(const GFContext& ctx, std::uint32_t a) {
    std::uint32_t s = 0;
    for (unsigned j = 0; j < ctx.q(); ++j) {
        s |= static_cast<std::uint32_t>(ctx.mul_raw(a, u128{1} << j) & 1) << j;
    }
    return s;
}

void walsh_hadamard(std::vector<std::int32_t>& v) {
    const std::size_t size = v.size();
    for (std::size_t h = 1; h < size; h <<= 1) {
        for (std::size_t i = 0; i < size; i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const std::int32_t a = v[j];
                const std::int32_t b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

HadamardReport hadamard_pairwise(const GFContext& ctx, unsigned n) {
    const unsigned q = ctx.q();
    const unsigned t = q * n;
    check_feasible(t <= kMaxPairwiseBits, "pairwise hadamard check needs q*n <= 10");
    HadamardReport rep;
    rep.q = q;
    rep.n = n;
    rep.method = "pairwise";
    const auto table = inner_product_table(ctx, n);
    const std::size_t blocks = std::size_t{1} << t;
    const std::size_t words = std::max<std::size_t>(1, blocks / 64);
    std::vector<std::uint64_t> rows(blocks * words);
    const auto half = static_cast<std::int64_t>(blocks / 2);
    for (std::uint32_t a = 1; a < (1u << q); ++a) {
        const auto f = functional_table(ctx, a);
        std::fill(rows.begin(), rows.end(), 0);
        for (std::size_t x = 0; x < blocks; ++x) {
            std::uint64_t* row = &rows[x * words];
            for (std::size_t y = 0; y < blocks; ++y) {
                if (f[table[(x << t) | y]]) {
                    row[y / 64] |= std::uint64_t{1} << (y % 64);
                }
            }
        }
        for (std::size_t x = 0; x < blocks; ++x) {
            const std::uint64_t* rx = &rows[x * words];
            for (std::size_t x2 = x + 1; x2 < blocks; ++x2) {
                const std::uint64_t* ry = &rows[x2 * words];
                std::int64_t disagree = 0;
                for (std::size_t w = 0; w < words; ++w) {
                    disagree += std::popcount(rx[w] ^ ry[w]);
                }
                // sum over y of (-1)^(f(x,y) + f(x',y)) = 2^t - 2 * disagreements
                ++rep.sums_checked;
                if (disagree != half) {
                    ++rep.nonzero_sums;
                }
            }
        }
    }
    return rep;
}

HadamardReport hadamard_difference(const GFContext& ctx, unsigned n) {
    const unsigned q = ctx.q();
    const unsigned t = q * n;
    check_feasible(t <= kMaxHadamardBits, "hadamard check needs q*n <= 16");
    HadamardReport rep;
    rep.q = q;
    rep.n = n;
    rep.method = "difference";

    const std::uint32_t size = 1u << q;
    const std::uint32_t mask = size - 1;
    const SmallField field(ctx);
    std::mt19937_64 rng(0x4ad4 + 131 * q + n);

    // Premise 1: z -> [a * z]_1 is the linear functional with coefficients s_a.
    std::vector<std::uint32_t> coeff(size);
    const bool exhaustive_functionals = 2 * q <= 24;
    for (std::uint32_t a = 1; a < size; ++a) {
        coeff[a] = functional_coefficients(ctx, a);
        auto check = [&](std::uint32_t z) {
            ++rep.premise_checks;
            if ((field.mul(a, z) & 1) != parity(coeff[a] & z) || field.mul(a, z) != ctx.mul_raw(a, z)) {
                ++rep.premise_failures;
            }
        };
        if (exhaustive_functionals) {
            for (std::uint32_t z = 0; z < size; ++z) {
                check(z);
            }
        } else {
            for (int i = 0; i < 64; ++i) {
                check(static_cast<std::uint32_t>(rng()) & mask);
            }
        }
    }

    // Premise 2: Ext_IP is additive in its first argument.
    const std::uint64_t blocks = std::uint64_t{1} << t;
    const std::uint64_t bmask = blocks - 1;
    auto ext = [&](std::uint64_t x, std::uint64_t y) {
        std::uint32_t acc = 0;
        for (unsigned i = 0; i < n; ++i) {
            acc ^= field.mul(static_cast<std::uint32_t>((x >> (i * q)) & mask),
                             static_cast<std::uint32_t>((y >> (i * q)) & mask));
        }
        return acc;
    };
    auto additive = [&](std::uint64_t x, std::uint64_t x2, std::uint64_t y) {
        ++rep.premise_checks;
        if ((ext(x, y) ^ ext(x2, y)) != ext(x ^ x2, y) ||
            ext(x, y) != static_cast<std::uint32_t>(inner_product_packed(ctx, n, x, y))) {
            ++rep.premise_failures;
        }
    };
    if (3 * t <= 18) {
        for (std::uint64_t x = 0; x < blocks; ++x) {
            for (std::uint64_t x2 = 0; x2 < blocks; ++x2) {
                for (std::uint64_t y = 0; y < blocks; ++y) {
                    additive(x, x2, y);
                }
            }
        }
    } else {
        for (int i = 0; i < (1 << 16); ++i) {
            additive(rng() & bmask, rng() & bmask, rng() & bmask);
        }
    }

    // Main check: for every d != 0 the histogram of Ext_IP(d, y) over all y,
    // Walsh-transformed, must vanish at every s_a.
    std::vector<std::vector<std::uint32_t>> products(n, std::vector<std::uint32_t>(size));
    std::vector<std::int32_t> hist(size);
    auto accumulate = [&](auto&& self, unsigned level, std::uint32_t acc) -> void {
        const auto& row = products[level];
        if (level + 1 == n) {
            for (std::uint32_t v = 0; v < size; ++v) {
                ++hist[acc ^ row[v]];
            }
            return;
        }
        for (std::uint32_t v = 0; v < size; ++v) {
            self(self, level + 1, acc ^ row[v]);
        }
    };
    for (std::uint64_t d = 1; d < blocks; ++d) {
        for (unsigned i = 0; i < n; ++i) {
            const auto di = static_cast<std::uint32_t>((d >> (i * q)) & mask);
            for (std::uint32_t v = 0; v < size; ++v) {
                products[i][v] = field.mul(di, v);
            }
        }
        std::fill(hist.begin(), hist.end(), 0);
        accumulate(accumulate, 0, 0);
        walsh_hadamard(hist);
        for (std::uint32_t a = 1; a < size; ++a) {
            ++rep.sums_checked;
            if (hist[coeff[a]] != 0) {
                ++rep.nonzero_sums;
            }
        }
    }
    return rep;
}

double log2_binomial(double n, double k) {
    return (std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)) / std::log(2.0);
}

// Iterates k-subsets of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
    const std::size_t k = c.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

double min_entropy(std::span<const double> p) {
    const double m = *std::max_element(p.begin(), p.end());
    return m >= 1.0 ? 0.0 : -std::log2(m);
}

void check_distribution(std::span<const double> p, std::size_t size, const char* name) {
    require(p.size() == size, std::string(name) + " must have 2^(q n) entries");
    double sum = 0.0;
    for (double v : p) {
        require(std::isfinite(v) && v >= 0.0, std::string(name) + " has a negative entry");
        sum += v;
    }
    require(std::abs(sum - 1.0) <= 1e-9, std::string(name) + " does not sum to 1");
}

}  // namespace

std::uint64_t inner_product_packed(const GFContext& ctx, unsigned n, std::uint64_t x, std::uint64_t y) {
    const unsigned q = ctx.q();
    require(q * n <= 64, "packed blocks hold at most 64 bits");
    const std::uint64_t mask = q == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << q) - 1;
    u128 acc = 0;
    for (unsigned i = 0; i < n; ++i) {
        acc ^= ctx.mul_raw((x >> (i * q)) & mask, (y >> (i * q)) & mask);
    }
    return static_cast<std::uint64_t>(acc);
}

std::vector<std::uint16_t> inner_product_table(const GFContext& ctx, unsigned n) {
    const unsigned q = ctx.q();
    const unsigned t = q * n;
    require(n >= 1, "n must be positive");
    check_feasible(t <= kMaxTableBits, "inner product table needs q*n <= 12");
    const std::size_t blocks = std::size_t{1} << t;
    std::vector<std::uint16_t> table(blocks * blocks);
    const std::uint32_t size = 1u << q;
    const std::uint32_t mask = size - 1;
    std::vector<std::uint16_t> mul(std::size_t{size} * size);
    for (std::uint32_t a = 0; a < size; ++a) {
        for (std::uint32_t b = 0; b < size; ++b) {
            mul[a * size + b] = static_cast<std::uint16_t>(ctx.mul_raw(a, b));
        }
    }
    for (std::size_t x = 0; x < blocks; ++x) {
        for (std::size_t y = 0; y < blocks; ++y) {
            std::uint16_t acc = 0;
            for (unsigned i = 0; i < n; ++i) {
                acc ^= mul[((x >> (i * q)) & mask) * size + ((y >> (i * q)) & mask)];
            }
            table[(x << t) | y] = acc;
        }
    }
    return table;
}

HadamardReport check_hadamard(const GFContext& ctx, unsigned n, HadamardMethod method) {
    require(n >= 1, "n must be positive");
    check_feasible(ctx.q() * n <= kMaxHadamardBits, "hadamard check needs q*n <= 16");
    if (method == HadamardMethod::Auto) {
        const unsigned t = ctx.q() * n;
        const double words = std::max(1.0, std::exp2(t) / 64.0);
        const double cost = (std::exp2(ctx.q()) - 1.0) * std::exp2(2.0 * t) / 2.0 * words;
        method = t <= kMaxPairwiseBits && cost <= kPairwiseAutoBudget ? HadamardMethod::Pairwise
                                                                      : HadamardMethod::Difference;
    }
    return method == HadamardMethod::Pairwise ? hadamard_pairwise(ctx, n) : hadamard_difference(ctx, n);
}

BiasReport check_one_bit_bias(const GFContext& ctx, unsigned n, unsigned k, const BiasOptions& options) {
    require(n >= 1, "n must be positive");
    check_feasible(ctx.q() * n <= kMaxTableBits, "bias check needs q*n <= 12");
    return check_one_bit_bias(ctx, n, inner_product_table(ctx, n), k, options);
}

BiasReport check_one_bit_bias(const GFContext& ctx, unsigned n, std::span<const std::uint16_t> table, unsigned k,
                              const BiasOptions& options) {
    const unsigned q = ctx.q();
    const unsigned t = q * n;
    require(n >= 1, "n must be positive");
    check_feasible(t <= kMaxTableBits, "bias check needs q*n <= 12");
    require(k <= t, "min-entropy k cannot exceed t = q*n");

    BiasReport rep;
    rep.t = t;
    rep.k = k;
    rep.bound = std::exp2(1.0 - (2.0 * k - t) / 2.0);

    const std::uint32_t blocks = 1u << t;
    require(table.size() == std::size_t{blocks} * blocks, "inner product table has the wrong size");
    const std::uint32_t support = 1u << k;
    const double log2_sources = log2_binomial(blocks, support);
    rep.exhaustive = log2_sources <= std::log2(static_cast<double>(options.exhaustive_limit));
    const double sources = rep.exhaustive ? std::round(std::exp2(log2_sources))
                                          : static_cast<double>(options.sampled_sources);

    rep.functions_total = (std::uint64_t{1} << q) - 1;
    const double per_function = sources * (std::min<double>(support, blocks - support) + 2.0) * blocks +
                                (sources * support >= blocks ? static_cast<double>(blocks) * blocks : 0.0);
    rep.functions_tested = static_cast<std::uint64_t>(
        std::clamp(std::floor(options.work_budget / per_function), 1.0, static_cast<double>(rep.functions_total)));

    std::mt19937_64 rng(options.seed ^ (std::uint64_t{q} << 40) ^ (std::uint64_t{n} << 20) ^ k);
    std::vector<std::uint32_t> functions;
    if (rep.functions_tested == rep.functions_total) {
        functions.resize(rep.functions_total);
        std::iota(functions.begin(), functions.end(), 1u);
    } else {
        std::vector<std::uint32_t> others(rep.functions_total - 1);
        std::iota(others.begin(), others.end(), 2u);
        std::shuffle(others.begin(), others.end(), rng);
        functions.push_back(1);
        functions.insert(functions.end(), others.begin(),
                         others.begin() + static_cast<std::ptrdiff_t>(rep.functions_tested - 1));
    }

    std::vector<std::int32_t> corr(blocks);
    std::vector<std::int32_t> scratch(blocks);
    std::vector<std::int32_t> column_total(blocks);
    std::vector<std::int8_t> signs;  // (-1)^f(x, y), filled per a when reused enough
    const double norm = static_cast<double>(support) * support;
    const bool use_signs = sources * support >= blocks;

    auto fill_signs = [&](const std::vector<std::uint8_t>& f) {
        signs.resize(std::size_t{blocks} * blocks);
        std::fill(column_total.begin(), column_total.end(), 0);
        for (std::size_t i = 0; i < signs.size(); ++i) {
            signs[i] = static_cast<std::int8_t>(1 - 2 * f[table[i]]);
            column_total[i & (blocks - 1)] += signs[i];
        }
    };
    // corr[y] = sum over x in X of (-1)^f(x, y); with the sign table, a large
    // X is handled through its complement.
    auto correlate = [&](const std::vector<std::uint8_t>& f, std::span<const std::uint32_t> xs,
                         std::span<const std::uint32_t> rest) {
        if (!use_signs) {
            std::fill(corr.begin(), corr.end(), 0);
            for (std::uint32_t x : xs) {
                const std::uint16_t* row = &table[std::size_t{x} << t];
                for (std::uint32_t y = 0; y < blocks; ++y) {
                    corr[y] += 1 - 2 * f[row[y]];
                }
            }
            return;
        }
        const bool complement = !rest.empty() && rest.size() < xs.size();
        if (complement) {
            corr = column_total;
        } else {
            std::fill(corr.begin(), corr.end(), 0);
        }
        const int dir = complement ? -1 : 1;
        for (std::uint32_t x : complement ? rest : xs) {
            const std::int8_t* row = &signs[std::size_t{x} << t];
            for (std::uint32_t y = 0; y < blocks; ++y) {
                corr[y] += dir * row[y];
            }
        }
    };
    auto worst_bias = [&]() {
        // The flat Y maximizing |sum| takes the 2^k largest or smallest values.
        scratch = corr;
        const auto kth = scratch.begin() + support;
        std::int64_t top = 0;
        std::int64_t bottom = 0;
        std::nth_element(scratch.begin(), kth - 1, scratch.end(), std::greater<>());
        for (auto it = scratch.begin(); it != kth; ++it) {
            top += *it;
        }
        std::nth_element(scratch.begin(), kth - 1, scratch.end());
        for (auto it = scratch.begin(); it != kth; ++it) {
            bottom += *it;
        }
        return static_cast<double>(std::max(std::abs(top), std::abs(bottom))) / norm;
    };

    for (std::uint32_t a : functions) {
        const auto f = functional_table(ctx, a);
        if (use_signs) {
            fill_signs(f);
        }
        if (rep.exhaustive) {
            std::vector<std::uint32_t> xs(support);
            std::iota(xs.begin(), xs.end(), 0u);
            do {
                correlate(f, xs, {});
                rep.max_bias = std::max(rep.max_bias, worst_bias());
                ++rep.sources_tested;
            } while (next_combination(xs, blocks));
        } else {
            std::vector<std::uint32_t> all(blocks);
            std::iota(all.begin(), all.end(), 0u);
            for (std::uint64_t s = 0; s < options.sampled_sources; ++s) {
                for (std::uint32_t i = 0; i < support; ++i) {
                    std::uniform_int_distribution<std::uint32_t> pick(i, blocks - 1);
                    std::swap(all[i], all[pick(rng)]);
                }
                correlate(f, std::span(all).first(support), std::span(all).subspan(support));
                rep.max_bias = std::max(rep.max_bias, worst_bias());
                ++rep.sources_tested;
            }
        }
    }
    return rep;
}

DistanceReport check_extractor_distance(const GFContext& ctx, unsigned n, std::span<const double> px,
                                        std::span<const double> py, std::string instance,
                                        std::optional<double> claimed_delta) {
    check_feasible(ctx.q() * n <= kMaxTableBits, "distance check needs q*n <= 12");
    const auto table = inner_product_table(ctx, n);
    DistanceReport rep = check_extractor_distance(ctx, n, table, px, py, std::move(instance));
    if (claimed_delta) {
        require(*claimed_delta <= rep.delta + 1e-12,
                "source min-entropy is below the claimed delta * q * n");
        rep.delta = *claimed_delta;
        const double t = static_cast<double>(ctx.q()) * n;
        const double exponent = log2_bound_constant() - (2.0 * rep.delta - 1.0) / 8.0 * t + 2.0 * ctx.q();
        rep.bound = std::min(1.0, std::exp2(exponent));
    }
    return rep;
}

DistanceReport check_extractor_distance(const GFContext& ctx, unsigned n, std::span<const std::uint16_t> table,
                                        std::span<const double> px, std::span<const double> py,
                                        std::string instance) {
    const unsigned q = ctx.q();
    const unsigned t = q * n;
    check_feasible(t <= kMaxTableBits, "distance check needs q*n <= 12");
    const std::size_t blocks = std::size_t{1} << t;
    require(table.size() == blocks * blocks, "inner product table has the wrong size");
    check_distribution(px, blocks, "px");
    check_distribution(py, blocks, "py");

    DistanceReport rep;
    rep.instance = std::move(instance);
    rep.min_entropy_x = min_entropy(px);
    rep.min_entropy_y = min_entropy(py);
    rep.delta = std::min(rep.min_entropy_x, rep.min_entropy_y) / t;

    std::vector<std::size_t> ys;
    for (std::size_t y = 0; y < blocks; ++y) {
        if (py[y] > 0.0) {
            ys.push_back(y);
        }
    }
    // Neumaier-compensated sums keep non-dyadic instances accurate to ~1e-18.
    std::vector<long double> out(std::size_t{1} << q, 0.0L);
    std::vector<long double> carry(out.size(), 0.0L);
    auto add = [](long double& sum, long double& c, long double v) {
        const long double t = sum + v;
        c += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    };
    for (std::size_t x = 0; x < blocks; ++x) {
        if (px[x] <= 0.0) {
            continue;
        }
        const std::uint16_t* row = &table[x << t];
        const long double wx = px[x];
        for (std::size_t y : ys) {
            add(out[row[y]], carry[row[y]], wx * py[y]);
        }
    }
    const long double uniform = std::exp2(-static_cast<long double>(q));
    long double l1 = 0.0L;
    long double l1c = 0.0L;
    for (std::size_t z = 0; z < out.size(); ++z) {
        add(l1, l1c, std::abs((out[z] + carry[z]) - uniform));
    }
    l1 += l1c;
    rep.statistical_distance = static_cast<double>(0.5L * l1);
    const double exponent = log2_bound_constant() - (2.0 * rep.delta - 1.0) / 8.0 * t + 2.0 * q;
    rep.bound = std::min(1.0, std::exp2(exponent));
    return rep;
}

double uniform_pair_distance(unsigned q, unsigned n) {
    return (1.0 - std::exp2(-static_cast<double>(q))) * std::exp2(-static_cast<double>(q) * n);
}

XorLemmaReport check_xor_lemma_instance(unsigned q, unsigned side_values, std::span<const double> joint) {
    check_feasible(q >= 1 && q <= 4, "XOR lemma instances need 1 <= q <= 4");
    check_feasible(side_values >= 1 && side_values <= 16, "XOR lemma instances need 1..16 side values");
    const std::size_t zs = std::size_t{1} << q;
    require(joint.size() == zs * side_values, "joint table has the wrong size");
    double total = 0.0;
    for (double v : joint) {
        require(std::isfinite(v) && v >= 0.0, "joint table has a negative entry");
        total += v;
    }
    require(std::abs(total - 1.0) <= 1e-9, "joint table does not sum to 1");

    std::vector<double> pe(side_values, 0.0);
    for (std::size_t z = 0; z < zs; ++z) {
        for (unsigned e = 0; e < side_values; ++e) {
            pe[e] += joint[z * side_values + e];
        }
    }
    XorLemmaReport rep;
    for (std::size_t z = 0; z < zs; ++z) {
        for (unsigned e = 0; e < side_values; ++e) {
            rep.lhs += std::abs(joint[z * side_values + e] - pe[e] / static_cast<double>(zs));
        }
    }
    double sum = 0.0;
    for (std::size_t s = 1; s < zs; ++s) {
        std::vector<double> bit(2 * std::size_t{side_values}, 0.0);
        for (std::size_t z = 0; z < zs; ++z) {
            const std::uint32_t b = parity(s & z);
            for (unsigned e = 0; e < side_values; ++e) {
                bit[b * side_values + e] += joint[z * side_values + e];
            }
        }
        for (unsigned b = 0; b < 2; ++b) {
            for (unsigned e = 0; e < side_values; ++e) {
                sum += std::abs(bit[b * side_values + e] - 0.5 * pe[e]);
            }
        }
    }
    rep.rhs = static_cast<double>(zs) * sum;
    return rep;
}

BijectionReport check_functional_bijection(const GFContext& ctx) {
    const unsigned q = ctx.q();
    check_feasible(q <= 10, "bijection check needs q <= 10");
    const std::uint32_t size = 1u << q;
    BijectionReport rep;
    rep.q = q;
    rep.functionals = size - 1;
    // matches[S] counts the a whose truth table z -> [a z]_1 equals z -> S.z
    std::vector<std::uint32_t> matches(size, 0);
    for (std::uint32_t a = 0; a < size; ++a) {
        const auto f = functional_table(ctx, a);
        const std::uint32_t s = functional_coefficients(ctx, a);
        bool same = true;
        for (std::uint32_t z = 0; z < size && same; ++z) {
            same = f[z] == parity(s & z);
        }
        if (same) {
            ++matches[s];
        }
    }
    for (std::uint32_t s = 1; s < size; ++s) {
        if (matches[s] != 1) {
            ++rep.failures;
        }
    }
    return rep;
}

std::vector<double> flat_distribution(unsigned t, std::span<const std::uint32_t> support) {
    require(t <= kMaxTableBits, "flat distributions need t <= 12");
    require(!support.empty(), "flat support is empty");
    std::vector<double> p(std::size_t{1} << t, 0.0);
    const double mass = 1.0 / static_cast<double>(support.size());
    for (std::uint32_t x : support) {
        require(x < p.size(), "support element out of range");
        require(p[x] == 0.0, "support has a repeated element");
        p[x] = mass;
    }
    return p;
}

}  // namespace twosrc::verify
