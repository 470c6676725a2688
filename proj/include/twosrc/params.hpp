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
#include <string>
#include <string_view>

namespace twosrc {

/// Min-entropy rate as an exact fraction, e.g. 10.74 bits out of 16 is
/// stored as 537/800. Keeping it rational makes n = ceil(24 / (2 delta - 1))
/// independent of floating-point rounding.
class MinEntropyRate {
  public:
    MinEntropyRate() = default;
    MinEntropyRate(std::uint64_t num, std::uint64_t den);

    /// Accepts "h/b" with a decimal h ("10.74/16"), a bare decimal ("0.75"),
    /// or an integer fraction ("3/4").
    static MinEntropyRate parse(std::string_view text);

    std::uint64_t num() const noexcept { return num_; }
    std::uint64_t den() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool above_half() const noexcept { return 2 * static_cast<unsigned __int128>(num_) > den_; }

    std::string to_string() const;

    friend bool operator==(const MinEntropyRate&, const MinEntropyRate&) = default;

  private:
    std::uint64_t num_ = 1;
    std::uint64_t den_ = 1;
};

/// Target distance from uniform, held as log2(epsilon) so that 2^-30 and
/// smaller stay exact.
struct Epsilon {
    double log2 = -30.0;

    static Epsilon from_log2(double v);
    static Epsilon from_value(double v);
    /// "2^-30", "1e-9" or "0.001".
    static Epsilon parse(std::string_view text);

    double value() const;
    bool is_power_of_two() const;
    std::string to_string() const;
};

/// Parameters of the equal-block extractor.
struct EqPlan {
    unsigned b = 0;              // bits per sample
    std::uint64_t samples = 0;   // N, samples per source
    MinEntropyRate delta;
    Epsilon epsilon;
    unsigned n = 0;              // field elements per block
    unsigned q = 0;              // bits per field element
    std::uint64_t num_blocks = 0;
    std::uint64_t output_bits = 0;
    double log2_error = 0.0;
    /// q was raised by one multiple of b (or more) past the ceiling formula
    /// because the summed bound exceeded epsilon.
    unsigned q_bumps = 0;
};

/// Parameters of the incremental-block extractor: q_l = q1 + (l - 1) * growth * b.
struct NeqPlan {
    unsigned b = 0;
    MinEntropyRate delta;
    unsigned n = 0;
    unsigned q1 = 0;
    unsigned growth = 0;  // Delta, in samples
    /// Closed-form bound over infinitely many blocks; empty when growth == 0.
    std::optional<double> log2_error_limit;

    std::uint64_t width(std::uint64_t block) const;  // 1-based block index
    std::uint64_t output_bits_after(std::uint64_t blocks) const;
};

struct ExtractionRate {
    double exact;   // 1 / (2 delta n)
    double approx;  // (2 delta - 1) / (48 delta)
};

/// ceil(24 / (2 delta - 1)); throws UnsupportedRate unless delta > 1/2.
unsigned samples_per_block_for(const MinEntropyRate& delta);

EqPlan plan_eq(unsigned b, std::uint64_t samples, const MinEntropyRate& delta, const Epsilon& epsilon);
NeqPlan plan_neq(unsigned b, const MinEntropyRate& delta, unsigned q1, unsigned growth);

/// log2 of sqrt(3) * 2^(-1/4 - (delta/4 - 1/8) q n + 2q).
double error_bound_block(unsigned n, unsigned q, const MinEntropyRate& delta);
/// log2 of blocks * 2^error_bound_block; -infinity for zero blocks.
double error_bound_blocks(unsigned n, unsigned q, const MinEntropyRate& delta, std::uint64_t blocks);
double error_bound_eq(const EqPlan& plan);
/// Finite k sums the per-block bounds; empty k gives the geometric closed form.
double error_bound_neq(const NeqPlan& plan, std::optional<std::uint64_t> k);

ExtractionRate extraction_rate(unsigned n, const MinEntropyRate& delta);
inline ExtractionRate extraction_rate(const EqPlan& p) { return extraction_rate(p.n, p.delta); }
inline ExtractionRate extraction_rate(const NeqPlan& p) { return extraction_rate(p.n, p.delta); }

/// log2(sqrt(3)) - 1/4, the constant part of every bound.
double log2_bound_constant();

}  // namespace twosrc
