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
#include <fstream>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "twosrc/bitio.hpp"

namespace twosrc {

// Simulated sources are seeded pseudorandom streams for testing the
// extractor. They are not a randomness source.

/// Every bit independently 1 with probability p.
struct IidBiased {
    double p = 0.5;
};

/// Independent samples drawn from an explicit table over {0,1}^b.
struct IidTable {
    std::vector<double> probabilities;
};

/// Order-1 chain over {0,1}^b. transition[s * 2^b + t] = Pr[next = t | cur = s].
/// An empty `initial` means uniform.
struct Markov {
    std::vector<double> initial;
    std::vector<double> transition;
};

/// Raw samples read from disk, b bits each, LSB-first.
struct FileSource {
    std::string path;
};

struct SourceModel {
    unsigned b = 1;
    std::variant<IidBiased, IidTable, Markov, FileSource> kind;
    std::uint64_t seed = 0;
};

const char* kind_name(const SourceModel& model);

/// Throws InvalidArgument for malformed models; tables must be non-negative
/// and sum to 1 within 2^-30.
void validate(const SourceModel& model);

/// Table with one value of mass 2^-min_entropy_bits and the rest spread evenly,
/// i.e. a source of exactly min_entropy_bits per sample.
IidTable peaked_table(unsigned b, double min_entropy_bits);

/// Parses the JSON model config, e.g.
/// {"kind": "iid-biased", "b": 1, "p": 0.75, "seed": 7}.
SourceModel model_from_json(std::string_view json);

/// Deterministic sample stream for (model, seed).
class SampleGenerator {
  public:
    explicit SampleGenerator(const SourceModel& model);

    std::uint64_t next();
    unsigned sample_bits() const noexcept { return model_.b; }

  private:
    double uniform();
    std::uint64_t draw(std::span<const double> cdf);

    SourceModel model_;
    std::mt19937_64 rng_;
    std::vector<double> cdf_;          // iid table, or the initial distribution
    std::vector<double> transition_cdf_;
    std::uint64_t state_ = 0;
    bool started_ = false;
    std::ifstream file_;
    BitQueue file_bits_;
};

/// `count` samples packed back to back (b bits each, LSB-first), zero-padded
/// to a whole byte. File models throw Truncated when the file is short.
std::vector<std::uint8_t> generate(const SourceModel& model, std::uint64_t count);
void generate_to(const SourceModel& model, std::uint64_t count,
                 const std::function<void(std::span<const std::uint8_t>)>& write);

struct MinEntropyCertificate {
    enum class Method { Analytic, Exhaustive };

    double delta = 0.0;
    Method method = Method::Analytic;
    /// Largest conditional guessing probability of a single sample (analytic)
    /// or of the worst window (exhaustive).
    double worst_guess_probability = 1.0;
    std::string detail;
};

/// Largest delta for which the model is a forward block source. File models
/// throw Uncertifiable.
MinEntropyCertificate certify_forward_block(const SourceModel& model);

/// Explicit joint distribution of `samples` consecutive samples; sample 1
/// occupies the low b bits of the index.
struct JointTable {
    unsigned b = 1;
    unsigned samples = 1;
    std::vector<double> probabilities;
};

/// Checks every window k..i and every prefix x_1..x_{k-1} directly.
/// Requires samples <= 3 and b <= 4.
MinEntropyCertificate certify_joint(const JointTable& table);

/// Exact joint table of the first `samples` samples of an iid or markov model.
JointTable joint_table(const SourceModel& model, unsigned samples);

/// Marginal of samples first..first+count-1 (1-based).
JointTable marginal_window(const JointTable& table, unsigned first, unsigned count);

}  // namespace twosrc
