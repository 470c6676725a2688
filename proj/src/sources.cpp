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

#include "twosrc/sources.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "twosrc/error.hpp"

namespace twosrc {
namespace {

constexpr double kTableTolerance = 0x1p-30;
constexpr unsigned kMaxTableBits = 20;
constexpr unsigned kMaxMarkovBits = 10;

void check_distribution(std::span<const double> p, std::size_t expected, const std::string& what) {
    require(p.size() == expected, what + " must have " + std::to_string(expected) + " entries");
    double sum = 0.0;
    for (double v : p) {
        require(std::isfinite(v) && v >= 0.0, what + " has a negative or non-finite entry");
        sum += v;
    }
    require(std::abs(sum - 1.0) <= kTableTolerance, what + " does not sum to 1");
}

std::vector<double> cumulative(std::span<const double> p) {
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    return cdf;
}

double max_of(std::span<const double> p) { return *std::max_element(p.begin(), p.end()); }

// -log2(p) / bits, with a point mass giving exactly 0.
double rate_from_guess(double p, double bits) {
    if (p >= 1.0) {
        return 0.0;
    }
    return -std::log2(p) / bits;
}

}  // namespace

const char* kind_name(const SourceModel& model) {
    switch (model.kind.index()) {
        case 0:
            return "iid-biased";
        case 1:
            return "iid-table";
        case 2:
            return "markov";
        default:
            return "file";
    }
}

void validate(const SourceModel& model) {
    require(model.b >= 1 && model.b <= 64, "sample width b must be in 1..64");
    if (const auto* k = std::get_if<IidBiased>(&model.kind)) {
        require(std::isfinite(k->p) && k->p >= 0.0 && k->p <= 1.0, "bias p must lie in [0, 1]");
    } else if (const auto* t = std::get_if<IidTable>(&model.kind)) {
        require(model.b <= kMaxTableBits, "iid-table models support b <= 20");
        check_distribution(t->probabilities, std::size_t{1} << model.b, "probability table");
    } else if (const auto* m = std::get_if<Markov>(&model.kind)) {
        require(model.b <= kMaxMarkovBits, "markov models support b <= 10");
        const std::size_t states = std::size_t{1} << model.b;
        if (!m->initial.empty()) {
            check_distribution(m->initial, states, "initial distribution");
        }
        require(m->transition.size() == states * states,
                "transition table must have " + std::to_string(states * states) + " entries");
        for (std::size_t s = 0; s < states; ++s) {
            check_distribution(std::span(m->transition).subspan(s * states, states), states,
                               "transition row " + std::to_string(s));
        }
    } else {
        require(!std::get<FileSource>(model.kind).path.empty(), "file model needs a path");
    }
}

IidTable peaked_table(unsigned b, double min_entropy_bits) {
    require(b >= 1 && b <= kMaxTableBits, "peaked tables support b in 1..20");
    require(min_entropy_bits >= 0.0 && min_entropy_bits <= b, "min-entropy must lie in [0, b]");
    const std::size_t size = std::size_t{1} << b;
    IidTable t;
    t.probabilities.assign(size, 0.0);
    const double peak = std::exp2(-min_entropy_bits);
    t.probabilities[0] = peak;
    if (size > 1) {
        const double rest = (1.0 - peak) / static_cast<double>(size - 1);
        for (std::size_t i = 1; i < size; ++i) {
            t.probabilities[i] = rest;
        }
    }
    return t;
}

SourceModel model_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("model config: ") + e.what());
    }
    try {
        SourceModel model;
        model.b = j.at("b").get<unsigned>();
        model.seed = j.value("seed", std::uint64_t{0});
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "iid-biased") {
            model.kind = IidBiased{j.value("p", 0.5)};
        } else if (kind == "iid-uniform") {
            model.kind = IidBiased{0.5};
        } else if (kind == "iid-table") {
            model.kind = IidTable{j.at("probabilities").get<std::vector<double>>()};
        } else if (kind == "iid-peaked") {
            model.kind = peaked_table(model.b, j.at("min_entropy_bits").get<double>());
        } else if (kind == "markov") {
            Markov m;
            if (j.contains("initial")) {
                m.initial = j.at("initial").get<std::vector<double>>();
            }
            for (const auto& row : j.at("transition")) {
                for (double v : row.get<std::vector<double>>()) {
                    m.transition.push_back(v);
                }
            }
            model.kind = std::move(m);
        } else if (kind == "file") {
            model.kind = FileSource{j.at("path").get<std::string>()};
        } else {
            fail(ErrorCode::InvalidArgument, "unknown model kind '" + kind + "'");
        }
        validate(model);
        return model;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::InvalidArgument, std::string("model config: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// generation

SampleGenerator::SampleGenerator(const SourceModel& model) : model_(model), rng_(model.seed) {
    validate(model_);
    if (const auto* t = std::get_if<IidTable>(&model_.kind)) {
        cdf_ = cumulative(t->probabilities);
    } else if (const auto* m = std::get_if<Markov>(&model_.kind)) {
        const std::size_t states = std::size_t{1} << model_.b;
        if (m->initial.empty()) {
            cdf_ = cumulative(std::vector<double>(states, 1.0 / static_cast<double>(states)));
        } else {
            cdf_ = cumulative(m->initial);
        }
        transition_cdf_.reserve(m->transition.size());
        for (std::size_t s = 0; s < states; ++s) {
            auto row = cumulative(std::span(m->transition).subspan(s * states, states));
            transition_cdf_.insert(transition_cdf_.end(), row.begin(), row.end());
        }
    } else if (const auto* f = std::get_if<FileSource>(&model_.kind)) {
        file_.open(f->path, std::ios::binary);
        if (!file_) {
            fail(ErrorCode::Io, "cannot open source file '" + f->path + "'");
        }
    }
}

double SampleGenerator::uniform() { return static_cast<double>(rng_() >> 11) * 0x1p-53; }

std::uint64_t SampleGenerator::draw(std::span<const double> cdf) {
    const double u = uniform();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) {
        // u landed in the rounding gap above the last cumulative sum
        it = std::prev(cdf.end());
        while (it != cdf.begin() && *it == *std::prev(it)) {
            --it;
        }
    }
    return static_cast<std::uint64_t>(it - cdf.begin());
}

std::uint64_t SampleGenerator::next() {
    const unsigned b = model_.b;
    switch (model_.kind.index()) {
        case 0: {
            const double p = std::get<IidBiased>(model_.kind).p;
            std::uint64_t v = 0;
            for (unsigned i = 0; i < b; ++i) {
                if (uniform() < p) {
                    v |= std::uint64_t{1} << i;
                }
            }
            return v;
        }
        case 1:
            return draw(cdf_);
        case 2: {
            if (!started_) {
                started_ = true;
                state_ = draw(cdf_);
            } else {
                const std::size_t states = std::size_t{1} << b;
                state_ = draw(std::span(transition_cdf_).subspan(state_ * states, states));
            }
            return state_;
        }
        default: {
            while (file_bits_.available() < b) {
                std::uint8_t buf[4096];
                file_.read(reinterpret_cast<char*>(buf), sizeof buf);
                const auto got = static_cast<std::size_t>(file_.gcount());
                if (file_.bad()) {
                    fail(ErrorCode::Io, "read failure on source file");
                }
                if (got == 0) {
                    fail(ErrorCode::Truncated, "source file '" + std::get<FileSource>(model_.kind).path +
                                                   "' ended before the requested sample count");
                }
                file_bits_.push(std::span(buf, got));
            }
            return static_cast<std::uint64_t>(file_bits_.take(b));
        }
    }
}

void generate_to(const SourceModel& model, std::uint64_t count,
                 const std::function<void(std::span<const std::uint8_t>)>& write) {
    require(count >= 1, "sample count must be positive");
    SampleGenerator gen(model);
    BitPacker packer;
    for (std::uint64_t i = 0; i < count; ++i) {
        packer.append(gen.next(), model.b);
        if ((i & 0xfff) == 0xfff) {
            auto bytes = packer.take_bytes();
            write(bytes);
        }
    }
    auto rest = packer.finish();
    write(rest);
}

std::vector<std::uint8_t> generate(const SourceModel& model, std::uint64_t count) {
    std::vector<std::uint8_t> out;
    generate_to(model, count, [&](std::span<const std::uint8_t> bytes) {
        out.insert(out.end(), bytes.begin(), bytes.end());
    });
    return out;
}

// ---------------------------------------------------------------------------
// certification

MinEntropyCertificate certify_forward_block(const SourceModel& model) {
    validate(model);
    MinEntropyCertificate cert;
    cert.method = MinEntropyCertificate::Method::Analytic;
    const double b = model.b;
    if (const auto* k = std::get_if<IidBiased>(&model.kind)) {
        const double p = std::max(k->p, 1.0 - k->p);
        cert.worst_guess_probability = std::pow(p, b);
        cert.delta = rate_from_guess(p, 1.0);
        cert.detail = "iid bits, max(p, 1-p) = " + std::to_string(p);
    } else if (const auto* t = std::get_if<IidTable>(&model.kind)) {
        cert.worst_guess_probability = max_of(t->probabilities);
        cert.delta = rate_from_guess(cert.worst_guess_probability, b);
        cert.detail = "iid samples, max point mass";
    } else if (const auto* m = std::get_if<Markov>(&model.kind)) {
        double worst = max_of(m->transition);
        if (!m->initial.empty()) {
            worst = std::max(worst, max_of(m->initial));
        }
        cert.worst_guess_probability = worst;
        cert.delta = rate_from_guess(worst, b);
        cert.detail = "order-1 chain, max transition probability";
    } else {
        fail(ErrorCode::Uncertifiable,
             "file sources cannot be certified from data; their min-entropy rate is a physical assumption");
    }
    return cert;
}

MinEntropyCertificate certify_joint(const JointTable& table) {
    require(table.samples >= 1 && table.samples <= 3, "exhaustive certification supports 1..3 samples");
    require(table.b >= 1 && table.b <= 4, "exhaustive certification supports b <= 4");
    const unsigned b = table.b;
    const unsigned s = table.samples;
    check_distribution(table.probabilities, std::size_t{1} << (b * s), "joint table");

    MinEntropyCertificate cert;
    cert.method = MinEntropyCertificate::Method::Exhaustive;
    cert.delta = 1.0;
    cert.worst_guess_probability = 0.0;
    for (unsigned k = 1; k <= s; ++k) {
        for (unsigned i = k; i <= s; ++i) {
            const std::size_t prefixes = std::size_t{1} << (b * (k - 1));
            const std::size_t windows = std::size_t{1} << (b * (i - k + 1));
            const std::size_t suffixes = std::size_t{1} << (b * (s - i));
            for (std::size_t prefix = 0; prefix < prefixes; ++prefix) {
                double prefix_mass = 0.0;
                double best = 0.0;
                for (std::size_t w = 0; w < windows; ++w) {
                    double mass = 0.0;
                    for (std::size_t suffix = 0; suffix < suffixes; ++suffix) {
                        const std::size_t index =
                            prefix | (w << (b * (k - 1))) | (suffix << (b * i));
                        mass += table.probabilities[index];
                    }
                    prefix_mass += mass;
                    best = std::max(best, mass);
                }
                if (prefix_mass <= 0.0) {
                    continue;
                }
                const double guess = std::min(1.0, best / prefix_mass);
                const double rate = rate_from_guess(guess, static_cast<double>(b) * (i - k + 1));
                if (rate < cert.delta || (rate == cert.delta && guess > cert.worst_guess_probability)) {
                    cert.delta = rate;
                    cert.worst_guess_probability = guess;
                    cert.detail = "worst window k=" + std::to_string(k) + " i=" + std::to_string(i) +
                                  " prefix=" + std::to_string(prefix);
                }
            }
        }
    }
    return cert;
}

JointTable joint_table(const SourceModel& model, unsigned samples) {
    validate(model);
    require(samples >= 1 && model.b * samples <= 20, "joint table too large");
    const unsigned b = model.b;
    const std::size_t values = std::size_t{1} << b;
    const std::size_t size = std::size_t{1} << (b * samples);
    JointTable out{b, samples, std::vector<double>(size, 0.0)};

    auto single = [&](std::uint64_t v) -> double {
        if (const auto* k = std::get_if<IidBiased>(&model.kind)) {
            double p = 1.0;
            for (unsigned i = 0; i < b; ++i) {
                p *= ((v >> i) & 1) ? k->p : 1.0 - k->p;
            }
            return p;
        }
        return std::get<IidTable>(model.kind).probabilities[v];
    };

    for (std::size_t idx = 0; idx < size; ++idx) {
        double p = 1.0;
        if (const auto* m = std::get_if<Markov>(&model.kind)) {
            std::uint64_t prev = 0;
            for (unsigned j = 0; j < samples; ++j) {
                const std::uint64_t v = (idx >> (j * b)) & (values - 1);
                if (j == 0) {
                    p *= m->initial.empty() ? 1.0 / static_cast<double>(values) : m->initial[v];
                } else {
                    p *= m->transition[prev * values + v];
                }
                prev = v;
            }
        } else if (std::holds_alternative<FileSource>(model.kind)) {
            fail(ErrorCode::Uncertifiable, "file sources have no explicit distribution");
        } else {
            for (unsigned j = 0; j < samples; ++j) {
                p *= single((idx >> (j * b)) & (values - 1));
            }
        }
        out.probabilities[idx] = p;
    }
    return out;
}

JointTable marginal_window(const JointTable& table, unsigned first, unsigned count) {
    require(first >= 1 && count >= 1 && first + count - 1 <= table.samples, "window outside the table");
    const unsigned b = table.b;
    JointTable out{b, count, std::vector<double>(std::size_t{1} << (b * count), 0.0)};
    const std::size_t mask = (std::size_t{1} << (b * count)) - 1;
    for (std::size_t idx = 0; idx < table.probabilities.size(); ++idx) {
        out.probabilities[(idx >> (b * (first - 1))) & mask] += table.probabilities[idx];
    }
    return out;
}

}  // namespace twosrc
