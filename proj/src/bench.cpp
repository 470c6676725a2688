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

#include "twosrc/bench.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <thread>

#include "twosrc/error.hpp"
#include "twosrc/extractor.hpp"

namespace twosrc {
namespace {

constexpr std::uint64_t kPublishedMulOps80 = 4885;
constexpr std::uint64_t kBlocksPerRound = 64;

std::uint64_t fnv1a(std::uint64_t h, std::span<const std::uint8_t> bytes) {
    for (std::uint8_t v : bytes) {
        h = (h ^ v) * 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t default_mul_ops(unsigned q) {
    require(q >= 1, "q must be positive");
    if (q == 80) {
        return kPublishedMulOps80;
    }
    const std::uint64_t qq = q;
    return qq * qq + (qq - 1) * (qq - 1);
}

GateCostModel gate_cost(unsigned n, unsigned q, std::uint64_t mul_ops) {
    require(n >= 1 && q >= 1, "n and q must be positive");
    GateCostModel m;
    m.q = q;
    m.n = n;
    m.add_ops = q;
    m.mul_ops = mul_ops;
    m.block_ops = m.add_ops * (n - 1) + mul_ops * n;
    return m;
}

std::uint64_t gate_count(unsigned n, unsigned q, std::uint64_t mul_ops) { return gate_cost(n, q, mul_ops).block_ops; }

SpeedProjection projected_speed(const FpgaModel& fpga, const GateCostModel& cost, std::optional<std::uint64_t> lanes) {
    require(cost.block_ops > 0, "block_ops must be positive");
    SpeedProjection p;
    p.lanes = lanes ? *lanes : fpga.lut_count * fpga.ops_per_lut / cost.block_ops;
    if (p.lanes == 0) {
        fail(ErrorCode::Infeasible, "the device fits no complete block circuit (0 lanes)");
    }
    p.bits_per_second = fpga.clock_hz * p.lanes * cost.q;
    return p;
}

ThroughputReport measure_throughput(const EqPlan& plan, unsigned workers, double seconds) {
    require(workers >= 1, "workers must be positive");
    require(seconds > 0.0, "duration must be positive");
    ThroughputReport rep;
    rep.workers = workers;
    rep.requested_seconds = seconds;

    // A multiple of 8 blocks keeps the input byte aligned.
    const std::uint64_t bytes = kBlocksPerRound * plan.q * plan.n / 8;
    std::mt19937_64 rng(0xbe9c4);
    std::vector<std::uint8_t> x(bytes);
    std::vector<std::uint8_t> y(bytes);
    for (std::size_t i = 0; i < bytes; ++i) {
        x[i] = static_cast<std::uint8_t>(rng());
        y[i] = static_cast<std::uint8_t>(rng());
    }
    Schedule schedule;
    schedule.b = plan.b;
    schedule.n = plan.n;
    schedule.q1 = plan.q;
    ParallelOptions opts;
    opts.workers = workers;

    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const auto warm_end = start + std::chrono::duration<double>(seconds * 0.1);
    const auto end = start + std::chrono::duration<double>(seconds);
    std::optional<clock::time_point> measured_from;
    std::uint64_t reference = 0;
    for (std::uint64_t round = 0;; ++round) {
        const auto result = extract(x, y, schedule, opts);
        const auto packed = pack_chunks(result.chunks);
        const std::uint64_t digest = fnv1a(0xcbf29ce484222325ULL, packed);
        if (round == 0) {
            reference = digest;
        } else if (digest != reference) {
            fail(ErrorCode::VerificationFailed, "benchmark output changed between identical rounds");
        }
        const auto now = clock::now();
        if (measured_from) {
            ++rep.rounds;
            rep.blocks += result.stats.blocks_completed;
            rep.output_bits += result.stats.output_bits;
            rep.input_bytes += 2 * bytes;
        } else if (now >= warm_end) {
            measured_from = now;
        }
        if (now >= end && rep.rounds >= 1) {
            rep.measured_seconds = std::chrono::duration<double>(now - *measured_from).count();
            break;
        }
    }
    rep.output_digest = reference;
    rep.output_bits_per_second = rep.measured_seconds > 0 ? rep.output_bits / rep.measured_seconds : 0.0;
    rep.model_ops = rep.blocks * gate_count(plan.n, plan.q, default_mul_ops(plan.q));
    if (rep.rounds < 3 || rep.measured_seconds < 0.05) {
        rep.warning = "duration too short for a steady-state measurement";
    }
    return rep;
}

KvDocument to_document(const ThroughputReport& report, const EqPlan& plan) {
    KvDocument doc;
    doc.set("kind", "bench");
    doc.set("b", plan.b);
    doc.set("n", plan.n);
    doc.set("q", plan.q);
    doc.set("workers", report.workers);
    doc.set("hardware_threads", std::thread::hardware_concurrency());
    doc.set("clmul_hardware", detail::clmul_has_hardware());
    doc.set("requested_seconds", report.requested_seconds);
    doc.set("measured_seconds", report.measured_seconds);
    doc.set("rounds", report.rounds);
    doc.set("blocks", report.blocks);
    doc.set("input_bytes", report.input_bytes);
    doc.set("output_bits", report.output_bits);
    doc.set("output_bits_per_second", report.output_bits_per_second);
    doc.set("model_ops", report.model_ops);
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(report.output_digest));
    doc.set("output_digest", std::string(digest));
    if (!report.warning.empty()) {
        doc.set("warning", report.warning);
    }
    return doc;
}

}  // namespace twosrc
