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

#include "twosrc/kvtext.hpp"
#include "twosrc/params.hpp"

namespace twosrc {

/// Logic-operation accounting for one Ext_IP block: n - 1 field additions
/// of q ops each plus n multiplications of mul_ops each.
struct GateCostModel {
    unsigned q = 0;
    unsigned n = 0;
    std::uint64_t add_ops = 0;
    std::uint64_t mul_ops = 0;
    std::uint64_t block_ops = 0;
};

/// 4885 for q = 80 (the published circuit); q^2 ANDs plus (q - 1)^2 XORs otherwise.
std::uint64_t default_mul_ops(unsigned q);

GateCostModel gate_cost(unsigned n, unsigned q, std::uint64_t mul_ops);
std::uint64_t gate_count(unsigned n, unsigned q, std::uint64_t mul_ops);

struct FpgaModel {
    std::uint64_t clock_hz = 200'000'000;
    std::uint64_t lut_count = 300'000;
    std::uint64_t ops_per_lut = 5;
};

/// Assumes one block per clock per lane, i.e. a fully pipelined circuit.
struct SpeedProjection {
    std::uint64_t lanes = 0;
    std::uint64_t bits_per_second = 0;
};

/// lanes = floor(luts * ops_per_lut / block_ops); speed = clock * lanes * q.
/// A forced lane count replaces the derived one. Zero lanes throws Infeasible.
SpeedProjection projected_speed(const FpgaModel& fpga, const GateCostModel& cost,
                                std::optional<std::uint64_t> lanes = std::nullopt);

struct ThroughputReport {
    unsigned workers = 1;
    double requested_seconds = 0.0;
    double measured_seconds = 0.0;  // after warm-up
    std::uint64_t rounds = 0;
    std::uint64_t blocks = 0;
    std::uint64_t input_bytes = 0;  // both sources
    std::uint64_t output_bits = 0;
    double output_bits_per_second = 0.0;
    std::uint64_t model_ops = 0;  // blocks * block_ops
    std::uint64_t output_digest = 0;
    std::string warning;
};

/// Repeatedly extracts a fixed in-memory input pair with the plan's n and q.
/// The first 10% of `seconds` is warm-up and not counted.
ThroughputReport measure_throughput(const EqPlan& plan, unsigned workers, double seconds);

KvDocument to_document(const ThroughputReport& report, const EqPlan& plan);

}  // namespace twosrc
