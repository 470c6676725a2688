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
#include <string>
#include <variant>

#include "twosrc/extractor.hpp"
#include "twosrc/kvtext.hpp"
#include "twosrc/params.hpp"

namespace twosrc {

using Plan = std::variant<EqPlan, NeqPlan>;

KvDocument to_document(const EqPlan& plan);
KvDocument to_document(const NeqPlan& plan);
KvDocument to_document(const Plan& plan);

/// Rebuilds a plan from its inputs (b, N, delta, epsilon or q1, Delta) and
/// rejects documents whose derived fields disagree with the recomputation.
Plan plan_from_document(const KvDocument& doc);

Schedule schedule_for(const Plan& plan);

/// log2 bound on the distance from uniform of the first `blocks` chunks.
double log2_error_after(const Plan& plan, std::uint64_t blocks);

struct ExtractionReport {
    Plan plan;
    ExtractionStats stats;
    unsigned pad_bits = 0;
    double wall_time_seconds = 0.0;

    double log2_error_bound() const { return log2_error_after(plan, stats.blocks_completed); }
    KvDocument to_document() const;
};

}  // namespace twosrc
