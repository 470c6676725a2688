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

#include "twosrc/report.hpp"

#include "twosrc/error.hpp"

namespace twosrc {
namespace {

void put_rates(KvDocument& doc, unsigned n, const MinEntropyRate& delta) {
    const ExtractionRate rate = extraction_rate(n, delta);
    doc.set("rate_exact", rate.exact);
    doc.set("rate_approx", rate.approx);
}

void expect_equal(const KvDocument& doc, const char* key, std::uint64_t want) {
    if (doc.has(key) && doc.get_u64(key) != want) {
        fail(ErrorCode::InvalidArgument, std::string("plan field '") + key + "' disagrees with its inputs");
    }
}

}  // namespace

KvDocument to_document(const EqPlan& plan) {
    KvDocument doc;
    doc.set("kind", "plan");
    doc.set("mode", "eq");
    doc.set("b", plan.b);
    doc.set("N", plan.samples);
    doc.set("delta", plan.delta.to_string());
    doc.set("delta_value", plan.delta.value());
    doc.set("epsilon", plan.epsilon.to_string());
    doc.set("n", plan.n);
    doc.set("q", plan.q);
    doc.set("q_bumps", plan.q_bumps);
    doc.set("num_blocks", plan.num_blocks);
    doc.set("m", plan.output_bits);
    doc.set("log2_error", plan.log2_error);
    put_rates(doc, plan.n, plan.delta);
    return doc;
}

KvDocument to_document(const NeqPlan& plan) {
    KvDocument doc;
    doc.set("kind", "plan");
    doc.set("mode", "neq");
    doc.set("b", plan.b);
    doc.set("delta", plan.delta.to_string());
    doc.set("delta_value", plan.delta.value());
    doc.set("n", plan.n);
    doc.set("q1", plan.q1);
    doc.set("Delta", plan.growth);
    doc.set("log2_error_limit", plan.log2_error_limit ? format_double(*plan.log2_error_limit) : "diverges");
    put_rates(doc, plan.n, plan.delta);
    return doc;
}

KvDocument to_document(const Plan& plan) {
    return std::visit([](const auto& p) { return to_document(p); }, plan);
}

Plan plan_from_document(const KvDocument& doc) {
    const std::string mode = doc.get_string("mode");
    const auto b = static_cast<unsigned>(doc.get_u64("b"));
    const MinEntropyRate delta = MinEntropyRate::parse(doc.get_string("delta"));
    if (mode == "eq") {
        EqPlan p = plan_eq(b, doc.get_u64("N"), delta, Epsilon::parse(doc.get_string("epsilon")));
        expect_equal(doc, "n", p.n);
        expect_equal(doc, "q", p.q);
        expect_equal(doc, "num_blocks", p.num_blocks);
        expect_equal(doc, "m", p.output_bits);
        return p;
    }
    if (mode == "neq") {
        NeqPlan p = plan_neq(b, delta, static_cast<unsigned>(doc.get_u64("q1")),
                             static_cast<unsigned>(doc.get_u64("Delta")));
        expect_equal(doc, "n", p.n);
        return p;
    }
    fail(ErrorCode::InvalidArgument, "unknown plan mode '" + mode + "'");
}

Schedule schedule_for(const Plan& plan) {
    if (const auto* eq = std::get_if<EqPlan>(&plan)) {
        return Schedule::equal(*eq);
    }
    return Schedule::incremental(std::get<NeqPlan>(plan));
}

double log2_error_after(const Plan& plan, std::uint64_t blocks) {
    if (const auto* eq = std::get_if<EqPlan>(&plan)) {
        return error_bound_blocks(eq->n, eq->q, eq->delta, blocks);
    }
    return error_bound_neq(std::get<NeqPlan>(plan), blocks);
}

KvDocument ExtractionReport::to_document() const {
    KvDocument doc = twosrc::to_document(plan);
    doc.set("kind", "extraction");
    doc.set("blocks_completed", stats.blocks_completed);
    doc.set("input_bits_x", stats.pushed_x_bits);
    doc.set("input_bits_y", stats.pushed_y_bits);
    doc.set("input_bits_consumed_x", stats.consumed_bits);
    doc.set("input_bits_consumed_y", stats.consumed_bits);
    doc.set("output_bits", stats.output_bits);
    doc.set("output_pad_bits", pad_bits);
    doc.set("discarded_tail_bits_x", stats.discarded_x_bits);
    doc.set("discarded_tail_bits_y", stats.discarded_y_bits);
    doc.set("last_block_width", stats.last_width);
    doc.set("stop_reason", to_string(stats.stop));
    doc.set("log2_error_bound", log2_error_bound());
    doc.set("window_disjointness", true);
    doc.set("wall_time", wall_time_seconds);
    return doc;
}

}  // namespace twosrc
