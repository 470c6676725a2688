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

#include "twosrc/twosrc.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <tuple>

#include "twosrc/bench.hpp"
#include "twosrc/error.hpp"
#include "twosrc/extractor.hpp"
#include "twosrc/report.hpp"
#include "twosrc/sources.hpp"
#include "twosrc/verify.hpp"

struct twosrc_plan {
    twosrc::Plan plan;
};

struct twosrc_model {
    twosrc::SourceModel model;
};

struct twosrc_extractor {
    twosrc::Plan plan;
    twosrc::BitPacker packer;
    std::deque<std::uint8_t> ready;
    std::unique_ptr<twosrc::StreamExtractor> stream;
    bool finished = false;
};

namespace {

using namespace twosrc;

thread_local std::string g_last_error;

twosrc_status status_of(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return TWOSRC_E_INVALID_ARGUMENT;
        case ErrorCode::Capacity:
            return TWOSRC_E_CAPACITY;
        case ErrorCode::UnsupportedRate:
            return TWOSRC_E_UNSUPPORTED_RATE;
        case ErrorCode::Io:
            return TWOSRC_E_IO;
        case ErrorCode::Truncated:
            return TWOSRC_E_TRUNCATED;
        case ErrorCode::Infeasible:
            return TWOSRC_E_INFEASIBLE;
        case ErrorCode::Divergent:
            return TWOSRC_E_DIVERGENT;
        case ErrorCode::Uncertifiable:
            return TWOSRC_E_UNCERTIFIABLE;
        case ErrorCode::WorkerFailure:
            return TWOSRC_E_WORKER_FAILURE;
        case ErrorCode::VerificationFailed:
            return TWOSRC_E_VERIFICATION_FAILED;
    }
    return TWOSRC_E_INTERNAL;
}

template <class F>
twosrc_status guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const BlockFailure& e) {
        g_last_error = "block " + std::to_string(e.block_index()) + ": " + e.what();
        return TWOSRC_E_WORKER_FAILURE;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return TWOSRC_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TWOSRC_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return TWOSRC_E_INTERNAL;
    }
}

void require_ptr(const void* p, const char* name) {
    require(p != nullptr, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void drain_packer(twosrc_extractor& ex) {
    for (std::uint8_t v : ex.packer.take_bytes()) {
        ex.ready.push_back(v);
    }
}

ExtractionReport make_report(const twosrc_extractor& ex, double wall) {
    ExtractionReport rep;
    rep.plan = ex.plan;
    rep.stats = ex.stream->stats();
    rep.pad_bits = ex.finished ? ex.packer.pad_bits() : 0;
    rep.wall_time_seconds = wall;
    return rep;
}

std::unique_ptr<twosrc_extractor> new_extractor(const Plan& plan, unsigned workers, std::uint64_t max_blocks) {
    require(workers >= 1, "workers must be positive");
    auto ex = std::make_unique<twosrc_extractor>();
    ex->plan = plan;
    Schedule schedule = schedule_for(plan);
    if (max_blocks > 0) {
        schedule.max_blocks = schedule.max_blocks ? std::min(*schedule.max_blocks, max_blocks) : max_blocks;
    }
    ParallelOptions opts;
    opts.workers = workers;
    auto* raw = ex.get();
    ex->stream = std::make_unique<StreamExtractor>(schedule, opts, [raw](OutputChunk&& chunk) {
        raw->packer.append(chunk.bits.bits(), chunk.bits.width());
    });
    return ex;
}

}  // namespace

extern "C" {

const char* twosrc_version(void) { return "1.0.0"; }

const char* twosrc_status_name(twosrc_status status) {
    switch (status) {
        case TWOSRC_OK:
            return "ok";
        case TWOSRC_E_INVALID_ARGUMENT:
            return "invalid-argument";
        case TWOSRC_E_CAPACITY:
            return "capacity";
        case TWOSRC_E_UNSUPPORTED_RATE:
            return "unsupported-rate";
        case TWOSRC_E_IO:
            return "io";
        case TWOSRC_E_VERIFICATION_FAILED:
            return "verification-failed";
        case TWOSRC_E_INFEASIBLE:
            return "infeasible";
        case TWOSRC_E_DIVERGENT:
            return "divergent";
        case TWOSRC_E_UNCERTIFIABLE:
            return "uncertifiable";
        case TWOSRC_E_TRUNCATED:
            return "truncated";
        case TWOSRC_E_WORKER_FAILURE:
            return "worker-failure";
        case TWOSRC_E_INTERNAL:
            return "internal";
    }
    return "unknown";
}

const char* twosrc_last_error(void) { return g_last_error.c_str(); }

void twosrc_free_string(char* s) { std::free(s); }

twosrc_status twosrc_plan_eq(unsigned b, uint64_t samples, const char* delta, const char* epsilon,
                             twosrc_plan** out) {
    return guarded([&] {
        require_ptr(delta, "delta");
        require_ptr(epsilon, "epsilon");
        require_ptr(out, "out");
        auto plan = plan_eq(b, samples, MinEntropyRate::parse(delta), Epsilon::parse(epsilon));
        *out = new twosrc_plan{plan};
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_plan_neq(unsigned b, const char* delta, unsigned q1, unsigned growth, twosrc_plan** out) {
    return guarded([&] {
        require_ptr(delta, "delta");
        require_ptr(out, "out");
        auto plan = plan_neq(b, MinEntropyRate::parse(delta), q1, growth);
        *out = new twosrc_plan{plan};
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_plan_parse(const char* text, twosrc_plan** out) {
    return guarded([&] {
        require_ptr(text, "text");
        require_ptr(out, "out");
        *out = new twosrc_plan{plan_from_document(KvDocument::parse(text))};
        return TWOSRC_OK;
    });
}

void twosrc_plan_free(twosrc_plan* plan) { delete plan; }

twosrc_status twosrc_plan_get_info(const twosrc_plan* plan, twosrc_plan_info* out) {
    return guarded([&] {
        require_ptr(plan, "plan");
        require_ptr(out, "out");
        twosrc_plan_info info{};
        if (const auto* eq = std::get_if<EqPlan>(&plan->plan)) {
            info.mode = TWOSRC_MODE_EQ;
            info.b = eq->b;
            info.n = eq->n;
            info.q = eq->q;
            info.samples = eq->samples;
            info.num_blocks = eq->num_blocks;
            info.output_bits = eq->output_bits;
            info.log2_error = eq->log2_error;
        } else {
            const auto& neq = std::get<NeqPlan>(plan->plan);
            info.mode = TWOSRC_MODE_NEQ;
            info.b = neq.b;
            info.n = neq.n;
            info.q = neq.q1;
            info.growth = neq.growth;
            info.log2_error = neq.log2_error_limit.value_or(std::numeric_limits<double>::infinity());
        }
        *out = info;
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_plan_report(const twosrc_plan* plan, char** text) {
    return guarded([&] {
        require_ptr(plan, "plan");
        require_ptr(text, "text");
        *text = dup_string(to_document(plan->plan).to_text());
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_plan_error_after(const twosrc_plan* plan, uint64_t blocks, double* log2_error) {
    return guarded([&] {
        require_ptr(plan, "plan");
        require_ptr(log2_error, "log2_error");
        *log2_error = log2_error_after(plan->plan, blocks);
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_extractor_new(const twosrc_plan* plan, unsigned workers, uint64_t max_blocks,
                                   twosrc_extractor** out) {
    return guarded([&] {
        require_ptr(plan, "plan");
        require_ptr(out, "out");
        *out = new_extractor(plan->plan, workers, max_blocks).release();
        return TWOSRC_OK;
    });
}

void twosrc_extractor_free(twosrc_extractor* ex) { delete ex; }

twosrc_status twosrc_extractor_push_x(twosrc_extractor* ex, const uint8_t* bytes, size_t len) {
    return guarded([&] {
        require_ptr(ex, "extractor");
        require(bytes != nullptr || len == 0, "bytes must not be null");
        require(!ex->finished, "extractor already finished");
        ex->stream->push_x({bytes, len});
        drain_packer(*ex);
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_extractor_push_y(twosrc_extractor* ex, const uint8_t* bytes, size_t len) {
    return guarded([&] {
        require_ptr(ex, "extractor");
        require(bytes != nullptr || len == 0, "bytes must not be null");
        require(!ex->finished, "extractor already finished");
        ex->stream->push_y({bytes, len});
        drain_packer(*ex);
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_extractor_finish(twosrc_extractor* ex) {
    return guarded([&] {
        require_ptr(ex, "extractor");
        if (!ex->finished) {
            ex->stream->finish();
            for (std::uint8_t v : ex->packer.finish()) {
                ex->ready.push_back(v);
            }
            ex->finished = true;
        }
        return TWOSRC_OK;
    });
}

int twosrc_extractor_stopped(const twosrc_extractor* ex) { return ex != nullptr && ex->stream->stopped() ? 1 : 0; }

twosrc_status twosrc_extractor_read(twosrc_extractor* ex, uint8_t* buf, size_t cap, size_t* got) {
    return guarded([&] {
        require_ptr(ex, "extractor");
        require_ptr(got, "got");
        require(buf != nullptr || cap == 0, "buf must not be null");
        const std::size_t n = std::min(cap, ex->ready.size());
        std::copy_n(ex->ready.begin(), n, buf);
        ex->ready.erase(ex->ready.begin(), ex->ready.begin() + static_cast<std::ptrdiff_t>(n));
        *got = n;
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_extractor_report(const twosrc_extractor* ex, double wall_time_seconds, char** text) {
    return guarded([&] {
        require_ptr(ex, "extractor");
        require_ptr(text, "text");
        *text = dup_string(make_report(*ex, wall_time_seconds).to_document().to_text());
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_extract_files(const twosrc_plan* plan, const char* x_path, const char* y_path,
                                   const char* out_path, unsigned workers, char** report) {
    return guarded([&] {
        require_ptr(plan, "plan");
        require_ptr(x_path, "x path");
        require_ptr(y_path, "y path");
        require_ptr(out_path, "output path");
        const auto start = std::chrono::steady_clock::now();
        std::ifstream x(x_path, std::ios::binary);
        if (!x) {
            fail(ErrorCode::Io, std::string("cannot open ") + x_path);
        }
        std::ifstream y(y_path, std::ios::binary);
        if (!y) {
            fail(ErrorCode::Io, std::string("cannot open ") + y_path);
        }
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(ErrorCode::Io, std::string("cannot open ") + out_path + " for writing");
        }
        auto ex = new_extractor(plan->plan, workers, 0);
        auto flush = [&] {
            drain_packer(*ex);
            while (!ex->ready.empty()) {
                const std::size_t n = ex->ready.size();
                std::string chunk(ex->ready.begin(), ex->ready.end());
                ex->ready.clear();
                out.write(chunk.data(), static_cast<std::streamsize>(n));
            }
            if (!out) {
                fail(ErrorCode::Io, std::string("write failed on ") + out_path);
            }
        };
        std::vector<char> buf(1 << 16);
        bool x_open = true;
        bool y_open = true;
        while ((x_open || y_open) && !ex->stream->stopped()) {
            for (auto [stream, open, is_x] : {std::tuple{&x, &x_open, true}, std::tuple{&y, &y_open, false}}) {
                if (!*open) {
                    continue;
                }
                stream->read(buf.data(), static_cast<std::streamsize>(buf.size()));
                const auto got = static_cast<std::size_t>(stream->gcount());
                if (stream->bad()) {
                    fail(ErrorCode::Io, std::string("read failed on ") + (is_x ? x_path : y_path));
                }
                const std::span<const std::uint8_t> bytes(reinterpret_cast<const std::uint8_t*>(buf.data()), got);
                if (is_x) {
                    ex->stream->push_x(bytes);
                } else {
                    ex->stream->push_y(bytes);
                }
                if (got < buf.size()) {
                    *open = false;
                }
            }
            flush();
        }
        ex->stream->finish();
        ex->finished = true;
        const auto tail = ex->packer.finish();
        out.write(reinterpret_cast<const char*>(tail.data()), static_cast<std::streamsize>(tail.size()));
        flush();
        out.close();
        if (!out) {
            fail(ErrorCode::Io, std::string("write failed on ") + out_path);
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (report != nullptr) {
            *report = dup_string(make_report(*ex, wall).to_document().to_text());
        }
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_model_from_json(const char* json, twosrc_model** out) {
    return guarded([&] {
        require_ptr(json, "json");
        require_ptr(out, "out");
        *out = new twosrc_model{model_from_json(json)};
        return TWOSRC_OK;
    });
}

void twosrc_model_free(twosrc_model* model) { delete model; }

twosrc_status twosrc_model_generate_file(const twosrc_model* model, uint64_t count, const char* path) {
    return guarded([&] {
        require_ptr(model, "model");
        require_ptr(path, "path");
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail(ErrorCode::Io, std::string("cannot open ") + path + " for writing");
        }
        generate_to(model->model, count, [&](std::span<const std::uint8_t> bytes) {
            out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
        });
        out.close();
        if (!out) {
            fail(ErrorCode::Io, std::string("write failed on ") + path);
        }
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_model_certify(const twosrc_model* model, double* delta, char** detail) {
    return guarded([&] {
        require_ptr(model, "model");
        require_ptr(delta, "delta");
        const auto cert = certify_forward_block(model->model);
        *delta = cert.delta;
        if (detail != nullptr) {
            *detail = dup_string(cert.detail);
        }
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_simulate(const char* json, uint64_t count, const char* path, char** report) {
    return guarded([&] {
        require_ptr(json, "json");
        require_ptr(path, "path");
        const twosrc_model m{model_from_json(json)};
        const twosrc_status st = twosrc_model_generate_file(&m, count, path);
        if (st != TWOSRC_OK) {
            return st;
        }
        KvDocument doc;
        doc.set("kind", "simulation");
        doc.set("model", kind_name(m.model));
        doc.set("b", m.model.b);
        doc.set("seed", m.model.seed);
        doc.set("samples", count);
        doc.set("output_bytes", (count * m.model.b + 7) / 8);
        try {
            const auto cert = certify_forward_block(m.model);
            doc.set("certificate", "analytic");
            doc.set("delta", cert.delta);
            doc.set("min_entropy_per_sample", cert.delta * m.model.b);
            doc.set("worst_guess_probability", cert.worst_guess_probability);
            if (!cert.detail.empty()) {
                doc.set("certificate_detail", cert.detail);
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::Uncertifiable) {
                throw;
            }
            doc.set("certificate", "uncertifiable");
            doc.set("certificate_detail", e.what());
        }
        if (report != nullptr) {
            *report = dup_string(doc.to_text());
        }
        return TWOSRC_OK;
    });
}

int twosrc_is_suite(const char* name) { return name != nullptr && verify::is_suite_name(name) ? 1 : 0; }

twosrc_status twosrc_verify_suite(const char* suite, unsigned max_bits, uint64_t seed, char** report,
                                  uint64_t* violations) {
    return guarded([&] {
        require_ptr(suite, "suite");
        verify::SuiteLimits limits;
        limits.max_bits = max_bits;
        limits.seed = seed;
        const auto result = verify::run_suite(suite, limits);
        if (report != nullptr) {
            *report = dup_string(result.report.to_text());
        }
        if (violations != nullptr) {
            *violations = result.violations;
        }
        if (result.violations > 0) {
            g_last_error = std::to_string(result.violations) + " verification check(s) failed";
            return TWOSRC_E_VERIFICATION_FAILED;
        }
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_check_hadamard(unsigned q, unsigned n, int* passed) {
    return guarded([&] {
        require_ptr(passed, "passed");
        *passed = verify::check_hadamard(GFContext(q), n).passed() ? 1 : 0;
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_default_mul_ops(unsigned q, uint64_t* mul_ops) {
    return guarded([&] {
        require_ptr(mul_ops, "mul_ops");
        *mul_ops = default_mul_ops(q);
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_gate_count(unsigned n, unsigned q, uint64_t mul_ops, uint64_t* ops) {
    return guarded([&] {
        require_ptr(ops, "ops");
        *ops = gate_count(n, q, mul_ops);
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_projected_speed(uint64_t clock_hz, uint64_t lut_count, uint64_t ops_per_lut,
                                     uint64_t block_ops, unsigned q, uint64_t forced_lanes, uint64_t* lanes,
                                     uint64_t* bits_per_second) {
    return guarded([&] {
        require_ptr(lanes, "lanes");
        require_ptr(bits_per_second, "bits_per_second");
        GateCostModel cost;
        cost.q = q;
        cost.block_ops = block_ops;
        const FpgaModel fpga{clock_hz, lut_count, ops_per_lut};
        const auto p = projected_speed(fpga, cost, forced_lanes ? std::optional(forced_lanes) : std::nullopt);
        *lanes = p.lanes;
        *bits_per_second = p.bits_per_second;
        return TWOSRC_OK;
    });
}

twosrc_status twosrc_bench(const twosrc_plan* plan, unsigned workers, double seconds, uint64_t mul_ops,
                           char** report) {
    return guarded([&] {
        require_ptr(plan, "plan");
        require_ptr(report, "report");
        const auto* eq = std::get_if<EqPlan>(&plan->plan);
        require(eq != nullptr, "bench needs an eq plan");
        const std::uint64_t mops = mul_ops ? mul_ops : default_mul_ops(eq->q);
        const auto cost = gate_cost(eq->n, eq->q, mops);
        const auto measured = measure_throughput(*eq, workers, seconds);
        KvDocument doc = to_document(measured, *eq);
        doc.set("model_mul_ops", cost.mul_ops);
        doc.set("model_add_ops", cost.add_ops);
        doc.set("model_block_ops", cost.block_ops);
        doc.set("model_ops", measured.blocks * cost.block_ops);
        doc.set("model_run_ops", eq->num_blocks * cost.block_ops);
        const FpgaModel fpga;
        try {
            const auto p = projected_speed(fpga, cost);
            doc.set("fpga_clock_hz", fpga.clock_hz);
            doc.set("fpga_luts", fpga.lut_count);
            doc.set("fpga_ops_per_lut", fpga.ops_per_lut);
            doc.set("fpga_lanes", p.lanes);
            doc.set("fpga_bits_per_second", p.bits_per_second);
            doc.set("fpga_assumption", "one block per clock per lane (fully pipelined)");
        } catch (const Error& e) {
            doc.set("fpga_lanes", std::uint64_t{0});
            doc.set("fpga_note", e.what());
        }
        *report = dup_string(doc.to_text());
        return TWOSRC_OK;
    });
}

}  // extern "C"
