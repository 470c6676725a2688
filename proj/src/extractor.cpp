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

#include "twosrc/extractor.hpp"

#include <istream>

#include "twosrc/error.hpp"

namespace twosrc {

FieldElement ext_ip(const GFContext& ctx, std::size_t n, std::span<const FieldElement> x,
                    std::span<const FieldElement> y) {
    require(n >= 1, "inner product needs n >= 1");
    if (x.size() != n || y.size() != n) {
        fail(ErrorCode::InvalidArgument, "inner product expects " + std::to_string(n) +
                                             " elements per side, got " + std::to_string(x.size()) +
                                             " and " + std::to_string(y.size()));
    }
    u128 acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i].width() != ctx.q() || y[i].width() != ctx.q()) {
            fail(ErrorCode::InvalidArgument, "inner product element width does not match q=" +
                                                 std::to_string(ctx.q()));
        }
        acc ^= ctx.mul_raw(x[i].bits(), y[i].bits());
    }
    return ctx.element(acc);
}

// ---------------------------------------------------------------------------
// OrderedBlockRunner

namespace {

FieldElement compute_block(const BlockPair& block) {
    require(block.field != nullptr, "block has no field context");
    return ext_ip(*block.field, block.x.size(), block.x, block.y);
}

}  // namespace

OrderedBlockRunner::OrderedBlockRunner(const ParallelOptions& options, ChunkSink sink)
    : sink_(std::move(sink)) {
    require(options.workers >= 1, "need at least one worker");
    capacity_ = options.reorder_capacity != 0 ? options.reorder_capacity : 4 * std::size_t{options.workers};
    if (options.workers > 1) {
        workers_.reserve(options.workers);
        for (unsigned i = 0; i < options.workers; ++i) {
            workers_.emplace_back([this] { worker_loop(); });
        }
    }
}

OrderedBlockRunner::~OrderedBlockRunner() {
    {
        std::lock_guard lock(mu_);
        stopping_ = true;
    }
    work_cv_.notify_all();
    for (auto& t : workers_) {
        t.join();
    }
}

void OrderedBlockRunner::submit(BlockPair&& block) {
    const std::uint64_t index = ++submitted_;
    if (workers_.empty()) {
        Result r;
        try {
            r.value = compute_block(block);
        } catch (...) {
            r.error = std::current_exception();
        }
        emit(index, std::move(r));
        return;
    }
    std::unique_lock lock(mu_);
    while (index - 1 - emitted_ >= capacity_) {
        emit_next(lock);
    }
    pending_.push_back(Job{index, std::move(block)});
    work_cv_.notify_one();
    emit_ready(lock);
}

void OrderedBlockRunner::drain() {
    if (workers_.empty()) {
        return;
    }
    std::unique_lock lock(mu_);
    while (emitted_ < submitted_) {
        emit_next(lock);
    }
}

void OrderedBlockRunner::worker_loop() {
    for (;;) {
        Job job;
        {
            std::unique_lock lock(mu_);
            work_cv_.wait(lock, [&] { return stopping_ || !pending_.empty(); });
            if (stopping_) {
                return;
            }
            job = std::move(pending_.front());
            pending_.pop_front();
        }
        Result r;
        try {
            r.value = compute_block(job.block);
        } catch (...) {
            r.error = std::current_exception();
        }
        {
            std::lock_guard lock(mu_);
            done_.emplace(job.index, std::move(r));
        }
        done_cv_.notify_all();
    }
}

void OrderedBlockRunner::emit_next(std::unique_lock<std::mutex>& lock) {
    const std::uint64_t want = emitted_ + 1;
    done_cv_.wait(lock, [&] { return done_.contains(want); });
    auto node = done_.extract(want);
    lock.unlock();
    try {
        emit(want, std::move(node.mapped()));
    } catch (...) {
        lock.lock();
        throw;
    }
    lock.lock();
}

void OrderedBlockRunner::emit_ready(std::unique_lock<std::mutex>& lock) {
    while (done_.contains(emitted_ + 1)) {
        emit_next(lock);
    }
}

void OrderedBlockRunner::emit(std::uint64_t index, Result&& result) {
    if (result.error) {
        std::string what = "unknown error";
        try {
            std::rethrow_exception(result.error);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        throw BlockFailure(index, "block " + std::to_string(index) + " failed: " + what);
    }
    sink_(OutputChunk{index, result.value});
    ++emitted_;
}

void run_parallel(const BlockSource& source, const ChunkSink& sink, const ParallelOptions& options) {
    OrderedBlockRunner runner(options, sink);
    while (auto block = source()) {
        runner.submit(std::move(*block));
    }
    runner.drain();
}

// ---------------------------------------------------------------------------
// Schedule

Schedule Schedule::equal(const EqPlan& plan) {
    Schedule s;
    s.b = plan.b;
    s.n = plan.n;
    s.q1 = plan.q;
    s.growth_bits = 0;
    s.max_blocks = plan.num_blocks;
    return s;
}

Schedule Schedule::incremental(const NeqPlan& plan) {
    Schedule s;
    s.b = plan.b;
    s.n = plan.n;
    s.q1 = plan.q1;
    s.growth_bits = std::uint64_t{plan.growth} * plan.b;
    return s;
}

const char* to_string(StopReason r) noexcept {
    switch (r) {
        case StopReason::InputExhausted:
            return "input-exhausted";
        case StopReason::BlockLimit:
            return "block-limit";
        case StopReason::FieldCap:
            return "field-cap";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// StreamExtractor

StreamExtractor::StreamExtractor(const Schedule& schedule, const ParallelOptions& options, ChunkSink sink)
    : schedule_(schedule), sink_(std::move(sink)) {
    require(schedule.b >= 1 && schedule.b <= 64, "sample width b must be in 1..64");
    require(schedule.n >= 1, "n must be positive");
    require(schedule.q1 >= 1, "q1 must be positive");
    runner_ = std::make_unique<OrderedBlockRunner>(options, [this](OutputChunk&& chunk) {
        ++stats_.blocks_completed;
        stats_.output_bits += chunk.bits.width();
        stats_.last_width = chunk.bits.width();
        sink_(std::move(chunk));
    });
}

StreamExtractor::~StreamExtractor() = default;

const GFContext& StreamExtractor::field(unsigned q) {
    auto& slot = fields_[q];
    if (!slot) {
        slot = std::make_unique<GFContext>(q);
    }
    return *slot;
}

void StreamExtractor::push_x(std::span<const std::uint8_t> bytes) {
    require(!finished_, "push after finish");
    stats_.pushed_x_bits += bytes.size() * 8;
    if (!stopped_) {
        x_.push(bytes);
        pump();
    }
}

void StreamExtractor::push_y(std::span<const std::uint8_t> bytes) {
    require(!finished_, "push after finish");
    stats_.pushed_y_bits += bytes.size() * 8;
    if (!stopped_) {
        y_.push(bytes);
        pump();
    }
}

void StreamExtractor::pump() {
    while (!stopped_) {
        if (schedule_.max_blocks && next_block_ > *schedule_.max_blocks) {
            stopped_ = true;
            stats_.stop = StopReason::BlockLimit;
            break;
        }
        const std::uint64_t width = schedule_.width(next_block_);
        if (width > kMaxFieldBits) {
            stopped_ = true;
            stats_.stop = StopReason::FieldCap;
            break;
        }
        const std::uint64_t need = width * schedule_.n;
        if (x_.available() < need || y_.available() < need) {
            break;
        }
        const auto q = static_cast<unsigned>(width);
        BlockPair block;
        block.field = &field(q);
        block.x.reserve(schedule_.n);
        block.y.reserve(schedule_.n);
        for (unsigned i = 0; i < schedule_.n; ++i) {
            block.x.emplace_back(q, x_.take(q));
        }
        for (unsigned i = 0; i < schedule_.n; ++i) {
            block.y.emplace_back(q, y_.take(q));
        }
        stats_.consumed_bits += need;
        ++next_block_;
        runner_->submit(std::move(block));
    }
}

void StreamExtractor::finish() {
    if (finished_) {
        return;
    }
    runner_->drain();
    finished_ = true;
    stats_.discarded_x_bits = stats_.pushed_x_bits - stats_.consumed_bits;
    stats_.discarded_y_bits = stats_.pushed_y_bits - stats_.consumed_bits;
}

ExtractionResult extract(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                         const Schedule& schedule, const ParallelOptions& options) {
    ExtractionResult result;
    StreamExtractor ex(schedule, options, [&](OutputChunk&& c) { result.chunks.push_back(std::move(c)); });
    ex.push_x(x);
    ex.push_y(y);
    ex.finish();
    result.stats = ex.stats();
    return result;
}

ExtractionResult extract_eq(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                            const EqPlan& plan, const ParallelOptions& options) {
    return extract(x, y, Schedule::equal(plan), options);
}

ExtractionResult extract_neq(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                             const NeqPlan& plan, const ParallelOptions& options) {
    return extract(x, y, Schedule::incremental(plan), options);
}

ExtractionStats extract_streams(std::istream& x, std::istream& y, const Schedule& schedule,
                                const ParallelOptions& options, const ChunkSink& sink,
                                std::size_t read_size) {
    require(read_size >= 1, "read size must be positive");
    StreamExtractor ex(schedule, options, sink);
    std::vector<std::uint8_t> buf(read_size);
    auto read_some = [&](std::istream& in, const char* name) -> std::size_t {
        if (!in.good()) {
            return 0;
        }
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (in.bad()) {
            fail(ErrorCode::Io, std::string("read failure on source ") + name);
        }
        return static_cast<std::size_t>(in.gcount());
    };
    bool x_open = true;
    bool y_open = true;
    while ((x_open || y_open) && !ex.stopped()) {
        if (x_open) {
            const std::size_t got = read_some(x, "x");
            ex.push_x(std::span(buf.data(), got));
            x_open = got == read_size && x.good();
        }
        if (y_open) {
            const std::size_t got = read_some(y, "y");
            ex.push_y(std::span(buf.data(), got));
            y_open = got == read_size && y.good();
        }
    }
    ex.finish();
    return ex.stats();
}

std::vector<std::uint8_t> pack_chunks(std::span<const OutputChunk> chunks, unsigned* pad_bits) {
    BitPacker packer;
    for (const auto& c : chunks) {
        packer.append(c.bits.bits(), c.bits.width());
    }
    auto out = packer.finish();
    if (pad_bits != nullptr) {
        *pad_bits = packer.pad_bits();
    }
    return out;
}

}  // namespace twosrc
