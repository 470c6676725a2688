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

#include <array>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "twosrc/bitio.hpp"
#include "twosrc/gf2q.hpp"
#include "twosrc/params.hpp"

namespace twosrc {

/// Sum of x_i * y_i over GF(2^q), i = 1..n.
FieldElement ext_ip(const GFContext& ctx, std::size_t n, std::span<const FieldElement> x,
                    std::span<const FieldElement> y);

/// The two windows of one block, already split into field elements.
struct BlockPair {
    const GFContext* field = nullptr;
    std::vector<FieldElement> x;
    std::vector<FieldElement> y;
};

struct OutputChunk {
    std::uint64_t block_index = 0;  // 1-based
    FieldElement bits;
};

using ChunkSink = std::function<void(OutputChunk&&)>;
using BlockSource = std::function<std::optional<BlockPair>()>;

struct ParallelOptions {
    unsigned workers = 1;
    /// Blocks allowed in flight (queued, computing, or waiting for an earlier
    /// block). 0 selects 4 * workers.
    std::size_t reorder_capacity = 0;
};

/// Bounded worker pool that computes ext_ip per block and hands results to
/// the sink in submission order. The sink only ever runs on the thread that
/// calls submit() or drain(); submit() blocks while the window is full.
class OrderedBlockRunner {
  public:
    OrderedBlockRunner(const ParallelOptions& options, ChunkSink sink);
    ~OrderedBlockRunner();

    OrderedBlockRunner(const OrderedBlockRunner&) = delete;
    OrderedBlockRunner& operator=(const OrderedBlockRunner&) = delete;

    void submit(BlockPair&& block);
    /// Waits for every submitted block and emits it. Throws BlockFailure for
    /// the first failed block in order.
    void drain();

    std::uint64_t submitted() const noexcept { return submitted_; }
    std::uint64_t emitted() const noexcept { return emitted_; }

  private:
    struct Job {
        std::uint64_t index;
        BlockPair block;
    };
    struct Result {
        FieldElement value;
        std::exception_ptr error;
    };

    void worker_loop();
    void emit_next(std::unique_lock<std::mutex>& lock);
    void emit_ready(std::unique_lock<std::mutex>& lock);
    void emit(std::uint64_t index, Result&& result);

    ChunkSink sink_;
    std::size_t capacity_;
    std::uint64_t submitted_ = 0;
    std::uint64_t emitted_ = 0;

    std::mutex mu_;
    std::condition_variable work_cv_;
    std::condition_variable done_cv_;
    std::deque<Job> pending_;
    std::map<std::uint64_t, Result> done_;
    bool stopping_ = false;
    std::vector<std::thread> workers_;
};

/// Applies ext_ip to every block from `source`; chunks reach `sink` in block
/// order and are identical for any worker count.
void run_parallel(const BlockSource& source, const ChunkSink& sink, const ParallelOptions& options);

/// Block layout for both extractors: block l has width q1 + (l - 1) * growth_bits
/// and consumes width * n bits from each source.
struct Schedule {
    unsigned b = 0;
    unsigned n = 0;
    unsigned q1 = 0;
    std::uint64_t growth_bits = 0;  // Delta * b, zero for the equal-block extractor
    std::optional<std::uint64_t> max_blocks;

    static Schedule equal(const EqPlan& plan);
    static Schedule incremental(const NeqPlan& plan);

    std::uint64_t width(std::uint64_t block) const { return q1 + (block - 1) * growth_bits; }
};

enum class StopReason { InputExhausted, BlockLimit, FieldCap };

const char* to_string(StopReason r) noexcept;

struct ExtractionStats {
    std::uint64_t blocks_completed = 0;
    std::uint64_t pushed_x_bits = 0;
    std::uint64_t pushed_y_bits = 0;
    std::uint64_t consumed_bits = 0;  // per source; both sources advance together
    std::uint64_t output_bits = 0;
    std::uint64_t discarded_x_bits = 0;
    std::uint64_t discarded_y_bits = 0;
    std::uint64_t last_width = 0;  // width of the last emitted block
    StopReason stop = StopReason::InputExhausted;
};

/// Online block extractor. Bytes for the two sources may arrive in any
/// interleaving and chunk sizes; a block is cut as soon as both sources hold
/// its full window. Consecutive windows are disjoint.
class StreamExtractor {
  public:
    StreamExtractor(const Schedule& schedule, const ParallelOptions& options, ChunkSink sink);
    ~StreamExtractor();

    StreamExtractor(const StreamExtractor&) = delete;
    StreamExtractor& operator=(const StreamExtractor&) = delete;

    void push_x(std::span<const std::uint8_t> bytes);
    void push_y(std::span<const std::uint8_t> bytes);

    /// Emits everything still in flight and settles the tail accounting.
    /// Partial final blocks are discarded, never padded.
    void finish();

    /// True once the block limit or the field cap stopped extraction.
    bool stopped() const noexcept { return stopped_; }
    const ExtractionStats& stats() const noexcept { return stats_; }
    const Schedule& schedule() const noexcept { return schedule_; }

  private:
    void pump();
    const GFContext& field(unsigned q);

    Schedule schedule_;
    ChunkSink sink_;
    BitQueue x_;
    BitQueue y_;
    ExtractionStats stats_;
    std::uint64_t next_block_ = 1;
    bool stopped_ = false;
    bool finished_ = false;
    std::array<std::unique_ptr<GFContext>, kMaxFieldBits + 1> fields_;
    std::unique_ptr<OrderedBlockRunner> runner_;
};

struct ExtractionResult {
    std::vector<OutputChunk> chunks;
    ExtractionStats stats;
};

ExtractionResult extract(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                         const Schedule& schedule, const ParallelOptions& options = {});
ExtractionResult extract_eq(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                            const EqPlan& plan, const ParallelOptions& options = {});
ExtractionResult extract_neq(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y,
                             const NeqPlan& plan, const ParallelOptions& options = {});

/// Reads both streams in `read_size` byte chunks until both are exhausted or
/// extraction stops. Throws Error(Io) when a stream goes bad.
ExtractionStats extract_streams(std::istream& x, std::istream& y, const Schedule& schedule,
                                const ParallelOptions& options, const ChunkSink& sink,
                                std::size_t read_size = 1 << 16);

/// Concatenates chunk bits, LSB-first within bytes, zero-padding the last byte.
std::vector<std::uint8_t> pack_chunks(std::span<const OutputChunk> chunks, unsigned* pad_bits = nullptr);

}  // namespace twosrc
