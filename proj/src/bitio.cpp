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

#include "twosrc/bitio.hpp"

#include "twosrc/error.hpp"

namespace twosrc {

void BitQueue::push(std::span<const std::uint8_t> bytes) {
    // Drop fully consumed bytes once they dominate the buffer.
    const std::uint64_t dead = head_ / 8;
    if (dead >= 4096 && dead * 2 >= buf_.size()) {
        buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(dead));
        head_ -= dead * 8;
    }
    buf_.insert(buf_.end(), bytes.begin(), bytes.end());
    pushed_ += bytes.size() * 8;
}

u128 BitQueue::take(unsigned count) {
    require(count <= 128, "BitQueue::take reads at most 128 bits");
    require(count <= available(), "BitQueue underflow");
    u128 out = 0;
    unsigned got = 0;
    while (got < count) {
        const auto byte = buf_[head_ / 8];
        const unsigned offset = head_ % 8;
        const unsigned n = std::min(8 - offset, count - got);
        const unsigned bits = (static_cast<unsigned>(byte) >> offset) & ((1u << n) - 1);
        out |= u128{bits} << got;
        got += n;
        head_ += n;
    }
    consumed_ += count;
    return out;
}

void BitPacker::append(u128 bits, unsigned count) {
    require(count <= 128, "BitPacker::append writes at most 128 bits");
    total_bits_ += count;
    while (count > 0) {
        const unsigned n = std::min(count, 32u);
        const auto piece = static_cast<std::uint64_t>(bits & ((u128{1} << n) - 1));
        acc_ |= piece << acc_bits_;
        acc_bits_ += n;
        bits >>= n;
        count -= n;
        while (acc_bits_ >= 8) {
            bytes_.push_back(static_cast<std::uint8_t>(acc_));
            acc_ >>= 8;
            acc_bits_ -= 8;
        }
    }
}

std::vector<std::uint8_t> BitPacker::take_bytes() {
    std::vector<std::uint8_t> out;
    out.swap(bytes_);
    return out;
}

std::vector<std::uint8_t> BitPacker::finish() {
    if (acc_bits_ > 0) {
        pad_bits_ = 8 - acc_bits_;
        bytes_.push_back(static_cast<std::uint8_t>(acc_));
        acc_ = 0;
        acc_bits_ = 0;
    }
    return take_bytes();
}

}  // namespace twosrc
