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
#include <span>
#include <vector>

#include "twosrc/gf2q.hpp"

namespace twosrc {

/// FIFO of bits fed as bytes. Bits are read least-significant first within
/// each byte, so a byte stream is one flat bit string.
class BitQueue {
  public:
    void push(std::span<const std::uint8_t> bytes);

    std::uint64_t available() const noexcept { return pushed_ - consumed_; }
    std::uint64_t pushed() const noexcept { return pushed_; }
    std::uint64_t consumed() const noexcept { return consumed_; }

    /// Removes and returns the next `count` bits (count <= 128); the first
    /// bit read lands in bit 0 of the result.
    u128 take(unsigned count);

  private:
    std::vector<std::uint8_t> buf_;
    std::uint64_t head_ = 0;  // bit offset of the next unread bit in buf_
    std::uint64_t pushed_ = 0;
    std::uint64_t consumed_ = 0;
};

/// Packs bit strings into bytes, least-significant bit first; the last
/// partial byte is zero-padded by finish().
class BitPacker {
  public:
    void append(u128 bits, unsigned count);

    /// Moves out every completed byte.
    std::vector<std::uint8_t> take_bytes();
    /// Moves out the rest, padding the final byte with zeros.
    std::vector<std::uint8_t> finish();

    unsigned pad_bits() const noexcept { return pad_bits_; }
    std::uint64_t total_bits() const noexcept { return total_bits_; }

  private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t acc_ = 0;
    unsigned acc_bits_ = 0;
    unsigned pad_bits_ = 0;
    std::uint64_t total_bits_ = 0;
};

}  // namespace twosrc
