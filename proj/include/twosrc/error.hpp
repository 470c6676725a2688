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
#include <stdexcept>
#include <string>

namespace twosrc {

/// Failure categories shared by every module. The C API maps these one to
/// one onto twosrc_status values.
enum class ErrorCode {
    InvalidArgument,
    Capacity,         // field width above 128 bits
    UnsupportedRate,  // min-entropy rate at or below 1/2
    Io,
    Truncated,
    Infeasible,       // exhaustive check too large
    Divergent,        // unbounded error sum
    Uncertifiable,
    WorkerFailure,
    VerificationFailed,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Raised by the parallel block runner; carries the index of the block whose
/// computation failed.
class BlockFailure : public Error {
  public:
    BlockFailure(std::uint64_t block_index, const std::string& what)
        : Error(ErrorCode::WorkerFailure, what), block_index_(block_index) {}

    std::uint64_t block_index() const noexcept { return block_index_; }

  private:
    std::uint64_t block_index_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, const std::string& what) {
    if (!cond) {
        fail(ErrorCode::InvalidArgument, what);
    }
}

}  // namespace twosrc
