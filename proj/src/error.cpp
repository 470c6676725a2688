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

#include "twosrc/error.hpp"

namespace twosrc {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument:
            return "invalid-argument";
        case ErrorCode::Capacity:
            return "capacity";
        case ErrorCode::UnsupportedRate:
            return "unsupported-rate";
        case ErrorCode::Io:
            return "io";
        case ErrorCode::Truncated:
            return "truncated";
        case ErrorCode::Infeasible:
            return "infeasible";
        case ErrorCode::Divergent:
            return "divergent";
        case ErrorCode::Uncertifiable:
            return "uncertifiable";
        case ErrorCode::WorkerFailure:
            return "worker-failure";
        case ErrorCode::VerificationFailed:
            return "verification-failed";
    }
    return "unknown";
}

}  // namespace twosrc
