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
#include <string_view>
#include <utility>
#include <vector>

namespace twosrc {

/// Line-oriented key/value document used for plans and reports:
///
///     # twosrc report v1
///     kind = plan-eq
///     b = 16
///
/// Keys keep insertion order; '#' lines after the header are comments.
class KvDocument {
  public:
    static constexpr std::string_view kHeader = "# twosrc report v1";

    void set(std::string key, std::string value);
    void set(std::string key, const char* value) { set(std::move(key), std::string(value)); }
    void set(std::string key, std::uint64_t value);
    void set(std::string key, unsigned value) { set(std::move(key), std::uint64_t{value}); }
    void set(std::string key, double value);
    void set(std::string key, bool value);

    bool has(std::string_view key) const;
    std::optional<std::string> get(std::string_view key) const;
    /// Throws InvalidArgument when the key is missing or malformed.
    std::string get_string(std::string_view key) const;
    std::uint64_t get_u64(std::string_view key) const;
    double get_double(std::string_view key) const;
    bool get_bool(std::string_view key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

    std::string to_text() const;
    static KvDocument parse(std::string_view text);

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Shortest round-trip formatting; infinities as "inf" / "-inf".
std::string format_double(double v);
double parse_double(std::string_view s);

}  // namespace twosrc
