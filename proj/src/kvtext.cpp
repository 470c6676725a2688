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

#include "twosrc/kvtext.hpp"

#include <charconv>
#include <cmath>

#include "twosrc/error.hpp"

namespace twosrc {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) {
        return v < 0 ? "-inf" : "inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
    if (s == "inf") {
        return INFINITY;
    }
    if (s == "-inf") {
        return -INFINITY;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && ptr == s.data() + s.size(), "malformed number '" + std::string(s) + "'");
    return v;
}

void KvDocument::set(std::string key, std::string value) {
    require(!key.empty() && key.find_first_of("=\n") == std::string::npos, "malformed report key");
    require(value.find('\n') == std::string::npos, "report values are single-line");
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    entries_.emplace_back(std::move(key), std::move(value));
}

void KvDocument::set(std::string key, std::uint64_t value) { set(std::move(key), std::to_string(value)); }

void KvDocument::set(std::string key, double value) { set(std::move(key), format_double(value)); }

void KvDocument::set(std::string key, bool value) { set(std::move(key), std::string(value ? "true" : "false")); }

bool KvDocument::has(std::string_view key) const { return get(key).has_value(); }

std::optional<std::string> KvDocument::get(std::string_view key) const {
    for (const auto& [k, v] : entries_) {
        if (k == key) {
            return v;
        }
    }
    return std::nullopt;
}

std::string KvDocument::get_string(std::string_view key) const {
    auto v = get(key);
    require(v.has_value(), "missing key '" + std::string(key) + "'");
    return *v;
}

std::uint64_t KvDocument::get_u64(std::string_view key) const {
    const std::string s = get_string(key);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && ptr == s.data() + s.size(),
            "key '" + std::string(key) + "' is not an unsigned integer");
    return v;
}

double KvDocument::get_double(std::string_view key) const { return parse_double(get_string(key)); }

bool KvDocument::get_bool(std::string_view key) const {
    const std::string s = get_string(key);
    require(s == "true" || s == "false", "key '" + std::string(key) + "' is not a boolean");
    return s == "true";
}

std::string KvDocument::to_text() const {
    std::string out(kHeader);
    out += '\n';
    for (const auto& [k, v] : entries_) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

KvDocument KvDocument::parse(std::string_view text) {
    KvDocument doc;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            require(line == kHeader, "missing '# twosrc report v1' header");
            header_seen = true;
            continue;
        }
        if (line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        require(eq != std::string_view::npos, "line " + std::to_string(line_no) + " is not 'key = value'");
        doc.set(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
    }
    require(header_seen, "empty report document");
    return doc;
}

}  // namespace twosrc
