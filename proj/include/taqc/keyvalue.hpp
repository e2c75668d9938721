// Copyright 2026 The taqc Authors
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

/**
 * @file
 * Flat `key = value` text files used for problem specs and sweep configs.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace taqc {

/// Malformed configuration text; the message carries the offending line.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One `key = value` line. Keys may repeat.
struct KeyValueEntry {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

class KeyValueFile {
  public:
    /// Parses text; `#` starts a comment, blank lines are skipped.
    static KeyValueFile parse(std::istream &in, std::string source = "<input>");
    static KeyValueFile load(const std::filesystem::path &path);

    [[nodiscard]] const std::vector<KeyValueEntry> &entries() const { return entries_; }
    [[nodiscard]] const std::string &source() const { return source_; }

    /// Last entry with `key`, if any.
    [[nodiscard]] const KeyValueEntry *find(std::string_view key) const;
    [[nodiscard]] std::vector<const KeyValueEntry *> find_all(std::string_view key) const;

    /// Throws ConfigError naming the first key not in `known`.
    void require_known(const std::vector<std::string_view> &known) const;

    [[nodiscard]] std::string location(const KeyValueEntry &e) const;

  private:
    std::string source_;
    std::vector<KeyValueEntry> entries_;
};

/// Value parsers; errors are reported as ConfigError with `file:line`.
double parse_double(const KeyValueFile &f, const KeyValueEntry &e);
std::int64_t parse_int(const KeyValueFile &f, const KeyValueEntry &e);
std::uint64_t parse_uint(const KeyValueFile &f, const KeyValueEntry &e);
bool parse_bool(const KeyValueFile &f, const KeyValueEntry &e);
std::vector<double> parse_double_list(const KeyValueFile &f, const KeyValueEntry &e);
std::vector<std::int64_t> parse_int_list(const KeyValueFile &f, const KeyValueEntry &e);
std::vector<std::string> split_list(std::string_view text);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

} // namespace taqc
