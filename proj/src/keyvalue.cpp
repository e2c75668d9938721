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

#include "taqc/keyvalue.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace taqc {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const KeyValueFile &f, const KeyValueEntry &e, const std::string &what) {
    throw ConfigError(f.location(e) + ": " + what);
}

double to_double(std::string_view text, bool &ok) {
    // from_chars for double is available in libstdc++ 11.
    double v = 0.0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    ok = ec == std::errc() && ptr == end && !text.empty();
    return v;
}

template <typename Int> Int to_int(std::string_view text, bool &ok) {
    Int v = 0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    ok = ec == std::errc() && ptr == end && !text.empty();
    return v;
}

} // namespace

KeyValueFile KeyValueFile::parse(std::istream &in, std::string source) {
    KeyValueFile out;
    out.source_ = std::move(source);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(out.source_ + ":" + std::to_string(lineno) +
                              ": expected `key = value`");
        }
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError(out.source_ + ":" + std::to_string(lineno) + ": empty key");
        }
        out.entries_.push_back(
            KeyValueEntry{std::string(key), std::string(trim(line.substr(eq + 1))), lineno});
    }
    return out;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path.string() + ": file not found");
    }
    return parse(in, path.string());
}

const KeyValueEntry *KeyValueFile::find(std::string_view key) const {
    const KeyValueEntry *found = nullptr;
    for (const auto &e : entries_) {
        if (e.key == key) {
            found = &e;
        }
    }
    return found;
}

std::vector<const KeyValueEntry *> KeyValueFile::find_all(std::string_view key) const {
    std::vector<const KeyValueEntry *> out;
    for (const auto &e : entries_) {
        if (e.key == key) {
            out.push_back(&e);
        }
    }
    return out;
}

void KeyValueFile::require_known(const std::vector<std::string_view> &known) const {
    for (const auto &e : entries_) {
        if (std::find(known.begin(), known.end(), e.key) == known.end()) {
            fail(*this, e, "unknown key `" + e.key + "`");
        }
    }
}

std::string KeyValueFile::location(const KeyValueEntry &e) const {
    return source_ + ":" + std::to_string(e.line);
}

double parse_double(const KeyValueFile &f, const KeyValueEntry &e) {
    bool ok = false;
    const double v = to_double(trim(e.value), ok);
    if (!ok) {
        fail(f, e, "`" + e.key + "` expects a number, got `" + e.value + "`");
    }
    return v;
}

std::int64_t parse_int(const KeyValueFile &f, const KeyValueEntry &e) {
    bool ok = false;
    const auto v = to_int<std::int64_t>(trim(e.value), ok);
    if (!ok) {
        fail(f, e, "`" + e.key + "` expects an integer, got `" + e.value + "`");
    }
    return v;
}

std::uint64_t parse_uint(const KeyValueFile &f, const KeyValueEntry &e) {
    bool ok = false;
    const auto v = to_int<std::uint64_t>(trim(e.value), ok);
    if (!ok) {
        fail(f, e, "`" + e.key + "` expects a non-negative integer, got `" + e.value + "`");
    }
    return v;
}

bool parse_bool(const KeyValueFile &f, const KeyValueEntry &e) {
    const auto v = trim(e.value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    fail(f, e, "`" + e.key + "` expects true/false, got `" + e.value + "`");
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece =
            trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (!piece.empty()) {
            out.emplace_back(piece);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::vector<double> parse_double_list(const KeyValueFile &f, const KeyValueEntry &e) {
    std::vector<double> out;
    for (const auto &item : split_list(e.value)) {
        bool ok = false;
        out.push_back(to_double(item, ok));
        if (!ok) {
            fail(f, e, "`" + e.key + "` has a non-numeric item `" + item + "`");
        }
    }
    return out;
}

std::vector<std::int64_t> parse_int_list(const KeyValueFile &f, const KeyValueEntry &e) {
    std::vector<std::int64_t> out;
    for (const auto &item : split_list(e.value)) {
        bool ok = false;
        out.push_back(to_int<std::int64_t>(item, ok));
        if (!ok) {
            fail(f, e, "`" + e.key + "` has a non-integer item `" + item + "`");
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace taqc
