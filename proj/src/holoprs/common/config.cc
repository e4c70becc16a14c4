// Copyright 2026 The holoprs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holoprs/common/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "holoprs/common/error.h"

namespace holoprs {

std::string trim(const std::string &s) {
    const char *ws = " \t\r\n";
    auto start = s.find_first_not_of(ws);
    if (start == std::string::npos) {
        return "";
    }
    auto end = s.find_last_not_of(ws);
    return s.substr(start, end - start + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

KeyValueConfig KeyValueConfig::parse(std::istream &in) {
    KeyValueConfig cfg;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        auto eq = t.find('=');
        require(eq != std::string::npos && eq > 0, ErrorCode::kValidation,
                "line " + std::to_string(number) + ": expected key=value, got '" + t + "'");
        cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_string(const std::string &text) {
    std::istringstream in(text);
    return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string &path) {
    std::ifstream in(path);
    require(in.is_open(), ErrorCode::kIo, "cannot open config " + path);
    return parse(in);
}

void KeyValueConfig::set_assignment(const std::string &assignment) {
    auto eq = assignment.find('=');
    require(eq != std::string::npos && eq > 0, ErrorCode::kValidation,
            "expected key=value, got '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void KeyValueConfig::set(const std::string &key, const std::string &value) {
    require(!key.empty(), ErrorCode::kValidation, "empty config key");
    entries_[key] = value;
}

bool KeyValueConfig::has(const std::string &key) const {
    return entries_.count(key) > 0;
}

const std::string &KeyValueConfig::get(const std::string &key) const {
    auto it = entries_.find(key);
    require(it != entries_.end(), ErrorCode::kValidation, "missing config key '" + key + "'");
    return it->second;
}

std::string KeyValueConfig::get_or(const std::string &key, const std::string &fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string &key) const {
    const std::string &v = get(key);
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        require(used == v.size() && std::isfinite(d), ErrorCode::kValidation, "");
        return d;
    } catch (const std::exception &) {
        fail(ErrorCode::kValidation, "config key '" + key + "' is not a finite number: '" + v + "'");
    }
}

double KeyValueConfig::get_double_or(const std::string &key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::int64_t KeyValueConfig::get_int(const std::string &key) const {
    const std::string &v = get(key);
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    require(ec == std::errc() && ptr == v.data() + v.size(), ErrorCode::kValidation,
            "config key '" + key + "' is not an integer: '" + v + "'");
    return out;
}

std::int64_t KeyValueConfig::get_int_or(const std::string &key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueConfig::get_uint(const std::string &key) const {
    const std::string &v = get(key);
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    require(ec == std::errc() && ptr == v.data() + v.size(), ErrorCode::kValidation,
            "config key '" + key + "' is not a non-negative integer: '" + v + "'");
    return out;
}

std::uint64_t KeyValueConfig::get_uint_or(const std::string &key, std::uint64_t fallback) const {
    return has(key) ? get_uint(key) : fallback;
}

bool KeyValueConfig::get_bool_or(const std::string &key, bool fallback) const {
    if (!has(key)) {
        return fallback;
    }
    const std::string &v = get(key);
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    fail(ErrorCode::kValidation, "config key '" + key + "' is not a boolean: '" + v + "'");
}

std::vector<std::string> KeyValueConfig::get_list(const std::string &key) const {
    std::vector<std::string> out;
    for (auto &item : split(get(key), ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

void KeyValueConfig::require_known(const std::vector<std::string> &allowed) const {
    for (const auto &[key, value] : entries_) {
        require(std::find(allowed.begin(), allowed.end(), key) != allowed.end(), ErrorCode::kValidation,
                "unknown config key '" + key + "'");
    }
}

std::string KeyValueConfig::to_string() const {
    std::string out;
    for (const auto &[key, value] : entries_) {
        out += key + " = " + value + "\n";
    }
    return out;
}

}  // namespace holoprs
