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

#ifndef HOLOPRS_COMMON_CONFIG_H
#define HOLOPRS_COMMON_CONFIG_H

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace holoprs {

/// Flat key=value configuration. Blank lines and lines starting with '#' are
/// ignored; whitespace around keys and values is trimmed. Later assignments
/// override earlier ones.
class KeyValueConfig {
   public:
    static KeyValueConfig parse(std::istream &in);
    static KeyValueConfig parse_string(const std::string &text);
    static KeyValueConfig load(const std::string &path);

    /// Applies "key=value"; throws kValidation on a malformed assignment.
    void set_assignment(const std::string &assignment);
    void set(const std::string &key, const std::string &value);

    bool has(const std::string &key) const;
    const std::string &get(const std::string &key) const;
    std::string get_or(const std::string &key, const std::string &fallback) const;

    double get_double(const std::string &key) const;
    double get_double_or(const std::string &key, double fallback) const;
    std::int64_t get_int(const std::string &key) const;
    std::int64_t get_int_or(const std::string &key, std::int64_t fallback) const;
    std::uint64_t get_uint(const std::string &key) const;
    std::uint64_t get_uint_or(const std::string &key, std::uint64_t fallback) const;
    bool get_bool_or(const std::string &key, bool fallback) const;
    /// Comma-separated list.
    std::vector<std::string> get_list(const std::string &key) const;

    /// Throws kValidation naming the first key outside `allowed`.
    void require_known(const std::vector<std::string> &allowed) const;

    const std::map<std::string, std::string> &entries() const {
        return entries_;
    }
    /// One "key = value" line per entry, sorted by key.
    std::string to_string() const;

   private:
    std::map<std::string, std::string> entries_;
};

std::string trim(const std::string &s);
std::vector<std::string> split(const std::string &s, char sep);

/// Shortest round-trip decimal form of a double (17 significant digits).
std::string format_double(double value);

}  // namespace holoprs

#endif
