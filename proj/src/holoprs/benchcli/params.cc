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

#include <algorithm>
#include <charconv>
#include <cmath>

#include "holoprs/benchcli/experiments.h"
#include "holoprs/common/error.h"

namespace holoprs::benchcli::detail {

namespace {

std::string range_text(double lo, double hi) {
    return "[" + format_double(lo) + ", " + format_double(hi) + "]";
}

long parse_long(const std::string &key, const std::string &text) {
    long out = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        invalid(key, "expected an integer, got '" + text + "'");
    }
    return out;
}

double parse_real(const std::string &key, const std::string &text) {
    try {
        std::size_t used = 0;
        double d = std::stod(text, &used);
        if (used == text.size() && std::isfinite(d)) {
            return d;
        }
    } catch (const std::exception &) {
    }
    invalid(key, "expected a finite number, got '" + text + "'");
}

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (const auto &s : items) {
        out += (out.empty() ? "" : ",") + s;
    }
    return out;
}

}  // namespace

void invalid(const std::string &key, const std::string &why) {
    fail(ErrorCode::kValidation, "parameter '" + key + "': " + why);
}

std::string Params::raw(const std::string &key, const std::string &fallback) {
    read_.insert(key);
    std::string v = cfg_.get_or(key, fallback);
    effective_.set(key, v);
    return v;
}

long Params::integer(const std::string &key, long fallback, long lo, long hi) {
    long v = parse_long(key, raw(key, std::to_string(fallback)));
    if (v < lo || v > hi) {
        invalid(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + std::to_string(v));
    }
    return v;
}

std::uint64_t Params::count(const std::string &key, std::uint64_t fallback, std::uint64_t lo, std::uint64_t hi) {
    std::string text = raw(key, std::to_string(fallback));
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        invalid(key, "expected a non-negative integer, got '" + text + "'");
    }
    if (v < lo || v > hi) {
        invalid(key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " + text);
    }
    return v;
}

double Params::real(const std::string &key, double fallback, double lo, double hi) {
    double v = parse_real(key, raw(key, format_double(fallback)));
    if (v < lo || v > hi) {
        invalid(key, "must lie in " + range_text(lo, hi) + ", got " + format_double(v));
    }
    return v;
}

std::vector<long> Params::integers(const std::string &key, const std::string &fallback, long lo, long hi) {
    std::vector<long> out;
    for (const auto &item : split(raw(key, fallback), ',')) {
        long v = parse_long(key, item);
        if (v < lo || v > hi) {
            invalid(key, "entries must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                             std::to_string(v));
        }
        out.push_back(v);
    }
    if (out.empty()) {
        invalid(key, "empty list");
    }
    return out;
}

std::vector<double> Params::reals(const std::string &key, const std::string &fallback, double lo, double hi) {
    std::vector<double> out;
    for (const auto &item : split(raw(key, fallback), ',')) {
        double v = parse_real(key, item);
        if (v < lo || v > hi) {
            invalid(key, "entries must lie in " + range_text(lo, hi) + ", got " + format_double(v));
        }
        out.push_back(v);
    }
    if (out.empty()) {
        invalid(key, "empty list");
    }
    return out;
}

std::string Params::choice(const std::string &key, const std::string &fallback,
                           const std::vector<std::string> &allowed) {
    std::string v = raw(key, fallback);
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
        invalid(key, "'" + v + "' is not one of " + join(allowed));
    }
    return v;
}

std::vector<std::string> Params::choices(const std::string &key, const std::string &fallback,
                                         const std::vector<std::string> &allowed) {
    std::vector<std::string> out = split(raw(key, fallback), ',');
    if (out.empty()) {
        invalid(key, "empty list");
    }
    for (const auto &v : out) {
        if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            invalid(key, "'" + v + "' is not one of " + join(allowed));
        }
    }
    return out;
}

KeyValueConfig Params::finish() const {
    for (const auto &[k, v] : cfg_.entries()) {
        if (!read_.count(k)) {
            invalid(k, "unknown for this experiment");
        }
    }
    return effective_;
}

}  // namespace holoprs::benchcli::detail
