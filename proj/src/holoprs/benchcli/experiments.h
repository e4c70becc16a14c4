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

#ifndef HOLOPRS_BENCHCLI_EXPERIMENTS_H
#define HOLOPRS_BENCHCLI_EXPERIMENTS_H

#include <set>
#include <string>
#include <vector>

#include "holoprs/benchcli/benchcli.h"

// Internal to the runner.

namespace holoprs::benchcli::detail {

/// Typed, range-checked access to experiment parameters. Every value read is
/// echoed (defaults included) into effective(); finish() rejects keys that
/// were never read.
class Params {
   public:
    explicit Params(const KeyValueConfig &cfg) : cfg_(cfg) {
    }

    long integer(const std::string &key, long fallback, long lo, long hi);
    std::uint64_t count(const std::string &key, std::uint64_t fallback, std::uint64_t lo, std::uint64_t hi);
    double real(const std::string &key, double fallback, double lo, double hi);
    std::vector<long> integers(const std::string &key, const std::string &fallback, long lo, long hi);
    std::vector<double> reals(const std::string &key, const std::string &fallback, double lo, double hi);
    std::string choice(const std::string &key, const std::string &fallback, const std::vector<std::string> &allowed);
    std::vector<std::string> choices(const std::string &key, const std::string &fallback,
                                     const std::vector<std::string> &allowed);

    /// Throws kValidation naming the first unread key.
    KeyValueConfig finish() const;

   private:
    std::string raw(const std::string &key, const std::string &fallback);

    const KeyValueConfig &cfg_;
    KeyValueConfig effective_;
    std::set<std::string> read_;
};

[[noreturn]] void invalid(const std::string &key, const std::string &why);

ExperimentOutput toy_hybrids(const KeyValueConfig &cfg, const ExperimentContext &ctx);
ExperimentOutput toy_distinguish(const KeyValueConfig &cfg, const ExperimentContext &ctx);
ExperimentOutput prs_gram(const KeyValueConfig &cfg, const ExperimentContext &ctx);
ExperimentOutput prs_distinguish(const KeyValueConfig &cfg, const ExperimentContext &ctx);
ExperimentOutput prs_energy(const KeyValueConfig &cfg, const ExperimentContext &ctx);
ExperimentOutput weingarten_verify(const KeyValueConfig &cfg, const ExperimentContext &ctx);
ExperimentOutput appendix_a(const KeyValueConfig &cfg, const ExperimentContext &ctx);
ExperimentOutput rewrite_growth(const KeyValueConfig &cfg, const ExperimentContext &ctx);
ExperimentOutput switchback(const KeyValueConfig &cfg, const ExperimentContext &ctx);
ExperimentOutput scrambling_time(const KeyValueConfig &cfg, const ExperimentContext &ctx);

}  // namespace holoprs::benchcli::detail

#endif
