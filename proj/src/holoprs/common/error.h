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

#ifndef HOLOPRS_COMMON_ERROR_H
#define HOLOPRS_COMMON_ERROR_H

#include <stdexcept>
#include <string>

namespace holoprs {

/// Failure categories shared by every module. The numeric values are part of
/// the C API and must stay stable.
enum class ErrorCode : int {
    kInvalidDimension = 1,
    kShape = 2,
    kResourceLimit = 3,
    kInvalidParameter = 4,
    kNoScrambling = 5,
    kSparseSet = 6,
    kLookup = 7,
    kBudgetViolation = 8,
    kSchedule = 9,
    kKey = 10,
    kOutOfRegime = 11,
    kDegenerateFit = 12,
    kInconclusive = 13,
    kValidation = 14,
    kIo = 15,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message);
    ErrorCode code() const noexcept {
        return code_;
    }

   private:
    ErrorCode code_;
};

/// Thrown by scrambling_time when the OTOC never crosses the threshold.
class NoScramblingError : public Error {
   public:
    NoScramblingError(double final_otoc, const std::string &message)
        : Error(ErrorCode::kNoScrambling, message), final_otoc_(final_otoc) {
    }
    double final_otoc() const noexcept {
        return final_otoc_;
    }

   private:
    double final_otoc_;
};

/// Thrown when rejection sampling into the distinct-tree set gives up.
class SparseSetError : public Error {
   public:
    SparseSetError(double acceptance_rate, const std::string &message)
        : Error(ErrorCode::kSparseSet, message), acceptance_rate_(acceptance_rate) {
    }
    double acceptance_rate() const noexcept {
        return acceptance_rate_;
    }

   private:
    double acceptance_rate_;
};

/// Thrown by the exact-complexity search when the frontier cap is hit.
class InconclusiveError : public Error {
   public:
    InconclusiveError(double best_distance, const std::string &message)
        : Error(ErrorCode::kInconclusive, message), best_distance_(best_distance) {
    }
    double best_distance() const noexcept {
        return best_distance_;
    }

   private:
    double best_distance_;
};

[[noreturn]] void fail(ErrorCode code, const std::string &message);

inline void require(bool condition, ErrorCode code, const std::string &message) {
    if (!condition) {
        fail(code, message);
    }
}

}  // namespace holoprs

#endif
