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

#include "holoprs/common/error.h"

namespace holoprs {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidDimension:
            return "invalid-dimension";
        case ErrorCode::kShape:
            return "shape";
        case ErrorCode::kResourceLimit:
            return "resource-limit";
        case ErrorCode::kInvalidParameter:
            return "invalid-parameter";
        case ErrorCode::kNoScrambling:
            return "no-scrambling";
        case ErrorCode::kSparseSet:
            return "sparse-set";
        case ErrorCode::kLookup:
            return "lookup";
        case ErrorCode::kBudgetViolation:
            return "budget-violation";
        case ErrorCode::kSchedule:
            return "schedule";
        case ErrorCode::kKey:
            return "key";
        case ErrorCode::kOutOfRegime:
            return "out-of-regime";
        case ErrorCode::kDegenerateFit:
            return "degenerate-fit";
        case ErrorCode::kInconclusive:
            return "inconclusive";
        case ErrorCode::kValidation:
            return "validation";
        case ErrorCode::kIo:
            return "io";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

}  // namespace holoprs
