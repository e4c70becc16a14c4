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

#include "holoprs/common/rational.h"

#include "holoprs/common/error.h"

namespace holoprs {

std::string to_fraction_string(const Rational &value) {
    Rational v = value;
    v.canonicalize();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational parse_fraction(const std::string &text) {
    Rational out;
    if (out.set_str(text, 10) != 0) {
        fail(ErrorCode::kValidation, "not a rational: '" + text + "'");
    }
    out.canonicalize();
    return out;
}

}  // namespace holoprs
