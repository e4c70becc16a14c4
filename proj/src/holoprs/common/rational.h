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

#ifndef HOLOPRS_COMMON_RATIONAL_H
#define HOLOPRS_COMMON_RATIONAL_H

#include <gmpxx.h>

#include <string>

namespace holoprs {

using Rational = mpq_class;

/// Always "p/q", including integers ("3/1") and zero ("0/1").
std::string to_fraction_string(const Rational &value);

Rational parse_fraction(const std::string &text);

}  // namespace holoprs

#endif
