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

#ifndef HOLOPRS_COMMON_STATS_H
#define HOLOPRS_COMMON_STATS_H

#include <cstddef>
#include <span>

namespace holoprs {

struct MeanEstimate {
    double mean = 0;
    double std_error = 0;
    std::size_t samples = 0;
};

/// Sample mean with standard error sqrt(s^2 / N), s^2 the unbiased variance.
MeanEstimate mean_with_error(std::span<const double> values);

/// Running accumulator (Welford) for when samples are not kept.
class RunningMean {
   public:
    void add(double x);
    MeanEstimate estimate() const;

   private:
    std::size_t count_ = 0;
    double mean_ = 0;
    double m2_ = 0;
};

struct Interval {
    double low = 0;
    double high = 0;
};

/// Wilson score interval for a binomial proportion at z standard normals.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
};

/// Ordinary least squares y = slope*x + intercept. Needs at least two
/// distinct x values.
LinearFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace holoprs

#endif
