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

#include "holoprs/common/stats.h"

#include <cmath>

#include "holoprs/common/error.h"

namespace holoprs {

MeanEstimate mean_with_error(std::span<const double> values) {
    RunningMean acc;
    for (double v : values) {
        acc.add(v);
    }
    return acc.estimate();
}

void RunningMean::add(double x) {
    ++count_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

MeanEstimate RunningMean::estimate() const {
    MeanEstimate out;
    out.mean = mean_;
    out.samples = count_;
    if (count_ > 1) {
        double var = m2_ / static_cast<double>(count_ - 1);
        out.std_error = std::sqrt(var / static_cast<double>(count_));
    }
    return out;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

LinearFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    require(xs.size() == ys.size() && xs.size() >= 2, ErrorCode::kInvalidParameter,
            "fit_line needs two equally sized series of length >= 2");
    double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    require(sxx > 0, ErrorCode::kDegenerateFit, "all x values are equal");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace holoprs
