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

#ifndef HOLOPRS_COMMON_RNG_H
#define HOLOPRS_COMMON_RNG_H

#include <complex>
#include <cstdint>
#include <limits>

namespace holoprs {

/// Master seed for every stochastic operation.
struct Seed {
    std::uint64_t value = 0;
};

/// Counter-based generator: output i is a fixed mixing function of
/// (key, i), so streams can be split by index without shared state and a
/// trial's randomness never depends on scheduling order.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(Seed seed) : key_(mix(seed.value ^ 0x6a09e667f3bcc909ULL)) {
    }
    explicit Rng(std::uint64_t seed) : Rng(Seed{seed}) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
    }

    /// Independent child stream number `index`. Does not advance this stream.
    Rng split(std::uint64_t index) const {
        Rng child(Seed{0});
        child.key_ = mix(key_ ^ mix(index + 0xbb67ae8584caa73bULL));
        return child;
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Standard normal via Box-Muller (one draw per call).
    double normal();

    /// Complex normal with E|z|^2 = 1.
    std::complex<double> complex_normal();

    bool coin() {
        return ((*this)() >> 63) != 0;
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

   private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

}  // namespace holoprs

#endif
