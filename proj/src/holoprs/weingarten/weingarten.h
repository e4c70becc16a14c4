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

#ifndef HOLOPRS_WEINGARTEN_WEINGARTEN_H
#define HOLOPRS_WEINGARTEN_WEINGARTEN_H

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "holoprs/common/rational.h"
#include "holoprs/common/rng.h"

// Exact representation data for S_k and U(d), the Weingarten function and
// Haar moments of unitary matrix entries. Everything here is exact rational
// arithmetic except the Monte Carlo estimator.

namespace holoprs::weingarten {

inline constexpr int kMaxWeight = 8;

/// Weakly decreasing positive parts.
class Partition {
   public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int> &parts() const {
        return parts_;
    }
    int weight() const {
        return weight_;
    }
    int rows() const {
        return static_cast<int>(parts_.size());
    }
    /// Hook length of cell (row, col), both zero-based.
    int hook(int row, int col) const;
    std::string to_string() const;

    auto operator<=>(const Partition &) const = default;

   private:
    std::vector<int> parts_;
    int weight_ = 0;
};

/// Conjugacy class of S_k, given by its cycle lengths.
class CycleType {
   public:
    explicit CycleType(Partition cycles) : cycles_(std::move(cycles)) {
    }
    static CycleType identity(int k);

    const Partition &cycles() const {
        return cycles_;
    }
    int weight() const {
        return cycles_.weight();
    }
    /// Minimal number of transpositions: k - (number of cycles).
    int transposition_length() const {
        return cycles_.weight() - cycles_.rows();
    }
    /// Number of permutations in the class.
    std::uint64_t class_size() const;
    std::string to_string() const {
        return cycles_.to_string();
    }

    auto operator<=>(const CycleType &) const = default;

   private:
    Partition cycles_;
};

/// One-line notation: perm[a] is the image of a, values 0..k-1.
using Permutation = std::vector<int>;

std::vector<Permutation> all_permutations(int k);
Permutation compose(const Permutation &outer, const Permutation &inner);  // outer o inner
Permutation inverse(const Permutation &p);
CycleType cycle_type(const Permutation &p);
int cycle_count(const Permutation &p);

/// All partitions of k in ascending lexicographic order of their parts.
std::vector<Partition> partitions(int k);

/// Dimension of the S_k irrep: k! / prod(hooks).
std::uint64_t dim_sk(const Partition &lambda);

/// Dimension of the U(d) irrep: prod over cells of (d + col - row) / hook.
/// Zero when lambda has more than d rows.
Rational dim_ud(const Partition &lambda, std::int64_t d);

/// Irreducible character by the Murnaghan-Nakayama rule (memoized).
std::int64_t character(const Partition &lambda, const CycleType &cls);

/// Memoized Wg values keyed by (k, d, cycle type). Concurrent readers and
/// writers are serialized by an internal mutex.
class WeingartenCache {
   public:
    Rational get(const CycleType &cls, std::int64_t d);
    std::size_t size() const;

   private:
    mutable std::mutex mu_;
    std::map<std::tuple<int, std::int64_t, CycleType>, Rational> values_;
};

WeingartenCache &default_cache();

/// Wg(c, d) = (1/(k!)^2) sum_lambda chi(id)^2 chi(c) / dim_ud(lambda, d),
/// defined here only for d >= k.
Rational weingarten(const CycleType &cls, std::int64_t d);
/// Same value computed without consulting the cache.
Rational weingarten_uncached(const CycleType &cls, std::int64_t d);

struct IdentityCheck {
    bool is_identity = false;
    Rational max_deviation;
};

/// Checks W G = I over explicit permutations of S_k, with
/// W(s,t) = Wg(s t^-1, d) and G(s,t) = d^{cycles(s t^-1)}.
IdentityCheck gram_weingarten_identity(int k, std::int64_t d);

/// Index tuples of E prod_a U_{i_a j_a} prod_a conj(U_{i'_a j'_a}).
struct MomentSpec {
    std::vector<std::int64_t> i, j, i_conj, j_conj;
    int order() const {
        return static_cast<int>(i.size());
    }
};

/// Collins-Sniady sum over (sigma, tau) in S_k x S_k.
Rational haar_moment_exact(const MomentSpec &spec, std::int64_t d);

struct ComplexEstimate {
    std::complex<double> mean;
    double std_error = 0;  // sqrt(E|x - mean|^2 / N)
    std::size_t samples = 0;
};

ComplexEstimate haar_moment_mc(const MomentSpec &spec, std::int64_t d, std::size_t trials, Rng &rng);

/// Index expression for symbolic moments: variable `var` (or the constant 0
/// when var < 0) shifted by `offset` modulo d.
struct IndexExpr {
    int var = -1;
    std::int64_t offset = 0;
};

struct SymbolicMoment {
    int num_vars = 0;
    std::vector<IndexExpr> i, j, i_conj, j_conj;
};

/// sum over all d^{num_vars} assignments of the moment, evaluated by
/// counting consistent assignments for each (sigma, tau).
Rational haar_moment_symbolic(const SymbolicMoment &m, std::int64_t d);

/// Shift used to realize the first-qubit flip in dimension d: x -> x + d/2
/// (mod d). For d = 2^n this flips the leading bit.
std::int64_t flip_offset(std::int64_t d);

/// The index sum of E_U |<0|(U^dag)^K X_1 U^K|0>|^2 as a symbolic moment.
SymbolicMoment appendix_a_moment(int power, std::int64_t d);

/// Exact E_U |<0|(U^dag)^K X_1 U^K|0>|^2 for K <= 2, 2K <= d <= 8.
Rational appendix_a_exact(int power, std::int64_t d);

/// Least-squares slope of log|Wg(c, d)| against log d.
double wg_asymptotics_check(const CycleType &cls, const std::vector<std::int64_t> &d_list);

}  // namespace holoprs::weingarten

#endif
