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

#ifndef HOLOPRS_TOYPERM_TOYPERM_H
#define HOLOPRS_TOYPERM_TOYPERM_H

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holoprs/common/rational.h"
#include "holoprs/common/rng.h"
#include "holoprs/common/stats.h"

// Classical toy model: a random permutation sigma on n-bit strings, the
// shocked permutation pi = sigma o X_1 (flip the leading bit, then apply
// sigma), the binary tree of depth l grown from 0^n, and query-counted
// distinguishers deciding whether a string sits among the tree's leaves.

namespace holoprs::toyperm {

using Word = std::uint32_t;

inline constexpr int kMaxBits = 26;

/// Immutable forward and inverse tables of one permutation.
struct PermutationTable {
    int n = 0;
    std::vector<Word> forward;
    std::vector<Word> inverse;

    Word size() const {
        return static_cast<Word>(forward.size());
    }
    Word leading_bit() const {
        return Word{1} << (n - 1);
    }
    /// Throws kValidation unless forward and inverse are mutually inverse bijections.
    void validate() const;
};

enum class Direction { kForward, kInverse };

/// Query access to a permutation. Copies share the table but each copy
/// owns its counters, so one oracle per trial keeps accounting exact.
class PermutationOracle {
   public:
    PermutationOracle() = default;
    explicit PermutationOracle(std::shared_ptr<const PermutationTable> table);
    /// Builds a table from a forward map; validates bijectivity.
    static PermutationOracle from_forward(int n, std::vector<Word> forward);

    int n() const {
        return table_->n;
    }
    Word size() const {
        return table_->size();
    }
    const PermutationTable &table() const {
        return *table_;
    }
    std::shared_ptr<const PermutationTable> shared_table() const {
        return table_;
    }

    Word query(Direction direction, Word x);
    Word sigma(Word x) {
        return query(Direction::kForward, x);
    }
    Word sigma_inv(Word x) {
        return query(Direction::kInverse, x);
    }
    /// pi(x) = sigma(x xor leading bit).
    Word pi(Word x) {
        return sigma(x ^ table_->leading_bit());
    }

    std::uint64_t forward_queries() const {
        return forward_queries_;
    }
    std::uint64_t inverse_queries() const {
        return inverse_queries_;
    }
    std::uint64_t total_queries() const {
        return forward_queries_ + inverse_queries_;
    }
    void reset_counters() {
        forward_queries_ = inverse_queries_ = 0;
    }

   private:
    std::shared_ptr<const PermutationTable> table_;
    std::uint64_t forward_queries_ = 0;
    std::uint64_t inverse_queries_ = 0;
};

PermutationOracle random_permutation(int n, Rng &rng);
PermutationOracle random_permutation(int n, Seed seed);

/// Flat binary form: n as uint32 little-endian, then 2^n forward entries of
/// ceil(n/8) little-endian bytes each.
void write_oracle(std::ostream &out, const PermutationTable &table);
PermutationOracle read_oracle(std::istream &in);
void save_oracle(const std::string &path, const PermutationTable &table);
PermutationOracle load_oracle(const std::string &path);

/// Applies a uniformly random word of length l in {sigma, pi} to 0^n.
Word sample_d_sigma(PermutationOracle &o, int depth, Rng &rng);

/// Complete binary tree in heap order: node i has children 2i+1 = sigma(x)
/// and 2i+2 = pi(x).
struct SigmaTree {
    int depth = 0;
    std::vector<Word> nodes;
    bool distinct = false;

    std::vector<Word> leaves() const;
    /// Second-to-last row; empty for depth 0.
    std::vector<Word> second_last_row() const;
    bool contains(Word x) const;
    bool is_leaf(Word x) const;
};

/// Queries the oracle once per non-root node.
SigmaTree build_tree(PermutationOracle &o, int depth);
/// Same tree read straight from the table, without query accounting.
SigmaTree tree_of(const PermutationTable &t, int depth);

/// Leaf multiplicities over 2^l, summing to exactly 1.
std::map<Word, Rational> exact_distribution_d(const PermutationTable &t, int depth);

struct SpliceResult {
    PermutationOracle oracle;
    bool no_op = false;  // x == y; the table is returned unchanged
};

/// SWAP(x, y) o sigma as a fresh table; the input is untouched.
SpliceResult swap_splice(const PermutationOracle &o, Word x, Word y);

enum class Hybrid { kA, kB, kC, kD, kE };

char hybrid_label(Hybrid h);
Hybrid hybrid_from_label(char c);

struct HybridInstance {
    Hybrid label = Hybrid::kA;
    PermutationOracle sigma;
    Word y = 0;
    bool ground_truth = false;  // y is a leaf of the tree of sigma
    double acceptance_rate = 1;  // of the rejection sampler into S, 1 when unused
};

inline constexpr int kRejectionCap = 10000;

HybridInstance sample_hybrid(Hybrid label, int n, int depth, Rng &rng);

/// Joint law of (sigma, y) with every probability count / denominator.
/// Index = permutation_rank(sigma) * 2^n + y.
struct JointTable {
    int n = 0;
    int depth = 0;
    std::vector<std::uint64_t> counts;
    mpz_class denominator;

    Rational probability(std::size_t index) const;
    Rational total() const;
};

/// Lexicographic rank of a permutation of {0..m-1}.
std::uint64_t permutation_rank(const std::vector<Word> &perm);
std::vector<Word> permutation_unrank(std::uint64_t rank, int m);

/// Exhaustive joint law of hybrid `label` at n = 3, l = 2.
JointTable enumerate_joint_distribution(Hybrid label, int n, int depth);

Rational tv_distance(const JointTable &p, const JointTable &q);
Rational tv_distance(const std::map<Word, Rational> &p, const std::map<Word, Rational> &q);

/// Exact fraction of permutations whose tree has distinct labels (n = 3 only).
Rational distinct_fraction(int n, int depth);

/// Pr[sigma not in S] + |T|/2^n with |T| = 2^{l+1} - 1.
Rational closeness_bound(int n, int depth);

bool distinguisher_forward_enum(PermutationOracle &o, Word y, int depth);
bool distinguisher_meet_in_middle(PermutationOracle &o, Word y, int depth);

struct TrialRecord {
    std::size_t trial = 0;
    Hybrid hybrid = Hybrid::kA;
    bool decision = false;  // true = "y is a leaf"
    bool correct = false;
    std::uint64_t forward_queries = 0;
    std::uint64_t inverse_queries = 0;
};

struct GameResult {
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::vector<std::uint64_t> forward_queries;
    std::vector<std::uint64_t> inverse_queries;
    std::vector<TrialRecord> records;

    double success_rate() const;
    Interval success_interval() const;
    double mean_queries() const;
};

/// Registered strategy names.
std::vector<std::string> strategy_names();

/// One game round: fair coin between hybrids A and E, then the strategy.
TrialRecord play_trial(const std::string &strategy, int n, int depth, std::size_t trial, Seed trial_seed);

/// Trial t uses the seed stream split(t) of `seed`.
GameResult run_distinguishing_game(const std::string &strategy, int n, int depth, std::size_t trials, Seed seed);
GameResult collect_game(std::vector<TrialRecord> records);

void write_game_csv(std::ostream &out, const GameResult &result);

}  // namespace holoprs::toyperm

#endif
