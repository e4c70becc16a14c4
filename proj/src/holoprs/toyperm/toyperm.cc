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

#include "holoprs/toyperm/toyperm.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <istream>
#include <unordered_set>

#include "holoprs/common/error.h"

namespace holoprs::toyperm {
namespace {

void check_bits(int n) {
    require(n >= 1 && n <= kMaxBits, ErrorCode::kResourceLimit,
            "bit width " + std::to_string(n) + " outside [1, " + std::to_string(kMaxBits) + "]");
}

void check_depth(int n, int depth, int max_depth) {
    require(depth >= 0, ErrorCode::kInvalidParameter, "depth must be non-negative");
    require(depth <= max_depth && depth <= n + 1, ErrorCode::kResourceLimit,
            "tree of depth " + std::to_string(depth) + " does not fit n=" + std::to_string(n));
}

std::uint64_t factorial(int m) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) {
        f *= static_cast<std::uint64_t>(i);
    }
    return f;
}

std::size_t tree_size(int depth) {
    return (std::size_t{1} << (depth + 1)) - 1;
}

std::size_t first_leaf(int depth) {
    return (std::size_t{1} << depth) - 1;
}

// Enumeration sizes the exact tables support.
void check_enumerable(int n, int depth) {
    require(n >= 2 && n <= 3 && depth >= 1 && tree_size(depth) < (std::size_t{1} << n),
            ErrorCode::kResourceLimit, "exact enumeration supports n <= 3 with the tree smaller than 2^n");
}

template <typename Fn>
void for_each_permutation(int n, Fn fn) {
    std::vector<Word> perm(std::size_t{1} << n);
    std::iota(perm.begin(), perm.end(), Word{0});
    std::uint64_t rank = 0;
    PermutationTable table;
    table.n = n;
    table.inverse.resize(perm.size());
    do {
        table.forward = perm;
        for (Word x = 0; x < perm.size(); ++x) {
            table.inverse[perm[x]] = x;
        }
        fn(rank++, table);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

void PermutationTable::validate() const {
    require(n >= 1 && n <= kMaxBits, ErrorCode::kResourceLimit, "bit width out of range");
    const std::size_t size = std::size_t{1} << n;
    require(forward.size() == size && inverse.size() == size, ErrorCode::kShape, "table size must be 2^n");
    for (std::size_t x = 0; x < size; ++x) {
        require(forward[x] < size && inverse[forward[x]] == x, ErrorCode::kValidation,
                "forward and inverse tables are not mutually inverse");
    }
}

PermutationOracle::PermutationOracle(std::shared_ptr<const PermutationTable> table) : table_(std::move(table)) {
    require(table_ != nullptr, ErrorCode::kValidation, "null permutation table");
}

PermutationOracle PermutationOracle::from_forward(int n, std::vector<Word> forward) {
    check_bits(n);
    auto table = std::make_shared<PermutationTable>();
    table->n = n;
    const std::size_t size = std::size_t{1} << n;
    require(forward.size() == size, ErrorCode::kShape, "forward table must have 2^n entries");
    table->inverse.assign(size, 0);
    std::vector<bool> hit(size, false);
    for (std::size_t x = 0; x < size; ++x) {
        require(forward[x] < size && !hit[forward[x]], ErrorCode::kValidation, "forward table is not a bijection");
        hit[forward[x]] = true;
        table->inverse[forward[x]] = static_cast<Word>(x);
    }
    table->forward = std::move(forward);
    return PermutationOracle(std::move(table));
}

Word PermutationOracle::query(Direction direction, Word x) {
    require(x < table_->size(), ErrorCode::kShape, "query outside the domain");
    if (direction == Direction::kForward) {
        ++forward_queries_;
        return table_->forward[x];
    }
    ++inverse_queries_;
    return table_->inverse[x];
}

PermutationOracle random_permutation(int n, Rng &rng) {
    check_bits(n);
    std::vector<Word> forward(std::size_t{1} << n);
    std::iota(forward.begin(), forward.end(), Word{0});
    for (std::size_t i = forward.size() - 1; i > 0; --i) {
        std::swap(forward[i], forward[rng.below(i + 1)]);
    }
    auto table = std::make_shared<PermutationTable>();
    table->n = n;
    table->inverse.resize(forward.size());
    for (Word x = 0; x < forward.size(); ++x) {
        table->inverse[forward[x]] = x;
    }
    table->forward = std::move(forward);
    return PermutationOracle(std::move(table));
}

PermutationOracle random_permutation(int n, Seed seed) {
    Rng rng(seed);
    return random_permutation(n, rng);
}

void write_oracle(std::ostream &out, const PermutationTable &table) {
    table.validate();
    const auto n = static_cast<std::uint32_t>(table.n);
    for (int b = 0; b < 4; ++b) {
        out.put(static_cast<char>((n >> (8 * b)) & 0xff));
    }
    const int bytes = (table.n + 7) / 8;
    for (Word v : table.forward) {
        for (int b = 0; b < bytes; ++b) {
            out.put(static_cast<char>((v >> (8 * b)) & 0xff));
        }
    }
    require(out.good(), ErrorCode::kIo, "failed writing oracle table");
}

PermutationOracle read_oracle(std::istream &in) {
    auto byte = [&in]() {
        int c = in.get();
        require(c != std::char_traits<char>::eof(), ErrorCode::kIo, "truncated oracle table");
        return static_cast<std::uint32_t>(static_cast<unsigned char>(c));
    };
    std::uint32_t n = 0;
    for (int b = 0; b < 4; ++b) {
        n |= byte() << (8 * b);
    }
    require(n >= 1 && n <= static_cast<std::uint32_t>(kMaxBits), ErrorCode::kResourceLimit,
            "oracle header has unsupported n=" + std::to_string(n));
    const int bytes = (static_cast<int>(n) + 7) / 8;
    std::vector<Word> forward(std::size_t{1} << n);
    for (auto &v : forward) {
        v = 0;
        for (int b = 0; b < bytes; ++b) {
            v |= byte() << (8 * b);
        }
    }
    return PermutationOracle::from_forward(static_cast<int>(n), std::move(forward));
}

void save_oracle(const std::string &path, const PermutationTable &table) {
    std::ofstream out(path, std::ios::binary);
    require(out.is_open(), ErrorCode::kIo, "cannot open " + path);
    write_oracle(out, table);
}

PermutationOracle load_oracle(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    require(in.is_open(), ErrorCode::kIo, "cannot open " + path);
    return read_oracle(in);
}

Word sample_d_sigma(PermutationOracle &o, int depth, Rng &rng) {
    require(depth >= 0, ErrorCode::kInvalidParameter, "depth must be non-negative");
    Word x = 0;
    for (int step = 0; step < depth; ++step) {
        x = rng.coin() ? o.pi(x) : o.sigma(x);
    }
    return x;
}

std::vector<Word> SigmaTree::leaves() const {
    return {nodes.begin() + static_cast<std::ptrdiff_t>(first_leaf(depth)), nodes.end()};
}

std::vector<Word> SigmaTree::second_last_row() const {
    if (depth == 0) {
        return {};
    }
    return {nodes.begin() + static_cast<std::ptrdiff_t>(first_leaf(depth - 1)),
            nodes.begin() + static_cast<std::ptrdiff_t>(first_leaf(depth))};
}

bool SigmaTree::contains(Word x) const {
    return std::find(nodes.begin(), nodes.end(), x) != nodes.end();
}

bool SigmaTree::is_leaf(Word x) const {
    return std::find(nodes.begin() + static_cast<std::ptrdiff_t>(first_leaf(depth)), nodes.end(), x) != nodes.end();
}

namespace {

template <typename Sigma>
SigmaTree grow_tree(int depth, Word lead, Sigma sigma) {
    SigmaTree tree;
    tree.depth = depth;
    tree.nodes.resize(tree_size(depth));
    tree.nodes[0] = 0;
    for (std::size_t i = 0; i < first_leaf(depth); ++i) {
        tree.nodes[2 * i + 1] = sigma(tree.nodes[i]);
        tree.nodes[2 * i + 2] = sigma(tree.nodes[i] ^ lead);
    }
    std::vector<Word> sorted = tree.nodes;
    std::sort(sorted.begin(), sorted.end());
    tree.distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    return tree;
}

}  // namespace

SigmaTree build_tree(PermutationOracle &o, int depth) {
    check_depth(o.n(), depth, 20);
    return grow_tree(depth, o.table().leading_bit(), [&o](Word x) { return o.sigma(x); });
}

SigmaTree tree_of(const PermutationTable &t, int depth) {
    check_depth(t.n, depth, 20);
    return grow_tree(depth, t.leading_bit(), [&t](Word x) { return t.forward[x]; });
}

std::map<Word, Rational> exact_distribution_d(const PermutationTable &t, int depth) {
    auto tree = tree_of(t, depth);
    std::map<Word, Rational> out;
    Rational unit(1, static_cast<unsigned long>(std::size_t{1} << depth));
    for (Word leaf : tree.leaves()) {
        out[leaf] += unit;
    }
    for (auto &[k, v] : out) {
        v.canonicalize();
    }
    return out;
}

SpliceResult swap_splice(const PermutationOracle &o, Word x, Word y) {
    require(x < o.size() && y < o.size(), ErrorCode::kShape, "splice strings outside the domain");
    if (x == y) {
        return {PermutationOracle(o.shared_table()), true};
    }
    auto table = std::make_shared<PermutationTable>(o.table());
    Word px = table->inverse[x];
    Word py = table->inverse[y];
    table->forward[px] = y;
    table->forward[py] = x;
    table->inverse[x] = py;
    table->inverse[y] = px;
    return {PermutationOracle(std::move(table)), false};
}

char hybrid_label(Hybrid h) {
    return static_cast<char>('A' + static_cast<int>(h));
}

Hybrid hybrid_from_label(char c) {
    require(c >= 'A' && c <= 'E', ErrorCode::kLookup, std::string("unknown hybrid label ") + c);
    return static_cast<Hybrid>(c - 'A');
}

namespace {

// Rejection sampling of sigma with a distinct tree.
std::pair<PermutationOracle, double> sample_in_s(int n, int depth, Rng &rng) {
    for (int attempt = 1; attempt <= kRejectionCap; ++attempt) {
        auto o = random_permutation(n, rng);
        if (tree_of(o.table(), depth).distinct) {
            return {o, 1.0 / attempt};
        }
    }
    throw SparseSetError(0.0, "no distinct tree in " + std::to_string(kRejectionCap) +
                                  " draws at n=" + std::to_string(n) + ", depth=" + std::to_string(depth) +
                                  " (acceptance rate 0)");
}

Word uniform_outside(const SigmaTree &tree, Word size, Rng &rng) {
    std::vector<Word> nodes = tree.nodes;
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    const Word free = size - static_cast<Word>(nodes.size());
    require(free > 0, ErrorCode::kResourceLimit, "tree covers every string");
    // Rank-select the r-th string not in the tree.
    Word r = static_cast<Word>(rng.below(free));
    Word y = r;
    for (Word node : nodes) {
        if (node <= y) {
            ++y;
        } else {
            break;
        }
    }
    return y;
}

}  // namespace

HybridInstance sample_hybrid(Hybrid label, int n, int depth, Rng &rng) {
    check_bits(n);
    check_depth(n, depth, 20);
    HybridInstance inst;
    inst.label = label;
    switch (label) {
        case Hybrid::kA: {
            inst.sigma = random_permutation(n, rng);
            inst.y = static_cast<Word>(rng.below(inst.sigma.size()));
            break;
        }
        case Hybrid::kB: {
            auto [o, rate] = sample_in_s(n, depth, rng);
            inst.sigma = o;
            inst.acceptance_rate = rate;
            inst.y = uniform_outside(tree_of(o.table(), depth), o.size(), rng);
            break;
        }
        case Hybrid::kC: {
            auto [prime, rate] = sample_in_s(n, depth, rng);
            inst.acceptance_rate = rate;
            auto tree = tree_of(prime.table(), depth);
            inst.y = uniform_outside(tree, prime.size(), rng);
            auto leaves = tree.leaves();
            Word x = leaves[rng.below(leaves.size())];
            inst.sigma = swap_splice(prime, x, inst.y).oracle;
            break;
        }
        case Hybrid::kD: {
            auto [o, rate] = sample_in_s(n, depth, rng);
            inst.sigma = o;
            inst.acceptance_rate = rate;
            auto leaves = tree_of(o.table(), depth).leaves();
            inst.y = leaves[rng.below(leaves.size())];
            break;
        }
        case Hybrid::kE: {
            inst.sigma = random_permutation(n, rng);
            auto leaves = tree_of(inst.sigma.table(), depth).leaves();
            inst.y = leaves[rng.below(leaves.size())];
            break;
        }
    }
    inst.ground_truth = tree_of(inst.sigma.table(), depth).is_leaf(inst.y);
    return inst;
}

Rational JointTable::probability(std::size_t index) const {
    Rational p(mpz_class(static_cast<unsigned long>(counts.at(index))), denominator);
    p.canonicalize();
    return p;
}

Rational JointTable::total() const {
    mpz_class sum = 0;
    for (auto c : counts) {
        sum += static_cast<unsigned long>(c);
    }
    Rational p(sum, denominator);
    p.canonicalize();
    return p;
}

std::uint64_t permutation_rank(const std::vector<Word> &perm) {
    const std::size_t m = perm.size();
    require(m <= 20, ErrorCode::kResourceLimit, "ranking limited to 20 points");
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t smaller = 0;
        for (std::size_t j = i + 1; j < m; ++j) {
            smaller += perm[j] < perm[i] ? 1 : 0;
        }
        rank += smaller * factorial(static_cast<int>(m - 1 - i));
    }
    return rank;
}

std::vector<Word> permutation_unrank(std::uint64_t rank, int m) {
    std::vector<Word> pool(static_cast<std::size_t>(m));
    std::iota(pool.begin(), pool.end(), Word{0});
    std::vector<Word> out;
    for (int i = m - 1; i >= 0; --i) {
        std::uint64_t f = factorial(i);
        auto idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        out.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return out;
}

Rational distinct_fraction(int n, int depth) {
    check_enumerable(n, depth);
    std::uint64_t in_s = 0;
    std::uint64_t total = 0;
    for_each_permutation(n, [&](std::uint64_t, const PermutationTable &t) {
        in_s += tree_of(t, depth).distinct ? 1 : 0;
        ++total;
    });
    Rational f(static_cast<unsigned long>(in_s), static_cast<unsigned long>(total));
    f.canonicalize();
    return f;
}

JointTable enumerate_joint_distribution(Hybrid label, int n, int depth) {
    check_enumerable(n, depth);
    const std::size_t size = std::size_t{1} << n;
    const std::uint64_t perms = factorial(static_cast<int>(size));
    const std::uint64_t leaves = std::uint64_t{1} << depth;
    const std::uint64_t outside = size - tree_size(depth);  // complement size for sigma in S

    JointTable out;
    out.n = n;
    out.depth = depth;
    out.counts.assign(static_cast<std::size_t>(perms) * size, 0);
    std::uint64_t s_size = 0;
    for_each_permutation(n, [&](std::uint64_t rank, const PermutationTable &t) {
        auto tree = tree_of(t, depth);
        s_size += tree.distinct ? 1 : 0;
        auto cell = [&](Word y) -> std::uint64_t & { return out.counts[rank * size + y]; };
        switch (label) {
            case Hybrid::kA:
                for (Word y = 0; y < size; ++y) {
                    cell(y) = 1;
                }
                break;
            case Hybrid::kB:
                if (tree.distinct) {
                    for (Word y = 0; y < size; ++y) {
                        cell(y) = tree.contains(y) ? 0 : 1;
                    }
                }
                break;
            case Hybrid::kC:
                if (tree.distinct) {
                    for (Word y = 0; y < size; ++y) {
                        if (tree.contains(y)) {
                            continue;
                        }
                        for (Word x : tree.leaves()) {
                            std::vector<Word> spliced = t.forward;
                            for (auto &v : spliced) {
                                v = v == x ? y : (v == y ? x : v);
                            }
                            ++out.counts[permutation_rank(spliced) * size + y];
                        }
                    }
                }
                break;
            case Hybrid::kD:
                if (tree.distinct) {
                    for (Word leaf : tree.leaves()) {
                        ++cell(leaf);
                    }
                }
                break;
            case Hybrid::kE:
                for (Word leaf : tree.leaves()) {
                    ++cell(leaf);
                }
                break;
        }
    });
    require(label == Hybrid::kA || label == Hybrid::kE || s_size > 0, ErrorCode::kSparseSet,
            "no permutation has a distinct tree");
    switch (label) {
        case Hybrid::kA:
            out.denominator = mpz_class(static_cast<unsigned long>(perms)) * static_cast<unsigned long>(size);
            break;
        case Hybrid::kB:
            out.denominator = mpz_class(static_cast<unsigned long>(s_size)) * static_cast<unsigned long>(outside);
            break;
        case Hybrid::kC:
            out.denominator =
                mpz_class(static_cast<unsigned long>(s_size)) * static_cast<unsigned long>(outside * leaves);
            break;
        case Hybrid::kD:
            out.denominator = mpz_class(static_cast<unsigned long>(s_size)) * static_cast<unsigned long>(leaves);
            break;
        case Hybrid::kE:
            out.denominator = mpz_class(static_cast<unsigned long>(perms)) * static_cast<unsigned long>(leaves);
            break;
    }
    return out;
}

Rational tv_distance(const JointTable &p, const JointTable &q) {
    require(p.n == q.n && p.counts.size() == q.counts.size(), ErrorCode::kShape, "tables over different universes");
    mpz_class acc = 0;
    mpz_class term;
    for (std::size_t i = 0; i < p.counts.size(); ++i) {
        if (p.counts[i] == 0 && q.counts[i] == 0) {
            continue;
        }
        term = mpz_class(static_cast<unsigned long>(p.counts[i])) * q.denominator -
               mpz_class(static_cast<unsigned long>(q.counts[i])) * p.denominator;
        acc += abs(term);
    }
    Rational tv(acc, 2 * p.denominator * q.denominator);
    tv.canonicalize();
    return tv;
}

Rational tv_distance(const std::map<Word, Rational> &p, const std::map<Word, Rational> &q) {
    Rational acc = 0;
    for (const auto &[k, v] : p) {
        auto it = q.find(k);
        acc += abs(v - (it == q.end() ? Rational(0) : it->second));
    }
    for (const auto &[k, v] : q) {
        if (!p.count(k)) {
            acc += abs(v);
        }
    }
    acc /= 2;
    acc.canonicalize();
    return acc;
}

Rational closeness_bound(int n, int depth) {
    Rational tree(static_cast<unsigned long>(tree_size(depth)), static_cast<unsigned long>(std::size_t{1} << n));
    Rational bound = Rational(1) - distinct_fraction(n, depth) + tree;
    bound.canonicalize();
    return bound;
}

bool distinguisher_forward_enum(PermutationOracle &o, Word y, int depth) {
    return build_tree(o, depth).is_leaf(y);
}

bool distinguisher_meet_in_middle(PermutationOracle &o, Word y, int depth) {
    require(depth >= 2 && depth <= 24, ErrorCode::kInvalidParameter, "meet-in-the-middle needs 2 <= depth <= 24");
    require(y < o.size(), ErrorCode::kShape, "target outside the domain");
    const int h = depth / 2 - 1;
    const int up = depth - h - 1;
    const Word lead = o.table().leading_bit();

    // Forward half: the depth-h row of the tree from 0^n.
    std::vector<Word> row = {0};
    for (int level = 0; level < h; ++level) {
        std::vector<Word> next;
        next.reserve(row.size() * 2);
        for (Word x : row) {
            next.push_back(o.sigma(x));
            next.push_back(o.pi(x));
        }
        row = std::move(next);
    }
    // Backward half from y: sigma^-1(b) and pi^-1(b) = sigma^-1(b) xor lead
    // share one inverse query.
    std::vector<Word> back = {y};
    for (int level = 0; level < up; ++level) {
        std::vector<Word> next;
        next.reserve(back.size() * 2);
        for (Word b : back) {
            Word c = o.sigma_inv(b);
            next.push_back(c);
            next.push_back(c ^ lead);
        }
        back = std::move(next);
    }
    std::unordered_set<Word> targets(back.begin(), back.end());
    bool found = false;
    for (Word a : row) {
        bool hit_sigma = targets.count(o.sigma(a)) > 0;
        bool hit_pi = targets.count(o.pi(a)) > 0;
        found = found || hit_sigma || hit_pi;
    }
    return found;
}

double GameResult::success_rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
}

Interval GameResult::success_interval() const {
    return wilson_interval(successes, trials);
}

double GameResult::mean_queries() const {
    if (trials == 0) {
        return 0;
    }
    double total = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        total += static_cast<double>(forward_queries[t] + inverse_queries[t]);
    }
    return total / static_cast<double>(trials);
}

std::vector<std::string> strategy_names() {
    return {"zero-query", "forward-enum", "meet-in-middle"};
}

TrialRecord play_trial(const std::string &strategy, int n, int depth, std::size_t trial, Seed trial_seed) {
    auto names = strategy_names();
    require(std::find(names.begin(), names.end(), strategy) != names.end(), ErrorCode::kLookup,
            "unknown strategy '" + strategy + "'");
    Rng rng(trial_seed);
    TrialRecord rec;
    rec.trial = trial;
    rec.hybrid = rng.coin() ? Hybrid::kE : Hybrid::kA;
    auto inst = sample_hybrid(rec.hybrid, n, depth, rng);
    PermutationOracle o(inst.sigma.shared_table());
    if (strategy == "forward-enum") {
        rec.decision = distinguisher_forward_enum(o, inst.y, depth);
    } else if (strategy == "meet-in-middle") {
        rec.decision = distinguisher_meet_in_middle(o, inst.y, depth);
    } else {
        rec.decision = false;
    }
    rec.correct = rec.decision == (rec.hybrid == Hybrid::kE);
    rec.forward_queries = o.forward_queries();
    rec.inverse_queries = o.inverse_queries();
    return rec;
}

GameResult collect_game(std::vector<TrialRecord> records) {
    GameResult out;
    out.trials = records.size();
    for (const auto &r : records) {
        out.successes += r.correct ? 1 : 0;
        out.forward_queries.push_back(r.forward_queries);
        out.inverse_queries.push_back(r.inverse_queries);
    }
    out.records = std::move(records);
    return out;
}

GameResult run_distinguishing_game(const std::string &strategy, int n, int depth, std::size_t trials, Seed seed) {
    require(trials >= 1, ErrorCode::kInvalidParameter, "trials must be >= 1");
    Rng master(seed);
    std::vector<TrialRecord> records;
    records.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        records.push_back(play_trial(strategy, n, depth, t, Seed{master.split(t)()}));
    }
    return collect_game(std::move(records));
}

void write_game_csv(std::ostream &out, const GameResult &result) {
    out << "trial,hybrid,decision,correct,fwd_queries,inv_queries\n";
    for (const auto &r : result.records) {
        out << r.trial << ',' << hybrid_label(r.hybrid) << ',' << (r.decision ? 1 : 0) << ','
            << (r.correct ? 1 : 0) << ',' << r.forward_queries << ',' << r.inverse_queries << '\n';
    }
}

}  // namespace holoprs::toyperm
