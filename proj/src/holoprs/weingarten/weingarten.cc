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

#include "holoprs/weingarten/weingarten.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "holoprs/common/error.h"
#include "holoprs/common/stats.h"
#include "holoprs/qcore/qcore.h"

namespace holoprs::weingarten {
namespace {

void check_weight(int k, int max_k) {
    require(k >= 1 && k <= max_k, ErrorCode::kResourceLimit,
            "weight " + std::to_string(k) + " outside [1, " + std::to_string(max_k) + "]");
}

std::uint64_t factorial(int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) {
        f *= static_cast<std::uint64_t>(i);
    }
    return f;
}

// Beta-set (abacus) form of a partition padded to `rows` rows.
std::vector<int> beta_set(const std::vector<int> &parts) {
    int r = static_cast<int>(parts.size());
    std::vector<int> beta(parts.size());
    for (int i = 0; i < r; ++i) {
        beta[static_cast<std::size_t>(i)] = parts[static_cast<std::size_t>(i)] + (r - 1 - i);
    }
    return beta;  // strictly decreasing
}

std::vector<int> from_beta_set(std::vector<int> beta) {
    std::sort(beta.begin(), beta.end(), std::greater<>());
    int r = static_cast<int>(beta.size());
    std::vector<int> parts;
    for (int i = 0; i < r; ++i) {
        int p = beta[static_cast<std::size_t>(i)] - (r - 1 - i);
        if (p > 0) {
            parts.push_back(p);
        }
    }
    return parts;
}

std::int64_t mn_rule(const std::vector<int> &lambda, const std::vector<int> &mu, std::size_t mu_pos,
                     std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> &memo) {
    if (mu_pos == mu.size()) {
        return lambda.empty() ? 1 : 0;
    }
    auto key = std::make_pair(lambda, mu_pos);
    if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }
    int m = mu[mu_pos];
    std::vector<int> beta = beta_set(lambda);
    std::set<int> occupied(beta.begin(), beta.end());
    std::int64_t total = 0;
    for (std::size_t idx = 0; idx < beta.size(); ++idx) {
        int b = beta[idx];
        int target = b - m;
        if (target < 0 || occupied.count(target)) {
            continue;
        }
        // Rim-hook height = number of beads strictly between target and b.
        int between = 0;
        for (int other : beta) {
            between += (other > target && other < b) ? 1 : 0;
        }
        std::vector<int> next_beta = beta;
        next_beta[idx] = target;
        std::int64_t sub = mn_rule(from_beta_set(next_beta), mu, mu_pos + 1, memo);
        total += (between % 2 == 0) ? sub : -sub;
    }
    memo.emplace(std::move(key), total);
    return total;
}

Rational power(std::int64_t base, int exponent) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), mpz_class(static_cast<long>(base)).get_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(out);
}

// Union-find over index variables with offsets in Z_d. Node `zero` holds the
// constant 0.
class OffsetUnionFind {
   public:
    OffsetUnionFind(int nodes, std::int64_t modulus)
        : parent_(static_cast<std::size_t>(nodes)), pot_(static_cast<std::size_t>(nodes), 0), d_(modulus) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    // Returns root; `pot` receives value(x) - value(root) mod d.
    int find(int x, std::int64_t &pot) {
        std::int64_t acc = 0;
        int r = x;
        while (parent_[static_cast<std::size_t>(r)] != r) {
            acc += pot_[static_cast<std::size_t>(r)];
            r = parent_[static_cast<std::size_t>(r)];
        }
        pot = mod(acc);
        // Path compression.
        std::int64_t rest = acc;
        int y = x;
        while (parent_[static_cast<std::size_t>(y)] != y) {
            int next = parent_[static_cast<std::size_t>(y)];
            std::int64_t step = pot_[static_cast<std::size_t>(y)];
            parent_[static_cast<std::size_t>(y)] = r;
            pot_[static_cast<std::size_t>(y)] = mod(rest);
            rest -= step;
            y = next;
        }
        return r;
    }

    // Imposes value(x) - value(y) = diff. False on contradiction.
    bool unite(int x, int y, std::int64_t diff) {
        std::int64_t px = 0, py = 0;
        int rx = find(x, px);
        int ry = find(y, py);
        if (rx == ry) {
            return mod(px - py - diff) == 0;
        }
        parent_[static_cast<std::size_t>(rx)] = ry;
        pot_[static_cast<std::size_t>(rx)] = mod(diff - px + py);
        return true;
    }

    int roots() {
        int count = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            count += parent_[i] == static_cast<int>(i) ? 1 : 0;
        }
        return count;
    }

   private:
    std::int64_t mod(std::int64_t v) const {
        v %= d_;
        return v < 0 ? v + d_ : v;
    }
    std::vector<int> parent_;
    std::vector<std::int64_t> pot_;
    std::int64_t d_;
};

}  // namespace

// --- Partition / CycleType -------------------------------------------------

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        require(parts_[i] > 0, ErrorCode::kValidation, "partition parts must be positive");
        if (i > 0) {
            require(parts_[i] <= parts_[i - 1], ErrorCode::kValidation, "partition parts must be weakly decreasing");
        }
        weight_ += parts_[i];
    }
}

int Partition::hook(int row, int col) const {
    int arm = parts_[static_cast<std::size_t>(row)] - col - 1;
    int leg = 0;
    for (int r = row + 1; r < rows() && parts_[static_cast<std::size_t>(r)] > col; ++r) {
        ++leg;
    }
    return arm + leg + 1;
}

std::string Partition::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        out += (i ? "," : "") + std::to_string(parts_[i]);
    }
    return out + ")";
}

CycleType CycleType::identity(int k) {
    return CycleType(Partition(std::vector<int>(static_cast<std::size_t>(k), 1)));
}

std::uint64_t CycleType::class_size() const {
    // k! / prod_m (m^{a_m} a_m!)
    std::map<int, int> mult;
    for (int p : cycles_.parts()) {
        ++mult[p];
    }
    std::uint64_t denom = 1;
    for (auto [m, a] : mult) {
        for (int i = 0; i < a; ++i) {
            denom *= static_cast<std::uint64_t>(m);
        }
        denom *= factorial(a);
    }
    return factorial(weight()) / denom;
}

// --- permutations ----------------------------------------------------------

std::vector<Permutation> all_permutations(int k) {
    require(k >= 0 && k <= 8, ErrorCode::kResourceLimit, "permutation enumeration limited to k <= 8");
    Permutation p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Permutation compose(const Permutation &outer, const Permutation &inner) {
    Permutation out(inner.size());
    for (std::size_t a = 0; a < inner.size(); ++a) {
        out[a] = outer[static_cast<std::size_t>(inner[a])];
    }
    return out;
}

Permutation inverse(const Permutation &p) {
    Permutation out(p.size());
    for (std::size_t a = 0; a < p.size(); ++a) {
        out[static_cast<std::size_t>(p[a])] = static_cast<int>(a);
    }
    return out;
}

CycleType cycle_type(const Permutation &p) {
    std::vector<bool> seen(p.size(), false);
    std::vector<int> lengths;
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (seen[a]) {
            continue;
        }
        int len = 0;
        for (std::size_t b = a; !seen[b]; b = static_cast<std::size_t>(p[b])) {
            seen[b] = true;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    return CycleType(Partition(std::move(lengths)));
}

int cycle_count(const Permutation &p) {
    return cycle_type(p).cycles().rows();
}

// --- representation data ---------------------------------------------------

std::vector<Partition> partitions(int k) {
    check_weight(k, kMaxWeight);
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.push_back(current);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            current.push_back(p);
            rec(remaining - p, p);
            current.pop_back();
        }
    };
    rec(k, k);
    std::sort(out.begin(), out.end());
    std::vector<Partition> parts;
    for (auto &v : out) {
        parts.emplace_back(std::move(v));
    }
    return parts;
}

std::uint64_t dim_sk(const Partition &lambda) {
    check_weight(lambda.weight(), kMaxWeight);
    std::uint64_t hooks = 1;
    for (int r = 0; r < lambda.rows(); ++r) {
        for (int c = 0; c < lambda.parts()[static_cast<std::size_t>(r)]; ++c) {
            hooks *= static_cast<std::uint64_t>(lambda.hook(r, c));
        }
    }
    return factorial(lambda.weight()) / hooks;
}

Rational dim_ud(const Partition &lambda, std::int64_t d) {
    require(d >= 1, ErrorCode::kInvalidParameter, "d must be >= 1");
    Rational out = 1;
    for (int r = 0; r < lambda.rows(); ++r) {
        for (int c = 0; c < lambda.parts()[static_cast<std::size_t>(r)]; ++c) {
            out *= Rational(static_cast<long>(d + c - r), static_cast<long>(lambda.hook(r, c)));
        }
    }
    out.canonicalize();
    return out;
}

std::int64_t character(const Partition &lambda, const CycleType &cls) {
    require(lambda.weight() == cls.weight(), ErrorCode::kShape, "character needs equal weights");
    check_weight(lambda.weight(), kMaxWeight);
    static std::mutex mu;
    static std::map<std::pair<std::vector<int>, std::vector<int>>, std::int64_t> cache;
    auto key = std::make_pair(lambda.parts(), cls.cycles().parts());
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> memo;
    std::int64_t value = mn_rule(lambda.parts(), cls.cycles().parts(), 0, memo);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::move(key), value);
    return value;
}

// --- Weingarten ------------------------------------------------------------

Rational weingarten_uncached(const CycleType &cls, std::int64_t d) {
    int k = cls.weight();
    check_weight(k, kMaxWeight);
    require(d >= k, ErrorCode::kOutOfRegime,
            "Weingarten formula used only for d >= k (got d=" + std::to_string(d) + ", k=" + std::to_string(k) + ")");
    Rational sum = 0;
    for (const auto &lambda : partitions(k)) {
        auto dim = static_cast<long>(dim_sk(lambda));
        Rational term(dim * dim * character(lambda, cls));
        term /= dim_ud(lambda, d);
        sum += term;
    }
    Rational kf(static_cast<long>(factorial(k)));
    sum /= kf * kf;
    sum.canonicalize();
    return sum;
}

Rational WeingartenCache::get(const CycleType &cls, std::int64_t d) {
    auto key = std::make_tuple(cls.weight(), d, cls);
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (auto it = values_.find(key); it != values_.end()) {
            return it->second;
        }
    }
    Rational value = weingarten_uncached(cls, d);
    std::lock_guard<std::mutex> lock(mu_);
    values_.emplace(std::move(key), value);
    return value;
}

std::size_t WeingartenCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return values_.size();
}

WeingartenCache &default_cache() {
    static WeingartenCache cache;
    return cache;
}

Rational weingarten(const CycleType &cls, std::int64_t d) {
    return default_cache().get(cls, d);
}

IdentityCheck gram_weingarten_identity(int k, std::int64_t d) {
    check_weight(k, 5);
    require(d >= k, ErrorCode::kOutOfRegime, "gram identity needs d >= k");
    auto perms = all_permutations(k);
    std::size_t n = perms.size();
    std::vector<Rational> w(n * n), g(n * n);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            Permutation st = compose(perms[s], inverse(perms[t]));
            w[s * n + t] = weingarten(cycle_type(st), d);
            g[s * n + t] = power(d, cycle_count(st));
        }
    }
    IdentityCheck out;
    out.max_deviation = 0;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Rational acc = 0;
            for (std::size_t m = 0; m < n; ++m) {
                acc += w[r * n + m] * g[m * n + c];
            }
            Rational dev = acc - Rational(r == c ? 1 : 0);
            dev = abs(dev);
            if (dev > out.max_deviation) {
                out.max_deviation = dev;
            }
        }
    }
    out.is_identity = out.max_deviation == 0;
    return out;
}

// --- moments ---------------------------------------------------------------

Rational haar_moment_exact(const MomentSpec &spec, std::int64_t d) {
    int k = spec.order();
    require(spec.j.size() == spec.i.size() && spec.i_conj.size() == spec.i.size() &&
                spec.j_conj.size() == spec.i.size(),
            ErrorCode::kShape, "moment index tuples must have equal length");
    check_weight(k, 4);
    for (const auto *v : {&spec.i, &spec.j, &spec.i_conj, &spec.j_conj}) {
        for (auto x : *v) {
            require(x >= 0 && x < d, ErrorCode::kShape, "moment index out of range");
        }
    }
    auto perms = all_permutations(k);
    auto matches = [&](const Permutation &p, const std::vector<std::int64_t> &a,
                       const std::vector<std::int64_t> &b) {
        for (std::size_t x = 0; x < a.size(); ++x) {
            if (a[x] != b[static_cast<std::size_t>(p[x])]) {
                return false;
            }
        }
        return true;
    };
    Rational total = 0;
    for (const auto &sigma : perms) {
        if (!matches(sigma, spec.i, spec.i_conj)) {
            continue;
        }
        for (const auto &tau : perms) {
            if (!matches(tau, spec.j, spec.j_conj)) {
                continue;
            }
            total += weingarten(cycle_type(compose(sigma, inverse(tau))), d);
        }
    }
    total.canonicalize();
    return total;
}

ComplexEstimate haar_moment_mc(const MomentSpec &spec, std::int64_t d, std::size_t trials, Rng &rng) {
    require(trials >= 100, ErrorCode::kInvalidParameter, "haar_moment_mc needs at least 100 trials");
    require(d >= 1, ErrorCode::kInvalidDimension, "d must be >= 1");
    RunningMean re, im;
    std::vector<std::complex<double>> values;
    values.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        auto u = qcore::haar_unitary(static_cast<std::size_t>(d), rng);
        const auto &m = u.matrix();
        std::complex<double> prod = 1;
        for (int a = 0; a < spec.order(); ++a) {
            auto sa = static_cast<std::size_t>(a);
            prod *= m(spec.i[sa], spec.j[sa]);
            prod *= std::conj(m(spec.i_conj[sa], spec.j_conj[sa]));
        }
        values.push_back(prod);
    }
    ComplexEstimate out;
    out.samples = trials;
    for (auto v : values) {
        out.mean += v;
    }
    out.mean /= static_cast<double>(trials);
    double ss = 0;
    for (auto v : values) {
        ss += std::norm(v - out.mean);
    }
    out.std_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
    return out;
}

Rational haar_moment_symbolic(const SymbolicMoment &m, std::int64_t d) {
    int k = static_cast<int>(m.i.size());
    require(m.j.size() == m.i.size() && m.i_conj.size() == m.i.size() && m.j_conj.size() == m.i.size(),
            ErrorCode::kShape, "moment index tuples must have equal length");
    check_weight(k, 4);
    auto perms = all_permutations(k);
    const int zero = m.num_vars;
    auto node = [&](const IndexExpr &e) { return e.var < 0 ? zero : e.var; };

    // Impose e1 == e2, i.e. value(n1) - value(n2) = off2 - off1.
    auto impose = [&](OffsetUnionFind &uf, const IndexExpr &a, const IndexExpr &b) {
        return uf.unite(node(a), node(b), b.offset - a.offset);
    };

    Rational total = 0;
    for (const auto &sigma : perms) {
        for (const auto &tau : perms) {
            OffsetUnionFind uf(m.num_vars + 1, d);
            bool ok = true;
            for (int a = 0; a < k && ok; ++a) {
                auto sa = static_cast<std::size_t>(a);
                ok = impose(uf, m.i[sa], m.i_conj[static_cast<std::size_t>(sigma[sa])]) &&
                     impose(uf, m.j[sa], m.j_conj[static_cast<std::size_t>(tau[sa])]);
            }
            if (!ok) {
                continue;
            }
            // Every component is free except the one containing the constant.
            Rational count = power(d, uf.roots() - 1);
            total += count * weingarten(cycle_type(compose(sigma, inverse(tau))), d);
        }
    }
    total.canonicalize();
    return total;
}

std::int64_t flip_offset(std::int64_t d) {
    return d / 2;
}

SymbolicMoment appendix_a_moment(int power, std::int64_t d) {
    require(power >= 1 && power <= 2, ErrorCode::kResourceLimit, "appendix-A expansion supports K in {1, 2}");
    const std::int64_t s = flip_offset(d);
    SymbolicMoment m;
    // Variables: a, b, then the K-1 intermediate indices of each of the four
    // matrix powers (i, j, i', j' chains).
    int next = 0;
    const int a = next++;
    const int b = next++;
    auto chain = [&] {
        std::vector<int> v;
        for (int x = 0; x + 1 < power; ++x) {
            v.push_back(next++);
        }
        return v;
    };
    auto ci = chain(), cj = chain(), cip = chain(), cjp = chain();
    m.num_vars = next;
    const IndexExpr zero{-1, 0};
    auto var = [](int v, std::int64_t off = 0) { return IndexExpr{v, off}; };
    auto push_u = [&](IndexExpr r, IndexExpr c) {
        m.i.push_back(r);
        m.j.push_back(c);
    };
    auto push_conj = [&](IndexExpr r, IndexExpr c) {
        m.i_conj.push_back(r);
        m.j_conj.push_back(c);
    };
    // Walk a path 0 -> ... -> end through intermediates; returns the
    // sequence of (row, col) pairs of U^K_{end,0} = U_{end x1} U_{x1 x2} ... U_{x_{K-1} 0}.
    auto power_entries = [&](IndexExpr end, const std::vector<int> &mids) {
        std::vector<std::pair<IndexExpr, IndexExpr>> out;
        IndexExpr row = end;
        for (int mid : mids) {
            out.emplace_back(row, var(mid));
            row = var(mid);
        }
        out.emplace_back(row, zero);
        return out;
    };
    // A = sum_a ((U^K)_{a,0})^* (U^K)_{flip(a),0}; |A|^2 adds the b-copy.
    for (auto [r, c] : power_entries(var(a, s), cj)) {
        push_u(r, c);
    }
    for (auto [r, c] : power_entries(var(b), cip)) {
        push_u(r, c);
    }
    for (auto [r, c] : power_entries(var(a), ci)) {
        push_conj(r, c);
    }
    for (auto [r, c] : power_entries(var(b, s), cjp)) {
        push_conj(r, c);
    }
    return m;
}

Rational appendix_a_exact(int power, std::int64_t d) {
    require(power >= 1 && power <= 2, ErrorCode::kResourceLimit, "appendix-A expansion supports K in {1, 2}");
    require(d >= 2 && d <= 8, ErrorCode::kResourceLimit, "appendix-A expansion supports 2 <= d <= 8");
    require(d >= 2 * power, ErrorCode::kOutOfRegime, "appendix-A expansion needs d >= 2K");
    return haar_moment_symbolic(appendix_a_moment(power, d), d);
}

double wg_asymptotics_check(const CycleType &cls, const std::vector<std::int64_t> &d_list) {
    require(d_list.size() >= 3, ErrorCode::kInvalidParameter, "need at least three dimensions");
    std::vector<double> xs, ys;
    for (auto d : d_list) {
        require(d >= cls.weight(), ErrorCode::kOutOfRegime, "all d must be >= k");
        Rational w = weingarten(cls, d);
        require(w != 0, ErrorCode::kDegenerateFit, "Wg vanishes at d=" + std::to_string(d));
        xs.push_back(std::log(static_cast<double>(d)));
        ys.push_back(std::log(std::abs(w.get_d())));
    }
    return fit_line(xs, ys).slope;
}

}  // namespace holoprs::weingarten
