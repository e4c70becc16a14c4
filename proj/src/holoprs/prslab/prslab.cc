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

#include "holoprs/prslab/prslab.h"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "holoprs/common/error.h"
#include "holoprs/weingarten/weingarten.h"

namespace holoprs::prslab {

namespace {

constexpr int kMaxTreeDepth = 6;
constexpr int kMaxTreeQubits = 10;

Pauli random_xyz(Rng &rng) {
    return static_cast<Pauli>(1 + rng.below(3));
}

int bit_of(std::uint64_t x, int qubit, int n) {
    return static_cast<int>((x >> (n - 1 - qubit)) & 1U);
}

std::size_t sample_index(const Eigen::VectorXcd &v, Rng &rng) {
    double r = rng.uniform() * v.squaredNorm();
    double acc = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        acc += std::norm(v[i]);
        if (r < acc) {
            return static_cast<std::size_t>(i);
        }
    }
    return static_cast<std::size_t>(v.size() - 1);
}

// In-place Walsh-Hadamard transform (H on every qubit).
void hadamard_all(Eigen::VectorXcd &v) {
    const Eigen::Index d = v.size();
    for (Eigen::Index h = 1; h < d; h <<= 1) {
        for (Eigen::Index i = 0; i < d; i += h << 1) {
            for (Eigen::Index j = i; j < i + h; ++j) {
                auto a = v[j];
                auto b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
    v /= std::sqrt(static_cast<double>(d));
}

// Energy of the terms diagonal in one basis (all labels in {I, basis}),
// evaluated on a measured bitstring.
double basis_energy(const LocalHamiltonian &h, Pauli basis, std::uint64_t outcome) {
    const int n = h.num_qubits();
    double e = 0;
    for (const auto &term : h.terms()) {
        int parity = 0;
        bool diagonal = true;
        for (int q = 0; q < n; ++q) {
            Pauli p = term.labels[static_cast<std::size_t>(q)];
            if (p == Pauli::kI) {
                continue;
            }
            if (p != basis) {
                diagonal = false;
                break;
            }
            parity ^= bit_of(outcome, q, n);
        }
        if (diagonal) {
            e += term.coefficient * (parity ? -1.0 : 1.0);
        }
    }
    return e;
}

// Exact expectation of the basis-diagonal part of h.
double basis_expectation(const LocalHamiltonian &h, Pauli basis, const Eigen::VectorXcd &v) {
    double e = 0;
    for (const auto &term : h.terms()) {
        bool diagonal = std::all_of(term.labels.begin(), term.labels.end(),
                                    [basis](Pauli p) { return p == Pauli::kI || p == basis; });
        if (diagonal) {
            e += term.coefficient * qcore::pauli_expectation(term, v);
        }
    }
    return e;
}

}  // namespace

// --- keys and schedules -----------------------------------------------------

ShockKey ShockKey::parse(const std::string &text) {
    ShockKey key;
    for (char c : text) {
        if (c == ' ' || c == ',') {
            continue;
        }
        try {
            key.labels.push_back(qcore::pauli_from_char(c));
        } catch (const Error &) {
            fail(ErrorCode::kKey, std::string("invalid key label '") + c + "'");
        }
    }
    return key;
}

ShockKey ShockKey::identity(int length) {
    require(length >= 0, ErrorCode::kKey, "key length must be >= 0");
    return ShockKey{std::vector<Pauli>(static_cast<std::size_t>(length), Pauli::kI)};
}

ShockKey ShockKey::random(int length, Rng &rng) {
    require(length >= 0, ErrorCode::kKey, "key length must be >= 0");
    ShockKey key;
    for (int i = 0; i < length; ++i) {
        key.labels.push_back(static_cast<Pauli>(rng.below(4)));
    }
    return key;
}

ShockKey ShockKey::from_index(std::uint64_t index, int length) {
    require(length >= 0 && length <= 31, ErrorCode::kKey, "key length must be in [0, 31]");
    require(length == 31 || index < (std::uint64_t{1} << (2 * length)), ErrorCode::kKey, "key index out of range");
    ShockKey key;
    key.labels.resize(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        key.labels[static_cast<std::size_t>(i)] = static_cast<Pauli>(index & 3U);
        index >>= 2;
    }
    return key;
}

std::string ShockKey::to_string() const {
    std::string s;
    for (Pauli p : labels) {
        s += qcore::pauli_char(p);
    }
    return s;
}

void ShockSchedule::validate(int num_qubits) const {
    require(std::isfinite(total_time) && total_time >= 0, ErrorCode::kSchedule, "total time must be finite and >= 0");
    require(max_shocks == 0 || shocks() <= max_shocks, ErrorCode::kSchedule,
            "schedule has more shocks than its family bound");
    double prev = -1;
    for (const auto &e : events) {
        require(std::isfinite(e.time) && e.time >= 0, ErrorCode::kSchedule, "shock time must be finite and >= 0");
        require(e.time > prev, ErrorCode::kSchedule, "shock times must be strictly increasing");
        require(e.time <= total_time, ErrorCode::kSchedule, "shock time exceeds the total time");
        require(e.qubit >= 0 && e.qubit < num_qubits, ErrorCode::kSchedule, "shock site out of range");
        require(e.pauli != Pauli::kI, ErrorCode::kSchedule, "shock label must be X, Y or Z");
        prev = e.time;
    }
}

std::string ShockSchedule::events_to_string() const {
    std::string s;
    for (const auto &e : events) {
        if (!s.empty()) {
            s += ',';
        }
        s += format_double(e.time) + ':' + std::to_string(e.qubit) + ':' + qcore::pauli_char(e.pauli);
    }
    return s;
}

std::vector<ShockEvent> ShockSchedule::parse_events(const std::string &text) {
    std::vector<ShockEvent> out;
    if (trim(text).empty()) {
        return out;
    }
    for (const auto &item : split(text, ',')) {
        auto parts = split(trim(item), ':');
        require(parts.size() == 3 && parts[2].size() == 1, ErrorCode::kValidation,
                "schedule entry must read time:qubit:pauli, got '" + item + "'");
        ShockEvent e;
        try {
            std::size_t used = 0;
            e.time = std::stod(parts[0], &used);
            require(used == parts[0].size(), ErrorCode::kValidation, "bad shock time '" + parts[0] + "'");
            e.qubit = std::stoi(parts[1], &used);
            require(used == parts[1].size(), ErrorCode::kValidation, "bad shock site '" + parts[1] + "'");
            e.pauli = qcore::pauli_from_char(parts[2][0]);
        } catch (const std::logic_error &) {
            fail(ErrorCode::kValidation, "schedule entry must read time:qubit:pauli, got '" + item + "'");
        } catch (const Error &) {
            fail(ErrorCode::kValidation, "bad shock label in '" + item + "'");
        }
        out.push_back(e);
    }
    return out;
}

ShockSchedule fixed_spacing_schedule(int shocks, double spacing, int qubit, Pauli pauli) {
    require(shocks >= 0, ErrorCode::kInvalidParameter, "shock count must be >= 0");
    require(spacing > 0 && std::isfinite(spacing), ErrorCode::kInvalidParameter, "spacing must be positive");
    ShockSchedule s;
    s.total_time = spacing * shocks;
    s.max_shocks = shocks;
    for (int j = 1; j <= shocks; ++j) {
        s.events.push_back({spacing * j, qubit, pauli});
    }
    return s;
}

ShockSchedule randomized_schedule(int num_qubits, int shocks, double total_time, Rng &rng) {
    require(num_qubits >= 1, ErrorCode::kInvalidParameter, "need at least one qubit");
    require(shocks >= 0, ErrorCode::kInvalidParameter, "shock count must be >= 0");
    require(total_time > 0 && std::isfinite(total_time), ErrorCode::kInvalidParameter, "total time must be positive");
    ShockSchedule s;
    s.total_time = total_time;
    s.max_shocks = shocks;
    std::vector<double> times;
    while (static_cast<int>(times.size()) < shocks) {
        double t = rng.uniform() * total_time;
        if (t > 0 && std::find(times.begin(), times.end(), t) == times.end()) {
            times.push_back(t);
        }
    }
    std::sort(times.begin(), times.end());
    for (double t : times) {
        int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_qubits)));
        s.events.push_back({t, q, random_xyz(rng)});
    }
    return s;
}

ShockSchedule RandomizedFamily::draw(std::size_t copy) const {
    Rng rng = Rng(seed).split(copy);
    return randomized_schedule(num_qubits, shocks, total_time, rng);
}

Statevector shocked_evolution_state(const LocalHamiltonian &h, const ShockSchedule &schedule,
                                    const Statevector &initial) {
    const int n = initial.num_qubits();
    require(n <= qcore::kMaxQubits, ErrorCode::kResourceLimit, "shocked evolution limited to 12 qubits");
    schedule.validate(h.num_qubits());
    Statevector s = initial;
    double now = 0;
    for (const auto &e : schedule.events) {
        s = qcore::evolve(h, e.time - now, s);
        Eigen::VectorXcd v = s.amplitudes();
        qcore::apply_pauli_inplace(e.pauli, e.qubit, n, v);
        s = Statevector(std::move(v));
        now = e.time;
    }
    return qcore::evolve(h, schedule.total_time - now, s);
}

// --- ensembles --------------------------------------------------------------

void PRSEnsembleSpec::validate() const {
    require(num_qubits >= 1 && num_qubits <= qcore::kMaxQubits, ErrorCode::kInvalidDimension,
            "ensemble qubit count must be in [1, 12]");
    require(depth >= 0, ErrorCode::kInvalidParameter, "depth must be >= 0");
    if (kind == ScramblerKind::kHamiltonian) {
        require(hamiltonian.has_value(), ErrorCode::kInvalidParameter, "Hamiltonian scrambler needs a Hamiltonian");
        require(hamiltonian->num_qubits() == num_qubits, ErrorCode::kShape, "Hamiltonian width must equal n");
        require(multiplier >= 2, ErrorCode::kInvalidParameter, "multiplier m must be >= 2");
        require(t_scr >= 0 && std::isfinite(t_scr), ErrorCode::kInvalidParameter, "t_scr must be finite and >= 0");
    }
    if (initial) {
        require(initial->dimension() == (std::size_t{1} << num_qubits), ErrorCode::kShape,
                "initial state dimension must be 2^n");
    }
}

PrsEnsemble::PrsEnsemble(PRSEnsembleSpec spec)
    : spec_(std::move(spec)), initial_(Statevector::zeros(std::max(1, spec_.num_qubits))) {
    spec_.validate();
    if (spec_.initial) {
        initial_ = *spec_.initial;
    } else {
        initial_ = Statevector::zeros(spec_.num_qubits);
    }
    if (spec_.kind == ScramblerKind::kHaar) {
        unitary_ = qcore::haar_unitary(std::size_t{1} << spec_.num_qubits, spec_.seed);
    } else {
        t_scr_ = spec_.t_scr > 0 ? spec_.t_scr
                                 : qcore::scrambling_time(*spec_.hamiltonian, spec_.otoc_threshold, spec_.seed);
        step_time_ = spec_.multiplier * t_scr_;
    }
}

std::uint64_t PrsEnsemble::key_count() const {
    require(spec_.depth <= 31, ErrorCode::kResourceLimit, "key count overflows 64 bits");
    return std::uint64_t{1} << (2 * spec_.depth);
}

void PrsEnsemble::apply_scrambler(Eigen::VectorXcd &v) const {
    if (unitary_) {
        v = unitary_->matrix() * v;
    } else {
        v = qcore::evolve(*spec_.hamiltonian, step_time_, Statevector(std::move(v))).amplitudes();
    }
}

Statevector PrsEnsemble::state(const ShockKey &key) const {
    require(key.length() == spec_.depth, ErrorCode::kKey,
            "key length " + std::to_string(key.length()) + " != ensemble depth " + std::to_string(spec_.depth));
    Eigen::VectorXcd v = initial_.amplitudes();
    for (Pauli p : key.labels) {
        apply_scrambler(v);
        qcore::apply_pauli_inplace(p, 0, spec_.num_qubits, v);
    }
    return Statevector(std::move(v));
}

Statevector PrsEnsemble::random_state(Rng &rng) const {
    return state(ShockKey::random(spec_.depth, rng));
}

Statevector prs_state(const PRSEnsembleSpec &spec, const ShockKey &key) {
    require(key.length() == spec.depth, ErrorCode::kKey, "key length must equal the ensemble depth");
    return PrsEnsemble(spec).state(key);
}

std::size_t StateTree::node_count(int depth) {
    return ((std::size_t{1} << (2 * (depth + 1))) - 1) / 3;
}

StateTree build_state_tree(const PrsEnsemble &ensemble, int depth) {
    require(depth >= 0 && depth <= kMaxTreeDepth && ensemble.num_qubits() <= kMaxTreeQubits,
            ErrorCode::kResourceLimit, "state tree limited to depth 6 and 10 qubits");
    StateTree tree;
    tree.depth = depth;
    const std::size_t total = StateTree::node_count(depth);
    const std::size_t internal = depth == 0 ? 0 : StateTree::node_count(depth - 1);
    tree.nodes.resize(total);
    tree.nodes[0] = ensemble.initial().amplitudes();
    for (std::size_t i = 0; i < internal; ++i) {
        Eigen::VectorXcd u = tree.nodes[i];
        ensemble.apply_scrambler(u);
        for (int c = 0; c < 4; ++c) {
            Eigen::VectorXcd child = u;
            qcore::apply_pauli_inplace(static_cast<Pauli>(c), 0, ensemble.num_qubits(), child);
            tree.nodes[4 * i + 1 + static_cast<std::size_t>(c)] = std::move(child);
        }
    }
    return tree;
}

StateTree build_state_tree(const PRSEnsembleSpec &spec) {
    require(spec.depth >= 0 && spec.depth <= kMaxTreeDepth && spec.num_qubits <= kMaxTreeQubits,
            ErrorCode::kResourceLimit, "state tree limited to depth 6 and 10 qubits");
    return build_state_tree(PrsEnsemble(spec), spec.depth);
}

Eigen::MatrixXd gram_matrix(const StateTree &tree) {
    const auto count = static_cast<Eigen::Index>(tree.nodes.size());
    require(count > 0, ErrorCode::kShape, "empty tree");
    const Eigen::Index d = tree.nodes[0].size();
    Eigen::MatrixXcd stacked(d, count);
    for (Eigen::Index i = 0; i < count; ++i) {
        stacked.col(i) = tree.nodes[static_cast<std::size_t>(i)];
    }
    Eigen::MatrixXcd inner = stacked.adjoint() * stacked;
    return inner.cwiseAbs2();
}

double near_orthogonality_stat(const Eigen::MatrixXd &gram) {
    require(gram.rows() == gram.cols(), ErrorCode::kShape, "Gram matrix must be square");
    double best = 0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < gram.cols(); ++j) {
            best = std::max(best, gram(i, j));
        }
    }
    return best;
}

MeanEstimate moment_power_overlap_mc(std::size_t d, int power, std::size_t trials, Rng &rng) {
    require(trials >= 1, ErrorCode::kInvalidParameter, "trials must be >= 1");
    require(d >= 2, ErrorCode::kInvalidDimension, "dimension must be >= 2");
    require(power >= 1, ErrorCode::kInvalidParameter, "power must be >= 1");
    const auto offset = static_cast<std::size_t>(weingarten::flip_offset(static_cast<std::int64_t>(d)));
    const auto dd = static_cast<Eigen::Index>(d);
    RunningMean acc;
    for (std::size_t t = 0; t < trials; ++t) {
        auto u = qcore::haar_unitary(d, rng);
        Eigen::VectorXcd psi = u.matrix().col(0);
        for (int k = 1; k < power; ++k) {
            psi = u.matrix() * psi;
        }
        std::complex<double> overlap = 0;
        for (Eigen::Index x = 0; x < dd; ++x) {
            overlap += std::conj(psi[x]) * psi[static_cast<Eigen::Index>((static_cast<std::size_t>(x) + offset) % d)];
        }
        acc.add(std::norm(overlap));
    }
    return acc.estimate();
}

MeanEstimate moment_power_overlap_mc(std::size_t d, int power, std::size_t trials, Seed seed) {
    Rng rng(seed);
    return moment_power_overlap_mc(d, power, trials, rng);
}

bool phase_function(std::uint64_t key, std::uint64_t x) {
    if (key == 0) {
        return false;
    }
    return (Rng::mix(Rng::mix(key ^ 0x243f6a8885a308d3ULL) ^ (x * 0x9e3779b97f4a7c15ULL)) & 1U) != 0;
}

Statevector phase_state(const PhaseStateKey &key) {
    require(key.num_qubits >= 1 && key.num_qubits <= qcore::kMaxQubits, ErrorCode::kInvalidDimension,
            "phase state qubit count must be in [1, 12]");
    const std::size_t d = std::size_t{1} << key.num_qubits;
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
    for (std::size_t x = 0; x < d; ++x) {
        v[static_cast<Eigen::Index>(x)] = phase_function(key.key, x) ? -amp : amp;
    }
    return Statevector(std::move(v));
}

// --- distinguishers ---------------------------------------------------------

Ensemble haar_ensemble(int num_qubits) {
    require(num_qubits >= 1 && num_qubits <= qcore::kMaxQubits, ErrorCode::kInvalidDimension,
            "Haar ensemble qubit count must be in [1, 12]");
    const std::size_t d = std::size_t{1} << num_qubits;
    return {"haar", [d](Rng &rng) { return qcore::haar_state(d, rng).amplitudes(); }};
}

Ensemble prs_ensemble(std::shared_ptr<const PrsEnsemble> ensemble, std::string name) {
    require(ensemble != nullptr, ErrorCode::kInvalidParameter, "null ensemble");
    return {std::move(name), [ensemble](Rng &rng) { return ensemble->random_state(rng).amplitudes(); }};
}

Ensemble tfd_shock_ensemble(const LocalHamiltonian &half, double beta, int shocks, double spacing) {
    require(shocks >= 0, ErrorCode::kInvalidParameter, "shock count must be >= 0");
    require(spacing > 0, ErrorCode::kInvalidParameter, "spacing must be positive");
    auto tfd = std::make_shared<const Statevector>(qcore::tfd_state(half, beta));
    auto h = std::make_shared<const LocalHamiltonian>(half);
    return {"tfd-shock", [tfd, h, shocks, spacing](Rng &rng) {
                ShockSchedule s;
                s.total_time = spacing * shocks;
                s.max_shocks = shocks;
                for (int j = 1; j <= shocks; ++j) {
                    auto p = static_cast<Pauli>(rng.below(4));
                    if (p != Pauli::kI) {
                        s.events.push_back({spacing * j, 0, p});
                    }
                }
                return shocked_evolution_state(*h, s, *tfd).amplitudes();
            }};
}

CopySource::CopySource(Eigen::VectorXcd state, std::size_t budget) : state_(std::move(state)), budget_(budget) {
}

const Eigen::VectorXcd &CopySource::take() {
    if (used_ >= budget_) {
        fail(ErrorCode::kBudgetViolation, "strategy requested more than " + std::to_string(budget_) + " copies");
    }
    ++used_;
    return state_;
}

int CopySource::num_qubits() const {
    int n = 0;
    while ((Eigen::Index{1} << n) < state_.size()) {
        ++n;
    }
    return n;
}

bool swap_test(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b, Rng &rng) {
    require(a.size() == b.size(), ErrorCode::kShape, "swap test dimension mismatch");
    double fidelity = std::norm(a.dot(b));
    return rng.uniform() < (1 + fidelity) / 2;
}

namespace {

// Swap tests between disjoint pairs of copies; guesses a iff every test
// passes. A single copy carries no pairwise information, so it guesses.
class SwapTestStrategy final : public Strategy {
   public:
    std::string name() const override {
        return "swap-test";
    }
    bool guess_a(CopySource &copies, Rng &rng) const override {
        if (copies.budget() < 2) {
            copies.take();
            return rng.coin();
        }
        bool all = true;
        while (copies.remaining() >= 2) {
            Eigen::VectorXcd first = copies.take();
            all = swap_test(first, copies.take(), rng) && all;
        }
        return all;
    }
};

// Swap test of every copy against a fresh state of ensemble a.
class ReferenceOverlapStrategy final : public Strategy {
   public:
    explicit ReferenceOverlapStrategy(StateGenerator reference) : reference_(std::move(reference)) {
    }
    std::string name() const override {
        return "overlap-with-reference";
    }
    bool guess_a(CopySource &copies, Rng &rng) const override {
        bool all = true;
        while (copies.remaining() > 0) {
            Eigen::VectorXcd ref = reference_(rng);
            all = swap_test(ref, copies.take(), rng) && all;
        }
        return all;
    }

   private:
    StateGenerator reference_;
};

// Even copies are measured in the Z basis, odd copies in the X basis; the
// statistic is the mean measured basis-diagonal energy, compared against the
// midpoint of its calibrated expectations under a and b.
class EnergyStrategy final : public Strategy {
   public:
    EnergyStrategy(const Ensemble &a, const Ensemble &b, const StrategyOptions &options)
        : h_(*options.hamiltonian) {
        Rng rng(options.calibration_seed);
        auto calibrate = [&](const Ensemble &e, double &z, double &x) {
            RunningMean mz, mx;
            for (std::size_t i = 0; i < options.calibration_states; ++i) {
                Eigen::VectorXcd v = e.generate(rng);
                mz.add(basis_expectation(h_, Pauli::kZ, v));
                mx.add(basis_expectation(h_, Pauli::kX, v));
            }
            z = mz.estimate().mean;
            x = mx.estimate().mean;
        };
        calibrate(a, za_, xa_);
        calibrate(b, zb_, xb_);
    }
    std::string name() const override {
        return "energy";
    }
    bool guess_a(CopySource &copies, Rng &rng) const override {
        require(copies.num_qubits() == h_.num_qubits(), ErrorCode::kShape, "energy strategy width mismatch");
        std::size_t nz = 0, nx = 0;
        double stat = 0;
        for (std::size_t k = 0; copies.remaining() > 0; ++k) {
            Eigen::VectorXcd v = copies.take();
            Pauli basis = k % 2 == 0 ? Pauli::kZ : Pauli::kX;
            if (basis == Pauli::kX) {
                hadamard_all(v);
                ++nx;
            } else {
                ++nz;
            }
            stat += basis_energy(h_, basis, sample_index(v, rng));
        }
        const double c = static_cast<double>(nz + nx);
        double ea = (static_cast<double>(nz) * za_ + static_cast<double>(nx) * xa_) / c;
        double eb = (static_cast<double>(nz) * zb_ + static_cast<double>(nx) * xb_) / c;
        stat /= c;
        double mid = (ea + eb) / 2;
        return ea < eb ? stat < mid : stat >= mid;
    }

   private:
    LocalHamiltonian h_;
    double za_ = 0, xa_ = 0, zb_ = 0, xb_ = 0;
};

}  // namespace

std::vector<std::string> strategy_names() {
    return {"swap-test", "overlap-with-reference", "energy"};
}

std::unique_ptr<Strategy> make_strategy(const std::string &name, const Ensemble &a, const Ensemble &b,
                                        const StrategyOptions &options) {
    if (name == "swap-test") {
        return std::make_unique<SwapTestStrategy>();
    }
    if (name == "overlap-with-reference") {
        return std::make_unique<ReferenceOverlapStrategy>(a.generate);
    }
    if (name == "energy") {
        require(options.hamiltonian.has_value(), ErrorCode::kInvalidParameter, "energy strategy needs a Hamiltonian");
        require(options.calibration_states >= 1, ErrorCode::kInvalidParameter, "calibration_states must be >= 1");
        return std::make_unique<EnergyStrategy>(a, b, options);
    }
    fail(ErrorCode::kLookup, "unknown strategy '" + name + "'");
}

double DistinguisherResult::bias() const {
    require(trials > 0, ErrorCode::kInvalidParameter, "no trials");
    return 2.0 * static_cast<double>(successes) / static_cast<double>(trials) - 1.0;
}

Interval DistinguisherResult::bias_interval() const {
    Interval p = wilson_interval(successes, trials);
    return {2 * p.low - 1, 2 * p.high - 1};
}

DistinguisherTrial distinguisher_trial(const Ensemble &a, const Ensemble &b, std::size_t copies,
                                       const Strategy &strategy, std::size_t trial, Seed trial_seed) {
    require(copies >= 1, ErrorCode::kInvalidParameter, "copies must be >= 1");
    Rng rng(trial_seed);
    DistinguisherTrial rec;
    rec.trial = trial;
    rec.from_a = rng.coin();
    Rng state_rng = rng.split(1);
    Rng strategy_rng = rng.split(2);
    CopySource source((rec.from_a ? a : b).generate(state_rng), copies);
    rec.decision = strategy.guess_a(source, strategy_rng);
    rec.correct = rec.decision == rec.from_a;
    rec.copies_used = source.used();
    require(rec.copies_used <= copies, ErrorCode::kBudgetViolation, "copy budget exceeded");
    return rec;
}

DistinguisherResult collect_distinguisher(const Ensemble &a, const Ensemble &b, std::size_t copies,
                                          const Strategy &strategy, std::vector<DistinguisherTrial> records) {
    DistinguisherResult r;
    r.ensemble_a = a.name;
    r.ensemble_b = b.name;
    r.strategy = strategy.name();
    r.copies = copies;
    r.trials = records.size();
    for (const auto &rec : records) {
        r.successes += rec.correct ? 1 : 0;
    }
    r.records = std::move(records);
    return r;
}

DistinguisherResult copy_limited_distinguisher(const Ensemble &a, const Ensemble &b, std::size_t copies,
                                               const Strategy &strategy, std::size_t trials, Seed seed) {
    require(trials >= 1, ErrorCode::kInvalidParameter, "trials must be >= 1");
    Rng master(seed);
    std::vector<DistinguisherTrial> records;
    records.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        records.push_back(distinguisher_trial(a, b, copies, strategy, t, Seed{master.split(t)()}));
    }
    return collect_distinguisher(a, b, copies, strategy, std::move(records));
}

DistinguisherResult copy_limited_distinguisher(const Ensemble &a, const Ensemble &b, std::size_t copies,
                                               const std::string &strategy, std::size_t trials, Seed seed,
                                               const StrategyOptions &options) {
    auto s = make_strategy(strategy, a, b, options);
    return copy_limited_distinguisher(a, b, copies, *s, trials, seed);
}

void write_distinguisher_csv(std::ostream &out, const DistinguisherResult &result) {
    out << "trial,ensemble,decision,correct,copies_used\n";
    for (const auto &r : result.records) {
        out << r.trial << ',' << (r.from_a ? result.ensemble_a : result.ensemble_b) << ','
            << (r.decision ? result.ensemble_a : result.ensemble_b) << ',' << (r.correct ? 1 : 0) << ','
            << r.copies_used << '\n';
    }
}

std::string distinguisher_summary_json(const DistinguisherResult &result, const KeyValueConfig &parameters) {
    nlohmann::ordered_json j;
    j["ensemble_a"] = result.ensemble_a;
    j["ensemble_b"] = result.ensemble_b;
    j["strategy"] = result.strategy;
    j["copies"] = result.copies;
    j["trials"] = result.trials;
    j["successes"] = result.successes;
    j["bias"] = format_double(result.bias());
    Interval iv = result.bias_interval();
    j["bias_interval"] = {format_double(iv.low), format_double(iv.high)};
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto &[k, v] : parameters.entries()) {
        params[k] = v;
    }
    j["parameters"] = params;
    return j.dump(2);
}

// --- energy attacks ---------------------------------------------------------

EnergyAttackSetup EnergyAttackSetup::tfd(const LocalHamiltonian &half, double beta) {
    return {half, qcore::two_sided(half), qcore::tfd_state(half, beta)};
}

const PairVerdict &EnergyAttackResult::pair(std::size_t i, std::size_t j) const {
    if (i > j) {
        std::swap(i, j);
    }
    for (const auto &p : pairs) {
        if (p.first == i && p.second == j) {
            return p;
        }
    }
    fail(ErrorCode::kLookup, "no such variant pair");
}

EnergyAttackResult energy_attack_experiment(const EnergyAttackSetup &setup, const std::vector<NamedSchedule> &variants,
                                            std::size_t shots_per_copy, std::size_t copies, Seed seed) {
    require(copies >= 1, ErrorCode::kInvalidParameter, "copies must be >= 1");
    require(shots_per_copy >= 1, ErrorCode::kInvalidParameter, "shots_per_copy must be >= 1");
    require(setup.measured.num_qubits() == setup.initial.num_qubits(), ErrorCode::kShape,
            "measured Hamiltonian must cover the whole state");
    Rng master(seed);
    EnergyAttackResult out;
    for (std::size_t i = 0; i < variants.size(); ++i) {
        const auto &v = variants[i];
        Rng rng = master.split(i);
        VariantEnergy ve;
        ve.name = v.name;
        ve.volume_proxy = v.total_time();
        if (!v.family) {
            Statevector s = shocked_evolution_state(setup.evolution, v.schedule, setup.initial);
            auto est = qcore::sample_energy_measurement(setup.measured, s, copies * shots_per_copy, rng);
            ve.exact = qcore::energy_expectation(setup.measured, s);
            ve.estimate = est.value;
            ve.std_error = est.std_error;
            ve.copies_used = est.copies_used;
        } else {
            double var = 0;
            for (std::size_t j = 0; j < copies; ++j) {
                Statevector s = shocked_evolution_state(setup.evolution, v.family->draw(j), setup.initial);
                auto est = qcore::sample_energy_measurement(setup.measured, s, shots_per_copy, rng);
                ve.exact += qcore::energy_expectation(setup.measured, s);
                ve.estimate += est.value;
                var += est.std_error * est.std_error;
                ve.copies_used += est.copies_used;
            }
            RunningMean spread;
            for (std::size_t r = 0; r < v.family->reference_draws; ++r) {
                Statevector s = shocked_evolution_state(
                    setup.evolution, v.family->draw(RandomizedFamily::kReferenceDraw + r), setup.initial);
                spread.add(qcore::energy_expectation(setup.measured, s));
            }
            const auto ref = spread.estimate();
            ve.draw_spread = ref.samples >= 2 ? ref.std_error * std::sqrt(static_cast<double>(ref.samples)) : 0;
            const auto c = static_cast<double>(copies);
            ve.exact /= c;
            ve.estimate /= c;
            ve.std_error = std::sqrt(ve.draw_spread * ve.draw_spread / c + var / (c * c));
        }
        out.variants.push_back(ve);
    }
    for (std::size_t i = 0; i < out.variants.size(); ++i) {
        for (std::size_t j = i + 1; j < out.variants.size(); ++j) {
            PairVerdict p;
            p.first = i;
            p.second = j;
            p.difference = out.variants[i].estimate - out.variants[j].estimate;
            p.combined_se = std::hypot(out.variants[i].std_error, out.variants[j].std_error);
            p.resolved = std::abs(p.difference) > 3 * p.combined_se;
            out.pairs.push_back(p);
        }
    }
    return out;
}

std::optional<std::size_t> copies_to_resolve(const EnergyAttackSetup &setup, const NamedSchedule &a,
                                             const NamedSchedule &b, std::size_t shots_per_copy,
                                             std::size_t max_copies, Seed seed) {
    for (std::size_t c = 1; c <= max_copies; c *= 2) {
        auto r = energy_attack_experiment(setup, {a, b}, shots_per_copy, c, seed);
        if (r.pairs.front().resolved) {
            return c;
        }
    }
    return std::nullopt;
}

// --- configuration ----------------------------------------------------------

PrsConfig PrsConfig::from_config(const KeyValueConfig &cfg) {
    cfg.require_known({"scrambler", "n", "l", "m", "beta", "T", "seed", "g", "h", "t_scr", "schedule"});
    PrsConfig c;
    std::string kind = cfg.get_or("scrambler", "haar");
    if (kind == "haar") {
        c.scrambler = ScramblerKind::kHaar;
    } else if (kind == "hamiltonian") {
        c.scrambler = ScramblerKind::kHamiltonian;
    } else {
        fail(ErrorCode::kValidation, "scrambler must be haar or hamiltonian, got '" + kind + "'");
    }
    c.n = static_cast<int>(cfg.get_int_or("n", c.n));
    c.depth = static_cast<int>(cfg.get_int_or("l", c.depth));
    c.m = cfg.get_double_or("m", c.m);
    c.beta = cfg.get_double_or("beta", c.beta);
    c.total_time = cfg.get_double_or("T", c.total_time);
    c.seed = cfg.get_uint_or("seed", c.seed);
    c.g = cfg.get_double_or("g", c.g);
    c.h = cfg.get_double_or("h", c.h);
    c.t_scr = cfg.get_double_or("t_scr", c.t_scr);
    c.schedule = ShockSchedule::parse_events(cfg.get_or("schedule", ""));
    require(c.n >= 1 && c.n <= qcore::kMaxQubits, ErrorCode::kValidation, "n must be in [1, 12]");
    require(c.depth >= 0, ErrorCode::kValidation, "l must be >= 0");
    require(c.scrambler == ScramblerKind::kHaar || c.m >= 2, ErrorCode::kValidation, "m must be >= 2");
    require(c.beta >= 0, ErrorCode::kValidation, "beta must be >= 0");
    require(c.total_time >= 0, ErrorCode::kValidation, "T must be >= 0");
    return c;
}

KeyValueConfig PrsConfig::to_config() const {
    KeyValueConfig cfg;
    cfg.set("scrambler", scrambler == ScramblerKind::kHaar ? "haar" : "hamiltonian");
    cfg.set("n", std::to_string(n));
    cfg.set("l", std::to_string(depth));
    cfg.set("m", format_double(m));
    cfg.set("beta", format_double(beta));
    cfg.set("T", format_double(total_time));
    cfg.set("seed", std::to_string(seed));
    cfg.set("g", format_double(g));
    cfg.set("h", format_double(h));
    cfg.set("t_scr", format_double(t_scr));
    ShockSchedule s;
    s.events = schedule;
    cfg.set("schedule", s.events_to_string());
    return cfg;
}

PRSEnsembleSpec PrsConfig::ensemble_spec() const {
    PRSEnsembleSpec spec;
    spec.kind = scrambler;
    spec.num_qubits = n;
    spec.depth = depth;
    spec.seed = Seed{seed};
    spec.multiplier = m;
    spec.t_scr = t_scr;
    if (scrambler == ScramblerKind::kHamiltonian) {
        spec.hamiltonian = qcore::build_hamiltonian(n, g, h);
    }
    return spec;
}

ShockSchedule PrsConfig::shock_schedule() const {
    ShockSchedule s;
    s.events = schedule;
    s.total_time = total_time;
    return s;
}

}  // namespace holoprs::prslab
