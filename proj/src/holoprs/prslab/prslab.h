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

#ifndef HOLOPRS_PRSLAB_PRSLAB_H
#define HOLOPRS_PRSLAB_PRSLAB_H

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holoprs/common/config.h"
#include "holoprs/common/rng.h"
#include "holoprs/common/stats.h"
#include "holoprs/qcore/qcore.h"

// Pseudorandom state ensembles built from a scrambler U and Pauli shocks,
// shock schedules on top of Hamiltonian evolution, 4-ary state trees,
// copy-limited distinguishing games and energy-measurement attacks.

namespace holoprs::prslab {

using qcore::LocalHamiltonian;
using qcore::Pauli;
using qcore::Statevector;

/// One Pauli label per scrambler step.
struct ShockKey {
    std::vector<Pauli> labels;

    static ShockKey parse(const std::string &text);
    static ShockKey identity(int length);
    static ShockKey random(int length, Rng &rng);
    /// Base-4 digits of `index`, first step most significant.
    static ShockKey from_index(std::uint64_t index, int length);
    std::string to_string() const;
    int length() const {
        return static_cast<int>(labels.size());
    }
    bool operator==(const ShockKey &) const = default;
};

struct ShockEvent {
    double time = 0;
    int qubit = 0;
    Pauli pauli = Pauli::kX;
    bool operator==(const ShockEvent &) const = default;
};

/// Pauli insertions at increasing times within [0, total_time].
struct ShockSchedule {
    std::vector<ShockEvent> events;
    double total_time = 0;
    /// Largest shock count of the family this schedule belongs to; 0 means
    /// "no bound recorded".
    int max_shocks = 0;

    int shocks() const {
        return static_cast<int>(events.size());
    }
    /// Throws kSchedule on non-increasing or out-of-range times, bad sites
    /// or more shocks than max_shocks.
    void validate(int num_qubits) const;

    /// "t:q:P,t:q:P" with an empty string for no shocks.
    std::string events_to_string() const;
    static std::vector<ShockEvent> parse_events(const std::string &text);
    bool operator==(const ShockSchedule &) const = default;
};

/// Shocks of `pauli` on `qubit` at spacing, 2 spacing, ..., shocks * spacing.
ShockSchedule fixed_spacing_schedule(int shocks, double spacing, int qubit, Pauli pauli);

/// `shocks` events at sorted uniform times in (0, T) on uniform sites of
/// [0, num_qubits) with uniform X/Y/Z labels.
ShockSchedule randomized_schedule(int num_qubits, int shocks, double total_time, Rng &rng);

/// Evolves with H between scheduled Paulis and up to total_time. When the
/// state has more qubits than H, H acts on the leading qubits.
Statevector shocked_evolution_state(const LocalHamiltonian &h, const ShockSchedule &schedule,
                                    const Statevector &initial);

enum class ScramblerKind { kHaar, kHamiltonian };

struct PRSEnsembleSpec {
    ScramblerKind kind = ScramblerKind::kHaar;
    int num_qubits = 0;
    int depth = 1;
    Seed seed{0};
    /// Hamiltonian-backed scramblers: U = exp(-i H m t_scr).
    std::optional<LocalHamiltonian> hamiltonian;
    double multiplier = 2;
    /// Scrambling time; 0 means "measure it" with the OTOC threshold below.
    double t_scr = 0;
    double otoc_threshold = 0.1;
    /// Defaults to |0...0>.
    std::optional<Statevector> initial;

    void validate() const;
};

/// A materialized ensemble: the scrambler is fixed once, keys vary.
class PrsEnsemble {
   public:
    explicit PrsEnsemble(PRSEnsembleSpec spec);

    const PRSEnsembleSpec &spec() const {
        return spec_;
    }
    int num_qubits() const {
        return spec_.num_qubits;
    }
    /// m * t_scr for Hamiltonian scramblers, 0 for Haar.
    double step_time() const {
        return step_time_;
    }
    double scrambling_time() const {
        return t_scr_;
    }
    const Statevector &initial() const {
        return initial_;
    }
    /// Number of keys, 4^depth.
    std::uint64_t key_count() const;

    void apply_scrambler(Eigen::VectorXcd &v) const;
    Statevector state(const ShockKey &key) const;
    Statevector random_state(Rng &rng) const;

   private:
    PRSEnsembleSpec spec_;
    Statevector initial_;
    std::optional<qcore::UnitaryMatrix> unitary_;
    double step_time_ = 0;
    double t_scr_ = 0;
};

/// k_l U ... k_1 U |phi> with every shock on qubit 0.
Statevector prs_state(const PRSEnsembleSpec &spec, const ShockKey &key);

/// Heap-ordered 4-ary tree: the children of node i are 4i+1..4i+4, namely
/// U v, X_1 U v, Y_1 U v, Z_1 U v.
struct StateTree {
    int depth = 0;
    std::vector<Eigen::VectorXcd> nodes;

    static std::size_t node_count(int depth);
};

StateTree build_state_tree(const PrsEnsemble &ensemble, int depth);
StateTree build_state_tree(const PRSEnsembleSpec &spec);
/// |<a|b>|^2 over all node pairs.
Eigen::MatrixXd gram_matrix(const StateTree &tree);
double near_orthogonality_stat(const Eigen::MatrixXd &gram);

/// |<0|(U^dag)^K X_1 U^K|0>|^2 over Haar U of dimension d, X_1 being the
/// flip x -> x + floor(d/2) (mod d), the leading-bit flip for d = 2^n.
MeanEstimate moment_power_overlap_mc(std::size_t d, int power, std::size_t trials, Rng &rng);
MeanEstimate moment_power_overlap_mc(std::size_t d, int power, std::size_t trials, Seed seed);

struct PhaseStateKey {
    std::uint64_t key = 0;  // 0 is the constant function
    int num_qubits = 0;
};

/// Keyed Boolean function: low bit of a 64-bit avalanche mix of (key, x).
bool phase_function(std::uint64_t key, std::uint64_t x);
Statevector phase_state(const PhaseStateKey &key);

// --- copy-limited distinguishers -------------------------------------------

using StateGenerator = std::function<Eigen::VectorXcd(Rng &)>;

struct Ensemble {
    std::string name;
    StateGenerator generate;
};

Ensemble haar_ensemble(int num_qubits);
Ensemble prs_ensemble(std::shared_ptr<const PrsEnsemble> ensemble, std::string name = "prs");
/// TFD-seeded shock states: random Paulis (I allowed) on qubit 0 of the left
/// half at a fixed spacing, evolving by H_half on the left side only.
Ensemble tfd_shock_ensemble(const LocalHamiltonian &half, double beta, int shocks, double spacing);

/// Hands out at most `budget` copies of one state.
class CopySource {
   public:
    CopySource(Eigen::VectorXcd state, std::size_t budget);
    /// Throws kBudgetViolation once the budget is spent.
    const Eigen::VectorXcd &take();
    std::size_t used() const {
        return used_;
    }
    std::size_t budget() const {
        return budget_;
    }
    std::size_t remaining() const {
        return budget_ - used_;
    }
    int num_qubits() const;

   private:
    Eigen::VectorXcd state_;
    std::size_t budget_;
    std::size_t used_ = 0;
};

/// A distinguishing strategy guesses whether the copies came from ensemble a.
class Strategy {
   public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual bool guess_a(CopySource &copies, Rng &rng) const = 0;
};

struct StrategyOptions {
    /// Needed by the energy strategy.
    std::optional<LocalHamiltonian> hamiltonian;
    /// States per ensemble used to place the energy threshold.
    std::size_t calibration_states = 16;
    Seed calibration_seed{0x5eed};
};

std::vector<std::string> strategy_names();
/// swap-test, overlap-with-reference, energy. Throws kLookup otherwise.
std::unique_ptr<Strategy> make_strategy(const std::string &name, const Ensemble &a, const Ensemble &b,
                                        const StrategyOptions &options = {});

/// Passes with probability (1 + |<a|b>|^2) / 2.
bool swap_test(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b, Rng &rng);

struct DistinguisherTrial {
    std::size_t trial = 0;
    bool from_a = false;
    bool decision = false;  // guessed ensemble a
    bool correct = false;
    std::size_t copies_used = 0;
};

struct DistinguisherResult {
    std::string ensemble_a, ensemble_b, strategy;
    std::size_t copies = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::vector<DistinguisherTrial> records;

    double bias() const;
    /// Wilson interval on the success rate mapped through 2p - 1.
    Interval bias_interval() const;
};

DistinguisherTrial distinguisher_trial(const Ensemble &a, const Ensemble &b, std::size_t copies,
                                       const Strategy &strategy, std::size_t trial, Seed trial_seed);
DistinguisherResult collect_distinguisher(const Ensemble &a, const Ensemble &b, std::size_t copies,
                                          const Strategy &strategy, std::vector<DistinguisherTrial> records);
/// Trial t draws from stream split(t) of `seed`.
DistinguisherResult copy_limited_distinguisher(const Ensemble &a, const Ensemble &b, std::size_t copies,
                                               const Strategy &strategy, std::size_t trials, Seed seed);
DistinguisherResult copy_limited_distinguisher(const Ensemble &a, const Ensemble &b, std::size_t copies,
                                               const std::string &strategy, std::size_t trials, Seed seed,
                                               const StrategyOptions &options = {});

/// Columns trial, ensemble, decision, correct, copies_used.
void write_distinguisher_csv(std::ostream &out, const DistinguisherResult &result);
/// Bias, interval and parameters as a JSON object.
std::string distinguisher_summary_json(const DistinguisherResult &result, const KeyValueConfig &parameters);

// --- energy attacks ---------------------------------------------------------

/// Left-side evolution Hamiltonian, the measured Hamiltonian and the state
/// the schedules act on.
struct EnergyAttackSetup {
    LocalHamiltonian evolution;
    LocalHamiltonian measured;
    Statevector initial;

    /// TFD of `half` at beta; evolution by the left half only, measured
    /// Hamiltonian H_L + H_R.
    static EnergyAttackSetup tfd(const LocalHamiltonian &half, double beta);
};

struct VariantEnergy {
    std::string name;
    /// Exact energy of the state; for a family, the mean over the copies' draws.
    double exact = 0;
    double estimate = 0;
    double std_error = 0;
    double volume_proxy = 0;  // scheduled total evolution time
    std::size_t copies_used = 0;
    /// Standard deviation of the exact energy across draws; 0 for a fixed schedule.
    double draw_spread = 0;
};

struct PairVerdict {
    std::size_t first = 0, second = 0;
    double difference = 0;
    double combined_se = 0;
    bool resolved = false;
};

struct EnergyAttackResult {
    std::vector<VariantEnergy> variants;
    std::vector<PairVerdict> pairs;

    const PairVerdict &pair(std::size_t i, std::size_t j) const;
};

/// Randomized schedules of a fixed shock count and total time. Copy j of a
/// family variant is prepared with its own draw, stream split(j) of `seed`.
/// The family law is public, so its draw-to-draw energy spread is estimated
/// from `reference_draws` further draws (indices kReferenceDraw + r).
struct RandomizedFamily {
    static constexpr std::size_t kReferenceDraw = std::size_t{1} << 40;

    int num_qubits = 1;
    int shocks = 0;
    double total_time = 0;
    Seed seed{0};
    std::size_t reference_draws = 64;

    ShockSchedule draw(std::size_t copy) const;
};

struct NamedSchedule {
    std::string name;
    ShockSchedule schedule;
    /// When set, `schedule` is ignored and every copy uses a fresh draw.
    std::optional<RandomizedFamily> family;

    double total_time() const {
        return family ? family->total_time : schedule.total_time;
    }
};

/// Every term is measured shots_per_copy times on each of `copies` copies.
/// For family variants the estimate pools c copies with independent draws and
/// SE^2 = spread^2 / c + sum_j se_j^2 / c^2, where spread is the sample
/// standard deviation of exact energies over the reference draws. A pair is
/// resolved when |difference| > 3 combined SE.
EnergyAttackResult energy_attack_experiment(const EnergyAttackSetup &setup, const std::vector<NamedSchedule> &variants,
                                            std::size_t shots_per_copy, std::size_t copies, Seed seed);

/// Smallest power-of-two copy count in [1, max_copies] at which the pair is
/// resolved, or nullopt.
std::optional<std::size_t> copies_to_resolve(const EnergyAttackSetup &setup, const NamedSchedule &a,
                                             const NamedSchedule &b, std::size_t shots_per_copy,
                                             std::size_t max_copies, Seed seed);

// --- configuration ----------------------------------------------------------

/// Plain-text ensemble and schedule description. Keys: scrambler
/// (haar|hamiltonian), n, l, m, beta, T, seed, g, h, t_scr, schedule.
struct PrsConfig {
    ScramblerKind scrambler = ScramblerKind::kHaar;
    int n = 8;
    int depth = 3;
    double m = 2;
    double beta = 1;
    double total_time = 0;
    std::uint64_t seed = 0;
    double g = 1.05;
    double h = 0.5;
    double t_scr = 0;
    std::vector<ShockEvent> schedule;

    static PrsConfig from_config(const KeyValueConfig &cfg);
    KeyValueConfig to_config() const;
    PRSEnsembleSpec ensemble_spec() const;
    ShockSchedule shock_schedule() const;
};

}  // namespace holoprs::prslab

#endif
