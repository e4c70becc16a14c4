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

#ifndef HOLOPRS_REWRITE_REWRITE_H
#define HOLOPRS_REWRITE_REWRITE_H

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "holoprs/qcore/qcore.h"

// Gate sequences, greedy local rewriting ("pseudo-complexity") and an exact
// breadth-first complexity oracle for tiny registers.
//
// Rotations use RZ(a) = exp(-i a Z) and RX(a) = exp(-i a X), so a product
// formula step for c P over time dt is a rotation by c dt.

namespace holoprs::rewrite {

enum class GateKind { kX, kY, kZ, kH, kS, kSdg, kCZ, kCNOT, kRZ, kRX };

const char *gate_name(GateKind kind);
/// Accepts the printed names plus "S+" / "SDAG" for S-dagger. Throws kValidation.
GateKind gate_kind_from_name(const std::string &name);
int gate_arity(GateKind kind);
bool is_rotation(GateKind kind);
bool is_pauli(GateKind kind);

struct Gate {
    GateKind kind = GateKind::kX;
    std::vector<int> qubits;
    double angle = 0;  // rotations only

    static Gate single(GateKind kind, int q, double angle = 0);
    static Gate two(GateKind kind, int q0, int q1);

    /// Distinct sites, arity and angle presence. Throws kValidation.
    void validate(int num_qubits) const;
    Gate inverse() const;
    bool operator==(const Gate &) const = default;
};

struct GateSequence {
    int num_qubits = 0;
    std::vector<Gate> gates;

    std::size_t size() const {
        return gates.size();
    }
    void validate() const;
    /// Element-wise inverse in reversed order.
    GateSequence reversed_inverse() const;
    GateSequence concat(const GateSequence &other) const;
};

/// "# qubits N" header followed by one "KIND q0 [q1] [angle]" line per gate.
void write_sequence(std::ostream &out, const GateSequence &seq);
std::string sequence_to_string(const GateSequence &seq);
/// Blank lines and other '#' lines are skipped; without a header the
/// register is sized by the largest site. Throws kValidation.
GateSequence read_sequence(std::istream &in);
GateSequence parse_sequence(const std::string &text);

/// 2x2 or 4x4 matrix of a gate on its own sites (first site most significant).
Eigen::MatrixXcd gate_matrix(const Gate &g);
void apply_gate(const Gate &g, int num_qubits, Eigen::VectorXcd &v);
Eigen::MatrixXcd sequence_unitary(const GateSequence &seq);
Eigen::VectorXcd apply_sequence(const GateSequence &seq, const Eigen::VectorXcd &v);

/// Largest singular value of U_a - U_b. Throws kResourceLimit above 10 qubits.
double operator_norm_error(const GateSequence &a, const GateSequence &b);

// --- rewriting --------------------------------------------------------------

struct Rewrite {
    std::vector<Gate> replacement;
    double error_bound = 0;
};

/// A rule sees a window of `window` adjacent gates: the top window-1 entries
/// of the output stack followed by the incoming gate. Replacements must be
/// shorter, or equally long with fewer angles.
struct RewriteRule {
    std::string name;
    int window = 1;
    std::function<std::optional<Rewrite>(std::span<const Gate>)> match;
};

using RuleSet = std::vector<RewriteRule>;

RewriteRule inverse_cancel_rule();
RewriteRule rotation_merge_rule();
RewriteRule zero_angle_rule();
/// Pauli conjugation through a neighbouring gate when it cancels an adjacent
/// pair: [G^-1, P, G] -> G P G^-1 and [P, C, Q] -> C when C^dag Q C = P.
/// Fires only when the image is a single-qubit Pauli with sign +1; wider
/// images would leave the window and break V V^-1 telescoping.
RewriteRule pauli_commute_rule();
/// inverse-cancel, merge, zero-angle, commute, in that priority.
RuleSet rule_set_default();

struct TraceEntry {
    std::string rule;
    std::size_t pass = 0;
    std::size_t position = 0;  // index of the incoming gate in the pass input
    double error = 0;
    std::vector<Gate> before;
    std::vector<Gate> after;
};

struct RewriteTrace {
    std::vector<TraceEntry> entries;
    double total_error = 0;
};

struct PseudoComplexity {
    std::size_t length = 0;
    GateSequence output;
    RewriteTrace trace;
};

/// Stack-based left-to-right greedy passes repeated until a pass fires no
/// rule. A rule fires only when its error bound is <= epsilon.
PseudoComplexity pseudo_complexity(const GateSequence &seq, double epsilon, const RuleSet &rules);
PseudoComplexity pseudo_complexity(const GateSequence &seq, double epsilon = 0);

// --- experiments ------------------------------------------------------------

/// First-order product formula. Per step, every Z_iZ_{i+1} term becomes
/// CNOT(i, i+1) RZ_{i+1}(c dt) CNOT(i, i+1) and every single-qubit X or Z
/// term RX/RZ(c dt), in the Hamiltonian's term order.
GateSequence trotterize(const qcore::LocalHamiltonian &h, double t, int steps);

struct SwitchbackResult {
    std::size_t pc_forward_back = 0;
    std::size_t pc_shocked = 0;
    std::size_t naive = 0;
};

/// V = trotterize(h, t, steps); pseudo-complexity of V V^-1 and of
/// V shock V^-1, with naive = 2|V| + 1.
SwitchbackResult switchback_experiment(const qcore::LocalHamiltonian &h, double t, int steps,
                                       const qcore::PauliTerm &shock, double epsilon, const RuleSet &rules);

struct AsymmetryResult {
    std::size_t pc_forward = 0;
    std::size_t pc_reverse = 0;
};

AsymmetryResult asymmetry_check(const GateSequence &seq, double epsilon, const RuleSet &rules);

// --- exact complexity -------------------------------------------------------

/// min over global phase of ||a - e^{i phi} b||.
double phase_distance(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b);

struct ExactComplexityOptions {
    std::vector<GateKind> gate_set{GateKind::kH, GateKind::kS, GateKind::kCNOT};
    std::size_t frontier_cap = 10'000'000;
};

/// Breadth-first search over all placements of the gate set, deduplicating
/// states up to global phase. Throws InconclusiveError when the cap is hit or
/// the reachable set is exhausted without meeting the target.
std::size_t exact_circuit_complexity(const qcore::Statevector &target, const qcore::Statevector &start,
                                     double epsilon, const ExactComplexityOptions &options = {});

/// Rewrites a sequence over {H, S, CNOT}; rotations must be multiples of pi/4
/// (up to 1e-12). Equal up to a global phase. Throws kInvalidParameter.
GateSequence transpile_hs_cnot(const GateSequence &seq);

}  // namespace holoprs::rewrite

#endif
