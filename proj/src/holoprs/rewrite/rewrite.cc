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

#include "holoprs/rewrite/rewrite.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "holoprs/common/config.h"
#include "holoprs/common/error.h"

namespace holoprs::rewrite {

using Complex = std::complex<double>;

namespace {

constexpr int kMaxDenseQubits = 10;
constexpr double kExactTol = 1e-12;

struct KindInfo {
    GateKind kind;
    const char *name;
    int arity;
};

constexpr KindInfo kKinds[] = {
    {GateKind::kX, "X", 1},     {GateKind::kY, "Y", 1},       {GateKind::kZ, "Z", 1},   {GateKind::kH, "H", 1},
    {GateKind::kS, "S", 1},     {GateKind::kSdg, "SDG", 1},   {GateKind::kCZ, "CZ", 2}, {GateKind::kCNOT, "CNOT", 2},
    {GateKind::kRZ, "RZ", 1},   {GateKind::kRX, "RX", 1},
};

const KindInfo &info(GateKind kind) {
    for (const auto &k : kKinds) {
        if (k.kind == kind) {
            return k;
        }
    }
    fail(ErrorCode::kValidation, "unknown gate kind");
}

// Rows of m are basis states; works for vectors and for matrices whose
// columns are states.
template <typename M>
void apply_rows(const Gate &g, int n, M &m) {
    const Eigen::Index d = Eigen::Index{1} << n;
    auto bit = [n](int q) { return Eigen::Index{1} << (n - 1 - q); };
    if (g.kind == GateKind::kCNOT) {
        const Eigen::Index c = bit(g.qubits[0]), t = bit(g.qubits[1]);
        for (Eigen::Index i = 0; i < d; ++i) {
            if ((i & c) && !(i & t)) {
                m.row(i).swap(m.row(i | t));
            }
        }
        return;
    }
    if (g.kind == GateKind::kCZ) {
        const Eigen::Index a = bit(g.qubits[0]), b = bit(g.qubits[1]);
        for (Eigen::Index i = 0; i < d; ++i) {
            if ((i & a) && (i & b)) {
                m.row(i) *= -1;
            }
        }
        return;
    }
    const Eigen::Matrix2cd u = gate_matrix(g);
    const Eigen::Index s = bit(g.qubits[0]);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (i & s) {
            continue;
        }
        auto r0 = m.row(i).eval();
        auto r1 = m.row(i | s).eval();
        m.row(i) = u(0, 0) * r0 + u(0, 1) * r1;
        m.row(i | s) = u(1, 0) * r0 + u(1, 1) * r1;
    }
}

// Same operator (CZ is symmetric in its sites).
bool same_operator(const Gate &a, const Gate &b) {
    if (a.kind != b.kind) {
        return false;
    }
    if (a.kind == GateKind::kCZ) {
        return std::minmax(a.qubits[0], a.qubits[1]) == std::minmax(b.qubits[0], b.qubits[1]);
    }
    return a == b;
}

std::vector<int> support_of(std::span<const Gate> gates) {
    std::vector<int> s;
    for (const auto &g : gates) {
        s.insert(s.end(), g.qubits.begin(), g.qubits.end());
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// Unitary of gates on the local register `support` (sorted global sites).
Eigen::MatrixXcd local_unitary(std::span<const Gate> gates, const std::vector<int> &support) {
    GateSequence local;
    local.num_qubits = static_cast<int>(support.size());
    for (auto g : gates) {
        for (auto &q : g.qubits) {
            q = static_cast<int>(std::lower_bound(support.begin(), support.end(), q) - support.begin());
        }
        local.gates.push_back(g);
    }
    return sequence_unitary(local);
}

Eigen::Matrix2cd pauli2(qcore::Pauli p) {
    const Complex i(0, 1);
    Eigen::Matrix2cd m;
    switch (p) {
        case qcore::Pauli::kI: m << 1, 0, 0, 1; break;
        case qcore::Pauli::kX: m << 0, 1, 1, 0; break;
        case qcore::Pauli::kY: m << 0, -i, i, 0; break;
        case qcore::Pauli::kZ: m << 1, 0, 0, -1; break;
    }
    return m;
}

Eigen::MatrixXcd pauli_string_matrix(const std::vector<qcore::Pauli> &labels) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (auto p : labels) {
        Eigen::Matrix2cd f = pauli2(p);
        Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); ++r) {
            for (Eigen::Index c = 0; c < out.cols(); ++c) {
                next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
            }
        }
        out = std::move(next);
    }
    return out;
}

// Pauli string equal to m with coefficient exactly +1, if any.
std::optional<std::vector<qcore::Pauli>> as_positive_pauli(const Eigen::MatrixXcd &m, int k) {
    const std::size_t total = std::size_t{1} << (2 * k);
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<qcore::Pauli> labels(static_cast<std::size_t>(k));
        for (int q = 0; q < k; ++q) {
            labels[static_cast<std::size_t>(q)] = static_cast<qcore::Pauli>((code >> (2 * (k - 1 - q))) & 3U);
        }
        if ((m - pauli_string_matrix(labels)).cwiseAbs().maxCoeff() < kExactTol) {
            return labels;
        }
    }
    return std::nullopt;
}

GateKind pauli_gate(qcore::Pauli p) {
    switch (p) {
        case qcore::Pauli::kX: return GateKind::kX;
        case qcore::Pauli::kY: return GateKind::kY;
        case qcore::Pauli::kZ: return GateKind::kZ;
        default: fail(ErrorCode::kInvalidParameter, "identity has no gate");
    }
}

std::optional<std::vector<Gate>> pauli_gates(const std::optional<std::vector<qcore::Pauli>> &labels,
                                             const std::vector<int> &support) {
    if (!labels) {
        return std::nullopt;
    }
    std::vector<Gate> out;
    for (std::size_t i = 0; i < labels->size(); ++i) {
        if ((*labels)[i] != qcore::Pauli::kI) {
            out.push_back(Gate::single(pauli_gate((*labels)[i]), support[i]));
        }
    }
    if (out.size() != 1) {
        return std::nullopt;
    }
    return out;
}

}  // namespace

// --- gates ------------------------------------------------------------------

const char *gate_name(GateKind kind) {
    return info(kind).name;
}

GateKind gate_kind_from_name(const std::string &name) {
    for (const auto &k : kKinds) {
        if (name == k.name) {
            return k.kind;
        }
    }
    if (name == "S+" || name == "SDAG") {
        return GateKind::kSdg;
    }
    fail(ErrorCode::kValidation, "unknown gate '" + name + "'");
}

int gate_arity(GateKind kind) {
    return info(kind).arity;
}

bool is_rotation(GateKind kind) {
    return kind == GateKind::kRZ || kind == GateKind::kRX;
}

bool is_pauli(GateKind kind) {
    return kind == GateKind::kX || kind == GateKind::kY || kind == GateKind::kZ;
}

Gate Gate::single(GateKind kind, int q, double angle) {
    return Gate{kind, {q}, angle};
}

Gate Gate::two(GateKind kind, int q0, int q1) {
    return Gate{kind, {q0, q1}, 0};
}

void Gate::validate(int num_qubits) const {
    require(static_cast<int>(qubits.size()) == gate_arity(kind), ErrorCode::kValidation,
            std::string(gate_name(kind)) + " takes " + std::to_string(gate_arity(kind)) + " site(s)");
    for (int q : qubits) {
        require(q >= 0 && q < num_qubits, ErrorCode::kValidation,
                std::string(gate_name(kind)) + " site " + std::to_string(q) + " out of range");
    }
    require(qubits.size() < 2 || qubits[0] != qubits[1], ErrorCode::kValidation, "gate sites must be distinct");
    require(is_rotation(kind) ? std::isfinite(angle) : angle == 0.0, ErrorCode::kValidation,
            std::string(gate_name(kind)) + (is_rotation(kind) ? " needs a finite angle" : " takes no angle"));
}

Gate Gate::inverse() const {
    Gate g = *this;
    if (kind == GateKind::kS) {
        g.kind = GateKind::kSdg;
    } else if (kind == GateKind::kSdg) {
        g.kind = GateKind::kS;
    } else if (is_rotation(kind)) {
        g.angle = -angle;
    }
    return g;
}

void GateSequence::validate() const {
    require(num_qubits >= 1, ErrorCode::kValidation, "sequence needs at least one qubit");
    for (const auto &g : gates) {
        g.validate(num_qubits);
    }
}

GateSequence GateSequence::reversed_inverse() const {
    GateSequence out{num_qubits, {}};
    out.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.gates.push_back(it->inverse());
    }
    return out;
}

GateSequence GateSequence::concat(const GateSequence &other) const {
    require(num_qubits == other.num_qubits, ErrorCode::kShape, "sequence widths differ");
    GateSequence out = *this;
    out.gates.insert(out.gates.end(), other.gates.begin(), other.gates.end());
    return out;
}

void write_sequence(std::ostream &out, const GateSequence &seq) {
    out << "# qubits " << seq.num_qubits << '\n';
    for (const auto &g : seq.gates) {
        out << gate_name(g.kind);
        for (int q : g.qubits) {
            out << ' ' << q;
        }
        if (is_rotation(g.kind)) {
            out << ' ' << format_double(g.angle);
        }
        out << '\n';
    }
}

std::string sequence_to_string(const GateSequence &seq) {
    std::ostringstream os;
    write_sequence(os, seq);
    return os.str();
}

GateSequence read_sequence(std::istream &in) {
    GateSequence seq;
    int declared = -1;
    int widest = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty()) {
            continue;
        }
        std::istringstream ls(t);
        if (t[0] == '#') {
            std::string hash, word;
            int n = 0;
            ls >> hash >> word;
            if (word == "qubits" && (ls >> n)) {
                require(n >= 1, ErrorCode::kValidation, "qubit count must be >= 1");
                declared = n;
            }
            continue;
        }
        auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
        std::string name;
        ls >> name;
        Gate g;
        try {
            g.kind = gate_kind_from_name(name);
        } catch (const Error &e) {
            fail(ErrorCode::kValidation, e.what() + where());
        }
        for (int i = 0; i < gate_arity(g.kind); ++i) {
            int q = -1;
            require(static_cast<bool>(ls >> q) && q >= 0, ErrorCode::kValidation, "missing or bad site" + where());
            g.qubits.push_back(q);
            widest = std::max(widest, q + 1);
        }
        if (is_rotation(g.kind)) {
            std::string a;
            require(static_cast<bool>(ls >> a), ErrorCode::kValidation, "rotation needs an angle" + where());
            try {
                std::size_t used = 0;
                g.angle = std::stod(a, &used);
                require(used == a.size(), ErrorCode::kValidation, "bad angle '" + a + "'" + where());
            } catch (const std::logic_error &) {
                fail(ErrorCode::kValidation, "bad angle '" + a + "'" + where());
            }
        }
        std::string extra;
        require(!(ls >> extra), ErrorCode::kValidation, "trailing tokens" + where());
        seq.gates.push_back(std::move(g));
    }
    seq.num_qubits = declared > 0 ? declared : std::max(widest, 1);
    seq.validate();
    return seq;
}

GateSequence parse_sequence(const std::string &text) {
    std::istringstream in(text);
    return read_sequence(in);
}

Eigen::MatrixXcd gate_matrix(const Gate &g) {
    const Complex i(0, 1);
    const double r = 1 / std::numbers::sqrt2;
    Eigen::MatrixXcd m(2, 2);
    switch (g.kind) {
        case GateKind::kX: m << 0, 1, 1, 0; break;
        case GateKind::kY: m << 0, -i, i, 0; break;
        case GateKind::kZ: m << 1, 0, 0, -1; break;
        case GateKind::kH: m << r, r, r, -r; break;
        case GateKind::kS: m << 1, 0, 0, i; break;
        case GateKind::kSdg: m << 1, 0, 0, -i; break;
        case GateKind::kRZ: m << std::exp(-i * g.angle), 0, 0, std::exp(i * g.angle); break;
        case GateKind::kRX:
            m << std::cos(g.angle), -i * std::sin(g.angle), -i * std::sin(g.angle), std::cos(g.angle);
            break;
        case GateKind::kCZ:
            m = Eigen::MatrixXcd::Identity(4, 4);
            m(3, 3) = -1;
            break;
        case GateKind::kCNOT:
            m = Eigen::MatrixXcd::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            break;
    }
    return m;
}

void apply_gate(const Gate &g, int num_qubits, Eigen::VectorXcd &v) {
    require(v.size() == (Eigen::Index{1} << num_qubits), ErrorCode::kShape, "state dimension must be 2^n");
    g.validate(num_qubits);
    apply_rows(g, num_qubits, v);
}

Eigen::MatrixXcd sequence_unitary(const GateSequence &seq) {
    require(seq.num_qubits <= kMaxDenseQubits, ErrorCode::kResourceLimit, "dense unitaries limited to 10 qubits");
    seq.validate();
    const Eigen::Index d = Eigen::Index{1} << seq.num_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
    for (const auto &g : seq.gates) {
        apply_rows(g, seq.num_qubits, u);
    }
    return u;
}

Eigen::VectorXcd apply_sequence(const GateSequence &seq, const Eigen::VectorXcd &v) {
    seq.validate();
    require(v.size() == (Eigen::Index{1} << seq.num_qubits), ErrorCode::kShape, "state dimension must be 2^n");
    Eigen::VectorXcd out = v;
    for (const auto &g : seq.gates) {
        apply_rows(g, seq.num_qubits, out);
    }
    return out;
}

double operator_norm_error(const GateSequence &a, const GateSequence &b) {
    require(a.num_qubits == b.num_qubits, ErrorCode::kShape, "sequence widths differ");
    require(a.num_qubits <= kMaxDenseQubits, ErrorCode::kResourceLimit, "operator norm limited to 10 qubits");
    Eigen::MatrixXcd diff = sequence_unitary(a) - sequence_unitary(b);
    return Eigen::BDCSVD<Eigen::MatrixXcd>(diff).singularValues()(0);
}

// --- rules ------------------------------------------------------------------

RewriteRule inverse_cancel_rule() {
    return {"inverse-cancel", 2, [](std::span<const Gate> w) -> std::optional<Rewrite> {
                if (same_operator(w[0].inverse(), w[1])) {
                    return Rewrite{{}, 0.0};
                }
                return std::nullopt;
            }};
}

RewriteRule rotation_merge_rule() {
    return {"merge", 2, [](std::span<const Gate> w) -> std::optional<Rewrite> {
                if (is_rotation(w[0].kind) && w[0].kind == w[1].kind && w[0].qubits == w[1].qubits) {
                    double sum = w[0].angle + w[1].angle;
                    // Sums within rounding noise of the operands are exact cancellations.
                    if (std::abs(sum) <= 16 * std::numeric_limits<double>::epsilon() *
                                             (std::abs(w[0].angle) + std::abs(w[1].angle))) {
                        sum = 0;
                    }
                    return Rewrite{{Gate::single(w[0].kind, w[0].qubits[0], sum)}, 0.0};
                }
                return std::nullopt;
            }};
}

RewriteRule zero_angle_rule() {
    return {"zero-angle", 1, [](std::span<const Gate> w) -> std::optional<Rewrite> {
                if (is_rotation(w[0].kind)) {
                    return Rewrite{{}, 2 * std::abs(std::sin(w[0].angle / 2))};
                }
                return std::nullopt;
            }};
}

RewriteRule pauli_commute_rule() {
    return {"pauli-commute", 3, [](std::span<const Gate> w) -> std::optional<Rewrite> {
                // [G^-1, P, G] = G P G^-1.
                if (is_pauli(w[1].kind) && same_operator(w[0].inverse(), w[2])) {
                    auto support = support_of(w);
                    std::vector<Gate> g{w[2]};
                    Eigen::MatrixXcd gm = local_unitary(g, support);
                    std::vector<Gate> p{w[1]};
                    Eigen::MatrixXcd image = gm * local_unitary(p, support) * gm.adjoint();
                    auto gates = pauli_gates(as_positive_pauli(image, static_cast<int>(support.size())), support);
                    if (gates) {
                        return Rewrite{*gates, 0.0};
                    }
                }
                // [P, C, Q] = C when C^dag Q C = P.
                if (is_pauli(w[0].kind) && is_pauli(w[2].kind)) {
                    auto support = support_of(w);
                    std::vector<Gate> c{w[1]}, q{w[2]}, p{w[0]};
                    Eigen::MatrixXcd cm = local_unitary(c, support);
                    Eigen::MatrixXcd pulled = cm.adjoint() * local_unitary(q, support) * cm;
                    if ((pulled - local_unitary(p, support)).cwiseAbs().maxCoeff() < kExactTol) {
                        return Rewrite{{w[1]}, 0.0};
                    }
                }
                return std::nullopt;
            }};
}

RuleSet rule_set_default() {
    return {inverse_cancel_rule(), rotation_merge_rule(), zero_angle_rule(), pauli_commute_rule()};
}

namespace {

std::size_t angle_count(std::span<const Gate> gates) {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(), [](const Gate &g) { return is_rotation(g.kind); }));
}

// One left-to-right pass; returns the number of firings.
std::size_t greedy_pass(const GateSequence &in, double epsilon, const RuleSet &rules, std::size_t pass,
                        GateSequence &out, RewriteTrace &trace) {
    std::vector<Gate> stack;
    std::size_t fired = 0;
    for (std::size_t pos = 0; pos < in.gates.size(); ++pos) {
        std::deque<Gate> pending{in.gates[pos]};
        while (!pending.empty()) {
            Gate g = pending.front();
            pending.pop_front();
            bool applied = false;
            for (const auto &rule : rules) {
                const auto w = static_cast<std::size_t>(rule.window);
                if (w == 0 || stack.size() + 1 < w) {
                    continue;
                }
                std::vector<Gate> window(stack.end() - static_cast<std::ptrdiff_t>(w - 1), stack.end());
                window.push_back(g);
                auto r = rule.match(window);
                if (!r || !(r->error_bound <= epsilon)) {
                    continue;
                }
                require(r->replacement.size() < window.size() ||
                            (r->replacement.size() == window.size() &&
                             angle_count(r->replacement) < angle_count(window)),
                        ErrorCode::kInvalidParameter, "rule '" + rule.name + "' does not shorten its window");
                stack.resize(stack.size() - (w - 1));
                for (auto it = r->replacement.rbegin(); it != r->replacement.rend(); ++it) {
                    pending.push_front(*it);
                }
                trace.entries.push_back({rule.name, pass, pos, r->error_bound, window, r->replacement});
                trace.total_error += r->error_bound;
                ++fired;
                applied = true;
                break;
            }
            if (!applied) {
                stack.push_back(g);
            }
        }
    }
    out = GateSequence{in.num_qubits, std::move(stack)};
    return fired;
}

}  // namespace

PseudoComplexity pseudo_complexity(const GateSequence &seq, double epsilon, const RuleSet &rules) {
    require(epsilon >= 0, ErrorCode::kInvalidParameter, "epsilon must be >= 0");
    seq.validate();
    PseudoComplexity result;
    GateSequence current = seq;
    for (std::size_t pass = 0;; ++pass) {
        GateSequence next;
        std::size_t fired = greedy_pass(current, epsilon, rules, pass, next, result.trace);
        current = std::move(next);
        if (fired == 0) {
            break;
        }
    }
    result.length = current.size();
    result.output = std::move(current);
    return result;
}

PseudoComplexity pseudo_complexity(const GateSequence &seq, double epsilon) {
    return pseudo_complexity(seq, epsilon, rule_set_default());
}

// --- experiments ------------------------------------------------------------

GateSequence trotterize(const qcore::LocalHamiltonian &h, double t, int steps) {
    require(steps >= 1, ErrorCode::kInvalidParameter, "steps must be >= 1");
    require(std::isfinite(t), ErrorCode::kInvalidParameter, "time must be finite");
    const double dt = t / steps;
    GateSequence block{h.num_qubits(), {}};
    for (const auto &term : h.terms()) {
        auto s = term.support();
        const double a = term.coefficient * dt;
        if (s.empty()) {
            continue;  // global phase
        }
        const auto p0 = term.labels[static_cast<std::size_t>(s[0])];
        if (s.size() == 1 && p0 == qcore::Pauli::kX) {
            block.gates.push_back(Gate::single(GateKind::kRX, s[0], a));
        } else if (s.size() == 1 && p0 == qcore::Pauli::kZ) {
            block.gates.push_back(Gate::single(GateKind::kRZ, s[0], a));
        } else if (s.size() == 2 && p0 == qcore::Pauli::kZ &&
                   term.labels[static_cast<std::size_t>(s[1])] == qcore::Pauli::kZ) {
            block.gates.push_back(Gate::two(GateKind::kCNOT, s[0], s[1]));
            block.gates.push_back(Gate::single(GateKind::kRZ, s[1], a));
            block.gates.push_back(Gate::two(GateKind::kCNOT, s[0], s[1]));
        } else {
            fail(ErrorCode::kInvalidParameter, "trotterize supports ZZ, X and Z terms only");
        }
    }
    GateSequence out{h.num_qubits(), {}};
    out.gates.reserve(block.gates.size() * static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        out.gates.insert(out.gates.end(), block.gates.begin(), block.gates.end());
    }
    return out;
}

SwitchbackResult switchback_experiment(const qcore::LocalHamiltonian &h, double t, int steps,
                                       const qcore::PauliTerm &shock, double epsilon, const RuleSet &rules) {
    auto s = shock.support();
    require(s.size() <= 1 && shock.num_qubits() == h.num_qubits(), ErrorCode::kInvalidParameter,
            "shock must be a single-qubit Pauli on the Hamiltonian's register");
    GateSequence v = trotterize(h, t, steps);
    GateSequence back = v.reversed_inverse();
    SwitchbackResult r;
    r.naive = 2 * v.size() + 1;
    r.pc_forward_back = pseudo_complexity(v.concat(back), epsilon, rules).length;
    GateSequence shocked = v;
    if (!s.empty()) {
        shocked.gates.push_back(Gate::single(pauli_gate(shock.labels[static_cast<std::size_t>(s[0])]), s[0]));
    }
    r.pc_shocked = pseudo_complexity(shocked.concat(back), epsilon, rules).length;
    return r;
}

AsymmetryResult asymmetry_check(const GateSequence &seq, double epsilon, const RuleSet &rules) {
    return {pseudo_complexity(seq, epsilon, rules).length,
            pseudo_complexity(seq.reversed_inverse(), epsilon, rules).length};
}

// --- exact complexity -------------------------------------------------------

double phase_distance(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b) {
    require(a.size() == b.size(), ErrorCode::kShape, "state dimensions differ");
    Complex overlap = b.dot(a);  // <b|a>
    Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1);
    return (a - phase * b).norm();
}

namespace {

std::string fingerprint(const Eigen::VectorXcd &v) {
    Complex phase = 1;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-8) {
            phase = std::conj(v[i]) / std::abs(v[i]);
            break;
        }
    }
    std::string key;
    key.reserve(static_cast<std::size_t>(v.size()) * 2 * sizeof(long long));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Complex z = v[i] * phase;
        const long long parts[2] = {std::llround(z.real() * 1e6), std::llround(z.imag() * 1e6)};
        key.append(reinterpret_cast<const char *>(parts), sizeof(parts));
    }
    return key;
}

}  // namespace

std::size_t exact_circuit_complexity(const qcore::Statevector &target, const qcore::Statevector &start,
                                     double epsilon, const ExactComplexityOptions &options) {
    const int n = start.num_qubits();
    require(n <= 3, ErrorCode::kResourceLimit, "exact complexity limited to 3 qubits");
    require(target.dimension() == start.dimension(), ErrorCode::kShape, "target and start differ in size");
    require(epsilon >= 0, ErrorCode::kInvalidParameter, "epsilon must be >= 0");
    std::vector<Gate> moves;
    for (GateKind k : options.gate_set) {
        require(!is_rotation(k), ErrorCode::kInvalidParameter, "gate set must be discrete");
        if (gate_arity(k) == 1) {
            for (int q = 0; q < n; ++q) {
                moves.push_back(Gate::single(k, q));
            }
        } else {
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < n; ++b) {
                    if (a != b && (k != GateKind::kCZ || a < b)) {
                        moves.push_back(Gate::two(k, a, b));
                    }
                }
            }
        }
    }
    const Eigen::VectorXcd &goal = target.amplitudes();
    double best = phase_distance(start.amplitudes(), goal);
    if (best <= epsilon) {
        return 0;
    }
    std::unordered_set<std::string> seen{fingerprint(start.amplitudes())};
    std::vector<Eigen::VectorXcd> frontier{start.amplitudes()};
    for (std::size_t depth = 1; !frontier.empty(); ++depth) {
        std::vector<Eigen::VectorXcd> next;
        for (const auto &v : frontier) {
            for (const auto &g : moves) {
                Eigen::VectorXcd w = v;
                apply_rows(g, n, w);
                if (!seen.insert(fingerprint(w)).second) {
                    continue;
                }
                double dist = phase_distance(w, goal);
                best = std::min(best, dist);
                if (dist <= epsilon) {
                    return depth;
                }
                if (seen.size() > options.frontier_cap) {
                    throw InconclusiveError(best, "search cap of " + std::to_string(options.frontier_cap) +
                                                      " states exceeded");
                }
                next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    throw InconclusiveError(best, "target not reachable with the gate set");
}

GateSequence transpile_hs_cnot(const GateSequence &seq) {
    seq.validate();
    GateSequence out{seq.num_qubits, {}};
    auto emit = [&](GateKind k, int q, int count = 1) {
        for (int i = 0; i < count; ++i) {
            out.gates.push_back(Gate::single(k, q));
        }
    };
    auto quarter_turns = [](double angle) {
        double k = angle / (std::numbers::pi / 4);
        double r = std::round(k);
        require(std::abs(k - r) < 1e-12, ErrorCode::kInvalidParameter, "rotation is not a multiple of pi/4");
        return static_cast<int>(((static_cast<long long>(r) % 4) + 4) % 4);
    };
    for (const auto &g : seq.gates) {
        const int q = g.qubits[0];
        switch (g.kind) {
            case GateKind::kH:
            case GateKind::kS: out.gates.push_back(g); break;
            case GateKind::kCNOT: out.gates.push_back(g); break;
            case GateKind::kSdg: emit(GateKind::kS, q, 3); break;
            case GateKind::kZ: emit(GateKind::kS, q, 2); break;
            case GateKind::kX:
                emit(GateKind::kH, q);
                emit(GateKind::kS, q, 2);
                emit(GateKind::kH, q);
                break;
            case GateKind::kY:
                emit(GateKind::kS, q, 2);
                emit(GateKind::kH, q);
                emit(GateKind::kS, q, 2);
                emit(GateKind::kH, q);
                break;
            case GateKind::kCZ:
                emit(GateKind::kH, g.qubits[1]);
                out.gates.push_back(Gate::two(GateKind::kCNOT, g.qubits[0], g.qubits[1]));
                emit(GateKind::kH, g.qubits[1]);
                break;
            case GateKind::kRZ: emit(GateKind::kS, q, quarter_turns(g.angle)); break;
            case GateKind::kRX: {
                int k = quarter_turns(g.angle);
                if (k != 0) {
                    emit(GateKind::kH, q);
                    emit(GateKind::kS, q, k);
                    emit(GateKind::kH, q);
                }
                break;
            }
        }
    }
    return out;
}

}  // namespace holoprs::rewrite
