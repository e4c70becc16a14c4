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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "holoprs/common/error.h"
#include "holoprs/common/stats.h"

using namespace holoprs;
using namespace holoprs::rewrite;

namespace {

template <typename F>
ErrorCode code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    return ErrorCode{0};
}

const GateKind kClifford[] = {GateKind::kX, GateKind::kY,   GateKind::kZ,  GateKind::kH,
                              GateKind::kS, GateKind::kSdg, GateKind::kCZ, GateKind::kCNOT};
const GateKind kAll[] = {GateKind::kX,   GateKind::kY,  GateKind::kZ,    GateKind::kH,  GateKind::kS,
                         GateKind::kSdg, GateKind::kCZ, GateKind::kCNOT, GateKind::kRZ, GateKind::kRX};

Gate random_gate(std::span<const GateKind> kinds, int n, Rng &rng) {
    GateKind k = kinds[rng.below(kinds.size())];
    if (gate_arity(k) == 2 && n < 2) {
        k = GateKind::kH;
    }
    if (gate_arity(k) == 2) {
        int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int b = (a + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)))) % n;
        return Gate::two(k, a, b);
    }
    int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    double angle = is_rotation(k) ? (rng.uniform() - 0.5) * 0.4 : 0.0;
    return Gate::single(k, q, angle);
}

GateSequence random_sequence(std::span<const GateKind> kinds, int n, std::size_t len, Rng &rng) {
    GateSequence s{n, {}};
    for (std::size_t i = 0; i < len; ++i) {
        s.gates.push_back(random_gate(kinds, n, rng));
    }
    return s;
}

// Dense unitary by Kronecker products, independent of the row kernels.
Eigen::MatrixXcd kron_gate(const Gate &g, int n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd m = gate_matrix(g);
    const int k = static_cast<int>(g.qubits.size());
    for (Eigen::Index col = 0; col < d; ++col) {
        Eigen::Index local_in = 0;
        for (int j = 0; j < k; ++j) {
            local_in = (local_in << 1) | ((col >> (n - 1 - g.qubits[static_cast<std::size_t>(j)])) & 1);
        }
        for (Eigen::Index local_out = 0; local_out < (Eigen::Index{1} << k); ++local_out) {
            Eigen::Index row = col;
            for (int j = 0; j < k; ++j) {
                Eigen::Index bit = Eigen::Index{1} << (n - 1 - g.qubits[static_cast<std::size_t>(j)]);
                row = ((local_out >> (k - 1 - j)) & 1) ? (row | bit) : (row & ~bit);
            }
            u(row, col) = m(local_out, local_in);
        }
    }
    return u;
}

Eigen::MatrixXcd kron_sequence(const GateSequence &s) {
    const Eigen::Index d = Eigen::Index{1} << s.num_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
    for (const auto &g : s.gates) {
        u = kron_gate(g, s.num_qubits) * u;
    }
    return u;
}

// Frozen instance from a randomized search where greedy order matters:
// forward the X_2 pair cancels and X_1 then commutes past H_0; backward the
// surviving X_2 sits between the two X_1 gates.
GateSequence asymmetry_fixture() {
    return parse_sequence("# qubits 3\nX 1\nH 0\nX 2\nX 2\nX 1\nX 2\n");
}

}  // namespace

// --- IR ---------------------------------------------------------------------

TEST(Gate, Validation) {
    EXPECT_NO_THROW(Gate::two(GateKind::kCNOT, 0, 1).validate(2));
    EXPECT_EQ(code_of([] { Gate::two(GateKind::kCNOT, 1, 1).validate(2); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { Gate::single(GateKind::kX, 2).validate(2); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { Gate::single(GateKind::kX, 0, 0.5).validate(2); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { Gate::single(GateKind::kCZ, 0).validate(2); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { Gate::single(GateKind::kRZ, 0, NAN).validate(2); }), ErrorCode::kValidation);
}

TEST(Gate, InversesAreInverses) {
    for (GateKind k : kAll) {
        Gate g = gate_arity(k) == 2 ? Gate::two(k, 0, 1) : Gate::single(k, 0, is_rotation(k) ? 0.3 : 0.0);
        GateSequence s{2, {g, g.inverse()}};
        EXPECT_LT(operator_norm_error(s, GateSequence{2, {}}), 1e-12) << gate_name(k);
    }
}

TEST(GateSequence, TextRoundTrip) {
    Rng rng(Seed{3});
    auto s = random_sequence(kAll, 4, 40, rng);
    auto back = parse_sequence(sequence_to_string(s));
    EXPECT_EQ(back.num_qubits, 4);
    EXPECT_EQ(back.gates, s.gates);
}

TEST(GateSequence, ParseDetails) {
    auto s = parse_sequence("# comment\nH 0\n\nRZ 2 0.25\nSDAG 1\nS+ 1\n");
    EXPECT_EQ(s.num_qubits, 3);
    ASSERT_EQ(s.size(), 4U);
    EXPECT_EQ(s.gates[2].kind, GateKind::kSdg);
    EXPECT_DOUBLE_EQ(s.gates[1].angle, 0.25);
    EXPECT_EQ(code_of([] { parse_sequence("FOO 0\n"); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { parse_sequence("RZ 0\n"); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { parse_sequence("CNOT 0\n"); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { parse_sequence("H 0 1\n"); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { parse_sequence("# qubits 2\nH 3\n"); }), ErrorCode::kValidation);
    EXPECT_EQ(code_of([] { parse_sequence("RX 0 abc\n"); }), ErrorCode::kValidation);
}

TEST(GateSequence, UnitaryMatchesKroneckerOracle) {
    Rng rng(Seed{5});
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_sequence(kAll, 3, 12, rng);
        EXPECT_LT((sequence_unitary(s) - kron_sequence(s)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(OperatorNorm, Basics) {
    Rng rng(Seed{6});
    auto s = random_sequence(kAll, 3, 10, rng);
    EXPECT_LT(operator_norm_error(s, s), 1e-10);
    for (double theta : {0.0, 0.1, 1.0, 2.5, -0.7, 3.0}) {
        GateSequence rz{1, {Gate::single(GateKind::kRZ, 0, theta)}};
        EXPECT_NEAR(operator_norm_error(rz, GateSequence{1, {}}), 2 * std::abs(std::sin(theta / 2)), 1e-8);
    }
    EXPECT_EQ(code_of([] { operator_norm_error(GateSequence{11, {}}, GateSequence{11, {}}); }),
              ErrorCode::kResourceLimit);
}

// --- rules ------------------------------------------------------------------

TEST(Rules, AdjacentInversesCancel) {
    for (GateKind k : kAll) {
        Gate g = gate_arity(k) == 2 ? Gate::two(k, 1, 0) : Gate::single(k, 1, is_rotation(k) ? 0.7 : 0.0);
        GateSequence s{2, {g, g.inverse()}};
        EXPECT_EQ(pseudo_complexity(s).length, 0U) << gate_name(k);
    }
    GateSequence cz{2, {Gate::two(GateKind::kCZ, 0, 1), Gate::two(GateKind::kCZ, 1, 0)}};
    EXPECT_EQ(pseudo_complexity(cz).length, 0U);
    GateSequence cx{2, {Gate::two(GateKind::kCNOT, 0, 1), Gate::two(GateKind::kCNOT, 1, 0)}};
    EXPECT_EQ(pseudo_complexity(cx).length, 2U);
}

TEST(Rules, PauliCommutesPastDisjointCz) {
    GateSequence s{4, {Gate::single(GateKind::kX, 0), Gate::two(GateKind::kCZ, 1, 2), Gate::single(GateKind::kX, 0)}};
    auto r = pseudo_complexity(s);
    ASSERT_EQ(r.length, 1U);
    EXPECT_EQ(r.output.gates[0].kind, GateKind::kCZ);
    EXPECT_EQ(r.trace.entries.at(0).rule, "pauli-commute");
}

TEST(Rules, PauliThroughHadamard) {
    // [H, X, H] = Z
    GateSequence a{1, {Gate::single(GateKind::kH, 0), Gate::single(GateKind::kX, 0), Gate::single(GateKind::kH, 0)}};
    auto ra = pseudo_complexity(a);
    ASSERT_EQ(ra.length, 1U);
    EXPECT_EQ(ra.output.gates[0].kind, GateKind::kZ);
    // [Z, H, X] = H, and a following H then cancels.
    GateSequence b{1, {Gate::single(GateKind::kZ, 0), Gate::single(GateKind::kH, 0), Gate::single(GateKind::kX, 0),
                       Gate::single(GateKind::kH, 0)}};
    EXPECT_EQ(pseudo_complexity(b).length, 0U);
    // Y picks up a sign through H, so it is left alone.
    GateSequence c{1, {Gate::single(GateKind::kH, 0), Gate::single(GateKind::kY, 0), Gate::single(GateKind::kH, 0)}};
    EXPECT_EQ(pseudo_complexity(c).length, 3U);
}

TEST(Rules, PauliThroughCnot) {
    // CNOT X_t CNOT = X_t collapses; CNOT X_c CNOT = X_c X_t would spread.
    GateSequence t{2, {Gate::two(GateKind::kCNOT, 0, 1), Gate::single(GateKind::kX, 1), Gate::two(GateKind::kCNOT, 0, 1)}};
    auto r = pseudo_complexity(t);
    ASSERT_EQ(r.length, 1U);
    EXPECT_EQ(r.output.gates[0], Gate::single(GateKind::kX, 1));
    GateSequence c{2, {Gate::two(GateKind::kCNOT, 0, 1), Gate::single(GateKind::kX, 0), Gate::two(GateKind::kCNOT, 0, 1)}};
    EXPECT_EQ(pseudo_complexity(c).length, 3U);
}

TEST(Rules, RotationsMergeThenVanish) {
    GateSequence s{1, {Gate::single(GateKind::kRZ, 0, 0.4), Gate::single(GateKind::kRZ, 0, -0.4)}};
    EXPECT_EQ(pseudo_complexity(s).length, 0U);
    GateSequence m{1, {Gate::single(GateKind::kRX, 0, 0.4), Gate::single(GateKind::kRX, 0, 0.5)}};
    auto r = pseudo_complexity(m);
    ASSERT_EQ(r.length, 1U);
    EXPECT_DOUBLE_EQ(r.output.gates[0].angle, 0.9);
    EXPECT_EQ(r.trace.entries.at(0).rule, "merge");
    GateSequence z{1, {Gate::single(GateKind::kRZ, 0, 0.3), Gate::single(GateKind::kRZ, 0, -0.2),
                       Gate::single(GateKind::kRZ, 0, -0.1)}};
    EXPECT_EQ(pseudo_complexity(z, 1e-12).length, 0U);
}

TEST(Rules, ZeroAngleRespectsBudget) {
    GateSequence s{1, {Gate::single(GateKind::kRZ, 0, 1e-3)}};
    EXPECT_EQ(pseudo_complexity(s, 0).length, 1U);
    double bound = 2 * std::sin(0.5e-3);
    EXPECT_EQ(pseudo_complexity(s, bound * 0.999).length, 1U);
    auto r = pseudo_complexity(s, bound * 1.001);
    EXPECT_EQ(r.length, 0U);
    EXPECT_NEAR(r.trace.total_error, bound, 1e-15);
    GateSequence zero{1, {Gate::single(GateKind::kRX, 0, 0.0)}};
    EXPECT_EQ(pseudo_complexity(zero, 0).length, 0U);
}

TEST(Rules, NonShorteningRuleRejected) {
    RewriteRule bad{"bad", 1, [](std::span<const Gate> w) -> std::optional<Rewrite> {
                        return Rewrite{{w[0], w[0]}, 0.0};
                    }};
    GateSequence s{1, {Gate::single(GateKind::kH, 0)}};
    EXPECT_EQ(code_of([&] { pseudo_complexity(s, 0, {bad}); }), ErrorCode::kInvalidParameter);
}

TEST(Rules, CustomRuleRegistration) {
    // Drop every Z gate (error 2), allowed only with a large budget.
    RewriteRule drop_z{"drop-z", 1, [](std::span<const Gate> w) -> std::optional<Rewrite> {
                           if (w[0].kind == GateKind::kZ) {
                               return Rewrite{{}, 2.0};
                           }
                           return std::nullopt;
                       }};
    auto rules = rule_set_default();
    rules.push_back(drop_z);
    GateSequence s{1, {Gate::single(GateKind::kZ, 0), Gate::single(GateKind::kH, 0)}};
    EXPECT_EQ(pseudo_complexity(s, 1.0, rules).length, 2U);
    EXPECT_EQ(pseudo_complexity(s, 2.0, rules).length, 1U);
}

// --- pseudo-complexity properties ---------------------------------------------

TEST(PseudoComplexity, MonotoneFixpointAndSound) {
    Rng rng(Seed{11});
    const double eps = 0.05;
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + static_cast<int>(rng.below(6));
        auto s = random_sequence(kAll, n, 5 + rng.below(30), rng);
        auto r = pseudo_complexity(s, eps);
        EXPECT_LE(r.length, s.size());
        auto again = pseudo_complexity(r.output, eps);
        EXPECT_EQ(again.output.gates, r.output.gates);
        EXPECT_TRUE(again.trace.entries.empty());
        double sum = 0;
        std::size_t inexact = 0;
        for (const auto &e : r.trace.entries) {
            EXPECT_LE(e.error, eps);
            sum += e.error;
            inexact += e.error > 0 ? 1 : 0;
            double measured = operator_norm_error(GateSequence{n, e.before}, GateSequence{n, e.after});
            EXPECT_LE(measured, e.error + 1e-8) << e.rule;
        }
        EXPECT_NEAR(r.trace.total_error, sum, 1e-15);
        EXPECT_LE(operator_norm_error(r.output, s), static_cast<double>(inexact) * eps + 1e-8);
    }
}

TEST(PseudoComplexity, Telescoping) {
    Rng rng(Seed{12});
    for (int trial = 0; trial < 2000; ++trial) {
        int n = 1 + static_cast<int>(rng.below(8));
        auto v = random_sequence(kAll, n, rng.below(50), rng);
        EXPECT_EQ(pseudo_complexity(v.concat(v.reversed_inverse()), 0).length, 0U);
    }
}

TEST(PseudoComplexity, EmptyAndPalindrome) {
    auto e = asymmetry_check(GateSequence{2, {}}, 0, rule_set_default());
    EXPECT_EQ(e.pc_forward, 0U);
    EXPECT_EQ(e.pc_reverse, 0U);
    auto pal = parse_sequence("H 0\nCNOT 0 1\nX 1\nCZ 1 2\nX 1\nCNOT 0 1\nH 0\n");
    ASSERT_EQ(pal.reversed_inverse().gates, pal.gates);
    auto r = asymmetry_check(pal, 0, rule_set_default());
    EXPECT_EQ(r.pc_forward, r.pc_reverse);
}

TEST(PseudoComplexity, AsymmetryFixture) {
    auto s = asymmetry_fixture();
    auto r = asymmetry_check(s, 0, rule_set_default());
    EXPECT_EQ(r.pc_forward, 2U);
    EXPECT_EQ(r.pc_reverse, 4U);
}

// --- Trotterization and switchback ----------------------------------------

TEST(Trotterize, CountsAndAngles) {
    auto h = qcore::build_hamiltonian(4, 1.05, 0.5);
    auto s = trotterize(h, 2.0, 5);
    // 3 bonds x 3 gates + 4 X fields + 4 Z fields per step
    EXPECT_EQ(s.size(), 5U * (3 * 3 + 4 + 4));
    EXPECT_EQ(s.gates[0].kind, GateKind::kCNOT);
    EXPECT_DOUBLE_EQ(s.gates[1].angle, 2.0 / 5);
    EXPECT_DOUBLE_EQ(s.gates[9].angle, 1.05 * 2.0 / 5);
    EXPECT_EQ(code_of([&] { trotterize(h, 1.0, 0); }), ErrorCode::kInvalidParameter);
}

TEST(Trotterize, ApproachesExactEvolution) {
    auto h = qcore::build_hamiltonian(4, 1.05, 0.5);
    auto init = qcore::Statevector::zeros(4);
    auto exact = qcore::evolve(h, 1.0, init);
    auto got = apply_sequence(trotterize(h, 1.0, 100), init.amplitudes());
    EXPECT_GE(std::norm(exact.amplitudes().dot(got)), 0.999);
}

TEST(Trotterize, ZeroTimeCollapses) {
    auto h = qcore::build_hamiltonian(5, 1.05, 0.5);
    auto s = trotterize(h, 0.0, 3);
    for (const auto &g : s.gates) {
        EXPECT_EQ(g.angle, 0.0);
    }
    EXPECT_EQ(pseudo_complexity(s, 0).length, 0U);
}

TEST(Trotterize, ChaoticGrowthIsLinear) {
    auto h = qcore::build_hamiltonian(6, 1.05, 0.5);
    std::vector<double> ts, lens;
    for (int t = 1; t <= 8; ++t) {
        auto r = pseudo_complexity(trotterize(h, t, 4 * t), 0);
        EXPECT_TRUE(r.trace.entries.empty());
        ts.push_back(t);
        lens.push_back(static_cast<double>(r.length));
    }
    auto fit = fit_line(ts, lens);
    EXPECT_GE(fit.r_squared, 0.99);
    EXPECT_GT(fit.slope, 0);
}

TEST(Switchback, NoShockTelescopes) {
    auto h = qcore::build_hamiltonian(5, 1.05, 0.5);
    auto rules = rule_set_default();
    auto r = switchback_experiment(h, 2.0, 8, qcore::PauliTerm::single(5, 0, qcore::Pauli::kI), 0, rules);
    EXPECT_EQ(r.pc_forward_back, 0U);
    EXPECT_EQ(r.pc_shocked, 0U);
}

TEST(Switchback, ShockBlocksPartialCancellation) {
    auto h = qcore::build_hamiltonian(8, 1.05, 0.5);
    auto rules = rule_set_default();
    std::size_t prev = 0;
    for (double t : {1.0, 2.0, 3.0}) {
        auto r = switchback_experiment(h, t, static_cast<int>(4 * t), qcore::PauliTerm::single(8, 0, qcore::Pauli::kX),
                                       0, rules);
        EXPECT_EQ(r.pc_forward_back, 0U);
        EXPECT_GT(r.pc_shocked, 0U);
        EXPECT_LT(r.pc_shocked, r.naive);
        EXPECT_GT(r.pc_shocked, prev);
        prev = r.pc_shocked;
    }
    EXPECT_EQ(code_of([&] {
                  switchback_experiment(h, 1, 1, qcore::PauliTerm::pair(8, 0, qcore::Pauli::kX, 1, qcore::Pauli::kX),
                                        0, rules);
              }),
              ErrorCode::kInvalidParameter);
}

// --- exact complexity -------------------------------------------------------

TEST(ExactComplexity, SmallTargets) {
    auto zero2 = qcore::Statevector::zeros(2);
    EXPECT_EQ(exact_circuit_complexity(zero2, zero2, 1e-6), 0U);
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell[0] = bell[3] = 1 / std::numbers::sqrt2;
    EXPECT_EQ(exact_circuit_complexity(qcore::Statevector(bell), zero2, 1e-6), 2U);
    Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
    ghz[0] = ghz[7] = 1 / std::numbers::sqrt2;
    EXPECT_EQ(exact_circuit_complexity(qcore::Statevector(ghz), qcore::Statevector::zeros(3), 1e-6), 3U);
    // Global phase is ignored.
    Eigen::VectorXcd phased = bell * std::complex<double>(0, 1);
    EXPECT_EQ(exact_circuit_complexity(qcore::Statevector(phased), zero2, 1e-6), 2U);
}

TEST(ExactComplexity, Errors) {
    auto z4 = qcore::Statevector::zeros(4);
    EXPECT_EQ(code_of([&] { exact_circuit_complexity(z4, z4, 1e-6); }), ErrorCode::kResourceLimit);
    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell[0] = bell[3] = 1 / std::numbers::sqrt2;
    ExactComplexityOptions only_h;
    only_h.gate_set = {GateKind::kH};
    try {
        exact_circuit_complexity(qcore::Statevector(bell), qcore::Statevector::zeros(2), 1e-6, only_h);
        FAIL() << "expected inconclusive";
    } catch (const InconclusiveError &e) {
        EXPECT_GT(e.best_distance(), 0.1);
    }
    ExactComplexityOptions tiny;
    tiny.frontier_cap = 3;
    auto target = qcore::haar_state(8, Seed{1});
    EXPECT_EQ(code_of([&] { exact_circuit_complexity(target, qcore::Statevector::zeros(3), 1e-6, tiny); }),
              ErrorCode::kInconclusive);
}

TEST(ExactComplexity, TranspileKeepsState) {
    Rng rng(Seed{21});
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_sequence(kClifford, 3, 15, rng);
        s.gates.push_back(Gate::single(GateKind::kRZ, 0, std::numbers::pi / 4 * static_cast<double>(rng.below(8))));
        s.gates.push_back(Gate::single(GateKind::kRX, 1, -std::numbers::pi / 2));
        auto t = transpile_hs_cnot(s);
        for (const auto &g : t.gates) {
            EXPECT_TRUE(g.kind == GateKind::kH || g.kind == GateKind::kS || g.kind == GateKind::kCNOT);
        }
        auto z = qcore::Statevector::zeros(3).amplitudes();
        EXPECT_LT(phase_distance(apply_sequence(s, z), apply_sequence(t, z)), 1e-10);
    }
    GateSequence bad{1, {Gate::single(GateKind::kRZ, 0, 0.3)}};
    EXPECT_EQ(code_of([&] { transpile_hs_cnot(bad); }), ErrorCode::kInvalidParameter);
}

TEST(ExactComplexity, OracleSandwich) {
    Rng rng(Seed{22});
    auto zero = qcore::Statevector::zeros(2);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = random_sequence(kClifford, 2, 3 + rng.below(10), rng);
        auto pc = pseudo_complexity(s, 0);
        auto final_state = qcore::Statevector(apply_sequence(s, zero.amplitudes()));
        std::size_t exact = exact_circuit_complexity(final_state, zero, 1e-6);
        EXPECT_LE(exact, transpile_hs_cnot(pc.output).size());
    }
}
