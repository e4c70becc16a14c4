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

#include "holoprs/qcore/qcore.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "holoprs/common/error.h"
#include "holoprs/common/stats.h"

using namespace holoprs;
using namespace holoprs::qcore;

namespace {

// Independent construction of the Ising chain by Kronecker products.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::MatrixXcd site_op(int n, int q, const Eigen::MatrixXcd &op) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < n; ++k) {
        out = kron(out, k == q ? op : Eigen::MatrixXcd::Identity(2, 2));
    }
    return out;
}

Eigen::MatrixXcd ising_by_kron(int n, double g, double h) {
    Eigen::MatrixXcd x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    auto d = Eigen::Index{1} << n;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (int q = 0; q + 1 < n; ++q) {
        m += site_op(n, q, z) * site_op(n, q + 1, z);
    }
    for (int q = 0; q < n; ++q) {
        m += g * site_op(n, q, x) + h * site_op(n, q, z);
    }
    return m;
}

}  // namespace

TEST(HaarUnitary, IsUnitary) {
    auto u = haar_unitary(4, Seed{7});
    EXPECT_LT(u.unitarity_defect(), 1e-10);
}

TEST(HaarUnitary, DimensionOneIsAPhase) {
    auto u = haar_unitary(1, Seed{3});
    EXPECT_NEAR(std::abs(u.matrix()(0, 0)), 1.0, 1e-12);
}

TEST(HaarUnitary, ZeroDimensionRejected) {
    try {
        haar_unitary(0, Seed{1});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kInvalidDimension);
    }
}

TEST(HaarUnitary, FirstMomentOfEntry) {
    RunningMean acc;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        auto u = haar_unitary(4, Seed{s});
        acc.add(std::norm(u.matrix()(0, 0)));
    }
    auto est = acc.estimate();
    EXPECT_NEAR(est.mean, 0.25, 3 * est.std_error);
}

TEST(HaarUnitary, PhaseDistributionIsUniform) {
    // Without the R-diagonal phase fix the diagonal of Q is biased toward
    // the positive real axis; E[U_00] must vanish for Haar.
    Complex acc = 0;
    const int trials = 4000;
    for (int s = 0; s < trials; ++s) {
        acc += haar_unitary(2, Seed{static_cast<std::uint64_t>(s) + 99}).matrix()(0, 0);
    }
    EXPECT_LT(std::abs(acc) / trials, 4.0 / std::sqrt(2.0 * trials));
}

TEST(HaarUnitary, SameSeedSameMatrix) {
    auto a = haar_unitary(8, Seed{42});
    auto b = haar_unitary(8, Seed{42});
    EXPECT_TRUE(a.matrix() == b.matrix());
}

TEST(HaarState, Normalized) {
    EXPECT_NEAR(haar_state(2, Seed{5}).norm(), 1.0, 1e-10);
}

TEST(HaarState, FirstMoment) {
    RunningMean acc;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        acc.add(std::norm(haar_state(8, Seed{s})[0]));
    }
    auto est = acc.estimate();
    EXPECT_NEAR(est.mean, 1.0 / 8, 3 * est.std_error);
}

TEST(HaarState, IndependentStatesConcentrate) {
    int small = 0;
    for (std::uint64_t k = 0; k < 100; ++k) {
        auto a = haar_state(256, Seed{2 * k});
        auto b = haar_state(256, Seed{2 * k + 1});
        small += std::norm(inner_product(a, b)) < 0.1 ? 1 : 0;
    }
    EXPECT_GE(small, 99);
}

TEST(Algebra, PauliXOnFirstQubit) {
    auto s = Statevector::zeros(3);
    auto out = apply_pauli(PauliTerm::single(3, 0, Pauli::kX), s);
    EXPECT_EQ(out[4], Complex(1, 0));  // |100>
}

TEST(Algebra, PauliYPhases) {
    auto out = apply_pauli(PauliTerm::single(1, 0, Pauli::kY), Statevector::zeros(1));
    EXPECT_NEAR(std::abs(out[1] - Complex(0, 1)), 0, 1e-15);
}

TEST(Algebra, InnerProductWithSelf) {
    auto s = haar_state(16, Seed{11});
    EXPECT_NEAR(std::abs(inner_product(s, s) - Complex(1, 0)), 0, 1e-10);
}

TEST(Algebra, IdentityLeavesStateExactly) {
    auto s = haar_state(8, Seed{12});
    auto out = apply_unitary(UnitaryMatrix::identity(8), s);
    EXPECT_TRUE(out.amplitudes() == s.amplitudes());
}

TEST(Algebra, DimensionMismatch) {
    auto s = haar_state(8, Seed{12});
    try {
        apply_unitary(UnitaryMatrix::identity(4), s);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kShape);
    }
}

TEST(Algebra, NormPreservationProperty) {
    Rng rng(Seed{77});
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + static_cast<int>(rng.below(5));
        auto s = haar_state(std::size_t{1} << n, rng);
        PauliTerm p;
        for (int q = 0; q < n; ++q) {
            p.labels.push_back(static_cast<Pauli>(rng.below(4)));
        }
        EXPECT_NEAR(apply_pauli(p, s).norm(), 1.0, 1e-10);
        auto u = haar_unitary(std::size_t{1} << n, rng);
        EXPECT_NEAR(apply_unitary(u, s).norm(), 1.0, 1e-10);
    }
}

TEST(Hamiltonian, PureCouplingIsDiagonal) {
    auto h = build_hamiltonian(2, 0, 0);
    ASSERT_EQ(h.terms().size(), 1u);
    const auto &e = h.spectrum().energies;
    EXPECT_NEAR(e[0], -1, 1e-12);
    EXPECT_NEAR(e[1], -1, 1e-12);
    EXPECT_NEAR(e[2], 1, 1e-12);
    EXPECT_NEAR(e[3], 1, 1e-12);
}

TEST(Hamiltonian, TransverseFieldSpectrumMatchesKronecker) {
    auto h = build_hamiltonian(2, 1, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(ising_by_kron(2, 1, 0));
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(h.spectrum().energies[i], oracle.eigenvalues()[i], 1e-12);
    }
    // ZZ + X1 + X2 has spectrum {-sqrt5, -1, 1, sqrt5}.
    EXPECT_NEAR(h.spectrum().energies[0], -std::sqrt(5.0), 1e-12);
}

TEST(Hamiltonian, DenseMatchesKroneckerAtSixQubits) {
    auto h = build_hamiltonian(6, 1.05, 0.5);
    EXPECT_LT((h.dense() - ising_by_kron(6, 1.05, 0.5)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Hamiltonian, TermCount) {
    EXPECT_EQ(build_hamiltonian(8, 1.05, 0.5).terms().size(), 23u);
}

TEST(Hamiltonian, TooSmall) {
    EXPECT_THROW(build_hamiltonian(1, 1, 1), Error);
}

TEST(Evolve, ZeroTime) {
    auto h = build_hamiltonian(4, 1.05, 0.5);
    auto s = haar_state(16, Seed{1});
    EXPECT_LT((evolve(h, 0, s).amplitudes() - s.amplitudes()).norm(), 1e-10);
}

TEST(Evolve, GroupPropertyAndEnergyConservation) {
    auto h = build_hamiltonian(5, 1.05, 0.5);
    auto s = haar_state(32, Seed{2});
    auto fwd = evolve(h, 3.7, s);
    auto back = evolve(h, -3.7, fwd);
    EXPECT_LT((back.amplitudes() - s.amplitudes()).norm(), 1e-8);
    EXPECT_NEAR(energy_expectation(h, fwd), energy_expectation(h, s), 1e-8);
    EXPECT_NEAR(fwd.norm(), 1.0, 1e-10);
}

TEST(Evolve, MatchesMatrixExponentialOnLeadingQubits) {
    // H on 3 qubits acting on the first 3 of 5: compare with a dense
    // exponential built from the eigen-decomposition of H (x) I.
    auto h = build_hamiltonian(3, 0.7, 0.3);
    auto s = haar_state(32, Seed{3});
    Eigen::MatrixXcd big = kron(h.dense(), Eigen::MatrixXcd::Identity(4, 4));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(big);
    Eigen::VectorXcd ph(32);
    for (int i = 0; i < 32; ++i) {
        ph[i] = std::polar(1.0, -es.eigenvalues()[i] * 1.3);
    }
    Eigen::VectorXcd expect = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint() * s.amplitudes();
    EXPECT_LT((evolve(h, 1.3, s).amplitudes() - expect).norm(), 1e-10);
}

namespace {
Eigen::VectorXd schmidt_spectrum(const Statevector &s, int half) {
    auto d = Eigen::Index{1} << half;
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index l = 0; l < d; ++l) {
        for (Eigen::Index r = 0; r < d; ++r) {
            m(l, r) = s[static_cast<std::size_t>(l * d + r)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m * m.adjoint());
    Eigen::VectorXd ev = es.eigenvalues();
    std::sort(ev.data(), ev.data() + ev.size());
    return ev;
}
}  // namespace

TEST(Tfd, InfiniteTemperatureIsMaximallyEntangled) {
    auto h = build_hamiltonian(3, 1.05, 0.5);
    auto ev = schmidt_spectrum(tfd_state(h, 0.0), 3);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        EXPECT_NEAR(ev[i], 1.0 / 8, 1e-12);
    }
}

TEST(Tfd, LowTemperatureIsGroundStateProduct) {
    auto h = build_hamiltonian(2, 1.05, 0.5);
    auto tfd = tfd_state(h, 1000.0);
    const auto &v = h.spectrum().vectors;
    Eigen::VectorXcd gs = v.col(0);
    Eigen::VectorXcd product(16);
    for (int l = 0; l < 4; ++l) {
        for (int r = 0; r < 4; ++r) {
            product[l * 4 + r] = gs[l] * std::conj(gs[r]);
        }
    }
    EXPECT_GT(std::norm(product.dot(tfd.amplitudes())), 1 - 1e-6);
}

TEST(Tfd, SchmidtSpectrumIsGibbs) {
    for (int n : {2, 3}) {
        auto h = build_hamiltonian(n, 1.05, 0.5);
        const double beta = 1.0;
        auto ev = schmidt_spectrum(tfd_state(h, beta), n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(ising_by_kron(n, 1.05, 0.5));
        Eigen::VectorXd gibbs = (-beta * oracle.eigenvalues().array()).exp();
        gibbs /= gibbs.sum();
        std::sort(gibbs.data(), gibbs.data() + gibbs.size());
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            EXPECT_NEAR(ev[i], gibbs[i], 1e-8);
        }
    }
}

TEST(Tfd, NegativeBetaRejected) {
    try {
        tfd_state(build_hamiltonian(2, 1, 0), -1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kInvalidParameter);
    }
}

TEST(Energy, EigenstateGivesEigenvalue) {
    auto h = build_hamiltonian(4, 1.05, 0.5);
    const auto &spec = h.spectrum();
    for (int i : {0, 5, 15}) {
        Statevector s(spec.vectors.col(i));
        EXPECT_NEAR(energy_expectation(h, s), spec.energies[i], 1e-10);
    }
}

TEST(Energy, HaarMeanOfTracelessHamiltonianIsZero) {
    auto h = build_hamiltonian(6, 1.05, 0.5);
    RunningMean acc;
    Rng rng(Seed{8});
    for (int k = 0; k < 1000; ++k) {
        acc.add(energy_expectation(h, haar_state(64, rng)));
    }
    auto est = acc.estimate();
    EXPECT_NEAR(est.mean, 0.0, 3 * est.std_error);
}

TEST(Energy, SampledEstimateIsConsistent) {
    auto h = build_hamiltonian(4, 1.05, 0.5);
    auto s = Statevector(h.spectrum().vectors.col(2));
    Rng rng(Seed{9});
    auto est = sample_energy_measurement(h, s, 100000, rng);
    EXPECT_NEAR(est.value, energy_expectation(h, s), 3 * est.std_error);
    EXPECT_EQ(est.copies_used, 100000u * h.terms().size());
}

TEST(Energy, ZeroShotsRejected) {
    auto h = build_hamiltonian(2, 1, 0);
    Rng rng(Seed{1});
    EXPECT_THROW(sample_energy_measurement(h, Statevector::zeros(2), 0, rng), Error);
}

TEST(Otoc, CommutingAtTimeZero) {
    auto h = build_hamiltonian(4, 1.05, 0.5);
    auto s = haar_state(16, Seed{4});
    auto f = otoc(h, 0, PauliTerm::single(4, 0, Pauli::kX), PauliTerm::single(4, 3, Pauli::kZ), s);
    EXPECT_NEAR(std::abs(f - Complex(1, 0)), 0, 1e-10);
}

TEST(Otoc, ClassicalChainNeverScrambles) {
    auto h = build_hamiltonian(4, 0, 0);
    auto s = haar_state(16, Seed{5});
    for (double t : {0.5, 3.0, 17.0}) {
        auto f = otoc(h, t, PauliTerm::single(4, 0, Pauli::kX), PauliTerm::single(4, 3, Pauli::kZ), s);
        EXPECT_NEAR(std::abs(f), 1.0, 1e-10);
    }
    try {
        scrambling_time(h, 0.1, Seed{1}, {.step = 0.25, .max_time = 20, .trials = 2});
        FAIL();
    } catch (const NoScramblingError &e) {
        EXPECT_NEAR(e.final_otoc(), 1.0, 1e-9);
    }
}

TEST(Otoc, ChaoticChainScrambles) {
    auto h = build_hamiltonian(6, 1.05, 0.5);
    double t = scrambling_time(h, 0.1, Seed{2024});
    EXPECT_GT(t, 0);
    EXPECT_LE(t, 300);
}

TEST(Invariants, HaarFirstMomentOfShockedOverlap) {
    for (int n : {2, 3, 4}) {
        std::size_t d = std::size_t{1} << n;
        RunningMean acc;
        Rng rng(Seed{static_cast<std::uint64_t>(100 + n)});
        auto x1 = PauliTerm::single(n, 0, Pauli::kX);
        for (int k = 0; k < 2000; ++k) {
            auto u = haar_unitary(d, rng);
            auto psi = apply_unitary(u, Statevector::zeros(n));
            acc.add(std::norm(inner_product(psi, apply_pauli(x1, psi))));
        }
        auto est = acc.estimate();
        double dd = static_cast<double>(d);
        double closed = dd / (dd * dd - 1) - 1 / (dd * dd - 1);
        EXPECT_NEAR(closed, 1.0 / (dd + 1), 1e-15);
        EXPECT_NEAR(est.mean, closed, 3 * est.std_error) << "n=" << n;
    }
}
