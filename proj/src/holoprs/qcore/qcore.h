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

#ifndef HOLOPRS_QCORE_QCORE_H
#define HOLOPRS_QCORE_QCORE_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "holoprs/common/rng.h"

// Dense statevector and operator algebra.
//
// Qubit ordering: qubit 0 is the most significant bit of a basis index, so
// |q0 q1 ... q_{n-1}> sits at index sum_q b_q 2^{n-1-q}. "The first qubit"
// everywhere in this project means qubit 0.

namespace holoprs::qcore {

using Complex = std::complex<double>;

/// Largest register any dense operation accepts.
inline constexpr int kMaxQubits = 12;

enum class Pauli : std::uint8_t { kI = 0, kX = 1, kY = 2, kZ = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

class Statevector {
   public:
    /// Takes ownership of the amplitudes; they must have unit norm (1e-8).
    explicit Statevector(Eigen::VectorXcd amplitudes);

    static Statevector basis(std::size_t dimension, std::size_t index);
    /// |0...0> on num_qubits qubits.
    static Statevector zeros(int num_qubits);

    std::size_t dimension() const {
        return static_cast<std::size_t>(amps_.size());
    }
    /// log2(dimension); throws a shape error when the dimension is not 2^n.
    int num_qubits() const;
    const Eigen::VectorXcd &amplitudes() const {
        return amps_;
    }
    Complex operator[](std::size_t i) const {
        return amps_[static_cast<Eigen::Index>(i)];
    }
    double norm() const {
        return amps_.norm();
    }

   private:
    Eigen::VectorXcd amps_;
};

class UnitaryMatrix {
   public:
    /// Validates U U^dagger = I within 1e-8 in max-entry norm.
    explicit UnitaryMatrix(Eigen::MatrixXcd entries);

    static UnitaryMatrix identity(std::size_t dimension);

    std::size_t dimension() const {
        return static_cast<std::size_t>(m_.rows());
    }
    const Eigen::MatrixXcd &matrix() const {
        return m_;
    }
    UnitaryMatrix adjoint() const;
    /// max |(U U^dagger - I)_{ij}|
    double unitarity_defect() const;

   private:
    Eigen::MatrixXcd m_;
};

/// Pauli string with a real coefficient. labels[q] acts on qubit q.
struct PauliTerm {
    std::vector<Pauli> labels;
    double coefficient = 1.0;

    static PauliTerm single(int num_qubits, int qubit, Pauli p, double coefficient = 1.0);
    static PauliTerm pair(int num_qubits, int q0, Pauli p0, int q1, Pauli p1, double coefficient = 1.0);

    int num_qubits() const {
        return static_cast<int>(labels.size());
    }
    /// Qubits carrying a non-identity label, ascending.
    std::vector<int> support() const;
    bool is_identity() const {
        return support().empty();
    }
};

/// Eigen-decomposition of a Hamiltonian, energies ascending.
struct Spectrum {
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;  // columns are eigenvectors
};

/// Sum of Pauli terms, each supported on at most two contiguous qubits.
/// Copies share one lazily filled spectrum cache; the fill is guarded by
/// std::call_once so concurrent readers are safe.
class LocalHamiltonian {
   public:
    LocalHamiltonian(int num_qubits, std::vector<PauliTerm> terms);

    int num_qubits() const {
        return n_;
    }
    const std::vector<PauliTerm> &terms() const {
        return terms_;
    }
    std::size_t dimension() const {
        return std::size_t{1} << n_;
    }

    Eigen::MatrixXcd dense() const;
    const Spectrum &spectrum() const;
    /// Sum of |coefficient| over the terms whose support includes `qubit`.
    double local_norm(int qubit) const;

   private:
    struct Cache {
        std::once_flag once;
        std::unique_ptr<Spectrum> value;
    };
    int n_;
    std::vector<PauliTerm> terms_;
    std::shared_ptr<Cache> cache_;
};

// --- sampling -------------------------------------------------------------

UnitaryMatrix haar_unitary(std::size_t dimension, Rng &rng);
UnitaryMatrix haar_unitary(std::size_t dimension, Seed seed);
Statevector haar_state(std::size_t dimension, Rng &rng);
Statevector haar_state(std::size_t dimension, Seed seed);

// --- linear algebra -------------------------------------------------------

Statevector apply_unitary(const UnitaryMatrix &u, const Statevector &s);
/// Applies the Pauli string of `p`; the coefficient is ignored.
Statevector apply_pauli(const PauliTerm &p, const Statevector &s);
/// Single-qubit Pauli on qubit `qubit` of an n-qubit vector, in place.
void apply_pauli_inplace(Pauli p, int qubit, int num_qubits, Eigen::VectorXcd &v);
/// Pauli string in place (coefficient ignored).
void apply_pauli_inplace(const PauliTerm &p, Eigen::VectorXcd &v);
/// <a|b>
Complex inner_product(const Statevector &a, const Statevector &b);
/// <s|P|s> for a Pauli string (coefficient ignored).
double pauli_expectation(const PauliTerm &p, const Eigen::VectorXcd &s);

// --- Hamiltonians ---------------------------------------------------------

/// Open mixed-field Ising chain sum Z_i Z_{i+1} + g sum X_i + h sum Z_i.
/// Terms with zero coefficient are omitted; order is bonds, X fields, Z fields.
LocalHamiltonian build_hamiltonian(int num_qubits, double g, double h);

/// H_L + H_R on 2n qubits: H_L acts on qubits [0, n), H_R on [n, 2n).
LocalHamiltonian two_sided(const LocalHamiltonian &half);

/// e^{-iHt}|s>. When s has more qubits than H, H acts on the leading
/// H.num_qubits() qubits and the rest are spectators.
Statevector evolve(const LocalHamiltonian &h, double t, const Statevector &s);

/// Normalized sum_i e^{-beta E_i / 2} |i>_L |i*>_R on 2n qubits.
Statevector tfd_state(const LocalHamiltonian &half, double beta);

/// Exact <s|H|s>.
double energy_expectation(const LocalHamiltonian &h, const Statevector &s);

struct EnergyEstimate {
    double value = 0;
    double std_error = 0;
    std::size_t copies_used = 0;
};

/// Term-by-term Pauli measurement: every term is measured `shots` times,
/// each measurement consuming one fresh copy of the state.
EnergyEstimate sample_energy_measurement(const LocalHamiltonian &h, const Statevector &s,
                                         std::size_t shots, Rng &rng);

/// <s| W(t)^dag V^dag W(t) V |s> with W(t) = e^{iHt} W e^{-iHt}.
Complex otoc(const LocalHamiltonian &h, double t, const PauliTerm &w, const PauliTerm &v,
             const Statevector &s);

struct ScramblingOptions {
    double step = 0.25;
    /// Upper end of the grid; 0 means 50 * n.
    double max_time = 0;
    std::size_t trials = 16;
};

/// First grid time where |trial-averaged OTOC(X_0, Z_{n-1})| over Haar
/// random states (infinite temperature) drops below threshold times its t=0
/// value. Throws NoScramblingError when the grid is exhausted.
double scrambling_time(const LocalHamiltonian &h, double threshold, Rng &rng,
                       const ScramblingOptions &options = {});
double scrambling_time(const LocalHamiltonian &h, double threshold, Seed seed,
                       const ScramblingOptions &options = {});

}  // namespace holoprs::qcore

#endif
