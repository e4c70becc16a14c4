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

#include <bit>
#include <cmath>
#include <string>

#include "holoprs/common/error.h"

namespace holoprs::qcore {
namespace {

constexpr double kNormTolerance = 1e-8;

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

int log2_exact(std::size_t d) {
    require(d > 0 && std::has_single_bit(d), ErrorCode::kShape,
            "dimension " + std::to_string(d) + " is not a power of two");
    return std::countr_zero(d);
}

struct PauliMasks {
    std::uint64_t flip = 0;   // X or Y
    std::uint64_t phase = 0;  // Z or Y
    int y_count = 0;
};

PauliMasks masks_of(const PauliTerm &p) {
    PauliMasks m;
    int n = p.num_qubits();
    for (int q = 0; q < n; ++q) {
        std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
        switch (p.labels[q]) {
            case Pauli::kI:
                break;
            case Pauli::kX:
                m.flip |= bit;
                break;
            case Pauli::kY:
                m.flip |= bit;
                m.phase |= bit;
                ++m.y_count;
                break;
            case Pauli::kZ:
                m.phase |= bit;
                break;
        }
    }
    return m;
}

Complex i_power(int k) {
    switch (k & 3) {
        case 0:
            return {1, 0};
        case 1:
            return {0, 1};
        case 2:
            return {-1, 0};
        default:
            return {0, -1};
    }
}

Eigen::VectorXcd evolve_in_place_dims(const LocalHamiltonian &h, double t, const Eigen::VectorXcd &v) {
    const Spectrum &spec = h.spectrum();
    Eigen::VectorXcd phases(spec.energies.size());
    for (Eigen::Index i = 0; i < spec.energies.size(); ++i) {
        phases[i] = std::polar(1.0, -spec.energies[i] * t);
    }
    auto dh = static_cast<Eigen::Index>(h.dimension());
    if (v.size() == dh) {
        Eigen::VectorXcd coeffs = spec.vectors.adjoint() * v;
        return spec.vectors * phases.cwiseProduct(coeffs);
    }
    Eigen::Index rest = v.size() / dh;
    Eigen::Map<const RowMajorMatrix> m(v.data(), dh, rest);
    RowMajorMatrix coeffs = spec.vectors.adjoint() * m;
    coeffs = phases.asDiagonal() * coeffs;
    RowMajorMatrix out = spec.vectors * coeffs;
    return Eigen::Map<const Eigen::VectorXcd>(out.data(), v.size());
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::kI:
            return 'I';
        case Pauli::kX:
            return 'X';
        case Pauli::kY:
            return 'Y';
        case Pauli::kZ:
            return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I':
            return Pauli::kI;
        case 'X':
            return Pauli::kX;
        case 'Y':
            return Pauli::kY;
        case 'Z':
            return Pauli::kZ;
        default:
            fail(ErrorCode::kValidation, std::string("not a Pauli label: '") + c + "'");
    }
}

// --- Statevector / UnitaryMatrix -------------------------------------------

Statevector::Statevector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    require(amps_.size() > 0, ErrorCode::kInvalidDimension, "statevector needs dimension >= 1");
    double norm = amps_.norm();
    require(std::abs(norm - 1.0) < kNormTolerance, ErrorCode::kShape,
            "statevector norm " + std::to_string(norm) + " is not 1");
}

Statevector Statevector::basis(std::size_t dimension, std::size_t index) {
    require(dimension > 0, ErrorCode::kInvalidDimension, "dimension must be >= 1");
    require(index < dimension, ErrorCode::kShape, "basis index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return Statevector(std::move(v));
}

Statevector Statevector::zeros(int num_qubits) {
    require(num_qubits >= 0 && num_qubits <= 30, ErrorCode::kResourceLimit, "qubit count out of range");
    return basis(std::size_t{1} << num_qubits, 0);
}

int Statevector::num_qubits() const {
    return log2_exact(dimension());
}

UnitaryMatrix::UnitaryMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
    require(m_.rows() > 0, ErrorCode::kInvalidDimension, "unitary needs dimension >= 1");
    require(m_.rows() == m_.cols(), ErrorCode::kShape, "unitary must be square");
    double defect = unitarity_defect();
    require(defect < kNormTolerance, ErrorCode::kShape,
            "matrix is not unitary (defect " + std::to_string(defect) + ")");
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dimension) {
    require(dimension > 0, ErrorCode::kInvalidDimension, "dimension must be >= 1");
    auto d = static_cast<Eigen::Index>(dimension);
    return UnitaryMatrix(Eigen::MatrixXcd::Identity(d, d));
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return UnitaryMatrix(m_.adjoint());
}

double UnitaryMatrix::unitarity_defect() const {
    Eigen::MatrixXcd prod = m_ * m_.adjoint();
    prod -= Eigen::MatrixXcd::Identity(m_.rows(), m_.cols());
    return prod.cwiseAbs().maxCoeff();
}

// --- PauliTerm / LocalHamiltonian -------------------------------------------

PauliTerm PauliTerm::single(int num_qubits, int qubit, Pauli p, double coefficient) {
    require(qubit >= 0 && qubit < num_qubits, ErrorCode::kShape, "qubit out of range");
    PauliTerm t;
    t.labels.assign(static_cast<std::size_t>(num_qubits), Pauli::kI);
    t.labels[static_cast<std::size_t>(qubit)] = p;
    t.coefficient = coefficient;
    return t;
}

PauliTerm PauliTerm::pair(int num_qubits, int q0, Pauli p0, int q1, Pauli p1, double coefficient) {
    PauliTerm t = single(num_qubits, q0, p0, coefficient);
    require(q1 >= 0 && q1 < num_qubits && q1 != q0, ErrorCode::kShape, "second qubit out of range");
    t.labels[static_cast<std::size_t>(q1)] = p1;
    return t;
}

std::vector<int> PauliTerm::support() const {
    std::vector<int> out;
    for (int q = 0; q < num_qubits(); ++q) {
        if (labels[static_cast<std::size_t>(q)] != Pauli::kI) {
            out.push_back(q);
        }
    }
    return out;
}

LocalHamiltonian::LocalHamiltonian(int num_qubits, std::vector<PauliTerm> terms)
    : n_(num_qubits), terms_(std::move(terms)), cache_(std::make_shared<Cache>()) {
    require(n_ >= 1 && n_ <= kMaxQubits, ErrorCode::kResourceLimit,
            "Hamiltonian qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    for (const auto &term : terms_) {
        require(term.num_qubits() == n_, ErrorCode::kShape, "term width differs from Hamiltonian width");
        auto sup = term.support();
        require(sup.size() <= 2, ErrorCode::kInvalidParameter, "term acts on more than two qubits");
        if (sup.size() == 2) {
            require(sup[1] == sup[0] + 1, ErrorCode::kInvalidParameter, "two-qubit term is not contiguous");
        }
        require(std::isfinite(term.coefficient), ErrorCode::kInvalidParameter, "non-finite coefficient");
    }
}

Eigen::MatrixXcd LocalHamiltonian::dense() const {
    auto d = static_cast<Eigen::Index>(dimension());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (const auto &term : terms_) {
        PauliMasks masks = masks_of(term);
        Complex base = i_power(masks.y_count) * term.coefficient;
        for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(d); ++x) {
            double sign = (std::popcount(x & masks.phase) & 1) ? -1.0 : 1.0;
            m(static_cast<Eigen::Index>(x ^ masks.flip), static_cast<Eigen::Index>(x)) += base * sign;
        }
    }
    return m;
}

const Spectrum &LocalHamiltonian::spectrum() const {
    std::call_once(cache_->once, [this] {
        Eigen::MatrixXcd m = dense();
        auto spec = std::make_unique<Spectrum>();
        if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.real());
            spec->energies = solver.eigenvalues();
            spec->vectors = solver.eigenvectors().cast<Complex>();
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
            spec->energies = solver.eigenvalues();
            spec->vectors = solver.eigenvectors();
        }
        cache_->value = std::move(spec);
    });
    return *cache_->value;
}

double LocalHamiltonian::local_norm(int qubit) const {
    double total = 0;
    for (const auto &term : terms_) {
        if (term.labels[static_cast<std::size_t>(qubit)] != Pauli::kI) {
            total += std::abs(term.coefficient);
        }
    }
    return total;
}

// --- sampling --------------------------------------------------------------

UnitaryMatrix haar_unitary(std::size_t dimension, Rng &rng) {
    require(dimension > 0, ErrorCode::kInvalidDimension, "haar_unitary needs d >= 1");
    auto d = static_cast<Eigen::Index>(dimension);
    Eigen::MatrixXcd z(d, d);
    for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
            z(r, c) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd &r = qr.matrixQR();
    // Multiply column j by the phase of R_jj so the distribution is exactly Haar.
    for (Eigen::Index j = 0; j < d; ++j) {
        Complex rjj = r(j, j);
        double mag = std::abs(rjj);
        Complex phase = mag > 0 ? rjj / mag : Complex{1, 0};
        q.col(j) *= phase;
    }
    return UnitaryMatrix(std::move(q));
}

UnitaryMatrix haar_unitary(std::size_t dimension, Seed seed) {
    Rng rng(seed);
    return haar_unitary(dimension, rng);
}

Statevector haar_state(std::size_t dimension, Rng &rng) {
    require(dimension > 0, ErrorCode::kInvalidDimension, "haar_state needs d >= 1");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dimension));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = rng.complex_normal();
    }
    v /= v.norm();
    return Statevector(std::move(v));
}

Statevector haar_state(std::size_t dimension, Seed seed) {
    Rng rng(seed);
    return haar_state(dimension, rng);
}

// --- linear algebra --------------------------------------------------------

Statevector apply_unitary(const UnitaryMatrix &u, const Statevector &s) {
    require(u.dimension() == s.dimension(), ErrorCode::kShape, "unitary/state dimension mismatch");
    Eigen::VectorXcd out = u.matrix() * s.amplitudes();
    return Statevector(std::move(out));
}

void apply_pauli_inplace(const PauliTerm &p, Eigen::VectorXcd &v) {
    int n = log2_exact(static_cast<std::size_t>(v.size()));
    require(p.num_qubits() == n, ErrorCode::kShape, "Pauli width differs from state width");
    PauliMasks masks = masks_of(p);
    if (masks.flip == 0 && masks.phase == 0) {
        return;
    }
    Complex base = i_power(masks.y_count);
    auto d = static_cast<std::uint64_t>(v.size());
    if (masks.flip == 0) {
        for (std::uint64_t x = 0; x < d; ++x) {
            if (std::popcount(x & masks.phase) & 1) {
                v[static_cast<Eigen::Index>(x)] = -v[static_cast<Eigen::Index>(x)];
            }
        }
        return;
    }
    // Pair up x and x ^ flip; visit each pair once through its smaller member.
    for (std::uint64_t x = 0; x < d; ++x) {
        std::uint64_t y = x ^ masks.flip;
        if (y < x) {
            continue;
        }
        Complex ax = v[static_cast<Eigen::Index>(x)];
        Complex ay = v[static_cast<Eigen::Index>(y)];
        double sx = (std::popcount(x & masks.phase) & 1) ? -1.0 : 1.0;
        double sy = (std::popcount(y & masks.phase) & 1) ? -1.0 : 1.0;
        v[static_cast<Eigen::Index>(y)] = base * sx * ax;
        v[static_cast<Eigen::Index>(x)] = base * sy * ay;
    }
}

void apply_pauli_inplace(Pauli p, int qubit, int num_qubits, Eigen::VectorXcd &v) {
    apply_pauli_inplace(PauliTerm::single(num_qubits, qubit, p), v);
}

Statevector apply_pauli(const PauliTerm &p, const Statevector &s) {
    Eigen::VectorXcd v = s.amplitudes();
    apply_pauli_inplace(p, v);
    return Statevector(std::move(v));
}

Complex inner_product(const Statevector &a, const Statevector &b) {
    require(a.dimension() == b.dimension(), ErrorCode::kShape, "inner product dimension mismatch");
    return a.amplitudes().dot(b.amplitudes());
}

double pauli_expectation(const PauliTerm &p, const Eigen::VectorXcd &s) {
    int n = log2_exact(static_cast<std::size_t>(s.size()));
    require(p.num_qubits() == n, ErrorCode::kShape, "Pauli width differs from state width");
    PauliMasks masks = masks_of(p);
    Complex base = i_power(masks.y_count);
    Complex acc = 0;
    auto d = static_cast<std::uint64_t>(s.size());
    for (std::uint64_t x = 0; x < d; ++x) {
        double sign = (std::popcount(x & masks.phase) & 1) ? -1.0 : 1.0;
        acc += std::conj(s[static_cast<Eigen::Index>(x ^ masks.flip)]) * sign * s[static_cast<Eigen::Index>(x)];
    }
    return (base * acc).real();
}

// --- Hamiltonians ----------------------------------------------------------

LocalHamiltonian build_hamiltonian(int num_qubits, double g, double h) {
    require(num_qubits >= 2, ErrorCode::kInvalidParameter, "mixed-field Ising chain needs n >= 2");
    require(num_qubits <= kMaxQubits, ErrorCode::kResourceLimit, "chain too long for dense simulation");
    std::vector<PauliTerm> terms;
    for (int q = 0; q + 1 < num_qubits; ++q) {
        terms.push_back(PauliTerm::pair(num_qubits, q, Pauli::kZ, q + 1, Pauli::kZ, 1.0));
    }
    if (g != 0.0) {
        for (int q = 0; q < num_qubits; ++q) {
            terms.push_back(PauliTerm::single(num_qubits, q, Pauli::kX, g));
        }
    }
    if (h != 0.0) {
        for (int q = 0; q < num_qubits; ++q) {
            terms.push_back(PauliTerm::single(num_qubits, q, Pauli::kZ, h));
        }
    }
    return LocalHamiltonian(num_qubits, std::move(terms));
}

LocalHamiltonian two_sided(const LocalHamiltonian &half) {
    int n = half.num_qubits();
    std::vector<PauliTerm> terms;
    for (int side = 0; side < 2; ++side) {
        for (const auto &t : half.terms()) {
            PauliTerm wide;
            wide.coefficient = t.coefficient;
            wide.labels.assign(static_cast<std::size_t>(2 * n), Pauli::kI);
            for (int q = 0; q < n; ++q) {
                wide.labels[static_cast<std::size_t>(side * n + q)] = t.labels[static_cast<std::size_t>(q)];
            }
            terms.push_back(std::move(wide));
        }
    }
    return LocalHamiltonian(2 * n, std::move(terms));
}

Statevector evolve(const LocalHamiltonian &h, double t, const Statevector &s) {
    require(s.num_qubits() >= h.num_qubits(), ErrorCode::kShape, "state has fewer qubits than the Hamiltonian");
    require(s.num_qubits() <= kMaxQubits, ErrorCode::kResourceLimit, "state too large for dense evolution");
    if (t == 0.0) {
        return s;
    }
    return Statevector(evolve_in_place_dims(h, t, s.amplitudes()));
}

Statevector tfd_state(const LocalHamiltonian &half, double beta) {
    require(beta >= 0 && std::isfinite(beta), ErrorCode::kInvalidParameter, "beta must be finite and >= 0");
    require(half.num_qubits() <= 6, ErrorCode::kResourceLimit, "TFD half-system limited to 6 qubits");
    const Spectrum &spec = half.spectrum();
    auto d = static_cast<Eigen::Index>(half.dimension());
    // Shift by the ground energy so large beta does not underflow.
    double e0 = spec.energies[0];
    Eigen::VectorXd w(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        w[i] = std::exp(-beta * (spec.energies[i] - e0) / 2);
    }
    // Amplitude (l, r) = sum_i w_i V_li conj(V_ri), i.e. e^{-beta H / 2} up to normalization.
    RowMajorMatrix m = spec.vectors * w.cast<Complex>().asDiagonal() * spec.vectors.adjoint();
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(m.data(), d * d);
    v /= v.norm();
    return Statevector(std::move(v));
}

double energy_expectation(const LocalHamiltonian &h, const Statevector &s) {
    require(s.num_qubits() == h.num_qubits(), ErrorCode::kShape, "Hamiltonian/state width mismatch");
    double e = 0;
    for (const auto &term : h.terms()) {
        e += term.coefficient * pauli_expectation(term, s.amplitudes());
    }
    return e;
}

EnergyEstimate sample_energy_measurement(const LocalHamiltonian &h, const Statevector &s, std::size_t shots,
                                         Rng &rng) {
    require(shots >= 1, ErrorCode::kInvalidParameter, "shots must be >= 1");
    require(s.num_qubits() == h.num_qubits(), ErrorCode::kShape, "Hamiltonian/state width mismatch");
    EnergyEstimate out;
    double variance = 0;
    auto n_shots = static_cast<double>(shots);
    for (const auto &term : h.terms()) {
        double expectation = pauli_expectation(term, s.amplitudes());
        double p_plus = std::clamp((1.0 + expectation) / 2.0, 0.0, 1.0);
        std::size_t plus = 0;
        for (std::size_t k = 0; k < shots; ++k) {
            plus += rng.uniform() < p_plus ? 1 : 0;
        }
        double mean = (2.0 * static_cast<double>(plus) - n_shots) / n_shots;
        out.value += term.coefficient * mean;
        // Unbiased variance of a +-1 outcome; zero when only one shot.
        double var1 = shots > 1 ? (1.0 - mean * mean) * n_shots / (n_shots - 1) : 1.0;
        variance += term.coefficient * term.coefficient * var1 / n_shots;
        out.copies_used += shots;
    }
    out.std_error = std::sqrt(variance);
    return out;
}

Complex otoc(const LocalHamiltonian &h, double t, const PauliTerm &w, const PauliTerm &v, const Statevector &s) {
    require(s.num_qubits() == h.num_qubits(), ErrorCode::kShape, "Hamiltonian/state width mismatch");
    auto heisenberg_w = [&](const Eigen::VectorXcd &x) {
        Eigen::VectorXcd y = evolve_in_place_dims(h, t, x);
        apply_pauli_inplace(w, y);
        return evolve_in_place_dims(h, -t, y);
    };
    Eigen::VectorXcd vs = s.amplitudes();
    apply_pauli_inplace(v, vs);
    Eigen::VectorXcd a = heisenberg_w(vs);
    Eigen::VectorXcd b = heisenberg_w(s.amplitudes());
    apply_pauli_inplace(v, b);
    return b.dot(a);
}

double scrambling_time(const LocalHamiltonian &h, double threshold, Rng &rng, const ScramblingOptions &options) {
    require(threshold > 0 && threshold < 1, ErrorCode::kInvalidParameter, "threshold must be in (0, 1)");
    require(options.step > 0 && options.trials >= 1, ErrorCode::kInvalidParameter, "bad scrambling grid");
    int n = h.num_qubits();
    double max_time = options.max_time > 0 ? options.max_time : 50.0 * n;
    PauliTerm w = PauliTerm::single(n, 0, Pauli::kX);
    PauliTerm v = PauliTerm::single(n, n - 1, Pauli::kZ);

    std::vector<Statevector> states;
    for (std::size_t k = 0; k < options.trials; ++k) {
        states.push_back(haar_state(h.dimension(), rng));
    }
    auto averaged = [&](double t) {
        Complex acc = 0;
        for (const auto &s : states) {
            acc += otoc(h, t, w, v, s);
        }
        return std::abs(acc) / static_cast<double>(states.size());
    };
    double initial = averaged(0.0);
    double last = initial;
    auto steps = static_cast<long>(std::floor(max_time / options.step + 1e-9));
    for (long k = 1; k <= steps; ++k) {
        double t = static_cast<double>(k) * options.step;
        last = averaged(t);
        if (last < threshold * initial) {
            return t;
        }
    }
    throw NoScramblingError(last, "OTOC stayed above threshold up to t = " + std::to_string(max_time));
}

double scrambling_time(const LocalHamiltonian &h, double threshold, Seed seed, const ScramblingOptions &options) {
    Rng rng(seed);
    return scrambling_time(h, threshold, rng, options);
}

}  // namespace holoprs::qcore
