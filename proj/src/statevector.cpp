// Copyright 2026 The qls authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qls/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qls/counters.hpp"

namespace qls {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kNormGuard = 1e-9;
constexpr double kImpossibleOutcome = 1e-14;

const Complex kI{0.0, 1.0};

void require_unitary(const DenseMatrix &u) {
    const auto n = u.rows();
    if (u.cols() != n || (n != 2 && n != 4)) {
        throw InvalidInputError("gate matrix must be 2x2 or 4x4");
    }
    const double dev =
        (u.adjoint() * u - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(dev <= kUnitaryTol)) {
        throw InvalidInputError("gate matrix is not unitary (deviation " +
                                std::to_string(dev) + ")");
    }
}

DenseMatrix phase_gate(double phi) {
    DenseMatrix u = DenseMatrix::Identity(2, 2);
    u(1, 1) = std::exp(kI * phi);
    return u;
}

DenseMatrix swap_gate() {
    DenseMatrix u = DenseMatrix::Zero(4, 4);
    u(0, 0) = u(3, 3) = 1.0;
    u(1, 2) = u(2, 1) = 1.0;
    return u;
}

} // namespace

RegisterLayout::RegisterLayout(int system, int clock, int ancilla)
    : n_system(system), n_clock(clock), n_ancilla(ancilla) {
    if (system < 0 || clock < 0 || ancilla < 0 || ancilla > 1) {
        throw InvalidInputError("invalid register sizes");
    }
    if (total_qubits() < 1) {
        throw InvalidInputError("layout must contain at least one qubit");
    }
    if (total_qubits() > kMaxQubits) {
        throw CapacityError("layout needs " + std::to_string(total_qubits()) +
                            " qubits, cap is " + std::to_string(kMaxQubits));
    }
}

std::uint64_t RegisterLayout::index(std::uint64_t ancilla, std::uint64_t clock,
                                    std::uint64_t system) const {
    if (ancilla >= (std::uint64_t{1} << n_ancilla) || clock >= clock_dim() ||
        system >= system_dim()) {
        throw InvalidInputError("register value out of range");
    }
    return (ancilla << (n_clock + n_system)) | (clock << n_system) | system;
}

GateOp GateOp::named(GateKind kind, std::vector<int> qubits) {
    GateOp g;
    g.kind = kind;
    g.qubits = std::move(qubits);
    return g;
}

GateOp GateOp::single(int q, const DenseMatrix &u) {
    if (u.rows() != 2 || u.cols() != 2) {
        throw InvalidInputError("single-qubit gate matrix must be 2x2");
    }
    require_unitary(u);
    GateOp g;
    g.kind = GateKind::U1;
    g.qubits = {q};
    g.matrix = u;
    return g;
}

GateOp GateOp::two(int q_high, int q_low, const DenseMatrix &u) {
    if (u.rows() != 4 || u.cols() != 4) {
        throw InvalidInputError("two-qubit gate matrix must be 4x4");
    }
    require_unitary(u);
    GateOp g;
    g.kind = GateKind::U2;
    g.qubits = {q_high, q_low};
    g.matrix = u;
    return g;
}

GateOp GateOp::with_controls(std::vector<int> extra_controls) const {
    GateOp g = *this;
    g.controls.insert(g.controls.end(), extra_controls.begin(),
                      extra_controls.end());
    return g;
}

GateOp GateOp::adjoint() const {
    GateOp g = *this;
    switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::CNOT:
    case GateKind::CZ:
        return g; // self-adjoint
    case GateKind::S:
    case GateKind::T:
        g.kind = GateKind::U1;
        g.matrix = base_matrix().adjoint();
        return g;
    case GateKind::U1:
    case GateKind::U2:
        g.matrix = matrix.adjoint();
        return g;
    }
    return g;
}

DenseMatrix GateOp::base_matrix() const {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    DenseMatrix u;
    switch (kind) {
    case GateKind::H:
        u.resize(2, 2);
        u << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;
        return u;
    case GateKind::X:
        u.resize(2, 2);
        u << 0, 1, 1, 0;
        return u;
    case GateKind::Y:
        u.resize(2, 2);
        u << Complex{0, 0}, -kI, kI, Complex{0, 0};
        return u;
    case GateKind::Z:
        u.resize(2, 2);
        u << 1, 0, 0, -1;
        return u;
    case GateKind::S:
        u.resize(2, 2);
        u << 1, 0, 0, kI;
        return u;
    case GateKind::T:
        u.resize(2, 2);
        u << 1, 0, 0, std::exp(kI * (std::numbers::pi / 4.0));
        return u;
    case GateKind::CNOT:
        u = DenseMatrix::Zero(4, 4);
        u(0, 0) = u(1, 1) = 1.0;
        u(2, 3) = u(3, 2) = 1.0;
        return u;
    case GateKind::CZ:
        u = DenseMatrix::Identity(4, 4);
        u(3, 3) = -1.0;
        return u;
    case GateKind::U1:
    case GateKind::U2:
        return matrix;
    }
    throw InvalidInputError("unknown gate kind");
}

StateVector::StateVector(RegisterLayout layout)
    : layout_(layout), amp_(layout.dim(), Complex{0.0, 0.0}) {
    amp_[0] = Complex{1.0, 0.0};
}

StateVector StateVector::basis_state(RegisterLayout layout,
                                     std::uint64_t index) {
    if (index >= layout.dim()) {
        throw InvalidInputError("basis index out of range");
    }
    StateVector s(layout);
    s.amp_[0] = Complex{0.0, 0.0};
    s.amp_[index] = Complex{1.0, 0.0};
    return s;
}

StateVector StateVector::from_system_vector(RegisterLayout layout,
                                            const DenseVector &amplitudes) {
    if (amplitudes.size() < 1 ||
        amplitudes.size() > static_cast<Eigen::Index>(layout.system_dim())) {
        throw InvalidInputError(
            "system amplitude list has length " +
            std::to_string(amplitudes.size()) + ", register holds " +
            std::to_string(layout.system_dim()));
    }
    if (!amplitudes.allFinite()) {
        throw InvalidInputError("system amplitudes contain non-finite values");
    }
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
        throw InvalidInputError("system amplitudes must be unit norm, got " +
                                std::to_string(norm));
    }
    StateVector s(layout);
    s.amp_[0] = Complex{0.0, 0.0};
    for (Eigen::Index i = 0; i < amplitudes.size(); ++i) {
        s.amp_[static_cast<std::uint64_t>(i)] = amplitudes[i];
    }
    detail::count_state_prep(1);
    return s;
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const Complex &a : amp_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

void StateVector::check_qubit(int q) const {
    if (q < 0 || q >= layout_.total_qubits()) {
        throw InvalidInputError("qubit index " + std::to_string(q) +
                                " out of range");
    }
}

void StateVector::check_norm() const {
    const double n = norm();
    if (std::abs(n - 1.0) > kNormGuard) {
        throw InvalidInputError("state norm drifted to " + std::to_string(n));
    }
}

void StateVector::apply_gate(const GateOp &gate) {
    const DenseMatrix u = gate.base_matrix();
    const int k = static_cast<int>(gate.qubits.size());
    if ((u.rows() == 2 && k != 1) || (u.rows() == 4 && k != 2)) {
        throw InvalidInputError("gate operand count does not match its matrix");
    }
    std::uint64_t target_mask = 0;
    for (int q : gate.qubits) {
        check_qubit(q);
        if (target_mask & (std::uint64_t{1} << q)) {
            throw InvalidInputError("repeated target qubit " +
                                    std::to_string(q));
        }
        target_mask |= std::uint64_t{1} << q;
    }
    std::uint64_t control_mask = 0;
    for (int q : gate.controls) {
        check_qubit(q);
        if (target_mask & (std::uint64_t{1} << q)) {
            throw InvalidInputError("control qubit " + std::to_string(q) +
                                    " overlaps a target");
        }
        control_mask |= std::uint64_t{1} << q;
    }

    // spread[l]: global bits for local index l; qubits[0] is the high bit.
    const int sub_dim = 1 << k;
    std::array<std::uint64_t, 4> spread{};
    for (int l = 0; l < sub_dim; ++l) {
        std::uint64_t bits = 0;
        for (int m = 0; m < k; ++m) {
            if ((l >> (k - 1 - m)) & 1) {
                bits |= std::uint64_t{1} << gate.qubits[m];
            }
        }
        spread[l] = bits;
    }

    std::array<Complex, 4> v{};
    const std::uint64_t dim = layout_.dim();
    for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & target_mask) {
            continue;
        }
        if ((base & control_mask) != control_mask) {
            continue;
        }
        for (int l = 0; l < sub_dim; ++l) {
            v[l] = amp_[base | spread[l]];
        }
        for (int r = 0; r < sub_dim; ++r) {
            Complex acc{0.0, 0.0};
            for (int c = 0; c < sub_dim; ++c) {
                acc += u(r, c) * v[c];
            }
            amp_[base | spread[r]] = acc;
        }
    }
    detail::count_gates(1);
    check_norm();
}

void StateVector::apply_evolution(const SpectralData &spec, double t,
                                  std::span<const int> controls) {
    const auto n = static_cast<Eigen::Index>(layout_.system_dim());
    if (spec.dim() != n) {
        throw InvalidInputError(
            "spectral data dimension " + std::to_string(spec.dim()) +
            " does not match the system register (" + std::to_string(n) + ")");
    }
    if (!std::isfinite(t)) {
        throw InvalidInputError("evolution time must be finite");
    }
    std::uint64_t control_mask = 0;
    for (int q : controls) {
        check_qubit(q);
        if (q < layout_.n_system) {
            throw InvalidInputError(
                "evolution control qubit overlaps the system register");
        }
        control_mask |= std::uint64_t{1} << q;
    }

    DenseVector phases(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        phases[j] =
            std::exp(kI * (spec.eigenvalues[static_cast<std::size_t>(j)] * t));
    }
    const DenseMatrix u = spec.eigenvectors * phases.asDiagonal() *
                          spec.eigenvectors.adjoint();

    const std::uint64_t blocks = layout_.dim() >> layout_.n_system;
    for (std::uint64_t h = 0; h < blocks; ++h) {
        const std::uint64_t base = h << layout_.n_system;
        if ((base & control_mask) != control_mask) {
            continue;
        }
        Eigen::Map<DenseVector> block(amp_.data() + base, n);
        block = (u * block).eval();
    }
    detail::count_gates(1);
    check_norm();
}

std::vector<GateOp> qft_clock_gates(const RegisterLayout &layout,
                                    bool inverse) {
    const int m = layout.n_clock;
    if (m < 1) {
        throw InvalidInputError("QFT requires a nonempty clock register");
    }
    std::vector<GateOp> gates;
    for (int i = m - 1; i >= 0; --i) {
        gates.push_back(GateOp::h(layout.clock_qubit(i)));
        for (int l = i - 1; l >= 0; --l) {
            const double phi =
                2.0 * std::numbers::pi / static_cast<double>(1 << (i - l + 1));
            gates.push_back(GateOp::single(layout.clock_qubit(i), phase_gate(phi))
                                .with_controls({layout.clock_qubit(l)}));
        }
    }
    for (int j = 0; j < m / 2; ++j) {
        gates.push_back(GateOp::two(layout.clock_qubit(j),
                                    layout.clock_qubit(m - 1 - j),
                                    swap_gate()));
    }
    if (inverse) {
        std::reverse(gates.begin(), gates.end());
        for (auto &g : gates) {
            g = g.adjoint();
        }
    }
    return gates;
}

void StateVector::apply_qft_clock(bool inverse) {
    for (const GateOp &g : qft_clock_gates(layout_, inverse)) {
        apply_gate(g);
    }
}

void StateVector::apply_clock_conditioned_ancilla(
    const std::vector<DenseMatrix> &unitaries) {
    if (layout_.n_ancilla != 1) {
        throw InvalidInputError(
            "clock-conditioned rotation needs the ancilla register");
    }
    if (unitaries.size() != layout_.clock_dim()) {
        throw InvalidInputError("expected one unitary per clock value");
    }
    std::uint64_t applied = 0;
    for (const auto &u : unitaries) {
        if (u.rows() != 2 || u.cols() != 2) {
            throw InvalidInputError("ancilla unitaries must be 2x2");
        }
        require_unitary(u);
        if ((u - DenseMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 0.0) {
            ++applied;
        }
    }
    // ancilla is the most significant bit: the lower half of the index
    // space is exactly ancilla = 0
    const std::uint64_t half = layout_.dim() >> 1;
    for (std::uint64_t i0 = 0; i0 < half; ++i0) {
        const std::uint64_t k = i0 >> layout_.n_system;
        const DenseMatrix &u = unitaries[k];
        const std::uint64_t i1 = i0 | half;
        const Complex a0 = amp_[i0];
        const Complex a1 = amp_[i1];
        amp_[i0] = u(0, 0) * a0 + u(0, 1) * a1;
        amp_[i1] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    detail::count_gates(applied);
    check_norm();
}

std::vector<double>
StateVector::measure_distribution(std::span<const int> qubits) const {
    if (qubits.empty()) {
        throw InvalidInputError("measurement qubit subset must be nonempty");
    }
    std::uint64_t seen = 0;
    for (int q : qubits) {
        check_qubit(q);
        if (seen & (std::uint64_t{1} << q)) {
            throw InvalidInputError("repeated measurement qubit " +
                                    std::to_string(q));
        }
        seen |= std::uint64_t{1} << q;
    }
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    const std::uint64_t dim = layout_.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
        const double p = std::norm(amp_[i]);
        if (p == 0.0) {
            continue;
        }
        std::uint64_t key = 0;
        for (std::size_t m = 0; m < qubits.size(); ++m) {
            key |= ((i >> qubits[m]) & 1) << m;
        }
        probs[key] += p;
    }
    return probs;
}

std::map<std::uint64_t, std::uint64_t>
StateVector::sample_counts(std::span<const int> qubits, std::uint64_t shots,
                           std::uint64_t seed) const {
    const std::vector<double> probs = measure_distribution(qubits);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = unit(rng) * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t key = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(),
                                     static_cast<std::ptrdiff_t>(cdf.size()) - 1));
        ++counts[key];
    }
    return counts;
}

double StateVector::outcome_probability(int qubit, int outcome) const {
    check_qubit(qubit);
    if (outcome != 0 && outcome != 1) {
        throw InvalidInputError("measurement outcome must be 0 or 1");
    }
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    double p = 0.0;
    const std::uint64_t dim = layout_.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (((i & mask) != 0) == (outcome == 1)) {
            p += std::norm(amp_[i]);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

double StateVector::postselect(int qubit, int outcome) {
    const double p = outcome_probability(qubit, outcome);
    if (p < kImpossibleOutcome) {
        throw PostselectionError("postselected outcome has probability " +
                                 std::to_string(p) +
                                 "; renormalization undefined");
    }
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const double rescale = 1.0 / std::sqrt(p);
    const std::uint64_t dim = layout_.dim();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (((i & mask) != 0) == (outcome == 1)) {
            amp_[i] *= rescale;
        } else {
            amp_[i] = Complex{0.0, 0.0};
        }
    }
    return p;
}

DenseVector StateVector::system_slice(std::uint64_t ancilla,
                                      std::uint64_t clock) const {
    const std::uint64_t n = layout_.system_dim();
    DenseVector out(static_cast<Eigen::Index>(n));
    for (std::uint64_t s = 0; s < n; ++s) {
        out[static_cast<Eigen::Index>(s)] = amp_[layout_.index(ancilla, clock, s)];
    }
    return out;
}

} // namespace qls
