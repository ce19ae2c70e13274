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

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qls/numeric.hpp"

namespace qls {

inline constexpr int kMaxQubits = 24;

/// Register layout over the global qubit index space.
///
/// Qubit q is bit q of the amplitude index. The system register occupies
/// the low bits [0, n_system), the clock register the middle bits, and the
/// optional rotation ancilla is the most significant bit. A global basis
/// index therefore reads ancilla | clock | system.
struct RegisterLayout {
    int n_system = 0;
    int n_clock = 0;
    int n_ancilla = 0;

    RegisterLayout() = default;
    RegisterLayout(int system, int clock, int ancilla);

    int total_qubits() const { return n_system + n_clock + n_ancilla; }
    std::uint64_t dim() const { return std::uint64_t{1} << total_qubits(); }
    std::uint64_t system_dim() const { return std::uint64_t{1} << n_system; }
    std::uint64_t clock_dim() const { return std::uint64_t{1} << n_clock; }

    int system_qubit(int i) const { return i; }
    int clock_qubit(int j) const { return n_system + j; }
    int ancilla_qubit() const { return n_system + n_clock; }

    /// Global index assembled from per-register values.
    std::uint64_t index(std::uint64_t ancilla, std::uint64_t clock,
                        std::uint64_t system) const;
};

enum class GateKind { H, X, Y, Z, S, T, CNOT, CZ, U1, U2 };

/// One quantum gate: a named one/two-qubit unitary or an explicit 2x2/4x4
/// matrix, plus an optional set of extra control qubits. For two-qubit
/// matrices, qubits[0] indexes the high bit of the 4-dim local space.
struct GateOp {
    GateKind kind = GateKind::H;
    std::vector<int> qubits;
    std::vector<int> controls;
    DenseMatrix matrix; // only for U1/U2

    static GateOp h(int q) { return named(GateKind::H, {q}); }
    static GateOp x(int q) { return named(GateKind::X, {q}); }
    static GateOp y(int q) { return named(GateKind::Y, {q}); }
    static GateOp z(int q) { return named(GateKind::Z, {q}); }
    static GateOp s(int q) { return named(GateKind::S, {q}); }
    static GateOp t(int q) { return named(GateKind::T, {q}); }
    static GateOp cnot(int control, int target) {
        return named(GateKind::CNOT, {control, target});
    }
    static GateOp cz(int a, int b) { return named(GateKind::CZ, {a, b}); }
    /// Arbitrary single-qubit unitary (validated, 1e-10).
    static GateOp single(int q, const DenseMatrix &u);
    /// Arbitrary two-qubit unitary (validated, 1e-10); q_high is the high
    /// local bit.
    static GateOp two(int q_high, int q_low, const DenseMatrix &u);

    GateOp with_controls(std::vector<int> extra_controls) const;
    GateOp adjoint() const;

    /// The 2x2 or 4x4 unitary this gate applies on its operand qubits.
    DenseMatrix base_matrix() const;

  private:
    static GateOp named(GateKind kind, std::vector<int> qubits);
};

/// Exact statevector over a RegisterLayout. Operations mutate in place
/// under exclusive ownership and preserve the unit norm (guarded to 1e-9;
/// only postselect intentionally rescales).
class StateVector {
  public:
    /// All registers in |0>.
    explicit StateVector(RegisterLayout layout);

    /// Computational basis state at a global index.
    static StateVector basis_state(RegisterLayout layout, std::uint64_t index);

    /// Loads amplitudes into the system register (zero-padded up to
    /// 2^n_system), clock and ancilla in |0>. Counts one T_B state
    /// preparation. Input must be unit-norm within 1e-10.
    static StateVector from_system_vector(RegisterLayout layout,
                                          const DenseVector &amplitudes);

    const RegisterLayout &layout() const { return layout_; }
    std::uint64_t dim() const { return layout_.dim(); }
    std::span<const Complex> amplitudes() const { return amp_; }
    Complex amplitude(std::uint64_t index) const { return amp_.at(index); }
    double norm() const;

    void apply_gate(const GateOp &gate);

    /// e^{i A t} on the system register through the eigenbasis, applied to
    /// the components where every qubit in `controls` is 1. `spec` must
    /// match the padded system dimension.
    void apply_evolution(const SpectralData &spec, double t,
                         std::span<const int> controls = {});

    /// QFT (or inverse QFT) on the clock register, implemented as the
    /// standard Hadamard / controlled-phase / bit-reversal gate circuit:
    /// matrix elements omega^{jk} / sqrt(2^n_clock).
    void apply_qft_clock(bool inverse);

    /// Clock-value-conditioned ancilla unitary: |k>|a> -> |k>(U_k|a>).
    /// Takes one 2x2 unitary per clock value (identity entries allowed);
    /// requires n_ancilla = 1. Counts one gate per non-identity U_k.
    void apply_clock_conditioned_ancilla(
        const std::vector<DenseMatrix> &unitaries);

    /// Exact marginal over the listed qubits. Outcome key packs the value
    /// of qubits[m] into bit m.
    std::vector<double> measure_distribution(std::span<const int> qubits) const;

    /// Seeded sampling from measure_distribution.
    std::map<std::uint64_t, std::uint64_t>
    sample_counts(std::span<const int> qubits, std::uint64_t shots,
                  std::uint64_t seed) const;

    /// Probability of measuring `outcome` on one qubit.
    double outcome_probability(int qubit, int outcome) const;

    /// Conditions on one qubit's outcome and renormalizes; returns the
    /// outcome probability. Probabilities below 1e-14 are rejected as
    /// impossible outcomes.
    double postselect(int qubit, int outcome);

    /// Slice of system-register amplitudes at fixed ancilla and clock
    /// values (not renormalized).
    DenseVector system_slice(std::uint64_t ancilla, std::uint64_t clock) const;

  private:
    void check_qubit(int q) const;
    void check_norm() const;

    RegisterLayout layout_;
    std::vector<Complex> amp_;
};

/// Gate list for the clock-register QFT; exposed for circuit-level reuse
/// and gate counting in tests.
std::vector<GateOp> qft_clock_gates(const RegisterLayout &layout,
                                    bool inverse);

} // namespace qls
