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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qls/baselines.hpp"
#include "qls/hhl.hpp"
#include "qls/numeric.hpp"
#include "qls/statevector.hpp"

namespace qls {

/// A gate list applied to |0...0>, followed by a measurement of the first
/// qubit. Circuit qubit 0 ("the first qubit") is the most significant bit
/// of a system basis index; qubit q sits at bit n_qubits - 1 - q.
struct QuantumCircuitDescription {
    int n_qubits = 0;
    std::vector<GateOp> gates;

    static QuantumCircuitDescription make(int n_qubits,
                                          std::vector<GateOp> gates);
    int gate_count() const { return static_cast<int>(gates.size()); }
};

/// Shape of the clock-register linear system for a T-gate circuit:
/// 3T clock periods (forward gates, an identity hold, then the inverse
/// gates), total dimension 3T * 2^n, contraction factor e^{-1/T}.
struct ClockSystemMeta {
    int gate_count = 0; // T
    int n_qubits = 0;
    int clock_periods = 0;   // 3T
    std::size_t dim = 0;     // 3T * 2^n
    double decay = 0.0;      // e^{-1/T}

    std::size_t system_dim() const { return std::size_t{1} << n_qubits; }
    int clock_of(std::size_t index) const;  // 0-based clock value
    std::size_t system_of(std::size_t index) const;
    /// Accept window in 1-based clock time: T < t <= 2T.
    bool accepts(int clock_value_zero_based) const;
};

/// Row-sparse complex matrix (clock systems are non-Hermitian).
struct SparseComplexRows {
    int dim = 0;
    std::vector<std::vector<std::pair<int, Complex>>> rows;

    DenseMatrix to_dense() const;
    DenseVector matvec(const DenseVector &x) const;
    int max_row_nonzeros() const;
};

struct ClockSystem {
    SparseComplexRows matrix; // A = I - decay * U_clock
    DenseVector rhs;          // |t=1>|0^n> = e_0
    ClockSystemMeta meta;
};

/// Compiles a circuit into A x = b whose solution carries the circuit's
/// time history. Row sparsity is at most 1 + 4 (diagonal plus one
/// two-qubit gate block); singular values lie in
/// [1 - decay, 1 + decay].
ClockSystem build_clock_system(const QuantumCircuitDescription &circuit);

/// The clock-shift unitary U_clock alone (test hook for unitarity and
/// geometric-series identities).
SparseComplexRows build_clock_unitary(const QuantumCircuitDescription &circuit);

/// Normalized solution x = A^{-1} b / ||A^{-1} b|| via the dense direct
/// solver.
DenseVector solve_clock_system(const ClockSystem &system);

struct DecodedSample {
    bool accept = false;
    int first_qubit_bit = 0; // valid when accept
};

/// Splits a flat sample index into (clock, system) and keeps it only when
/// the clock lies in the accept window; the payload is the first qubit of
/// the system index.
DecodedSample decode_clock_sample(std::size_t index,
                                  const ClockSystemMeta &meta);

/// Exact first-qubit marginal of the circuit output (statevector run);
/// n_qubits <= 12.
SampleDistribution
reference_circuit_distribution(const QuantumCircuitDescription &circuit);

enum class ReductionBackend { classical, quantum_hhl };

struct ReductionReport {
    SampleDistribution decoded{};   // over the first-qubit bit
    SampleDistribution reference{}; // exact circuit marginal
    double tv_distance = 0.0;
    double accept_rate = 0.0;
    double kappa = 0.0; // measured singular-value ratio of A
    std::uint64_t raw_samples = 0;
    std::uint64_t accepted_samples = 0;
    ReductionBackend backend = ReductionBackend::classical;
    double epsilon = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::optional<HHLParams> hhl_params;
    std::optional<SolveReport> hhl_report;
};

/// Theorem-style round trip: compile, solve (classically or through HHL on
/// the Hermitian dilation), sample |x_i|^2, decode with rejection, and
/// compare against the exact circuit marginal. Throws DecodeFailureError
/// when the accept rate is below 5% after 10^4 raw samples.
ReductionReport run_reduction(const QuantumCircuitDescription &circuit,
                              double epsilon, ReductionBackend backend,
                              std::uint64_t shots, std::uint64_t seed);

/// qcirc v1: line 1 "qcirc v1"; line 2 "n T"; then T gate lines
/// ("H q", "CNOT qc qt", "U1 q <8 reals>", "U2 q1 q2 <32 reals>", ...).
QuantumCircuitDescription parse_qcirc(std::istream &in);
QuantumCircuitDescription parse_qcirc_file(const std::string &path);
void write_qcirc(std::ostream &out, const QuantumCircuitDescription &circuit);

} // namespace qls
