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
#include <optional>

#include "qls/counters.hpp"
#include "qls/numeric.hpp"
#include "qls/statevector.hpp"

namespace qls {

/// Solver schedule. Invariants: 0 < C <= 1/kappa so every in-band
/// rotation amplitude C/lambda stays <= 1, and t0 <= pi/2 so the phase
/// lambda*t0/(2pi) of any |lambda| <= 1 stays within +-1/4 and the
/// two's-complement sign decoding never wraps.
struct HHLParams {
    int n_clock = 0;
    double t0 = 0.0;
    double rotation_c = 0.0;
    double kappa = 1.0;
    double epsilon = 0.1;

    static HHLParams make(int n_clock, double t0, double rotation_c,
                          double kappa, double epsilon);
};

/// Clock resolution n_clock = ceil(log2(kappa/epsilon)) + 2, t0 = pi/2,
/// C = 1/kappa. Throws CapacityError when n_system + n_clock + 1 exceeds
/// the qubit cap.
HHLParams choose_params(double kappa, double epsilon, int n_system = 0);

/// Signed eigenvalue estimate for a clock integer: k_s = k (k < 2^{m-1})
/// or k - 2^m, lambda = 2 pi k_s / (2^m t0).
double decode_eigenvalue(std::uint64_t k, int n_clock, double t0);

struct ResourceUsage {
    std::uint64_t row_oracle_calls = 0; // T_A
    std::uint64_t state_prep_calls = 0; // T_B
    std::uint64_t gate_applications = 0;
    int clock_bits = 0;
};

struct SolveReport {
    DenseVector output_state; // |x> on the system register, padding removed
    double success_probability = 0.0;
    double norm_estimate = 0.0;
    std::optional<double> fidelity_vs_oracle;
    ResourceUsage resources;
};

struct HHLOptions {
    /// Compare against the classical direct solve and fill
    /// fidelity_vs_oracle.
    bool compute_oracle_fidelity = true;
    /// Multiplies the norm estimate; pass 1/scale after spectrum_rescale
    /// to report the original system's ||x'||.
    double norm_unscale = 1.0;
};

/// End-to-end solver: load |b>, Hadamard the clock, run the controlled
/// e^{iAt} ladder, inverse QFT, rotate the ancilla by C/lambda, uncompute
/// the clock, postselect ancilla = 1. Returns the system-register state,
/// the exact success probability p and norm estimate sqrt(p)/C.
SolveReport hhl_solve(const SparseHermitianMatrix &a, const DenseVector &b,
                      const HHLParams &params, const HHLOptions &options = {});

struct NormEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t shots = 0;
    bool reliable = true; // false when no shot succeeded
};

/// Samples the ancilla `shots` times from the exact pre-postselection
/// state and propagates the binomial error into the norm estimate.
NormEstimate estimate_norm_sampled(const SparseHermitianMatrix &a,
                                   const DenseVector &b,
                                   const HHLParams &params,
                                   std::uint64_t shots, std::uint64_t seed,
                                   const HHLOptions &options = {});

} // namespace qls
