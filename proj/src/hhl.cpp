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

#include "qls/hhl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qls/baselines.hpp"

namespace qls {

namespace {

constexpr double kBandSlack = 1e-9;
constexpr double kZeroEigenvalueTol = 1e-12;
constexpr double kDegenerateProbability = 1e-12;

int ceil_log2(int n) {
    int bits = 0;
    while ((1 << bits) < n) {
        ++bits;
    }
    return bits;
}

/// Eigenvalues must sit in [-1, -1/kappa] u [1/kappa, 1]. Exact zeros are
/// tolerated: they belong to the pseudoinverse kernel (dilations of
/// rectangular systems) and are filtered by the lambda = 0 identity branch
/// plus postselection.
void check_band(const SpectralData &spec, double kappa) {
    for (double lambda : spec.eigenvalues) {
        const double mag = std::abs(lambda);
        if (mag <= kZeroEigenvalueTol) {
            continue;
        }
        if (mag > 1.0 + kBandSlack || mag < 1.0 / kappa - kBandSlack) {
            throw BandViolationError(
                "eigenvalue " + std::to_string(lambda) +
                " outside the band [-1, -1/kappa] u [1/kappa, 1] for kappa " +
                std::to_string(kappa));
        }
    }
}

/// Extends the spectral data of A to the padded power-of-two dimension.
/// Padded coordinates carry eigenvalue 1 (inside the band) on the extra
/// canonical basis vectors, so they never distort kappa and never couple
/// to a zero-padded |b>.
SpectralData pad_spectral(const SpectralData &spec, int padded_dim) {
    const int n = spec.dim();
    if (padded_dim == n) {
        return spec;
    }
    SpectralData out;
    out.eigenvalues.reserve(static_cast<std::size_t>(padded_dim));
    out.eigenvectors = DenseMatrix::Zero(padded_dim, padded_dim);
    int col = 0;
    // padded eigenvalue 1 entries first to keep descending |lambda| order
    for (int j = n; j < padded_dim; ++j) {
        out.eigenvalues.push_back(1.0);
        out.eigenvectors(j, col) = Complex{1.0, 0.0};
        ++col;
    }
    for (int j = 0; j < n; ++j) {
        out.eigenvalues.push_back(spec.eigenvalues[static_cast<std::size_t>(j)]);
        out.eigenvectors.block(0, col, n, 1) = spec.eigenvectors.col(j);
        ++col;
    }
    std::vector<int> order(static_cast<std::size_t>(padded_dim));
    for (int i = 0; i < padded_dim; ++i) {
        order[static_cast<std::size_t>(i)] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return std::abs(out.eigenvalues[static_cast<std::size_t>(x)]) >
               std::abs(out.eigenvalues[static_cast<std::size_t>(y)]);
    });
    SpectralData sorted;
    sorted.eigenvalues.resize(static_cast<std::size_t>(padded_dim));
    sorted.eigenvectors.resize(padded_dim, padded_dim);
    for (int k = 0; k < padded_dim; ++k) {
        sorted.eigenvalues[static_cast<std::size_t>(k)] =
            out.eigenvalues[static_cast<std::size_t>(order[k])];
        sorted.eigenvectors.col(k) = out.eigenvectors.col(order[k]);
    }
    return sorted;
}

struct PipelineState {
    StateVector state;
    RegisterLayout layout;
    ResourceUsage usage;
};

/// Runs phase estimation, the conditional rotation and the uncomputation;
/// stops just before the ancilla measurement.
PipelineState run_pipeline(const SparseHermitianMatrix &a,
                           const DenseVector &b, const HHLParams &params) {
    if (b.size() != a.dim()) {
        throw InvalidInputError("right-hand side has dimension " +
                                std::to_string(b.size()) + ", matrix has " +
                                std::to_string(a.dim()));
    }
    if (std::abs(b.norm() - 1.0) > 1e-10) {
        throw InvalidInputError("||b|| must be 1, got " +
                                std::to_string(b.norm()));
    }

    const SpectralData spec = spectral_decompose(a);
    check_band(spec, params.kappa);

    const int n_system = std::max(1, ceil_log2(a.dim()));
    const RegisterLayout layout(n_system, params.n_clock, 1);
    const int padded_dim = static_cast<int>(layout.system_dim());
    const SpectralData padded = pad_spectral(spec, padded_dim);

    const ResourceCounters before = counters_snapshot();
    StateVector state = StateVector::from_system_vector(layout, b);

    for (int j = 0; j < params.n_clock; ++j) {
        state.apply_gate(GateOp::h(layout.clock_qubit(j)));
    }

    // controlled-e^{iA t0 2^j} ladder; each application stands in for one
    // full row sweep of the oracle by the simulated evolution subroutine
    for (int j = 0; j < params.n_clock; ++j) {
        const int control = layout.clock_qubit(j);
        state.apply_evolution(padded, params.t0 * static_cast<double>(1 << j),
                              std::span<const int>(&control, 1));
        detail::count_row_oracle(static_cast<std::uint64_t>(a.dim()));
    }

    state.apply_qft_clock(/*inverse=*/true);

    // ancilla rotation |k>|0> -> |k>(sqrt(1-(C/lambda)^2)|0> + C/lambda|1>);
    // k = 0 decodes to lambda = 0 and keeps the identity, so that branch
    // stays on ancilla |0> and is removed by postselection. Decoded values
    // below C (possible only in leakage bins) clamp to a full rotation.
    {
        std::vector<DenseMatrix> rotations;
        rotations.reserve(layout.clock_dim());
        rotations.push_back(DenseMatrix::Identity(2, 2));
        for (std::uint64_t k = 1; k < layout.clock_dim(); ++k) {
            const double lambda =
                decode_eigenvalue(k, params.n_clock, params.t0);
            const double sine =
                std::clamp(params.rotation_c / lambda, -1.0, 1.0);
            const double cosine = std::sqrt(std::max(0.0, 1.0 - sine * sine));
            DenseMatrix rot(2, 2);
            rot << cosine, -sine, sine, cosine;
            rotations.push_back(std::move(rot));
        }
        state.apply_clock_conditioned_ancilla(rotations);
    }

    // uncompute the clock: QFT, inverse ladder, Hadamards
    state.apply_qft_clock(/*inverse=*/false);
    for (int j = params.n_clock - 1; j >= 0; --j) {
        const int control = layout.clock_qubit(j);
        state.apply_evolution(padded, -params.t0 * static_cast<double>(1 << j),
                              std::span<const int>(&control, 1));
        detail::count_row_oracle(static_cast<std::uint64_t>(a.dim()));
    }
    for (int j = 0; j < params.n_clock; ++j) {
        state.apply_gate(GateOp::h(layout.clock_qubit(j)));
    }

    const ResourceCounters delta =
        counters_delta(before, counters_snapshot());
    ResourceUsage usage;
    usage.row_oracle_calls = delta.row_oracle_calls;
    usage.state_prep_calls = delta.state_prep_calls;
    usage.gate_applications = delta.gate_applications;
    usage.clock_bits = params.n_clock;
    return {std::move(state), layout, usage};
}

} // namespace

HHLParams HHLParams::make(int n_clock, double t0, double rotation_c,
                          double kappa, double epsilon) {
    if (n_clock < 1) {
        throw InvalidInputError("n_clock must be >= 1");
    }
    if (!(kappa >= 1.0)) {
        throw InvalidInputError("kappa must be >= 1");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidInputError("epsilon must lie in (0, 1)");
    }
    if (!(rotation_c > 0.0) || rotation_c > 1.0 / kappa + 1e-12) {
        throw InvalidInputError(
            "rotation constant must satisfy 0 < C <= 1/kappa");
    }
    if (!(t0 > 0.0) || t0 > std::numbers::pi / 2.0 + 1e-12) {
        throw InvalidInputError(
            "t0 must lie in (0, pi/2] to keep phases sign-unambiguous");
    }
    return {n_clock, t0, rotation_c, kappa, epsilon};
}

HHLParams choose_params(double kappa, double epsilon, int n_system) {
    if (!(kappa >= 1.0)) {
        throw InvalidInputError("kappa must be >= 1");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidInputError("epsilon must lie in (0, 1)");
    }
    const int n_clock =
        static_cast<int>(std::ceil(std::log2(kappa / epsilon) - 1e-9)) + 2;
    const int total = n_system + n_clock + 1;
    if (total > kMaxQubits) {
        throw CapacityError(
            "requested accuracy needs " + std::to_string(n_clock) +
            " clock bits; " + std::to_string(total) + " qubits total exceeds " +
            std::to_string(kMaxQubits));
    }
    return HHLParams::make(n_clock, std::numbers::pi / 2.0, 1.0 / kappa, kappa,
                           epsilon);
}

double decode_eigenvalue(std::uint64_t k, int n_clock, double t0) {
    if (n_clock < 1 || k >= (std::uint64_t{1} << n_clock)) {
        throw InvalidInputError("clock integer out of range");
    }
    const std::int64_t half = std::int64_t{1} << (n_clock - 1);
    const std::int64_t signed_k = static_cast<std::int64_t>(k) < half
                                      ? static_cast<std::int64_t>(k)
                                      : static_cast<std::int64_t>(k) -
                                            (std::int64_t{1} << n_clock);
    return 2.0 * std::numbers::pi * static_cast<double>(signed_k) /
           (static_cast<double>(std::uint64_t{1} << n_clock) * t0);
}

SolveReport hhl_solve(const SparseHermitianMatrix &a, const DenseVector &b,
                      const HHLParams &params, const HHLOptions &options) {
    PipelineState pipe = run_pipeline(a, b, params);

    const double p =
        pipe.state.postselect(pipe.layout.ancilla_qubit(), /*outcome=*/1);
    if (p < kDegenerateProbability) {
        throw PostselectionError("success probability " + std::to_string(p) +
                                 " is degenerate");
    }

    // system register conditioned on the uncomputed clock being |0>
    DenseVector slice = pipe.state.system_slice(/*ancilla=*/1, /*clock=*/0);
    const double slice_norm = slice.norm();
    if (slice_norm < kDegenerateProbability) {
        throw PostselectionError(
            "no solution amplitude left on the clock-|0> branch");
    }
    DenseVector output = slice.head(a.dim()) / slice_norm;

    SolveReport report;
    report.success_probability = std::clamp(p, 0.0, 1.0);
    report.norm_estimate =
        std::sqrt(p) / params.rotation_c * options.norm_unscale;
    report.output_state = std::move(output);
    report.resources = pipe.usage;

    if (options.compute_oracle_fidelity) {
        const DenseVector x_direct = direct_solve(a, b);
        // overlap with |clock = 0>|x_oracle> on the postselected state, so
        // clock leakage counts against the fidelity
        DenseVector oracle_padded =
            DenseVector::Zero(static_cast<Eigen::Index>(
                pipe.layout.system_dim()));
        oracle_padded.head(a.dim()) = x_direct / x_direct.norm();
        report.fidelity_vs_oracle =
            std::min(1.0, std::abs(oracle_padded.dot(slice)));
    }
    return report;
}

NormEstimate estimate_norm_sampled(const SparseHermitianMatrix &a,
                                   const DenseVector &b,
                                   const HHLParams &params,
                                   std::uint64_t shots, std::uint64_t seed,
                                   const HHLOptions &options) {
    if (shots < 1) {
        throw InvalidInputError("shots must be >= 1");
    }
    PipelineState pipe = run_pipeline(a, b, params);
    const double p =
        pipe.state.outcome_probability(pipe.layout.ancilla_qubit(), 1);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t successes = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        if (unit(rng) < p) {
            ++successes;
        }
    }

    NormEstimate out;
    out.shots = shots;
    out.successes = successes;
    const double p_hat =
        static_cast<double>(successes) / static_cast<double>(shots);
    if (successes == 0) {
        out.estimate = 0.0;
        out.standard_error = 0.0;
        out.reliable = false;
        return out;
    }
    out.estimate =
        std::sqrt(p_hat) / params.rotation_c * options.norm_unscale;
    // delta method on estimate = sqrt(p_hat)/C
    out.standard_error = options.norm_unscale *
                         std::sqrt((1.0 - p_hat) /
                                   static_cast<double>(shots)) /
                         (2.0 * params.rotation_c);
    return out;
}

} // namespace qls
