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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qls/numeric.hpp"

namespace qls {

/// A linear system ready for the quantum solver: Hermitian (dilated where
/// the source problem is not), spectrum rescaled to unit radius, unit
/// right-hand side. `solution_slice` marks the physically meaningful
/// coordinates and `unscale` recovers the physical ||x'|| from the solver's
/// estimate; `reference_solution` is the classical solution on the slice at
/// physical scale.
struct EncodedSystem {
    SparseHermitianMatrix matrix;
    DenseVector rhs;
    double unscale = 1.0;
    int slice_begin = 0;
    int slice_end = 0;
    double kappa_report = 1.0;
    std::string provenance;
    DenseVector reference_solution;

    int slice_size() const { return slice_end - slice_begin; }
};

/// arg min ||Mx - b|| through the Hermitian dilation: inverting
/// [[0, M], [M*, 0]] on (b, 0) pseudo-inversely yields (0, x). M must have
/// full column rank and n_rows >= n_cols.
EncodedSystem encode_least_squares(const DenseMatrix &m, const DenseVector &b);

using MatrixFunction = std::function<DenseMatrix(double)>;
using VectorFunction = std::function<DenseVector(double)>;

/// Forward-Euler time stepping x(t_{i+1}) = x(t_i) + (A(t_i) x(t_i) +
/// b(t_i)) dt as one block lower-bidiagonal system over all m steps,
/// wrapped in the Hermitian dilation for the quantum path.
EncodedSystem encode_ode(int state_dim, const MatrixFunction &a_of_t,
                         const VectorFunction &b_of_t,
                         const DenseVector &x_init,
                         const std::vector<double> &time_grid);

/// The pre-dilation square block system (test hook: its direct solve must
/// reproduce the explicit Euler recursion exactly).
std::pair<DenseMatrix, DenseVector>
ode_block_system(int state_dim, const MatrixFunction &a_of_t,
                 const VectorFunction &b_of_t, const DenseVector &x_init,
                 const std::vector<double> &time_grid);

/// -laplace(u) = Q on the unit box with zero Dirichlet boundary, standard
/// (2d)-point stencil, L interior points per axis, h = 1/(L+1).
EncodedSystem encode_poisson(int dimension, int points_per_axis,
                             const std::vector<double> &source);

/// Unscaled finite-difference operator (Kronecker sum of 1D stencils).
SparseHermitianMatrix poisson_stencil(int dimension, int points_per_axis);

struct KappaProbeRow {
    int points_per_axis = 0;
    double kappa = 0.0;
};

struct KappaProbeResult {
    std::vector<KappaProbeRow> rows;
    /// Log-log least-squares slope of kappa vs L; absent for fewer than
    /// two probe points.
    std::optional<double> fitted_exponent;
};

/// Exact condition number of the Poisson operator per grid size.
KappaProbeResult kappa_scaling_probe(int dimension,
                                     const std::vector<int> &l_values);

} // namespace qls
