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

#include "qls/encoders.hpp"

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "qls/baselines.hpp"

namespace qls {

namespace {

constexpr double kRankRelTol = 1e-12;

std::size_t pow_int(int base, int exponent) {
    std::size_t out = 1;
    for (int i = 0; i < exponent; ++i) {
        out *= static_cast<std::size_t>(base);
    }
    return out;
}

} // namespace

EncodedSystem encode_least_squares(const DenseMatrix &m,
                                   const DenseVector &b) {
    const int n_rows = static_cast<int>(m.rows());
    const int n_cols = static_cast<int>(m.cols());
    if (n_rows < 1 || n_cols < 1 || n_rows < n_cols) {
        throw InvalidInputError(
            "least squares expects an overdetermined matrix (n_rows >= "
            "n_cols)");
    }
    if (b.size() != n_rows) {
        throw InvalidInputError("right-hand side length " +
                                std::to_string(b.size()) +
                                " does not match n_rows " +
                                std::to_string(n_rows));
    }
    const double b_norm = b.norm();
    if (!(b_norm > 0.0)) {
        throw InvalidInputError("right-hand side must be nonzero");
    }

    Eigen::JacobiSVD<DenseMatrix> svd(m);
    const auto &sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    const double sigma_min = sigma(sigma.size() - 1);
    if (sigma_min <= kRankRelTol * sigma_max) {
        throw InvalidInputError(
            "matrix is rank deficient (singular-value ratio " +
            std::to_string(sigma_min / sigma_max) + ")");
    }

    // dilation eigenvalues are +-sigma plus (n_rows - n_cols) zeros; the
    // zeros belong to the pseudoinverse kernel and stay untouched
    const SparseHermitianMatrix dilated =
        hermitian_dilation(m).scaled(1.0 / sigma_max);

    EncodedSystem sys;
    sys.matrix = dilated;
    sys.rhs = DenseVector::Zero(n_rows + n_cols);
    sys.rhs.head(n_rows) = b / b_norm;
    sys.slice_begin = n_rows;
    sys.slice_end = n_rows + n_cols;
    sys.kappa_report = sigma_max / sigma_min;
    sys.unscale = b_norm / sigma_max;
    sys.provenance = "least-squares n=" + std::to_string(n_rows) +
                     " p=" + std::to_string(n_cols);

    // classical route mirroring the quantum one: spectral pseudoinverse of
    // the dilation applied to (b, 0), second half is x
    const SpectralData spec = spectral_decompose(dilated);
    const double zero_cut = 0.5 * sigma_min / sigma_max;
    const DenseVector beta = spec.eigenvectors.adjoint() * sys.rhs;
    DenseVector solved = DenseVector::Zero(sys.rhs.size());
    for (int j = 0; j < spec.dim(); ++j) {
        const double lambda = spec.eigenvalues[static_cast<std::size_t>(j)];
        if (std::abs(lambda) > zero_cut) {
            solved += (beta[j] / lambda) * spec.eigenvectors.col(j);
        }
    }
    sys.reference_solution =
        solved.segment(sys.slice_begin, sys.slice_size()) * sys.unscale;
    return sys;
}

std::pair<DenseMatrix, DenseVector>
ode_block_system(int state_dim, const MatrixFunction &a_of_t,
                 const VectorFunction &b_of_t, const DenseVector &x_init,
                 const std::vector<double> &time_grid) {
    const int n = state_dim;
    const int m = static_cast<int>(time_grid.size());
    if (n < 1) {
        throw InvalidInputError("ODE state dimension must be >= 1");
    }
    if (m < 2) {
        throw InvalidInputError("time grid needs at least two points");
    }
    for (int i = 1; i < m; ++i) {
        if (!(time_grid[static_cast<std::size_t>(i)] >
              time_grid[static_cast<std::size_t>(i - 1)])) {
            throw InvalidInputError("time grid must be strictly increasing");
        }
    }
    if (x_init.size() != n) {
        throw InvalidInputError("initial state has wrong dimension");
    }

    const int dim = n * m;
    DenseMatrix block = DenseMatrix::Zero(dim, dim);
    DenseVector rhs = DenseVector::Zero(dim);
    block.topLeftCorner(n, n) = DenseMatrix::Identity(n, n);
    rhs.head(n) = x_init;
    for (int i = 1; i < m; ++i) {
        const double t_prev = time_grid[static_cast<std::size_t>(i - 1)];
        const double dt = time_grid[static_cast<std::size_t>(i)] - t_prev;
        const DenseMatrix a = a_of_t(t_prev);
        const DenseVector f = b_of_t(t_prev);
        if (a.rows() != n || a.cols() != n || f.size() != n) {
            throw InvalidInputError(
                "A(t)/b(t) evaluations have inconsistent dimensions");
        }
        block.block(i * n, i * n, n, n) = DenseMatrix::Identity(n, n);
        block.block(i * n, (i - 1) * n, n, n) =
            -(DenseMatrix::Identity(n, n) + dt * a);
        rhs.segment(i * n, n) = dt * f;
    }
    return {std::move(block), std::move(rhs)};
}

EncodedSystem encode_ode(int state_dim, const MatrixFunction &a_of_t,
                         const VectorFunction &b_of_t,
                         const DenseVector &x_init,
                         const std::vector<double> &time_grid) {
    auto [block, rhs] =
        ode_block_system(state_dim, a_of_t, b_of_t, x_init, time_grid);
    const double rhs_norm = rhs.norm();
    if (!(rhs_norm > 0.0)) {
        throw InvalidInputError(
            "trivial ODE instance: zero initial state and zero source");
    }
    const int dim = static_cast<int>(block.rows());

    auto [scaled, scale] = spectrum_rescale(hermitian_dilation(block));

    EncodedSystem sys;
    sys.matrix = std::move(scaled);
    sys.rhs = DenseVector::Zero(2 * dim);
    sys.rhs.head(dim) = rhs / rhs_norm;
    sys.slice_begin = dim;
    sys.slice_end = 2 * dim;
    sys.kappa_report = condition_number(sys.matrix);
    sys.unscale = rhs_norm / scale;
    sys.provenance = "ode N=" + std::to_string(state_dim) +
                     " m=" + std::to_string(time_grid.size());
    sys.reference_solution = direct_solve(block, rhs);
    return sys;
}

SparseHermitianMatrix poisson_stencil(int dimension, int points_per_axis) {
    if (dimension < 1 || dimension > 3) {
        throw InvalidInputError("Poisson dimension must be 1, 2 or 3");
    }
    if (points_per_axis < 2) {
        throw InvalidInputError("need at least 2 interior points per axis");
    }
    const std::size_t dim = pow_int(points_per_axis, dimension);
    if (dim > static_cast<std::size_t>(kSpectralDimCap)) {
        throw CapacityError("Poisson grid dimension " + std::to_string(dim) +
                            " exceeds the cap " +
                            std::to_string(kSpectralDimCap));
    }
    const double h = 1.0 / static_cast<double>(points_per_axis + 1);
    const double inv_h2 = 1.0 / (h * h);

    std::vector<MatrixEntry> entries;
    const int l = points_per_axis;
    for (std::size_t i = 0; i < dim; ++i) {
        entries.push_back({static_cast<int>(i), static_cast<int>(i),
                           Complex{2.0 * dimension * inv_h2, 0.0}});
        std::size_t stride = 1;
        std::size_t rest = i;
        for (int axis = 0; axis < dimension; ++axis) {
            const int coord = static_cast<int>(rest % static_cast<std::size_t>(l));
            rest /= static_cast<std::size_t>(l);
            if (coord < l - 1) {
                entries.push_back({static_cast<int>(i),
                                   static_cast<int>(i + stride),
                                   Complex{-inv_h2, 0.0}});
            }
            stride *= static_cast<std::size_t>(l);
        }
    }
    return SparseHermitianMatrix::from_entries(static_cast<int>(dim), entries);
}

EncodedSystem encode_poisson(int dimension, int points_per_axis,
                             const std::vector<double> &source) {
    SparseHermitianMatrix stencil = poisson_stencil(dimension, points_per_axis);
    const std::size_t dim = static_cast<std::size_t>(stencil.dim());
    if (source.size() != dim) {
        throw InvalidInputError("source has " + std::to_string(source.size()) +
                                " samples, grid has " + std::to_string(dim));
    }
    DenseVector q(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        if (!std::isfinite(source[i])) {
            throw InvalidInputError("source contains non-finite samples");
        }
        q[static_cast<Eigen::Index>(i)] = Complex{source[i], 0.0};
    }
    const double q_norm = q.norm();
    if (!(q_norm > 0.0)) {
        throw InvalidInputError("source must be nonzero");
    }

    const SpectralData spec = spectral_decompose(stencil);
    const double kappa = condition_number(spec);
    const double scale = spec.max_abs_eigenvalue();

    EncodedSystem sys;
    sys.matrix = stencil.scaled(1.0 / scale);
    sys.rhs = q / q_norm;
    sys.slice_begin = 0;
    sys.slice_end = static_cast<int>(dim);
    sys.kappa_report = kappa;
    sys.unscale = q_norm / scale;
    sys.provenance = "poisson d=" + std::to_string(dimension) +
                     " L=" + std::to_string(points_per_axis);
    sys.reference_solution = direct_solve(stencil, q);
    return sys;
}

KappaProbeResult kappa_scaling_probe(int dimension,
                                     const std::vector<int> &l_values) {
    if (l_values.empty()) {
        throw InvalidInputError("probe needs at least one grid size");
    }
    KappaProbeResult result;
    result.rows.reserve(l_values.size());
    for (int l : l_values) {
        result.rows.push_back(
            {l, condition_number(poisson_stencil(dimension, l))});
    }
    if (result.rows.size() >= 2) {
        // log-log least-squares slope
        double mean_x = 0.0, mean_y = 0.0;
        for (const auto &row : result.rows) {
            mean_x += std::log(static_cast<double>(row.points_per_axis));
            mean_y += std::log(row.kappa);
        }
        mean_x /= static_cast<double>(result.rows.size());
        mean_y /= static_cast<double>(result.rows.size());
        double num = 0.0, den = 0.0;
        for (const auto &row : result.rows) {
            const double dx =
                std::log(static_cast<double>(row.points_per_axis)) - mean_x;
            num += dx * (std::log(row.kappa) - mean_y);
            den += dx * dx;
        }
        if (den > 0.0) {
            result.fitted_exponent = num / den;
        }
    }
    return result;
}

} // namespace qls
