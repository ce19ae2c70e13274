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

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qls/error.hpp"

namespace qls {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Largest dimension the dense spectral oracle will accept.
inline constexpr int kSpectralDimCap = 4096;

/// Relative threshold below which a spectrum counts as singular.
inline constexpr double kSingularRelTol = 1e-14;

struct MatrixEntry {
    int row = 0;
    int col = 0;
    Complex value{0.0, 0.0};
};

/// Hermitian matrix with row-oracle access.
///
/// Storage keeps the upper triangle plus the diagonal; the lower triangle
/// exists only implicitly through conjugation, so Hermiticity cannot be
/// broken after construction. Diagonal entries must be real, every stored
/// value must be finite, and exact zeros are dropped. Instances are
/// immutable and safe to share across threads.
class SparseHermitianMatrix {
  public:
    /// Empty placeholder (dim 0); usable only after assignment.
    SparseHermitianMatrix() = default;

    /// Builds a matrix from upper-triangle entries (row <= col required).
    /// When `declared_kappa` is given it is cross-checked against the
    /// computed condition number (5% tolerance).
    static SparseHermitianMatrix
    from_entries(int dim, const std::vector<MatrixEntry> &entries,
                 std::optional<double> declared_kappa = std::nullopt);

    static SparseHermitianMatrix identity(int dim);
    static SparseHermitianMatrix diagonal(const std::vector<double> &values);

    /// Accepts a dense matrix that is Hermitian within `tol` (max-abs of
    /// A - A^dagger) and canonicalizes it to upper-triangle storage.
    static SparseHermitianMatrix
    from_dense(const DenseMatrix &a, double tol = 1e-12,
               std::optional<double> declared_kappa = std::nullopt);

    int dim() const { return dim_; }

    /// True maximum number of nonzeros in any (logical) row.
    int sparsity() const { return sparsity_; }

    std::optional<double> declared_kappa() const { return declared_kappa_; }

    /// Row oracle: all nonzeros of row i in ascending column order, lower
    /// triangle materialized by conjugation. Each call counts one T_A.
    std::vector<std::pair<int, Complex>> row(int i) const;

    /// Logical entry (i, j); zero when absent.
    Complex entry(int i, int j) const;

    /// Stored upper-triangle entries, rows ascending, columns ascending.
    std::vector<MatrixEntry> stored_entries() const;

    /// Dense materialization. Test/report convenience; bypasses the
    /// row-oracle counter.
    DenseMatrix to_dense() const;

    /// Entry-wise scaled copy (used by spectrum rescaling).
    SparseHermitianMatrix scaled(double factor) const;

  private:
    int dim_ = 0;
    int sparsity_ = 0;
    std::optional<double> declared_kappa_;
    // upper_[i]: stored entries (col >= i); lower_[i]: conjugated mirror
    // entries (col < i), both sorted by column.
    std::vector<std::vector<std::pair<int, Complex>>> upper_;
    std::vector<std::vector<std::pair<int, Complex>>> lower_;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted by
/// descending magnitude, eigenvectors as matching orthonormal columns.
struct SpectralData {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    double max_abs_eigenvalue() const;
    double min_abs_eigenvalue() const;
};

/// Dense eigensolve of A. Deterministic for a fixed input; reads the
/// matrix through the row oracle (dim T_A calls). Throws CapacityError
/// above kSpectralDimCap.
SpectralData spectral_decompose(const SparseHermitianMatrix &a);

/// max|lambda| / min|lambda|. Throws SingularMatrixError when
/// min|lambda| <= kSingularRelTol * max|lambda|.
double condition_number(const SparseHermitianMatrix &a);
double condition_number(const SpectralData &spec);

/// Embeds a rectangular matrix M into [[0, M], [M^dagger, 0]]. The
/// dilation's eigenvalues are plus/minus the singular values of M padded
/// with zeros.
SparseHermitianMatrix hermitian_dilation(const DenseMatrix &m);

/// Divides A by max|lambda| so the rescaled spectrum has unit radius.
/// Returns the rescaled matrix and the scale factor; kappa is unchanged.
std::pair<SparseHermitianMatrix, double>
spectrum_rescale(const SparseHermitianMatrix &a);

} // namespace qls
