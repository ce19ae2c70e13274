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

#include "qls/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "qls/counters.hpp"

namespace qls {

namespace {

bool is_finite(Complex v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

} // namespace

SparseHermitianMatrix
SparseHermitianMatrix::from_entries(int dim,
                                    const std::vector<MatrixEntry> &entries,
                                    std::optional<double> declared_kappa) {
    if (dim < 1) {
        throw InvalidInputError("matrix dimension must be >= 1, got " +
                                std::to_string(dim));
    }
    SparseHermitianMatrix a;
    a.dim_ = dim;
    a.upper_.resize(dim);
    a.lower_.resize(dim);
    for (const auto &e : entries) {
        if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim) {
            throw InvalidInputError("entry (" + std::to_string(e.row) + ", " +
                                    std::to_string(e.col) +
                                    ") outside a " + std::to_string(dim) +
                                    "-dim matrix");
        }
        if (e.col < e.row) {
            throw InvalidInputError(
                "lower-triangle entry (" + std::to_string(e.row) + ", " +
                std::to_string(e.col) +
                "); store the conjugate upper entry instead");
        }
        if (!is_finite(e.value)) {
            throw InvalidInputError("non-finite entry at (" +
                                    std::to_string(e.row) + ", " +
                                    std::to_string(e.col) + ")");
        }
        if (e.row == e.col && e.value.imag() != 0.0) {
            throw InvalidInputError("diagonal entry (" +
                                    std::to_string(e.row) +
                                    ") must have zero imaginary part");
        }
        if (e.value == Complex{0.0, 0.0}) {
            continue; // canonical form stores true nonzeros only
        }
        a.upper_[e.row].push_back({e.col, e.value});
    }
    for (int i = 0; i < dim; ++i) {
        auto &r = a.upper_[i];
        std::sort(r.begin(), r.end(),
                  [](const auto &x, const auto &y) { return x.first < y.first; });
        for (std::size_t k = 1; k < r.size(); ++k) {
            if (r[k].first == r[k - 1].first) {
                throw InvalidInputError("duplicate entry at (" +
                                        std::to_string(i) + ", " +
                                        std::to_string(r[k].first) + ")");
            }
        }
        for (const auto &[col, val] : r) {
            if (col > i) {
                a.lower_[col].push_back({i, std::conj(val)});
            }
        }
    }
    int max_nnz = 0;
    for (int i = 0; i < dim; ++i) {
        std::sort(a.lower_[i].begin(), a.lower_[i].end(),
                  [](const auto &x, const auto &y) { return x.first < y.first; });
        max_nnz = std::max(
            max_nnz, static_cast<int>(a.lower_[i].size() + a.upper_[i].size()));
    }
    a.sparsity_ = max_nnz;

    if (declared_kappa) {
        if (*declared_kappa < 1.0) {
            throw InvalidInputError("declared kappa must be >= 1");
        }
        a.declared_kappa_ = declared_kappa;
        const double computed = condition_number(a);
        if (std::abs(computed - *declared_kappa) > 0.05 * computed) {
            throw InvalidInputError(
                "declared kappa " + std::to_string(*declared_kappa) +
                " disagrees with computed kappa " + std::to_string(computed) +
                " by more than 5%");
        }
    }
    return a;
}

SparseHermitianMatrix SparseHermitianMatrix::identity(int dim) {
    std::vector<MatrixEntry> entries;
    entries.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        entries.push_back({i, i, Complex{1.0, 0.0}});
    }
    return from_entries(dim, entries);
}

SparseHermitianMatrix
SparseHermitianMatrix::diagonal(const std::vector<double> &values) {
    std::vector<MatrixEntry> entries;
    entries.reserve(values.size());
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        entries.push_back({i, i, Complex{values[i], 0.0}});
    }
    return from_entries(static_cast<int>(values.size()), entries);
}

SparseHermitianMatrix
SparseHermitianMatrix::from_dense(const DenseMatrix &a, double tol,
                                  std::optional<double> declared_kappa) {
    if (a.rows() != a.cols() || a.rows() < 1) {
        throw InvalidInputError("expected a square matrix");
    }
    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= tol)) {
        throw InvalidInputError("matrix is not Hermitian (max |A - A^H| = " +
                                std::to_string(asym) + ")");
    }
    const int n = static_cast<int>(a.rows());
    std::vector<MatrixEntry> entries;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Complex v = (i == j) ? Complex{a(i, i).real(), 0.0} : a(i, j);
            if (v != Complex{0.0, 0.0}) {
                entries.push_back({i, j, v});
            }
        }
    }
    return from_entries(n, entries, declared_kappa);
}

std::vector<std::pair<int, Complex>> SparseHermitianMatrix::row(int i) const {
    if (i < 0 || i >= dim_) {
        throw InvalidInputError("row index " + std::to_string(i) +
                                " out of range for dim " +
                                std::to_string(dim_));
    }
    detail::count_row_oracle(1);
    std::vector<std::pair<int, Complex>> out;
    out.reserve(lower_[i].size() + upper_[i].size());
    out.insert(out.end(), lower_[i].begin(), lower_[i].end());
    out.insert(out.end(), upper_[i].begin(), upper_[i].end());
    return out;
}

Complex SparseHermitianMatrix::entry(int i, int j) const {
    if (i < 0 || i >= dim_ || j < 0 || j >= dim_) {
        throw InvalidInputError("entry index out of range");
    }
    const bool conjugate = j < i;
    const int r = conjugate ? j : i;
    const int c = conjugate ? i : j;
    for (const auto &[col, val] : upper_[r]) {
        if (col == c) {
            return conjugate ? std::conj(val) : val;
        }
    }
    return Complex{0.0, 0.0};
}

std::vector<MatrixEntry> SparseHermitianMatrix::stored_entries() const {
    std::vector<MatrixEntry> out;
    for (int i = 0; i < dim_; ++i) {
        for (const auto &[col, val] : upper_[i]) {
            out.push_back({i, col, val});
        }
    }
    return out;
}

DenseMatrix SparseHermitianMatrix::to_dense() const {
    DenseMatrix a = DenseMatrix::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
        for (const auto &[col, val] : upper_[i]) {
            a(i, col) = val;
            if (col != i) {
                a(col, i) = std::conj(val);
            }
        }
    }
    return a;
}

SparseHermitianMatrix SparseHermitianMatrix::scaled(double factor) const {
    if (!std::isfinite(factor) || factor == 0.0) {
        throw InvalidInputError("scale factor must be finite and nonzero");
    }
    SparseHermitianMatrix a;
    a.dim_ = dim_;
    a.sparsity_ = sparsity_;
    a.declared_kappa_ = declared_kappa_;
    a.upper_ = upper_;
    a.lower_ = lower_;
    for (auto rows : {&a.upper_, &a.lower_}) {
        for (auto &r : *rows) {
            for (auto &[col, val] : r) {
                val *= factor;
            }
        }
    }
    return a;
}

double SpectralData::max_abs_eigenvalue() const {
    return eigenvalues.empty() ? 0.0 : std::abs(eigenvalues.front());
}

double SpectralData::min_abs_eigenvalue() const {
    return eigenvalues.empty() ? 0.0 : std::abs(eigenvalues.back());
}

SpectralData spectral_decompose(const SparseHermitianMatrix &a) {
    const int n = a.dim();
    if (n > kSpectralDimCap) {
        throw CapacityError("dimension " + std::to_string(n) +
                            " exceeds the spectral oracle cap " +
                            std::to_string(kSpectralDimCap));
    }
    DenseMatrix dense = DenseMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (const auto &[col, val] : a.row(i)) {
            dense(i, col) = val;
        }
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(dense);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eigensolver failed to converge");
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const auto &vals = solver.eigenvalues();
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const double ax = std::abs(vals[x]), ay = std::abs(vals[y]);
        if (ax != ay) {
            return ax > ay;
        }
        if (vals[x] != vals[y]) {
            return vals[x] > vals[y];
        }
        return x < y;
    });

    SpectralData spec;
    spec.eigenvalues.resize(static_cast<std::size_t>(n));
    spec.eigenvectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        spec.eigenvalues[static_cast<std::size_t>(k)] = vals[order[k]];
        spec.eigenvectors.col(k) = solver.eigenvectors().col(order[k]);
    }
    return spec;
}

double condition_number(const SpectralData &spec) {
    const double max_abs = spec.max_abs_eigenvalue();
    const double min_abs = spec.min_abs_eigenvalue();
    if (min_abs <= kSingularRelTol * max_abs) {
        throw SingularMatrixError(
            "matrix is numerically singular (min |lambda| = " +
            std::to_string(min_abs) + ")");
    }
    return max_abs / min_abs;
}

double condition_number(const SparseHermitianMatrix &a) {
    return condition_number(spectral_decompose(a));
}

SparseHermitianMatrix hermitian_dilation(const DenseMatrix &m) {
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    if (rows < 1 || cols < 1) {
        throw InvalidInputError("dilation input must be at least 1x1");
    }
    if (!m.allFinite()) {
        throw InvalidInputError("dilation input contains non-finite entries");
    }
    std::vector<MatrixEntry> entries;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (m(i, j) != Complex{0.0, 0.0}) {
                entries.push_back({i, rows + j, m(i, j)});
            }
        }
    }
    return SparseHermitianMatrix::from_entries(rows + cols, entries);
}

std::pair<SparseHermitianMatrix, double>
spectrum_rescale(const SparseHermitianMatrix &a) {
    SpectralData spec = spectral_decompose(a);
    condition_number(spec); // rejects singular input
    const double scale = spec.max_abs_eigenvalue();
    return {a.scaled(1.0 / scale), scale};
}

} // namespace qls
