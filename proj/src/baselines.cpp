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

#include "qls/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/LU>

namespace qls {

namespace {

/// Dense materialization through the row oracle: one T_A call per row.
DenseMatrix densify_via_oracle(const SparseHermitianMatrix &a) {
    const int n = a.dim();
    DenseMatrix dense = DenseMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (const auto &[col, val] : a.row(i)) {
            dense(i, col) = val;
        }
    }
    return dense;
}

/// y = M x with M read row-by-row through the oracle.
DenseVector oracle_matvec(const SparseHermitianMatrix &a,
                          const DenseVector &x) {
    const int n = a.dim();
    DenseVector y(n);
    for (int i = 0; i < n; ++i) {
        Complex acc{0.0, 0.0};
        for (const auto &[col, val] : a.row(i)) {
            acc += val * x[col];
        }
        y[i] = acc;
    }
    return y;
}

void check_dims(const char *op, Eigen::Index a, Eigen::Index b) {
    if (a != b) {
        throw InvalidInputError(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
    }
}

} // namespace

SampleDistribution
SampleDistribution::from_probabilities(std::vector<double> p) {
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw InvalidInputError("probabilities must be finite and >= 0");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw InvalidInputError("probabilities sum to " +
                                std::to_string(total) + ", expected 1");
    }
    SampleDistribution d;
    d.probabilities = std::move(p);
    return d;
}

SampleDistribution
SampleDistribution::from_counts(const std::vector<std::uint64_t> &c) {
    std::uint64_t total = 0;
    for (std::uint64_t v : c) {
        total += v;
    }
    if (total == 0) {
        throw InvalidInputError("cannot normalize an empty count vector");
    }
    std::vector<double> p(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        p[i] = static_cast<double>(c[i]) / static_cast<double>(total);
    }
    SampleDistribution d;
    d.probabilities = std::move(p);
    return d;
}

double tv_distance(const SampleDistribution &p, const SampleDistribution &q) {
    check_dims("tv_distance", static_cast<Eigen::Index>(p.size()),
               static_cast<Eigen::Index>(q.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::abs(p.probabilities[i] - q.probabilities[i]);
    }
    return sum;
}

double fidelity(const DenseVector &u, const DenseVector &v) {
    check_dims("fidelity", u.size(), v.size());
    if (std::abs(u.norm() - 1.0) > 1e-8 || std::abs(v.norm() - 1.0) > 1e-8) {
        throw InvalidInputError("fidelity requires unit vectors");
    }
    return std::min(1.0, std::abs(u.dot(v)));
}

DenseVector direct_solve(const DenseMatrix &a, const DenseVector &b) {
    if (a.rows() != a.cols()) {
        throw InvalidInputError("direct_solve requires a square matrix");
    }
    check_dims("direct_solve", a.rows(), b.size());
    Eigen::PartialPivLU<DenseMatrix> lu(a);
    const auto diag = lu.matrixLU().diagonal();
    const double pivot_max = diag.cwiseAbs().maxCoeff();
    const double pivot_min = diag.cwiseAbs().minCoeff();
    if (pivot_min <= kSingularRelTol * pivot_max) {
        throw SingularMatrixError("numerically singular pivot (ratio " +
                                  std::to_string(pivot_min / pivot_max) + ")");
    }
    return lu.solve(b);
}

DenseVector direct_solve(const SparseHermitianMatrix &a,
                         const DenseVector &b) {
    return direct_solve(densify_via_oracle(a), b);
}

NeumannResult neumann_solve(const SparseHermitianMatrix &a,
                            const DenseVector &b, double epsilon) {
    check_dims("neumann_solve", a.dim(), b.size());
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidInputError("epsilon must lie in (0, 1)");
    }
    const SpectralData spec = spectral_decompose(a);
    const double lambda_min = spec.eigenvalues.back();
    const double lambda_max = spec.eigenvalues.front();
    if (!(lambda_min > 0.0) || lambda_max > 1.0 + 1e-12) {
        throw InvalidInputError(
            "Neumann expansion requires eigenvalues in (0, 1]; spectrum is [" +
            std::to_string(lambda_min) + ", " + std::to_string(lambda_max) +
            "]");
    }
    const double kappa = 1.0 / lambda_min;
    const int n_terms =
        static_cast<int>(std::ceil(kappa * std::log(1.0 / epsilon)));

    // s_K = sum_{n=0}^{K} (I - A)^n b via s <- b + (I - A) s.
    DenseVector x = b;
    for (int n = 0; n < n_terms; ++n) {
        x = b + x - oracle_matvec(a, x);
    }
    return {std::move(x), n_terms};
}

IterativeResult iterative_solve(const SparseHermitianMatrix &a,
                                const DenseVector &b, double epsilon) {
    check_dims("iterative_solve", a.dim(), b.size());
    if (!(epsilon > 0.0)) {
        throw InvalidInputError("epsilon must be positive");
    }
    const double b_norm = b.norm();
    const double target = epsilon * b_norm;
    DenseVector x = DenseVector::Zero(a.dim());
    if (b_norm == 0.0) {
        return {std::move(x), 0};
    }

    DenseVector r = b;
    DenseVector p = r;
    double rs = r.squaredNorm();
    const int max_iters = 10 * a.dim();
    for (int it = 1; it <= max_iters; ++it) {
        const DenseVector ap = oracle_matvec(a, p);
        const double denom = p.dot(ap).real();
        if (!(denom > 0.0)) {
            throw InvalidInputError(
                "conjugate gradients requires a positive definite matrix");
        }
        const double alpha = rs / denom;
        x += alpha * p;
        r -= alpha * ap;
        const double rs_new = r.squaredNorm();
        if (std::sqrt(rs_new) <= target) {
            // confirm with the true residual before accepting
            if ((b - oracle_matvec(a, x)).norm() <= target) {
                return {std::move(x), it};
            }
        }
        p = r + (rs_new / rs) * p;
        rs = rs_new;
    }
    throw ConvergenceError("conjugate gradients did not reach " +
                           std::to_string(epsilon) + " relative residual in " +
                           std::to_string(max_iters) + " iterations");
}

std::vector<int> sample_indices(const SampleDistribution &dist,
                                std::uint64_t shots, std::uint64_t seed) {
    std::vector<double> cdf(dist.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        acc += dist.probabilities[i];
        cdf[i] = acc;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<int> samples;
    samples.reserve(shots);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = unit(rng) * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        samples.push_back(static_cast<int>(
            std::min<std::ptrdiff_t>(it - cdf.begin(),
                                     static_cast<std::ptrdiff_t>(cdf.size()) - 1)));
    }
    return samples;
}

namespace {

std::vector<int> sample_from_solution(const DenseVector &x,
                                      std::uint64_t shots,
                                      std::uint64_t seed) {
    const DenseVector unit = x / x.norm();
    std::vector<double> probs(static_cast<std::size_t>(unit.size()));
    for (Eigen::Index i = 0; i < unit.size(); ++i) {
        probs[static_cast<std::size_t>(i)] = std::norm(unit[i]);
    }
    return sample_indices(SampleDistribution::from_probabilities(probs), shots,
                          seed);
}

} // namespace

std::vector<int> sample_solution(const DenseMatrix &a, const DenseVector &b,
                                 std::uint64_t shots, std::uint64_t seed) {
    return sample_from_solution(direct_solve(a, b), shots, seed);
}

std::vector<int> sample_solution(const SparseHermitianMatrix &a,
                                 const DenseVector &b, std::uint64_t shots,
                                 std::uint64_t seed) {
    return sample_from_solution(direct_solve(a, b), shots, seed);
}

std::vector<int> sample_solution(const DenseMatrix &a, std::uint64_t shots,
                                 std::uint64_t seed) {
    DenseVector e1 = DenseVector::Zero(a.rows());
    e1[0] = Complex{1.0, 0.0};
    return sample_solution(a, e1, shots, seed);
}

} // namespace qls
