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
#include <vector>

#include "qls/numeric.hpp"

namespace qls {

/// Probability distribution over basis indices [0, N).
struct SampleDistribution {
    std::vector<double> probabilities;

    /// Validates nonnegativity and unit total (1e-10).
    static SampleDistribution from_probabilities(std::vector<double> p);
    static SampleDistribution from_counts(const std::vector<std::uint64_t> &c);

    std::size_t size() const { return probabilities.size(); }
};

/// Paper-convention total variation: sum_i |p_i - q_i|, range [0, 2].
double tv_distance(const SampleDistribution &p, const SampleDistribution &q);

/// |<u, v>| for unit vectors (norms checked to 1e-8).
double fidelity(const DenseVector &u, const DenseVector &v);

/// Gaussian elimination with partial pivoting; accepts non-Hermitian
/// square inputs. Throws SingularMatrixError on a numerically singular
/// pivot.
DenseVector direct_solve(const DenseMatrix &a, const DenseVector &b);

/// Same, reading the matrix through the row oracle (dim T_A calls).
DenseVector direct_solve(const SparseHermitianMatrix &a, const DenseVector &b);

struct NeumannResult {
    DenseVector x;
    int n_terms = 0; // series truncated at sum_{n=0}^{n_terms}
};

/// Truncated expansion sum_{n <= kappa ln(1/eps)} (I - A)^n b for positive
/// definite A with spectrum in (0, 1]; kappa is 1/lambda_min. Matrix
/// access goes through the row oracle.
NeumannResult neumann_solve(const SparseHermitianMatrix &a,
                            const DenseVector &b, double epsilon);

struct IterativeResult {
    DenseVector x;
    int iterations = 0;
};

/// Conjugate gradients on Hermitian positive definite A until
/// ||Ax - b|| <= epsilon ||b||; fails after 10*dim iterations. Matrix
/// access goes through the row oracle.
IterativeResult iterative_solve(const SparseHermitianMatrix &a,
                                const DenseVector &b, double epsilon);

/// Seeded samples from |x_i|^2 where x = normalize(A^{-1} b).
std::vector<int> sample_solution(const DenseMatrix &a, const DenseVector &b,
                                 std::uint64_t shots, std::uint64_t seed);
std::vector<int> sample_solution(const SparseHermitianMatrix &a,
                                 const DenseVector &b, std::uint64_t shots,
                                 std::uint64_t seed);
/// b defaults to e_1 (one in the first entry), matching the sampling
/// problem's canonical right-hand side.
std::vector<int> sample_solution(const DenseMatrix &a, std::uint64_t shots,
                                 std::uint64_t seed);

/// Seeded inverse-CDF sampling from an explicit distribution.
std::vector<int> sample_indices(const SampleDistribution &dist,
                                std::uint64_t shots, std::uint64_t seed);

} // namespace qls
