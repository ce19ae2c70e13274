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

#include <iosfwd>
#include <optional>
#include <string>

#include "qls/numeric.hpp"

namespace qls {

// Text formats:
//   hcoo v1: line 1 "hcoo v1"; line 2 "N nnz"; then nnz lines "i j re im"
//            (0-indexed, upper triangle only: i <= j, lower entries rejected).
//   coo v1:  line 1 "coo v1"; line 2 "n_rows n_cols nnz"; then nnz lines
//            "i j re im" with no triangle restriction.

SparseHermitianMatrix
read_hcoo(std::istream &in,
          std::optional<double> declared_kappa = std::nullopt);
SparseHermitianMatrix
read_hcoo_file(const std::string &path,
               std::optional<double> declared_kappa = std::nullopt);
void write_hcoo(std::ostream &out, const SparseHermitianMatrix &a);
void write_hcoo_file(const std::string &path, const SparseHermitianMatrix &a);

DenseMatrix read_coo(std::istream &in);
DenseMatrix read_coo_file(const std::string &path);
void write_coo(std::ostream &out, const DenseMatrix &m);
void write_coo_file(const std::string &path, const DenseMatrix &m);

} // namespace qls
