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

#include "qls/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

namespace qls {

namespace {

[[noreturn]] void fail(int line_no, const std::string &msg) {
    throw FormatError("line " + std::to_string(line_no) + ": " + msg);
}

std::string next_line(std::istream &in, int &line_no) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("unexpected end of file at line " +
                          std::to_string(line_no + 1));
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

struct EntryLine {
    int i = 0;
    int j = 0;
    Complex value;
};

EntryLine parse_entry(const std::string &line, int line_no) {
    std::istringstream ss(line);
    EntryLine e;
    double re = 0.0, im = 0.0;
    if (!(ss >> e.i >> e.j >> re >> im)) {
        fail(line_no, "expected 'i j re im', got '" + line + "'");
    }
    std::string extra;
    if (ss >> extra) {
        fail(line_no, "trailing tokens after entry: '" + extra + "'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) {
        fail(line_no, "non-finite entry value");
    }
    e.value = Complex{re, im};
    return e;
}

void expect_magic(std::istream &in, const std::string &magic, int &line_no) {
    const std::string line = next_line(in, line_no);
    if (line != magic) {
        fail(line_no, "expected header '" + magic + "', got '" + line + "'");
    }
}

std::string format_value(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

} // namespace

SparseHermitianMatrix read_hcoo(std::istream &in,
                                std::optional<double> declared_kappa) {
    int line_no = 0;
    expect_magic(in, "hcoo v1", line_no);

    const std::string header = next_line(in, line_no);
    std::istringstream hs(header);
    long long dim = 0, nnz = 0;
    std::string extra;
    if (!(hs >> dim >> nnz) || (hs >> extra)) {
        fail(line_no, "expected 'N nnz', got '" + header + "'");
    }
    if (dim < 1 || nnz < 0) {
        fail(line_no, "invalid sizes in header '" + header + "'");
    }

    std::vector<MatrixEntry> entries;
    entries.reserve(static_cast<std::size_t>(nnz));
    for (long long k = 0; k < nnz; ++k) {
        const std::string line = next_line(in, line_no);
        const EntryLine e = parse_entry(line, line_no);
        if (e.i < 0 || e.i >= dim || e.j < 0 || e.j >= dim) {
            fail(line_no, "index out of range for dim " + std::to_string(dim));
        }
        if (e.j < e.i) {
            fail(line_no,
                 "lower-triangle entry (" + std::to_string(e.i) + ", " +
                     std::to_string(e.j) + ") not allowed in hcoo v1");
        }
        if (e.i == e.j && e.value.imag() != 0.0) {
            fail(line_no, "diagonal entry with nonzero imaginary part");
        }
        entries.push_back({e.i, e.j, e.value});
    }
    try {
        return SparseHermitianMatrix::from_entries(static_cast<int>(dim),
                                                   entries, declared_kappa);
    } catch (const InvalidInputError &err) {
        throw FormatError(std::string("invalid hcoo matrix: ") + err.what());
    }
}

SparseHermitianMatrix read_hcoo_file(const std::string &path,
                                     std::optional<double> declared_kappa) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open matrix file '" + path + "'");
    }
    return read_hcoo(in, declared_kappa);
}

void write_hcoo(std::ostream &out, const SparseHermitianMatrix &a) {
    const auto entries = a.stored_entries();
    out << "hcoo v1\n" << a.dim() << ' ' << entries.size() << '\n';
    for (const auto &e : entries) {
        out << e.row << ' ' << e.col << ' ' << format_value(e.value.real())
            << ' ' << format_value(e.value.imag()) << '\n';
    }
}

void write_hcoo_file(const std::string &path, const SparseHermitianMatrix &a) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInputError("cannot write matrix file '" + path + "'");
    }
    write_hcoo(out, a);
}

DenseMatrix read_coo(std::istream &in) {
    int line_no = 0;
    expect_magic(in, "coo v1", line_no);

    const std::string header = next_line(in, line_no);
    std::istringstream hs(header);
    long long rows = 0, cols = 0, nnz = 0;
    std::string extra;
    if (!(hs >> rows >> cols >> nnz) || (hs >> extra)) {
        fail(line_no, "expected 'n_rows n_cols nnz', got '" + header + "'");
    }
    if (rows < 1 || cols < 1 || nnz < 0) {
        fail(line_no, "invalid sizes in header '" + header + "'");
    }

    DenseMatrix m = DenseMatrix::Zero(rows, cols);
    DenseMatrix seen = DenseMatrix::Zero(rows, cols);
    for (long long k = 0; k < nnz; ++k) {
        const std::string line = next_line(in, line_no);
        const EntryLine e = parse_entry(line, line_no);
        if (e.i < 0 || e.i >= rows || e.j < 0 || e.j >= cols) {
            fail(line_no, "index out of range for " + std::to_string(rows) +
                              "x" + std::to_string(cols));
        }
        if (seen(e.i, e.j).real() != 0.0) {
            fail(line_no, "duplicate entry at (" + std::to_string(e.i) + ", " +
                              std::to_string(e.j) + ")");
        }
        seen(e.i, e.j) = Complex{1.0, 0.0};
        m(e.i, e.j) = e.value;
    }
    return m;
}

DenseMatrix read_coo_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open matrix file '" + path + "'");
    }
    return read_coo(in);
}

void write_coo(std::ostream &out, const DenseMatrix &m) {
    long long nnz = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) != Complex{0.0, 0.0}) {
                ++nnz;
            }
        }
    }
    out << "coo v1\n" << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j) != Complex{0.0, 0.0}) {
                out << i << ' ' << j << ' ' << format_value(m(i, j).real())
                    << ' ' << format_value(m(i, j).imag()) << '\n';
            }
        }
    }
}

void write_coo_file(const std::string &path, const DenseMatrix &m) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidInputError("cannot write matrix file '" + path + "'");
    }
    write_coo(out, m);
}

} // namespace qls
