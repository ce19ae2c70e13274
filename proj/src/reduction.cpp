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

#include "qls/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/SVD>

namespace qls {

namespace {

constexpr std::uint64_t kAcceptRateCheckpoint = 10000;
constexpr double kMinAcceptRate = 0.05;

int ceil_log2(std::size_t n) {
    int bits = 0;
    while ((std::size_t{1} << bits) < n) {
        ++bits;
    }
    return bits;
}

/// Bit position of circuit qubit q in an n-qubit system index.
int bit_of_qubit(int n_qubits, int q) { return n_qubits - 1 - q; }

/// Nonzeros of row `row` of the 2^n-dim embedding of `gate` (or its
/// adjoint), columns ascending not guaranteed.
std::vector<std::pair<int, Complex>>
embedded_gate_row(const GateOp &gate, int n_qubits, int row, bool adjoint) {
    const DenseMatrix u =
        adjoint ? DenseMatrix(gate.base_matrix().adjoint()) : gate.base_matrix();
    const int k = static_cast<int>(gate.qubits.size());
    int positions[2] = {0, 0};
    for (int m = 0; m < k; ++m) {
        positions[m] = bit_of_qubit(n_qubits, gate.qubits[m]);
    }
    int local_row = 0;
    for (int m = 0; m < k; ++m) {
        local_row |= ((row >> positions[m]) & 1) << (k - 1 - m);
    }
    std::vector<std::pair<int, Complex>> out;
    const int sub_dim = 1 << k;
    for (int local_col = 0; local_col < sub_dim; ++local_col) {
        const Complex v = u(local_row, local_col);
        if (v == Complex{0.0, 0.0}) {
            continue;
        }
        int col = row;
        for (int m = 0; m < k; ++m) {
            const int bit = (local_col >> (k - 1 - m)) & 1;
            col = (col & ~(1 << positions[m])) | (bit << positions[m]);
        }
        out.push_back({col, v});
    }
    return out;
}

/// Step unitary V_t (1-based t in [1, 3T]): the circuit gates, then an
/// identity hold, then the adjoint gates in reverse.
std::vector<std::pair<int, Complex>>
step_unitary_row(const QuantumCircuitDescription &circuit, int t, int row) {
    const int T = circuit.gate_count();
    if (t <= T) {
        return embedded_gate_row(circuit.gates[static_cast<std::size_t>(t - 1)],
                                 circuit.n_qubits, row, /*adjoint=*/false);
    }
    if (t <= 2 * T) {
        return {{row, Complex{1.0, 0.0}}};
    }
    return embedded_gate_row(
        circuit.gates[static_cast<std::size_t>(3 * T - t)], circuit.n_qubits,
        row, /*adjoint=*/true);
}

} // namespace

QuantumCircuitDescription
QuantumCircuitDescription::make(int n_qubits, std::vector<GateOp> gates) {
    if (n_qubits < 1) {
        throw InvalidInputError("circuit needs at least one qubit");
    }
    if (gates.empty()) {
        throw InvalidInputError("circuit needs at least one gate");
    }
    for (const GateOp &g : gates) {
        if (!g.controls.empty()) {
            throw InvalidInputError(
                "circuit gates must be plain one/two-qubit unitaries");
        }
        if (g.qubits.empty() || g.qubits.size() > 2) {
            throw InvalidInputError("gates must act on one or two qubits");
        }
        std::vector<int> qs = g.qubits;
        std::sort(qs.begin(), qs.end());
        if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
            throw InvalidInputError("gate operands must be distinct");
        }
        for (int q : g.qubits) {
            if (q < 0 || q >= n_qubits) {
                throw InvalidInputError("gate qubit " + std::to_string(q) +
                                        " out of range");
            }
        }
        g.base_matrix(); // validates kind/operand consistency
    }
    QuantumCircuitDescription c;
    c.n_qubits = n_qubits;
    c.gates = std::move(gates);
    return c;
}

int ClockSystemMeta::clock_of(std::size_t index) const {
    return static_cast<int>(index / system_dim());
}

std::size_t ClockSystemMeta::system_of(std::size_t index) const {
    return index % system_dim();
}

bool ClockSystemMeta::accepts(int clock_value_zero_based) const {
    const int t = clock_value_zero_based + 1;
    return t > gate_count && t <= 2 * gate_count;
}

DenseMatrix SparseComplexRows::to_dense() const {
    DenseMatrix m = DenseMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (const auto &[col, val] : rows[static_cast<std::size_t>(i)]) {
            m(i, col) += val;
        }
    }
    return m;
}

DenseVector SparseComplexRows::matvec(const DenseVector &x) const {
    if (x.size() != dim) {
        throw InvalidInputError("matvec dimension mismatch");
    }
    DenseVector y = DenseVector::Zero(dim);
    for (int i = 0; i < dim; ++i) {
        Complex acc{0.0, 0.0};
        for (const auto &[col, val] : rows[static_cast<std::size_t>(i)]) {
            acc += val * x[col];
        }
        y[i] = acc;
    }
    return y;
}

int SparseComplexRows::max_row_nonzeros() const {
    std::size_t best = 0;
    for (const auto &r : rows) {
        best = std::max(best, r.size());
    }
    return static_cast<int>(best);
}

namespace {

ClockSystemMeta make_meta(const QuantumCircuitDescription &circuit) {
    ClockSystemMeta meta;
    meta.gate_count = circuit.gate_count();
    meta.n_qubits = circuit.n_qubits;
    meta.clock_periods = 3 * meta.gate_count;
    meta.dim = static_cast<std::size_t>(meta.clock_periods) *
               meta.system_dim();
    meta.decay = std::exp(-1.0 / static_cast<double>(meta.gate_count));
    if (meta.dim > static_cast<std::size_t>(kSpectralDimCap)) {
        throw CapacityError("clock system dimension " +
                            std::to_string(meta.dim) + " exceeds the cap " +
                            std::to_string(kSpectralDimCap));
    }
    return meta;
}

/// U_clock = sum_t |t mod 3T + 1><t| (x) V_t, assembled row-wise: the row
/// at clock c' draws from source clock c = c' - 1 (cyclic) through
/// V_{c+1}.
SparseComplexRows clock_unitary_rows(const QuantumCircuitDescription &circuit,
                                     const ClockSystemMeta &meta) {
    SparseComplexRows u;
    u.dim = static_cast<int>(meta.dim);
    u.rows.resize(meta.dim);
    const int periods = meta.clock_periods;
    const std::size_t sys = meta.system_dim();
    for (int c_target = 0; c_target < periods; ++c_target) {
        const int c_source = (c_target + periods - 1) % periods;
        const int t = c_source + 1;
        for (std::size_t s_row = 0; s_row < sys; ++s_row) {
            const std::size_t row =
                static_cast<std::size_t>(c_target) * sys + s_row;
            auto entries =
                step_unitary_row(circuit, t, static_cast<int>(s_row));
            auto &out = u.rows[row];
            out.reserve(entries.size());
            for (const auto &[s_col, val] : entries) {
                out.push_back(
                    {static_cast<int>(static_cast<std::size_t>(c_source) * sys) +
                         s_col,
                     val});
            }
            std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
                return a.first < b.first;
            });
        }
    }
    return u;
}

} // namespace

SparseComplexRows
build_clock_unitary(const QuantumCircuitDescription &circuit) {
    return clock_unitary_rows(circuit, make_meta(circuit));
}

ClockSystem build_clock_system(const QuantumCircuitDescription &circuit) {
    const ClockSystemMeta meta = make_meta(circuit);
    SparseComplexRows u = clock_unitary_rows(circuit, meta);

    ClockSystem sys;
    sys.meta = meta;
    sys.matrix.dim = u.dim;
    sys.matrix.rows.resize(meta.dim);
    for (int i = 0; i < u.dim; ++i) {
        auto &row = sys.matrix.rows[static_cast<std::size_t>(i)];
        row.push_back({i, Complex{1.0, 0.0}});
        for (const auto &[col, val] : u.rows[static_cast<std::size_t>(i)]) {
            row.push_back({col, -meta.decay * val}); // never hits the diagonal
        }
        std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) {
            return a.first < b.first;
        });
    }
    sys.rhs = DenseVector::Zero(static_cast<Eigen::Index>(meta.dim));
    sys.rhs[0] = Complex{1.0, 0.0}; // |t=1>|0^n>
    return sys;
}

DenseVector solve_clock_system(const ClockSystem &system) {
    const DenseVector x = direct_solve(system.matrix.to_dense(), system.rhs);
    return x / x.norm();
}

DecodedSample decode_clock_sample(std::size_t index,
                                  const ClockSystemMeta &meta) {
    if (index >= meta.dim) {
        throw InvalidInputError("sample index out of range");
    }
    DecodedSample out;
    const int clock = meta.clock_of(index);
    if (!meta.accepts(clock)) {
        return out;
    }
    out.accept = true;
    const std::size_t system = meta.system_of(index);
    out.first_qubit_bit =
        static_cast<int>((system >> (meta.n_qubits - 1)) & 1);
    return out;
}

SampleDistribution
reference_circuit_distribution(const QuantumCircuitDescription &circuit) {
    if (circuit.n_qubits > 12) {
        throw CapacityError("reference simulation capped at 12 qubits");
    }
    StateVector state{RegisterLayout(circuit.n_qubits, 0, 0)};
    for (const GateOp &g : circuit.gates) {
        GateOp mapped = g;
        for (int &q : mapped.qubits) {
            q = bit_of_qubit(circuit.n_qubits, q);
        }
        state.apply_gate(mapped);
    }
    const int first_qubit_bit = circuit.n_qubits - 1;
    const auto probs = state.measure_distribution(
        std::span<const int>(&first_qubit_bit, 1));
    return SampleDistribution::from_probabilities(probs);
}

ReductionReport run_reduction(const QuantumCircuitDescription &circuit,
                              double epsilon, ReductionBackend backend,
                              std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw InvalidInputError("shots must be >= 1");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw InvalidInputError("epsilon must lie in (0, 1)");
    }
    ClockSystem sys = build_clock_system(circuit);
    const DenseMatrix dense = sys.matrix.to_dense();

    ReductionReport report;
    report.backend = backend;
    report.epsilon = epsilon;
    report.shots = shots;
    report.seed = seed;
    report.reference = reference_circuit_distribution(circuit);

    {
        Eigen::BDCSVD<DenseMatrix> svd(dense);
        const auto &sv = svd.singularValues();
        report.kappa = sv(0) / sv(sv.size() - 1);
    }

    // exact |x_i|^2 for the sampled distribution, plus the index decoder
    std::vector<double> probs;
    std::size_t offset = 0; // decode index = sample index - offset
    if (backend == ReductionBackend::classical) {
        const DenseVector x = solve_clock_system(sys);
        probs.resize(static_cast<std::size_t>(x.size()));
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            probs[static_cast<std::size_t>(i)] = std::norm(x[i]);
        }
    } else {
        // Hermitian dilation: the solution of the original system sits in
        // the second half of the dilated coordinates
        auto [scaled, scale] = spectrum_rescale(hermitian_dilation(dense));
        const SpectralData spec = spectral_decompose(scaled);
        const double kappa_dilated = condition_number(spec);
        const int n_system = ceil_log2(2 * sys.meta.dim);
        HHLParams params = choose_params(kappa_dilated, epsilon, n_system);

        DenseVector rhs =
            DenseVector::Zero(static_cast<Eigen::Index>(2 * sys.meta.dim));
        rhs.head(static_cast<Eigen::Index>(sys.meta.dim)) = sys.rhs;

        HHLOptions opts;
        opts.compute_oracle_fidelity = false;
        opts.norm_unscale = 1.0 / scale;
        SolveReport solve = hhl_solve(scaled, rhs, params, opts);

        probs.resize(static_cast<std::size_t>(solve.output_state.size()));
        for (Eigen::Index i = 0; i < solve.output_state.size(); ++i) {
            probs[static_cast<std::size_t>(i)] =
                std::norm(solve.output_state[i]);
        }
        offset = sys.meta.dim;
        report.hhl_params = params;
        report.hhl_report = std::move(solve);
    }

    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uint64_t raw = 0;
    std::uint64_t accepted = 0;
    std::vector<std::uint64_t> bit_counts(2, 0);
    while (accepted < shots) {
        const double u = unit(rng) * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t index = static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(),
                                     static_cast<std::ptrdiff_t>(cdf.size()) - 1));
        ++raw;
        if (index >= offset) {
            const DecodedSample d =
                decode_clock_sample(index - offset, sys.meta);
            if (d.accept) {
                ++accepted;
                ++bit_counts[static_cast<std::size_t>(d.first_qubit_bit)];
            }
        }
        if (raw == kAcceptRateCheckpoint &&
            static_cast<double>(accepted) <
                kMinAcceptRate * static_cast<double>(raw)) {
            throw DecodeFailureError(
                "accept rate " +
                std::to_string(static_cast<double>(accepted) /
                               static_cast<double>(raw)) +
                " after " + std::to_string(raw) +
                " raw samples; clock construction looks wrong");
        }
    }

    report.decoded = SampleDistribution::from_counts(bit_counts);
    report.accept_rate =
        static_cast<double>(accepted) / static_cast<double>(raw);
    report.raw_samples = raw;
    report.accepted_samples = accepted;
    report.tv_distance = qls::tv_distance(report.decoded, report.reference);
    return report;
}

namespace {

[[noreturn]] void qcirc_fail(int line_no, const std::string &msg) {
    throw FormatError("line " + std::to_string(line_no) + ": " + msg);
}

Complex read_complex(std::istringstream &ss, int line_no) {
    double re = 0.0, im = 0.0;
    if (!(ss >> re >> im)) {
        qcirc_fail(line_no, "expected 're im' pair");
    }
    return {re, im};
}

DenseMatrix read_matrix(std::istringstream &ss, int line_no, int n) {
    DenseMatrix u(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            u(r, c) = read_complex(ss, line_no);
        }
    }
    return u;
}

int read_qubit(std::istringstream &ss, int line_no, int n_qubits) {
    int q = -1;
    if (!(ss >> q)) {
        qcirc_fail(line_no, "expected a qubit index");
    }
    if (q < 0 || q >= n_qubits) {
        qcirc_fail(line_no, "qubit index " + std::to_string(q) +
                                " out of range for n = " +
                                std::to_string(n_qubits));
    }
    return q;
}

} // namespace

QuantumCircuitDescription parse_qcirc(std::istream &in) {
    int line_no = 0;
    std::string line;
    auto next = [&]() -> std::string {
        if (!std::getline(in, line)) {
            throw FormatError("unexpected end of circuit file at line " +
                              std::to_string(line_no + 1));
        }
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        return line;
    };

    if (next() != "qcirc v1") {
        qcirc_fail(line_no, "expected header 'qcirc v1'");
    }
    int n_qubits = 0, gate_count = 0;
    {
        std::istringstream ss(next());
        std::string extra;
        if (!(ss >> n_qubits >> gate_count) || (ss >> extra)) {
            qcirc_fail(line_no, "expected 'n T'");
        }
        if (n_qubits < 1 || gate_count < 1) {
            qcirc_fail(line_no, "n and T must be >= 1");
        }
    }

    std::vector<GateOp> gates;
    gates.reserve(static_cast<std::size_t>(gate_count));
    for (int g = 0; g < gate_count; ++g) {
        std::istringstream ss(next());
        std::string mnemonic;
        ss >> mnemonic;
        try {
            if (mnemonic == "H") {
                gates.push_back(GateOp::h(read_qubit(ss, line_no, n_qubits)));
            } else if (mnemonic == "X") {
                gates.push_back(GateOp::x(read_qubit(ss, line_no, n_qubits)));
            } else if (mnemonic == "Y") {
                gates.push_back(GateOp::y(read_qubit(ss, line_no, n_qubits)));
            } else if (mnemonic == "Z") {
                gates.push_back(GateOp::z(read_qubit(ss, line_no, n_qubits)));
            } else if (mnemonic == "S") {
                gates.push_back(GateOp::s(read_qubit(ss, line_no, n_qubits)));
            } else if (mnemonic == "T") {
                gates.push_back(GateOp::t(read_qubit(ss, line_no, n_qubits)));
            } else if (mnemonic == "CNOT") {
                const int qc = read_qubit(ss, line_no, n_qubits);
                const int qt = read_qubit(ss, line_no, n_qubits);
                gates.push_back(GateOp::cnot(qc, qt));
            } else if (mnemonic == "CZ") {
                const int q1 = read_qubit(ss, line_no, n_qubits);
                const int q2 = read_qubit(ss, line_no, n_qubits);
                gates.push_back(GateOp::cz(q1, q2));
            } else if (mnemonic == "U1") {
                const int q = read_qubit(ss, line_no, n_qubits);
                gates.push_back(
                    GateOp::single(q, read_matrix(ss, line_no, 2)));
            } else if (mnemonic == "U2") {
                const int q1 = read_qubit(ss, line_no, n_qubits);
                const int q2 = read_qubit(ss, line_no, n_qubits);
                gates.push_back(
                    GateOp::two(q1, q2, read_matrix(ss, line_no, 4)));
            } else {
                qcirc_fail(line_no, "unknown gate '" + mnemonic + "'");
            }
        } catch (const InvalidInputError &err) {
            qcirc_fail(line_no, err.what());
        }
        std::string extra;
        if (ss >> extra) {
            qcirc_fail(line_no, "trailing tokens after gate: '" + extra + "'");
        }
    }

    try {
        return QuantumCircuitDescription::make(n_qubits, std::move(gates));
    } catch (const InvalidInputError &err) {
        throw FormatError(std::string("invalid circuit: ") + err.what());
    }
}

QuantumCircuitDescription parse_qcirc_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidInputError("cannot open circuit file '" + path + "'");
    }
    return parse_qcirc(in);
}

void write_qcirc(std::ostream &out, const QuantumCircuitDescription &circuit) {
    out << "qcirc v1\n"
        << circuit.n_qubits << ' ' << circuit.gate_count() << '\n';
    for (const GateOp &g : circuit.gates) {
        switch (g.kind) {
        case GateKind::H:
            out << "H " << g.qubits[0] << '\n';
            break;
        case GateKind::X:
            out << "X " << g.qubits[0] << '\n';
            break;
        case GateKind::Y:
            out << "Y " << g.qubits[0] << '\n';
            break;
        case GateKind::Z:
            out << "Z " << g.qubits[0] << '\n';
            break;
        case GateKind::S:
            out << "S " << g.qubits[0] << '\n';
            break;
        case GateKind::T:
            out << "T " << g.qubits[0] << '\n';
            break;
        case GateKind::CNOT:
            out << "CNOT " << g.qubits[0] << ' ' << g.qubits[1] << '\n';
            break;
        case GateKind::CZ:
            out << "CZ " << g.qubits[0] << ' ' << g.qubits[1] << '\n';
            break;
        case GateKind::U1:
        case GateKind::U2: {
            out << (g.kind == GateKind::U1 ? "U1 " : "U2 ") << g.qubits[0];
            if (g.kind == GateKind::U2) {
                out << ' ' << g.qubits[1];
            }
            std::ostringstream vals;
            vals.precision(17);
            for (Eigen::Index r = 0; r < g.matrix.rows(); ++r) {
                for (Eigen::Index c = 0; c < g.matrix.cols(); ++c) {
                    vals << ' ' << g.matrix(r, c).real() << ' '
                         << g.matrix(r, c).imag();
                }
            }
            out << vals.str() << '\n';
            break;
        }
        }
    }
}

} // namespace qls
