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

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qls/baselines.hpp"
#include "qls/encoders.hpp"
#include "qls/hhl.hpp"
#include "qls/matrix_io.hpp"
#include "qls/numeric.hpp"
#include "qls/reduction.hpp"
#include "qls/version.hpp"

using nlohmann::json;

namespace {

int exit_code_for(qls::ErrorCode code) {
    switch (code) {
    case qls::ErrorCode::invalid_input:
    case qls::ErrorCode::format:
        return 2;
    case qls::ErrorCode::capacity:
        return 3;
    default:
        return 4;
    }
}

std::vector<double> parse_reals(const std::string &text,
                                const std::string &what) {
    std::istringstream ss(text);
    std::vector<double> values;
    double v = 0.0;
    while (ss >> v) {
        values.push_back(v);
    }
    std::string extra;
    ss.clear();
    if (ss >> extra) {
        throw qls::InvalidInputError("could not parse " + what + ": '" +
                                     extra + "'");
    }
    if (values.empty()) {
        throw qls::InvalidInputError(what + " is empty");
    }
    return values;
}

std::vector<double> read_value_file(const std::string &path,
                                    const std::string &what) {
    std::ifstream in(path);
    if (!in) {
        throw qls::InvalidInputError("cannot open " + what + " file '" + path +
                                     "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_reals(buffer.str(), what);
}

qls::DenseVector to_complex(const std::vector<double> &values) {
    qls::DenseVector v(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = qls::Complex{values[i], 0.0};
    }
    return v;
}

json vector_json(const qls::DenseVector &v) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        re.push_back(v[i].real());
        im.push_back(v[i].imag());
    }
    return json{{"re", re}, {"im", im}};
}

json distribution_json(const qls::SampleDistribution &d) {
    return json(d.probabilities);
}

json resources_json(const qls::ResourceUsage &r) {
    return json{{"t_a_calls", r.row_oracle_calls},
                {"t_b_calls", r.state_prep_calls},
                {"gates", r.gate_applications},
                {"clock_bits", r.clock_bits}};
}

json params_json(const qls::HHLParams &p) {
    return json{{"clock_bits", p.n_clock},
                {"t0", p.t0},
                {"rotation_c", p.rotation_c},
                {"kappa", p.kappa},
                {"epsilon", p.epsilon}};
}

json solve_report_json(const qls::SolveReport &r) {
    json out{{"success_probability", r.success_probability},
             {"norm_estimate", r.norm_estimate},
             {"output_state", vector_json(r.output_state)},
             {"resources", resources_json(r.resources)}};
    if (r.fidelity_vs_oracle) {
        out["fidelity_vs_oracle"] = *r.fidelity_vs_oracle;
    }
    return out;
}

void flatten_csv(const json &node, const std::string &prefix,
                 std::ostream &out) {
    if (node.is_object()) {
        for (const auto &[key, value] : node.items()) {
            flatten_csv(value, prefix.empty() ? key : prefix + "." + key, out);
        }
    } else if (node.is_array()) {
        std::size_t i = 0;
        for (const auto &value : node) {
            flatten_csv(value, prefix + "[" + std::to_string(i) + "]", out);
            ++i;
        }
    } else {
        out << prefix << ',' << node.dump() << '\n';
    }
}

struct OutputOptions {
    std::string path; // empty: stdout
    std::string format = "json";
};

void emit_report(const json &report, const OutputOptions &opts) {
    std::ostringstream body;
    if (opts.format == "csv") {
        flatten_csv(report, "", body);
    } else {
        body << report.dump(2) << '\n';
    }
    if (opts.path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(opts.path);
        if (!out) {
            throw qls::InvalidInputError("cannot write output file '" +
                                         opts.path + "'");
        }
        out << body.str();
    }
}

json report_skeleton(const std::string &command) {
    return json{{"schema", qls::kReportSchema},
                {"version", qls::kVersion},
                {"command", command}};
}

int ceil_log2_int(Eigen::Index n) {
    int bits = 0;
    while ((Eigen::Index{1} << bits) < n) {
        ++bits;
    }
    return bits;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string matrix_path;
    std::string b_inline;
    std::string b_file;
    double epsilon = 0.1;
    std::optional<double> kappa;
    std::optional<int> clock_bits;
    std::optional<double> t0;
    std::optional<double> rotation_c;
    std::string backend = "both";
    std::uint64_t shots = 0;
    std::optional<std::uint64_t> seed;
};

qls::DenseVector load_rhs(const std::string &inline_text,
                          const std::string &file, Eigen::Index dim) {
    std::vector<double> values;
    if (!inline_text.empty() && !file.empty()) {
        throw qls::InvalidInputError("give --b or --b-file, not both");
    }
    if (!inline_text.empty()) {
        values = parse_reals(inline_text, "--b");
    } else if (!file.empty()) {
        values = read_value_file(file, "--b-file");
    } else {
        throw qls::InvalidInputError(
            "a right-hand side (--b/--b-file) is required");
    }
    if (static_cast<Eigen::Index>(values.size()) != dim) {
        throw qls::InvalidInputError(
            "right-hand side has " + std::to_string(values.size()) +
            " entries, matrix dimension is " + std::to_string(dim));
    }
    return to_complex(values);
}

qls::HHLParams resolve_params(const SolveArgs &args, double kappa,
                              int n_system) {
    qls::HHLParams params = qls::choose_params(kappa, args.epsilon, n_system);
    if (args.clock_bits || args.t0 || args.rotation_c) {
        params = qls::HHLParams::make(
            args.clock_bits.value_or(params.n_clock),
            args.t0.value_or(params.t0),
            args.rotation_c.value_or(params.rotation_c), kappa, args.epsilon);
        if (n_system + params.n_clock + 1 > qls::kMaxQubits) {
            throw qls::CapacityError(
                "overridden clock size exceeds the qubit cap");
        }
    }
    return params;
}

json run_solve(const SolveArgs &args) {
    if (args.backend != "classical" && args.backend != "quantum-hhl" &&
        args.backend != "both") {
        throw qls::InvalidInputError("unknown backend '" + args.backend + "'");
    }
    if (args.shots > 0 && !args.seed) {
        throw qls::InvalidInputError("--seed is required when --shots > 0");
    }

    const qls::SparseHermitianMatrix a =
        qls::read_hcoo_file(args.matrix_path, args.kappa);
    qls::DenseVector b = load_rhs(args.b_inline, args.b_file, a.dim());
    const double b_norm = b.norm();
    if (!(b_norm > 0.0)) {
        throw qls::InvalidInputError("right-hand side must be nonzero");
    }
    b /= b_norm;

    json report = report_skeleton("solve");
    report["config"] = {{"matrix", args.matrix_path},
                        {"epsilon", args.epsilon},
                        {"backend", args.backend},
                        {"shots", args.shots},
                        {"seed", args.seed ? json(*args.seed) : json()},
                        {"b_norm", b_norm}};

    json results;
    const bool quantum =
        args.backend == "quantum-hhl" || args.backend == "both";
    const bool classical =
        args.backend == "classical" || args.backend == "both";

    qls::DenseVector x_direct;
    if (classical) {
        x_direct = qls::direct_solve(a, b);
        results["classical"] = {{"norm", x_direct.norm()},
                                {"solution", vector_json(x_direct)}};
    }

    if (quantum) {
        auto [scaled, scale] = qls::spectrum_rescale(a);
        const double kappa =
            args.kappa ? *args.kappa : qls::condition_number(a);
        const qls::HHLParams params =
            resolve_params(args, kappa, ceil_log2_int(a.dim()));

        qls::HHLOptions opts;
        opts.compute_oracle_fidelity = true;
        opts.norm_unscale = 1.0 / scale;
        const qls::SolveReport solve = qls::hhl_solve(scaled, b, params, opts);

        results["kappa"] = kappa;
        results["scale"] = scale;
        results["params"] = params_json(params);
        results["quantum"] = solve_report_json(solve);

        if (args.shots > 0) {
            const qls::NormEstimate est = qls::estimate_norm_sampled(
                scaled, b, params, args.shots, *args.seed, opts);
            results["quantum"]["sampled_norm"] = {
                {"estimate", est.estimate},
                {"standard_error", est.standard_error},
                {"successes", est.successes},
                {"shots", est.shots},
                {"reliable", est.reliable}};
        }
        if (classical) {
            const qls::DenseVector x_unit = x_direct / x_direct.norm();
            results["comparison"] = {
                {"fidelity", qls::fidelity(solve.output_state, x_unit)},
                {"norm_relative_error",
                 std::abs(solve.norm_estimate - x_direct.norm()) /
                     x_direct.norm()}};
        }
    }
    report["results"] = results;
    return report;
}

// --------------------------------------------------------------- reduce

struct ReduceArgs {
    std::string circuit_path;
    double epsilon = 0.1;
    std::string backend = "classical";
    std::uint64_t shots = 10000;
    std::optional<std::uint64_t> seed;
    int trials = 1;
};

json reduction_json(const qls::ReductionReport &r) {
    json out{{"decoded", distribution_json(r.decoded)},
             {"reference", distribution_json(r.reference)},
             {"tv_distance", r.tv_distance},
             {"accept_rate", r.accept_rate},
             {"kappa", r.kappa},
             {"raw_samples", r.raw_samples},
             {"accepted_samples", r.accepted_samples}};
    if (r.hhl_params) {
        out["params"] = params_json(*r.hhl_params);
    }
    if (r.hhl_report) {
        out["quantum"] = {
            {"success_probability", r.hhl_report->success_probability},
            {"norm_estimate", r.hhl_report->norm_estimate},
            {"resources", resources_json(r.hhl_report->resources)}};
    }
    return out;
}

json run_reduce(const ReduceArgs &args) {
    if (args.backend != "classical" && args.backend != "quantum-hhl") {
        throw qls::InvalidInputError("unknown backend '" + args.backend + "'");
    }
    if (!args.seed) {
        throw qls::InvalidInputError("--seed is required for sampling");
    }
    if (args.trials < 1) {
        throw qls::InvalidInputError("--trials must be >= 1");
    }
    const qls::QuantumCircuitDescription circuit =
        qls::parse_qcirc_file(args.circuit_path);
    const qls::ReductionBackend backend =
        args.backend == "classical" ? qls::ReductionBackend::classical
                                    : qls::ReductionBackend::quantum_hhl;

    json report = report_skeleton("reduce");
    report["config"] = {{"circuit", args.circuit_path},
                        {"epsilon", args.epsilon},
                        {"backend", args.backend},
                        {"shots", args.shots},
                        {"seed", *args.seed},
                        {"trials", args.trials}};

    if (args.trials == 1) {
        report["results"] = reduction_json(qls::run_reduction(
            circuit, args.epsilon, backend, args.shots, *args.seed));
        return report;
    }

    // independent seeded trials, fanned out concurrently and merged
    std::vector<std::future<qls::ReductionReport>> futures;
    futures.reserve(static_cast<std::size_t>(args.trials));
    for (int t = 0; t < args.trials; ++t) {
        futures.push_back(std::async(std::launch::async, [&, t] {
            return qls::run_reduction(
                circuit, args.epsilon, backend, args.shots,
                *args.seed + static_cast<std::uint64_t>(t));
        }));
    }
    json trials = json::array();
    std::vector<std::uint64_t> merged_counts(2, 0);
    qls::SampleDistribution reference;
    for (auto &f : futures) {
        const qls::ReductionReport r = f.get();
        reference = r.reference;
        merged_counts[0] += static_cast<std::uint64_t>(
            r.decoded.probabilities[0] * static_cast<double>(r.shots) + 0.5);
        merged_counts[1] += static_cast<std::uint64_t>(
            r.decoded.probabilities[1] * static_cast<double>(r.shots) + 0.5);
        trials.push_back(reduction_json(r));
    }
    const qls::SampleDistribution merged =
        qls::SampleDistribution::from_counts(merged_counts);
    report["results"] = {
        {"trials", trials},
        {"merged_decoded", distribution_json(merged)},
        {"merged_tv_distance", qls::tv_distance(merged, reference)}};
    return report;
}

// --------------------------------------------------------------- encode

struct EncodeArgs {
    std::string least_squares_path;
    std::string poisson_q_inline;
    std::string poisson_q_file;
    int poisson_d = 0;
    int poisson_l = 0;
    std::string ode_matrix_path;
    std::string ode_b_inline;
    std::string ode_b_file;
    std::string x_init;
    std::string t_grid;
    std::string b_inline;
    std::string b_file;
    std::string emit_matrix;
    std::string backend = "classical";
    double epsilon = 0.1;
};

json encoded_json(const qls::EncodedSystem &sys) {
    return json{{"dim", sys.matrix.dim()},
                {"sparsity", sys.matrix.sparsity()},
                {"kappa", sys.kappa_report},
                {"unscale", sys.unscale},
                {"slice_begin", sys.slice_begin},
                {"slice_end", sys.slice_end},
                {"provenance", sys.provenance},
                {"reference_solution", vector_json(sys.reference_solution)}};
}

qls::EncodedSystem build_encoded(const EncodeArgs &args) {
    const int selected = (!args.least_squares_path.empty() ? 1 : 0) +
                         (args.poisson_d > 0 ? 1 : 0) +
                         (!args.ode_matrix_path.empty() ? 1 : 0);
    if (selected != 1) {
        throw qls::InvalidInputError(
            "select exactly one of --least-squares, --poisson-d, --ode-matrix");
    }
    if (!args.least_squares_path.empty()) {
        const qls::DenseMatrix m = qls::read_coo_file(args.least_squares_path);
        const qls::DenseVector b =
            load_rhs(args.b_inline, args.b_file, m.rows());
        return qls::encode_least_squares(m, b);
    }
    if (args.poisson_d > 0) {
        std::vector<double> q;
        if (!args.poisson_q_inline.empty()) {
            q = parse_reals(args.poisson_q_inline, "--q");
        } else if (!args.poisson_q_file.empty()) {
            q = read_value_file(args.poisson_q_file, "--q-file");
        } else {
            throw qls::InvalidInputError("Poisson needs --q or --q-file");
        }
        return qls::encode_poisson(args.poisson_d, args.poisson_l, q);
    }
    // constant-coefficient ODE from files/inline vectors
    const qls::DenseMatrix a0 = qls::read_coo_file(args.ode_matrix_path);
    if (a0.rows() != a0.cols()) {
        throw qls::InvalidInputError("--ode-matrix must be square");
    }
    const int n = static_cast<int>(a0.rows());
    std::vector<double> b_vals;
    if (!args.ode_b_inline.empty()) {
        b_vals = parse_reals(args.ode_b_inline, "--ode-b");
    } else if (!args.ode_b_file.empty()) {
        b_vals = read_value_file(args.ode_b_file, "--ode-b-file");
    } else {
        b_vals.assign(static_cast<std::size_t>(n), 0.0);
    }
    if (static_cast<int>(b_vals.size()) != n) {
        throw qls::InvalidInputError("--ode-b has wrong dimension");
    }
    if (args.x_init.empty() || args.t_grid.empty()) {
        throw qls::InvalidInputError("ODE needs --x-init and --t-grid");
    }
    const qls::DenseVector x0 =
        to_complex(parse_reals(args.x_init, "--x-init"));
    if (static_cast<int>(x0.size()) != n) {
        throw qls::InvalidInputError("--x-init has wrong dimension");
    }
    const std::vector<double> grid = parse_reals(args.t_grid, "--t-grid");
    const qls::DenseVector b0 = to_complex(b_vals);
    return qls::encode_ode(
        n, [&](double) { return a0; }, [&](double) { return b0; }, x0, grid);
}

json run_encode(const EncodeArgs &args) {
    if (args.backend != "classical" && args.backend != "quantum-hhl" &&
        args.backend != "both") {
        throw qls::InvalidInputError("unknown backend '" + args.backend + "'");
    }
    const qls::EncodedSystem sys = build_encoded(args);

    json report = report_skeleton("encode");
    report["config"] = {{"backend", args.backend},
                        {"epsilon", args.epsilon},
                        {"provenance", sys.provenance}};
    json results = encoded_json(sys);

    if (!args.emit_matrix.empty()) {
        qls::write_hcoo_file(args.emit_matrix, sys.matrix);
        results["emitted_matrix"] = args.emit_matrix;
    }

    if (args.backend == "quantum-hhl" || args.backend == "both") {
        const int n_system = ceil_log2_int(sys.matrix.dim());
        const qls::HHLParams params =
            qls::choose_params(sys.kappa_report, args.epsilon, n_system);
        qls::HHLOptions opts;
        opts.compute_oracle_fidelity = false;
        opts.norm_unscale = sys.unscale;
        const qls::SolveReport solve =
            qls::hhl_solve(sys.matrix, sys.rhs, params, opts);
        results["params"] = params_json(params);
        results["quantum"] = solve_report_json(solve);

        // fidelity on the physically meaningful slice
        qls::DenseVector slice =
            solve.output_state.segment(sys.slice_begin, sys.slice_size());
        const double slice_norm = slice.norm();
        if (slice_norm > 0.0) {
            slice /= slice_norm;
            const qls::DenseVector ref_unit =
                sys.reference_solution / sys.reference_solution.norm();
            results["comparison"] = {
                {"slice_fidelity", qls::fidelity(slice, ref_unit)},
                {"slice_mass", slice_norm * slice_norm}};
        }
    }
    report["results"] = results;
    return report;
}

// ---------------------------------------------------------------- probe

struct ProbeArgs {
    int poisson_d = 1;
    std::vector<int> l_values;
};

json run_probe(const ProbeArgs &args) {
    const qls::KappaProbeResult probe =
        qls::kappa_scaling_probe(args.poisson_d, args.l_values);

    json report = report_skeleton("probe");
    report["config"] = {{"poisson_d", args.poisson_d}, {"L", args.l_values}};
    json rows = json::array();
    for (const auto &row : probe.rows) {
        rows.push_back(json{{"L", row.points_per_axis}, {"kappa", row.kappa}});
    }
    json results{{"rows", rows}};
    if (probe.fitted_exponent) {
        results["fitted_exponent"] = *probe.fitted_exponent;
    }
    report["results"] = results;
    return report;
}

// -------------------------------------------------------------- validate

struct ValidateArgs {
    std::string matrix_path;
    std::string b_inline;
    std::string b_file;
    std::optional<double> kappa;
    double epsilon = 0.1;
};

json run_validate(const ValidateArgs &args) {
    json report = report_skeleton("validate");
    report["config"] = {{"matrix", args.matrix_path},
                        {"epsilon", args.epsilon}};
    json diagnostics = json::array();

    std::optional<qls::SparseHermitianMatrix> a;
    try {
        a = qls::read_hcoo_file(args.matrix_path);
    } catch (const qls::Error &err) {
        diagnostics.push_back(
            json{{"check", "matrix_format"}, {"message", err.what()}});
    }

    if (a) {
        if (!args.b_inline.empty() || !args.b_file.empty()) {
            try {
                const qls::DenseVector b =
                    load_rhs(args.b_inline, args.b_file, a->dim());
                const double norm = b.norm();
                if (std::abs(norm - 1.0) > 1e-10) {
                    diagnostics.push_back(json{
                        {"check", "b_norm"},
                        {"message", "||b|| = " + std::to_string(norm) +
                                        "; the solver normalizes before use"}});
                }
            } catch (const qls::Error &err) {
                diagnostics.push_back(
                    json{{"check", "b_parse"}, {"message", err.what()}});
            }
        }
        try {
            const double computed = qls::condition_number(*a);
            if (args.kappa &&
                std::abs(computed - *args.kappa) > 0.05 * computed) {
                diagnostics.push_back(
                    json{{"check", "kappa_mismatch"},
                         {"message",
                          "declared kappa " + std::to_string(*args.kappa) +
                              " vs computed " + std::to_string(computed)}});
            }
            const int n_system = ceil_log2_int(a->dim());
            try {
                qls::choose_params(args.kappa.value_or(computed), args.epsilon,
                                   n_system);
            } catch (const qls::Error &err) {
                diagnostics.push_back(
                    json{{"check", "capacity"}, {"message", err.what()}});
            }
        } catch (const qls::Error &err) {
            diagnostics.push_back(
                json{{"check", "condition_number"}, {"message", err.what()}});
        }
    }

    report["results"] = {{"diagnostics", diagnostics},
                         {"ok", diagnostics.empty()}};
    return report;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Desk-scale quantum linear-systems laboratory"};
    app.require_subcommand(1);

    OutputOptions output;
    app.add_option("--output", output.path,
                   "Write the report here instead of stdout");
    app.add_option("--format", output.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));

    SolveArgs solve_args;
    auto *solve = app.add_subcommand("solve", "Solve A x = b");
    solve->add_option("--matrix", solve_args.matrix_path, "hcoo v1 matrix file")
        ->required();
    solve->add_option("--b", solve_args.b_inline, "Inline right-hand side");
    solve->add_option("--b-file", solve_args.b_file, "Right-hand side file");
    solve->add_option("--epsilon", solve_args.epsilon, "Target error");
    solve->add_option("--kappa", solve_args.kappa, "Declared condition number");
    solve->add_option("--clock-bits", solve_args.clock_bits,
                      "Clock register override");
    solve->add_option("--t0", solve_args.t0, "Evolution time override");
    solve->add_option("--rotation-c", solve_args.rotation_c,
                      "Rotation constant override");
    solve->add_option("--backend", solve_args.backend,
                      "classical | quantum-hhl | both");
    solve->add_option("--shots", solve_args.shots,
                      "Sampled norm-estimate shots");
    solve->add_option("--seed", solve_args.seed, "Sampling seed");

    ReduceArgs reduce_args;
    auto *reduce = app.add_subcommand(
        "reduce", "Compile a circuit to a linear system and round-trip it");
    reduce->add_option("--circuit", reduce_args.circuit_path, "qcirc v1 file")
        ->required();
    reduce->add_option("--epsilon", reduce_args.epsilon, "Target error");
    reduce->add_option("--backend", reduce_args.backend,
                       "classical | quantum-hhl");
    reduce->add_option("--shots", reduce_args.shots, "Accepted samples");
    reduce->add_option("--seed", reduce_args.seed, "Sampling seed");
    reduce->add_option("--trials", reduce_args.trials,
                       "Independent seeded trials, merged");

    EncodeArgs encode_args;
    auto *encode = app.add_subcommand(
        "encode", "Encode an application problem as a linear system");
    encode->add_option("--least-squares", encode_args.least_squares_path,
                       "coo v1 rectangular matrix");
    encode->add_option("--b", encode_args.b_inline, "Least-squares rhs");
    encode->add_option("--b-file", encode_args.b_file,
                       "Least-squares rhs file");
    encode->add_option("--poisson-d", encode_args.poisson_d,
                       "Poisson dimension");
    encode->add_option("--L", encode_args.poisson_l,
                       "Interior points per axis");
    encode->add_option("--q", encode_args.poisson_q_inline, "Poisson source");
    encode->add_option("--q-file", encode_args.poisson_q_file,
                       "Poisson source file");
    encode->add_option("--ode-matrix", encode_args.ode_matrix_path,
                       "coo v1 square generator");
    encode->add_option("--ode-b", encode_args.ode_b_inline,
                       "Constant forcing");
    encode->add_option("--ode-b-file", encode_args.ode_b_file, "Forcing file");
    encode->add_option("--x-init", encode_args.x_init, "Initial state");
    encode->add_option("--t-grid", encode_args.t_grid, "Time grid points");
    encode->add_option("--emit-matrix", encode_args.emit_matrix,
                       "Write the encoded hcoo matrix here");
    encode->add_option("--backend", encode_args.backend,
                       "classical | quantum-hhl | both");
    encode->add_option("--epsilon", encode_args.epsilon, "Target error");

    ProbeArgs probe_args;
    auto *probe = app.add_subcommand("probe", "Condition-number scaling probe");
    probe->add_option("--poisson-d", probe_args.poisson_d, "Poisson dimension");
    probe->add_option("--L", probe_args.l_values,
                      "Grid sizes (comma separated)")
        ->delimiter(',')
        ->required();

    ValidateArgs validate_args;
    auto *validate =
        app.add_subcommand("validate", "Check inputs without running");
    validate->add_option("--matrix", validate_args.matrix_path, "hcoo v1 file")
        ->required();
    validate->add_option("--b", validate_args.b_inline, "Inline rhs");
    validate->add_option("--b-file", validate_args.b_file, "Rhs file");
    validate->add_option("--kappa", validate_args.kappa, "Declared kappa");
    validate->add_option("--epsilon", validate_args.epsilon, "Target error");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help and friends
        }
        std::cerr << e.what() << '\n';
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        json report;
        if (solve->parsed()) {
            report = run_solve(solve_args);
        } else if (reduce->parsed()) {
            report = run_reduce(reduce_args);
        } else if (encode->parsed()) {
            report = run_encode(encode_args);
        } else if (probe->parsed()) {
            report = run_probe(probe_args);
        } else {
            report = run_validate(validate_args);
        }
        const auto elapsed = std::chrono::steady_clock::now() - started;
        report["wall_ms"] =
            std::chrono::duration<double, std::milli>(elapsed).count();
        emit_report(report, output);
        return 0;
    } catch (const qls::Error &err) {
        const int code = exit_code_for(err.code());
        const json failure{{"schema", qls::kReportSchema},
                           {"version", qls::kVersion},
                           {"error",
                            {{"code", code},
                             {"kind", err.code_name()},
                             {"message", err.what()}}}};
        try {
            emit_report(failure, output);
        } catch (...) {
            std::cout << failure.dump(2) << '\n';
        }
        return code;
    } catch (const std::exception &err) {
        const json failure{{"schema", qls::kReportSchema},
                           {"version", qls::kVersion},
                           {"error",
                            {{"code", 4},
                             {"kind", "internal"},
                             {"message", err.what()}}}};
        std::cout << failure.dump(2) << '\n';
        return 4;
    }
}
