// Copyright 2026 The mubtrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mubtrace_cli/commands.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "mubtrace/analysis.h"
#include "mubtrace/estimators.h"
#include "mubtrace/experiment.h"
#include "mubtrace/graph.h"
#include "mubtrace/matrix_market.h"
#include "mubtrace/mub.h"
#include "mubtrace/primes.h"

namespace mubtrace::cli {
namespace {

// Largest matrix the trace and table commands will densify for the analytic report.
constexpr std::size_t kMaxDenseReportDim = 4096;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

EstimatorKind estimator_or_throw(const std::string &name) {
    auto kind = parse_estimator_kind(name);
    if (!kind) {
        throw UsageError("unknown estimator '" + name + "' (expected fixed, mubs, hutchinson or gaussian)");
    }
    return *kind;
}

// Fifteen significant digits: last-ulp rounding noise stays out of human-readable reports.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void line(std::ostream &out, const char *key, const std::string &value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%-20s", key);
    out << buf << value << '\n';
}

void line(std::ostream &out, const char *key, std::uint64_t value) {
    line(out, key, std::to_string(value));
}

std::optional<DenseMatrix> small_dense(const MatrixMarketMatrix &m) {
    if (const auto *d = std::get_if<DenseMatrix>(&m)) {
        if (d->dim() <= kMaxDenseReportDim) {
            return *d;
        }
        return std::nullopt;
    }
    const auto &s = std::get<SparseSymmetric>(m);
    if (s.dim() <= kMaxDenseReportDim) {
        return s.to_dense();
    }
    return std::nullopt;
}

struct TraceArgs {
    std::string input;
    std::string estimator = "mubs";
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    bool enumerate = false;
    bool psd = false;
};

int cmd_trace(const TraceArgs &a, std::ostream &out) {
    EstimatorKind kind = estimator_or_throw(a.estimator);
    MatrixMarketMatrix matrix = read_matrix_market_file(a.input);
    OraclePtr oracle = make_oracle(matrix);
    TraceEstimate e = estimate_trace(*oracle, kind, a.samples, a.seed, {a.threads});

    line(out, "estimator", std::string(estimator_name(kind)));
    line(out, "dimension", oracle->dim());
    line(out, "probe_dimension", e.probe_dim);
    line(out, "samples", e.samples);
    line(out, "seed", a.seed);
    line(out, "mean", fmt(e.mean));
    line(out, "sample_variance", fmt(e.sample_variance));
    line(out, "bits", e.total_bits);
    line(out, "theoretical_bits", random_bits_required(kind, e.probe_dim).describe() + " per probe");
    if (auto tr = oracle->known_trace()) {
        line(out, "exact_trace", fmt(*tr));
    }
    if (a.enumerate) {
        if (kind != EstimatorKind::kFixedBasis && kind != EstimatorKind::kMubs) {
            throw UsageError("--enumerate supports only the fixed and mubs estimators");
        }
        OraclePtr target = kind == EstimatorKind::kMubs ? padded_oracle(oracle, e.probe_dim) : oracle;
        EnumerationResult r = enumerate_variance(kind, *target);
        line(out, "enumerated_mean", fmt(r.mean));
        line(out, "enumerated_variance", fmt(r.variance));
        line(out, "outcomes", r.outcomes);
    }
    if (oracle->dim() <= kDefaultEnumerationCap) {
        if (auto dense = small_dense(matrix)) {
            out << '\n';
            write_variance_table(*dense, out, a.psd);
        }
    }
    return kExitOk;
}

struct TriangleArgs {
    std::string input;
    std::string estimator = "mubs";
    std::uint64_t samples = 100;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    bool skip_exact = false;
};

int cmd_triangles(const TriangleArgs &a, std::ostream &out) {
    EstimatorKind kind = estimator_or_throw(a.estimator);
    Graph g = read_snap_edge_list_file(a.input);
    std::optional<std::uint64_t> exact;
    if (!a.skip_exact) {
        exact = exact_triangle_count(g);
    }
    TriangleEstimate t = estimate_triangles(g, kind, a.samples, a.seed, {a.threads}, exact);
    line(out, "estimator", std::string(estimator_name(kind)));
    line(out, "vertices", g.num_vertices());
    line(out, "edges", g.num_edges());
    line(out, "samples", t.samples);
    line(out, "seed", a.seed);
    line(out, "estimate", fmt(t.estimate));
    line(out, "sample_variance", fmt(t.sample_variance));
    line(out, "bits", t.total_bits);
    if (exact) {
        line(out, "exact_triangles", *exact);
    }
    if (t.abs_rel_error) {
        line(out, "abs_rel_error", fmt(*t.abs_rel_error));
    }
    return kExitOk;
}

struct MubArgs {
    std::uint64_t p = 0;
    std::string action;
    std::string output;
    double tolerance = kDefaultMubTolerance;
};

int cmd_mub(const MubArgs &a, std::ostream &out, std::ostream &err) {
    auto dim = PrimeDim::try_make(a.p);
    if (!dim) {
        err << a.p << " is not prime; nearest supported: " << next_prime_at_least(std::max<std::uint64_t>(a.p, 2))
            << '\n';
        return kExitUsage;
    }
    MubFamily family = generate_mub_family(*dim);
    if (a.action == "dump") {
        if (a.output.empty()) {
            write_mub_csv(family, out);
            return kExitOk;
        }
        std::ofstream file(a.output, std::ios::binary);
        if (!file) {
            throw std::runtime_error("cannot write '" + a.output + "'");
        }
        write_mub_csv(family, file);
        return kExitOk;
    }
    VerificationReport r = verify_mub_family(family, a.tolerance);
    line(out, "p", a.p);
    line(out, "bases", family.num_bases());
    line(out, "max_gram_error", fmt(r.max_orthonormality_error));
    line(out, "max_overlap_error", fmt(r.max_unbiasedness_error));
    line(out, "tolerance", fmt(a.tolerance));
    line(out, "result", r.pass ? "pass" : "fail");
    return r.pass ? kExitOk : kExitData;
}

int cmd_projector(std::uint64_t p, std::ostream &out, std::ostream &err) {
    auto dim = PrimeDim::try_make(p);
    if (!dim) {
        err << p << " is not prime; nearest supported: " << next_prime_at_least(std::max<std::uint64_t>(p, 2))
            << '\n';
        return kExitUsage;
    }
    ProjectorCheck c = projector_check(*dim);
    line(out, "p", p);
    line(out, "trace_P", fmt(c.trace_P));
    line(out, "trace_P_squared", fmt(c.trace_P_sq));
    line(out, "rank", c.rank);
    line(out, "expected_rank", p * (p + 1) / 2);
    line(out, "max_eigen_deviation", fmt(c.max_eigen_deviation));
    return kExitOk;
}

int cmd_table(const std::string &input, bool psd, std::ostream &out) {
    MatrixMarketMatrix matrix = read_matrix_market_file(input);
    auto dense = small_dense(matrix);
    if (!dense) {
        throw UsageError("matrix too large for the variance table (limit " + std::to_string(kMaxDenseReportDim) +
                         ")");
    }
    write_variance_table(*dense, out, psd);
    return kExitOk;
}

int cmd_benchmark(const ExperimentConfig &config, std::ostream &out) {
    std::vector<BenchmarkRow> rows = run_benchmark(config);
    if (config.output.empty()) {
        write_benchmark_csv(rows, out);
    }
    return kExitOk;
}

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Stochastic trace estimation with mutually unbiased bases"};
    app.name("mubtrace");
    app.require_subcommand(0, 1);

    ExperimentConfig config;
    std::vector<std::string> estimator_names;
    for (EstimatorKind k : config.estimators) {
        estimator_names.emplace_back(estimator_name(k));
    }
    std::string format = "matrix-market";
    std::string task = "trace";
    app.add_option("--input", config.input, "Matrix Market file or SNAP edge list")->check(CLI::ExistingFile);
    app.add_option("--format", format, "Input format")
        ->check(CLI::IsMember({"matrix-market", "snap"}))
        ->capture_default_str();
    app.add_option("--task", task, "What to estimate")
        ->check(CLI::IsMember({"trace", "triangles"}))
        ->capture_default_str();
    app.add_option("--estimators", estimator_names, "Comma-separated estimators")->delimiter(',')->capture_default_str();
    app.add_option("--samples", config.sample_counts, "Comma-separated, strictly ascending sample counts")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--trials", config.trials, "Trials per (estimator, samples) cell")->capture_default_str();
    app.add_option("--seed", config.seed, "Master seed")->capture_default_str();
    app.add_option("--out", config.output, "CSV destination (default: stdout)");
    app.add_flag("--count-real-equivalents", config.count_real_equivalents,
                 "Book each complex probe as two real quadratic forms");
    app.add_option("--threads", config.threads, "Worker threads, 0 for all cores")->capture_default_str();

    TraceArgs trace_args;
    CLI::App *trace = app.add_subcommand("trace", "Estimate the trace of a Matrix Market matrix");
    trace->add_option("input", trace_args.input, "Matrix Market file")->required()->check(CLI::ExistingFile);
    trace->add_option("-e,--estimator", trace_args.estimator, "Estimator")->capture_default_str();
    trace->add_option("-s,--samples", trace_args.samples, "Probe count")->capture_default_str();
    trace->add_option("--seed", trace_args.seed, "Seed")->capture_default_str();
    trace->add_option("--threads", trace_args.threads, "Worker threads, 0 for all cores");
    trace->add_flag("--enumerate", trace_args.enumerate, "Also enumerate every outcome exactly");
    trace->add_flag("--psd", trace_args.psd, "Use the PSD worst-case bound in the table");

    TriangleArgs tri_args;
    CLI::App *triangles = app.add_subcommand("triangles", "Estimate the triangle count of a SNAP edge list");
    triangles->add_option("input", tri_args.input, "SNAP edge list")->required()->check(CLI::ExistingFile);
    triangles->add_option("-e,--estimator", tri_args.estimator, "Estimator")->capture_default_str();
    triangles->add_option("-s,--samples", tri_args.samples, "Probe count")->capture_default_str();
    triangles->add_option("--seed", tri_args.seed, "Seed")->capture_default_str();
    triangles->add_option("--threads", tri_args.threads, "Worker threads, 0 for all cores");
    triangles->add_flag("--skip-exact", tri_args.skip_exact, "Do not compute the exact count");

    MubArgs mub_args;
    CLI::App *mub = app.add_subcommand("mub", "Verify or dump the MUB family of a prime dimension");
    mub->add_option("p", mub_args.p, "Prime dimension")->required();
    mub->add_option("action", mub_args.action, "verify or dump")
        ->required()
        ->check(CLI::IsMember({"verify", "dump"}));
    mub->add_option("--out", mub_args.output, "CSV destination for dump");
    mub->add_option("--tolerance", mub_args.tolerance, "Verification tolerance")->capture_default_str();

    std::uint64_t projector_p = 0;
    CLI::App *projector = app.add_subcommand("projector", "Spectrum of the symmetric-subspace projector");
    projector->add_option("p", projector_p, "Prime dimension")->required();

    std::string table_input;
    bool table_psd = false;
    CLI::App *table = app.add_subcommand("table", "Analytic, enumerated and worst-case variance per estimator");
    table->add_option("input", table_input, "Matrix Market file")->required()->check(CLI::ExistingFile);
    table->add_flag("--psd", table_psd, "Use the PSD worst-case bound");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*trace) {
        return cmd_trace(trace_args, out);
    }
    if (*triangles) {
        return cmd_triangles(tri_args, out);
    }
    if (*mub) {
        return cmd_mub(mub_args, out, err);
    }
    if (*projector) {
        return cmd_projector(projector_p, out, err);
    }
    if (*table) {
        return cmd_table(table_input, table_psd, out);
    }
    if (config.input.empty()) {
        err << app.help();
        return kExitUsage;
    }
    config.estimators.clear();
    for (const auto &name : estimator_names) {
        config.estimators.push_back(estimator_or_throw(name));
    }
    config.format = *parse_input_format(format);
    config.task = *parse_task(task);
    return cmd_benchmark(config, out);
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    try {
        return dispatch(args, out, err);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace mubtrace::cli
