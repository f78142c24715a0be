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

#include "mubtrace/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "mubtrace/graph.h"
#include "mubtrace/matrix_market.h"
#include "mubtrace/random_stream.h"
#include "parallel.h"

namespace mubtrace {

std::optional<InputFormat> parse_input_format(std::string_view s) {
    if (s == "matrix-market" || s == "mm") {
        return InputFormat::kMatrixMarket;
    }
    if (s == "snap" || s == "snap-edgelist") {
        return InputFormat::kSnap;
    }
    return std::nullopt;
}

std::optional<Task> parse_task(std::string_view s) {
    if (s == "trace") {
        return Task::kTrace;
    }
    if (s == "triangles") {
        return Task::kTriangles;
    }
    return std::nullopt;
}

void validate(const ExperimentConfig &config) {
    if (config.estimators.empty()) {
        throw std::invalid_argument("at least one estimator is required");
    }
    if (config.sample_counts.empty()) {
        throw std::invalid_argument("at least one sample count is required");
    }
    if (config.sample_counts.front() == 0) {
        throw std::invalid_argument("sample counts must be positive");
    }
    for (std::size_t i = 1; i < config.sample_counts.size(); i++) {
        if (config.sample_counts[i] <= config.sample_counts[i - 1]) {
            throw std::invalid_argument("sample counts must be strictly ascending");
        }
    }
    if (config.trials == 0) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (config.task == Task::kTriangles && config.format != InputFormat::kSnap) {
        throw std::invalid_argument("the triangles task reads SNAP edge lists (--format snap)");
    }
    if (config.task == Task::kTrace && config.format != InputFormat::kMatrixMarket) {
        throw std::invalid_argument("the trace task reads Matrix Market files (--format matrix-market)");
    }
}

BenchmarkProblem load_problem(const ExperimentConfig &config) {
    if (config.task == Task::kTriangles) {
        Graph g = read_snap_edge_list_file(config.input);
        if (g.num_vertices() == 0) {
            throw ReferenceUnavailable("graph '" + config.input + "' has no vertices");
        }
        double exact = 6.0 * static_cast<double>(exact_triangle_count(g));
        return {power_oracle(adjacency_oracle(g), 3), exact};
    }
    OraclePtr oracle = make_oracle(read_matrix_market_file(config.input));
    auto trace = oracle->known_trace();
    if (!trace) {
        throw ReferenceUnavailable("no exact trace for '" + config.input + "'");
    }
    return {oracle, *trace};
}

std::uint64_t probes_for_budget(EstimatorKind kind, std::uint64_t samples, bool count_real_equivalents) {
    if (count_real_equivalents && has_complex_probes(kind)) {
        return std::max<std::uint64_t>(1, samples / 2);
    }
    return samples;
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkProblem &problem, const ExperimentConfig &config) {
    validate(config);
    if (problem.oracle == nullptr) {
        throw std::invalid_argument("run_benchmark: no oracle");
    }
    if (problem.exact == 0 || !std::isfinite(problem.exact)) {
        throw ReferenceUnavailable("exact reference is zero; relative error is undefined");
    }
    std::vector<BenchmarkRow> rows;
    for (EstimatorKind kind : config.estimators) {
        for (std::uint64_t samples : config.sample_counts) {
            const std::uint64_t probes = probes_for_budget(kind, samples, config.count_real_equivalents);
            std::vector<double> errors(config.trials);
            std::vector<double> bits(config.trials);
            internal::parallel_chunks(config.trials, config.threads, [&](std::uint64_t begin, std::uint64_t end) {
                for (std::uint64_t t = begin; t < end; t++) {
                    std::uint64_t trial_seed =
                        derive_key(config.seed, {static_cast<std::uint64_t>(kind), samples, t});
                    TraceEstimate est = estimate_trace(*problem.oracle, kind, probes, trial_seed);
                    errors[t] = std::abs(est.mean - problem.exact) / std::abs(problem.exact);
                    bits[t] = static_cast<double>(est.total_bits);
                }
            });
            CompensatedSum err_sum;
            CompensatedSum bit_sum;
            for (std::uint64_t t = 0; t < config.trials; t++) {
                err_sum.add(errors[t]);
                bit_sum.add(bits[t]);
            }
            const double count = static_cast<double>(config.trials);
            BenchmarkRow row{kind, samples, err_sum.value() / count, 0, bit_sum.value() / count};
            if (config.trials > 1) {
                CompensatedSum sq;
                for (double e : errors) {
                    sq.add((e - row.mean_abs_rel_err) * (e - row.mean_abs_rel_err));
                }
                row.std_abs_rel_err = std::sqrt(sq.value() / (count - 1));
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<BenchmarkRow> run_benchmark(const ExperimentConfig &config) {
    validate(config);
    std::vector<BenchmarkRow> rows = run_benchmark(load_problem(config), config);
    if (!config.output.empty()) {
        std::ofstream out(config.output, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write '" + config.output + "'");
        }
        write_benchmark_csv(rows, out);
        if (!out) {
            throw std::runtime_error("failed writing '" + config.output + "'");
        }
    }
    return rows;
}

void write_benchmark_csv(const std::vector<BenchmarkRow> &rows, std::ostream &out) {
    out << "estimator,samples,mean_abs_rel_err,std_abs_rel_err,mean_bits\n";
    char buf[128];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof(buf), ",%llu,%.12g,%.12g,%.12g\n", static_cast<unsigned long long>(r.samples),
                      r.mean_abs_rel_err, r.std_abs_rel_err, r.mean_bits);
        out << estimator_name(r.estimator) << buf;
    }
}

}  // namespace mubtrace
