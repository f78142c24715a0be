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

#ifndef MUBTRACE_EXPERIMENT_H
#define MUBTRACE_EXPERIMENT_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mubtrace/estimators.h"
#include "mubtrace/oracle.h"

namespace mubtrace {

enum class InputFormat { kMatrixMarket, kSnap };
enum class Task { kTrace, kTriangles };

std::optional<InputFormat> parse_input_format(std::string_view s);
std::optional<Task> parse_task(std::string_view s);

/// Thrown when the benchmark has no usable exact reference (missing or zero).
class ReferenceUnavailable : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::vector<EstimatorKind> estimators = {EstimatorKind::kMubs, EstimatorKind::kHutchinson,
                                             EstimatorKind::kGaussian};
    /// Nonempty, strictly ascending.
    std::vector<std::uint64_t> sample_counts = {1, 2, 5, 10, 20, 50, 100};
    std::uint64_t trials = 500;
    std::uint64_t seed = 0;
    std::string input;
    InputFormat format = InputFormat::kMatrixMarket;
    Task task = Task::kTrace;
    /// CSV destination; empty writes nothing.
    std::string output;
    /// Book each complex probe as two real quadratic forms: a budget of s evaluations buys
    /// max(1, s / 2) MUB probes.
    bool count_real_equivalents = false;
    unsigned threads = 0;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const ExperimentConfig &config);

struct BenchmarkRow {
    EstimatorKind estimator;
    std::uint64_t samples = 0;
    double mean_abs_rel_err = 0;
    double std_abs_rel_err = 0;
    double mean_bits = 0;
};

/// What a benchmark measures: an oracle and the exact value its trace estimates converge to.
struct BenchmarkProblem {
    OraclePtr oracle;
    double exact = 0;
};

/// Loads config.input. Trace tasks read Matrix Market and use Tr(A); triangle tasks read a SNAP edge
/// list, estimate Tr(A^3) and use 6 times the combinatorial triangle count.
/// Throws ParseError or std::runtime_error on I/O failures.
BenchmarkProblem load_problem(const ExperimentConfig &config);

/// Probes spent for a sample budget (differs from `samples` only under count_real_equivalents).
std::uint64_t probes_for_budget(EstimatorKind kind, std::uint64_t samples, bool count_real_equivalents);

/// For every (estimator, sample count) cell, runs config.trials independent estimates, trial t drawing
/// from seed derive_key(config.seed, {estimator, samples, t}), and summarizes |estimate - exact| / |exact|
/// by its mean and sample standard deviation. Rows come out in config order, estimators outermost.
/// Throws ReferenceUnavailable when problem.exact == 0.
std::vector<BenchmarkRow> run_benchmark(const BenchmarkProblem &problem, const ExperimentConfig &config);
std::vector<BenchmarkRow> run_benchmark(const ExperimentConfig &config);

/// Header estimator,samples,mean_abs_rel_err,std_abs_rel_err,mean_bits; LF endings; 12 significant digits.
void write_benchmark_csv(const std::vector<BenchmarkRow> &rows, std::ostream &out);

}  // namespace mubtrace

#endif
