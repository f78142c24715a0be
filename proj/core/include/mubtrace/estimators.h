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

#ifndef MUBTRACE_ESTIMATORS_H
#define MUBTRACE_ESTIMATORS_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mubtrace/oracle.h"
#include "mubtrace/random_stream.h"
#include "mubtrace/types.h"

namespace mubtrace {

enum class EstimatorKind {
    kFixedBasis,  // uniform standard-basis vector, estimate n x^T A x
    kMubs,        // uniform basis from a complete MUB family, then a uniform vector; estimate n x^dagger A x
    kHutchinson,  // i.i.d. +-1 entries; estimate x^T A x
    kGaussian,    // i.i.d. N(0, 1) entries; estimate x^T A x
};

inline constexpr std::array<EstimatorKind, 4> kAllEstimators = {
    EstimatorKind::kFixedBasis, EstimatorKind::kMubs, EstimatorKind::kHutchinson, EstimatorKind::kGaussian};

std::string_view estimator_name(EstimatorKind kind);
/// Accepts the canonical names ("fixed", "mubs", "hutchinson", "gaussian") and a few aliases.
std::optional<EstimatorKind> parse_estimator_kind(std::string_view name);

/// Whether probes of this kind are complex (and so cost two real quadratic forms).
bool has_complex_probes(EstimatorKind kind);

struct ProbeVector {
    ComplexVector x;
    /// Multiplier turning quad_form(x) into a single-shot trace estimate.
    double scale = 1;
    std::uint64_t bits_used = 0;
};

/// One probe for a dimension-n problem. For kMubs n must be prime (std::invalid_argument otherwise);
/// callers with other dimensions pad first.
///
/// bits_used is the number of bits actually drawn, rejection retries included, for the basis and
/// Rademacher kinds. Gaussian probes are booked at 64 bits per entry.
ProbeVector draw_probe(EstimatorKind kind, std::size_t n, RandomStream &stream);

/// scale * quad_form(x). Throws std::invalid_argument on a dimension mismatch.
double single_shot(const QuadraticFormOracle &oracle, const ProbeVector &probe);

struct BitRequirement {
    /// Bits per probe needed to realize the distribution exactly; empty when unbounded.
    std::optional<std::uint64_t> exact;
    /// Bits per probe at fixed precision (equal to `exact` when that is bounded).
    std::uint64_t fixed_precision = 0;

    std::uint64_t bits() const {
        return exact.value_or(fixed_precision);
    }
    std::string describe() const;
};

/// Information-theoretic bits per probe: ceil(log2 n) for kFixedBasis, ceil(log2 n) + ceil(log2(n+1))
/// for kMubs, n for kHutchinson, and unbounded (64 n at fixed precision) for kGaussian.
BitRequirement random_bits_required(EstimatorKind kind, std::size_t n);

struct TraceEstimate {
    double mean = 0;
    /// Unbiased (divisor s - 1); 0 when s == 1.
    double sample_variance = 0;
    std::uint64_t samples = 0;
    /// Bits booked by the probes, see draw_probe.
    std::uint64_t total_bits = 0;
    /// samples * random_bits_required(kind, probe_dim).bits().
    std::uint64_t theoretical_bits = 0;
    /// Dimension the probes lived in (the padded prime for kMubs on non-prime inputs).
    std::size_t probe_dim = 0;
};

struct EstimateOptions {
    /// Worker threads; 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned threads = 1;
};

/// The prime dimension kMubs probes live in for an n-dimensional oracle (n itself when prime).
std::size_t mubs_probe_dim(std::size_t n);

/// Single shots for samples i in [0, samples), sample i drawn from RandomStream(seed, i).
/// kMubs on a non-prime dimension transparently pads the oracle to mubs_probe_dim().
std::vector<double> sample_single_shots(const QuadraticFormOracle &oracle, EstimatorKind kind, std::uint64_t samples,
                                        std::uint64_t seed, const EstimateOptions &options = {},
                                        std::uint64_t *total_bits = nullptr);

/// Averages sample_single_shots. Bit-for-bit reproducible for a fixed seed whatever the thread count.
/// Throws std::invalid_argument for samples == 0 or an oracle of dimension 0.
TraceEstimate estimate_trace(const QuadraticFormOracle &oracle, EstimatorKind kind, std::uint64_t samples,
                             std::uint64_t seed, const EstimateOptions &options = {});

}  // namespace mubtrace

#endif
