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

#include "mubtrace/estimators.h"

#include <algorithm>
#include <bit>
#include <memory>
#include <stdexcept>

#include "mubtrace/mub.h"
#include "mubtrace/primes.h"
#include "parallel.h"

namespace mubtrace {

namespace {

std::uint64_t ceil_log2(std::uint64_t m) {
    return m <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(m - 1));
}

}  // namespace

std::string_view estimator_name(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::kFixedBasis:
            return "fixed";
        case EstimatorKind::kMubs:
            return "mubs";
        case EstimatorKind::kHutchinson:
            return "hutchinson";
        case EstimatorKind::kGaussian:
            return "gaussian";
    }
    return "unknown";
}

std::optional<EstimatorKind> parse_estimator_kind(std::string_view name) {
    if (name == "fixed" || name == "fixed-basis" || name == "unit") {
        return EstimatorKind::kFixedBasis;
    }
    if (name == "mubs" || name == "mub") {
        return EstimatorKind::kMubs;
    }
    if (name == "hutchinson" || name == "rademacher") {
        return EstimatorKind::kHutchinson;
    }
    if (name == "gaussian" || name == "normal") {
        return EstimatorKind::kGaussian;
    }
    return std::nullopt;
}

bool has_complex_probes(EstimatorKind kind) {
    return kind == EstimatorKind::kMubs;
}

ProbeVector draw_probe(EstimatorKind kind, std::size_t n, RandomStream &stream) {
    if (n == 0) {
        throw std::invalid_argument("draw_probe: dimension must be positive");
    }
    ProbeVector probe;
    probe.x.assign(n, Complex{0, 0});
    const std::uint64_t before = stream.bits_consumed();
    switch (kind) {
        case EstimatorKind::kFixedBasis: {
            probe.x[stream.uniform_below(n)] = {1, 0};
            probe.scale = static_cast<double>(n);
            break;
        }
        case EstimatorKind::kMubs: {
            auto p = PrimeDim::try_make(n);
            if (!p) {
                throw std::invalid_argument("draw_probe: MUB probes need a prime dimension, got " +
                                            std::to_string(n) + " (pad to " +
                                            std::to_string(next_prime_at_least(std::max<std::size_t>(n, 2)).value()) +
                                            ")");
            }
            std::uint64_t basis = stream.uniform_below(n + 1);
            std::uint64_t vector = stream.uniform_below(n);
            mub_vector_into(*p, basis, vector, probe.x);
            probe.scale = static_cast<double>(n);
            break;
        }
        case EstimatorKind::kHutchinson: {
            for (auto &v : probe.x) {
                v = stream.bits(1) ? Complex{1, 0} : Complex{-1, 0};
            }
            probe.scale = 1;
            break;
        }
        case EstimatorKind::kGaussian: {
            for (auto &v : probe.x) {
                v = {stream.standard_normal(), 0};
            }
            probe.scale = 1;
            probe.bits_used = 64 * static_cast<std::uint64_t>(n);
            return probe;
        }
    }
    probe.bits_used = stream.bits_consumed() - before;
    return probe;
}

double single_shot(const QuadraticFormOracle &oracle, const ProbeVector &probe) {
    if (probe.x.size() != oracle.dim()) {
        throw std::invalid_argument("single_shot: dimension mismatch (oracle " + std::to_string(oracle.dim()) +
                                    ", probe " + std::to_string(probe.x.size()) + ")");
    }
    return probe.scale * oracle.quad_form(probe.x);
}

std::string BitRequirement::describe() const {
    if (exact) {
        return std::to_string(*exact);
    }
    return "unbounded for exact; " + std::to_string(fixed_precision) + " at fixed precision";
}

BitRequirement random_bits_required(EstimatorKind kind, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("random_bits_required: dimension must be positive");
    }
    BitRequirement r;
    switch (kind) {
        case EstimatorKind::kFixedBasis:
            r.exact = ceil_log2(n);
            break;
        case EstimatorKind::kMubs:
            r.exact = ceil_log2(n) + ceil_log2(static_cast<std::uint64_t>(n) + 1);
            break;
        case EstimatorKind::kHutchinson:
            r.exact = n;
            break;
        case EstimatorKind::kGaussian:
            r.fixed_precision = 64 * static_cast<std::uint64_t>(n);
            return r;
    }
    r.fixed_precision = *r.exact;
    return r;
}

std::size_t mubs_probe_dim(std::size_t n) {
    return next_prime_at_least(std::max<std::size_t>(n, 2)).value();
}

std::vector<double> sample_single_shots(const QuadraticFormOracle &oracle, EstimatorKind kind, std::uint64_t samples,
                                        std::uint64_t seed, const EstimateOptions &options,
                                        std::uint64_t *total_bits) {
    if (samples == 0) {
        throw std::invalid_argument("estimate_trace: samples must be at least 1");
    }
    if (oracle.dim() == 0) {
        throw std::invalid_argument("estimate_trace: oracle has dimension 0");
    }
    // Non-owning handle so the caller's oracle can be wrapped without a copy.
    OraclePtr target(std::shared_ptr<void>(), &oracle);
    if (kind == EstimatorKind::kMubs && !is_prime(oracle.dim())) {
        target = padded_oracle(target, mubs_probe_dim(oracle.dim()));
    }
    const std::size_t n = target->dim();

    std::vector<double> shots(samples);
    std::vector<std::uint64_t> bits(samples);
    internal::parallel_chunks(samples, options.threads, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; i++) {
            RandomStream stream(seed, i);
            ProbeVector probe = draw_probe(kind, n, stream);
            shots[i] = single_shot(*target, probe);
            bits[i] = probe.bits_used;
        }
    });
    if (total_bits != nullptr) {
        *total_bits = 0;
        for (auto b : bits) {
            *total_bits += b;
        }
    }
    return shots;
}

TraceEstimate estimate_trace(const QuadraticFormOracle &oracle, EstimatorKind kind, std::uint64_t samples,
                             std::uint64_t seed, const EstimateOptions &options) {
    TraceEstimate est;
    std::vector<double> shots = sample_single_shots(oracle, kind, samples, seed, options, &est.total_bits);
    est.samples = samples;
    est.probe_dim = kind == EstimatorKind::kMubs ? mubs_probe_dim(oracle.dim()) : oracle.dim();
    est.theoretical_bits = samples * random_bits_required(kind, est.probe_dim).bits();

    CompensatedSum sum;
    for (double s : shots) {
        sum.add(s);
    }
    est.mean = sum.value() / static_cast<double>(samples);
    if (samples > 1) {
        CompensatedSum sq;
        for (double s : shots) {
            double d = s - est.mean;
            sq.add(d * d);
        }
        est.sample_variance = sq.value() / static_cast<double>(samples - 1);
    }
    return est;
}

}  // namespace mubtrace
