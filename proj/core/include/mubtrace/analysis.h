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

#ifndef MUBTRACE_ANALYSIS_H
#define MUBTRACE_ANALYSIS_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mubtrace/estimators.h"
#include "mubtrace/oracle.h"
#include "mubtrace/primes.h"

namespace mubtrace {

inline constexpr std::size_t kDefaultEnumerationCap = 101;
inline constexpr std::uint64_t kMaxProjectorDim = 13;
inline constexpr double kProjectorEigenTolerance = 1e-8;

/// Single-shot variance of each estimator as a function of A:
///
///   fixed       n sum_i A_ii^2 - Tr(A)^2
///   mubs        n/(n+1) Tr(A^2) - Tr(A)^2/(n+1)
///   hutchinson  2 (Tr(A^2) - sum_i A_ii^2)
///   gaussian    2 Tr(A^2)
///
/// For kMubs, n is the prime the probes live in (mubs_probe_dim), so a non-prime A is scored as the
/// zero-padded matrix the estimator actually samples.
double analytic_variance(EstimatorKind kind, const DenseMatrix &a);

/// Worst case of analytic_variance over matrices with the given Tr(A) and Tr(A^2):
///
///   fixed       (n-1) Tr(A)^2
///   mubs        n/(n+1) Tr(A^2), or (n-1)/(n+1) Tr(A^2) when `psd`
///   hutchinson  2(n-1)/n Tr(A^2)
///   gaussian    2 Tr(A^2)
double worst_case_variance(EstimatorKind kind, std::size_t n, double tr_a, double tr_a2, bool psd = false);

struct EnumerationResult {
    double mean = 0;
    /// Population variance (divisor = number of outcomes).
    double variance = 0;
    std::uint64_t outcomes = 0;
};

/// Exact distribution of the scaled single shot by visiting every equiprobable probe: the n standard
/// basis vectors for kFixedBasis, all n(n+1) MUB vectors for kMubs (n must be prime).
/// Throws std::invalid_argument for other kinds, a non-prime kMubs dimension, or dim > cap.
EnumerationResult enumerate_variance(EstimatorKind kind, const QuadraticFormOracle &oracle,
                                     std::size_t cap = kDefaultEnumerationCap);
EnumerationResult enumerate_variance(EstimatorKind kind, const DenseMatrix &a,
                                     std::size_t cap = kDefaultEnumerationCap);

struct VarianceReport {
    EstimatorKind kind;
    double analytic = 0;
    double worst_case_bound = 0;
    /// Present only when exhaustive enumeration was feasible.
    std::optional<double> enumerated;
};

VarianceReport variance_report(EstimatorKind kind, const DenseMatrix &a, bool psd = false,
                               std::size_t cap = kDefaultEnumerationCap);

/// Explicit P = 1/2 sum_x (x x^dagger) (x) (x x^dagger) over the whole MUB family.
struct ProjectorCheck {
    PrimeDim n;
    double trace_P = 0;
    double trace_P_sq = 0;
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Eigenvalues above kProjectorEigenTolerance.
    std::size_t rank = 0;
    /// Largest distance from an eigenvalue to the nearer of 0 and 1.
    double max_eigen_deviation = 0;
};

/// Throws std::invalid_argument when p > kMaxProjectorDim (P is p^2 x p^2).
ProjectorCheck projector_check(PrimeDim p);

/// Empirical single-shot statistics with a fourth-moment standard error for the sample variance.
struct SingleShotMoments {
    double mean = 0;
    double variance = 0;
    double variance_standard_error = 0;
    std::uint64_t samples = 0;
};

SingleShotMoments empirical_single_shot_moments(const QuadraticFormOracle &oracle, EstimatorKind kind,
                                                std::uint64_t samples, std::uint64_t seed,
                                                const EstimateOptions &options = {});

/// Tr(A^2) for symmetric A.
double trace_of_square(const DenseMatrix &a);

/// Text table with one row per estimator: V, V^worst, R (bits per probe).
void write_variance_table(const DenseMatrix &a, std::ostream &out, bool psd = false);

}  // namespace mubtrace

#endif
