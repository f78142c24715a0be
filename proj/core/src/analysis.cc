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

#include "mubtrace/analysis.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "mubtrace/mub.h"

namespace mubtrace {

namespace {

double sum_diag_squares(const DenseMatrix &a) {
    double s = 0;
    for (std::size_t i = 0; i < a.dim(); i++) {
        s += a(i, i) * a(i, i);
    }
    return s;
}

EnumerationResult summarize(const std::vector<double> &values) {
    EnumerationResult r;
    r.outcomes = values.size();
    CompensatedSum sum;
    for (double v : values) {
        sum.add(v);
    }
    r.mean = sum.value() / static_cast<double>(values.size());
    CompensatedSum sq;
    for (double v : values) {
        double d = v - r.mean;
        sq.add(d * d);
    }
    r.variance = sq.value() / static_cast<double>(values.size());
    return r;
}

}  // namespace

double trace_of_square(const DenseMatrix &a) {
    double s = 0;
    for (double v : a.data()) {
        s += v * v;
    }
    return s;
}

double analytic_variance(EstimatorKind kind, const DenseMatrix &a) {
    const double tr = a.trace();
    const double tr2 = trace_of_square(a);
    switch (kind) {
        case EstimatorKind::kFixedBasis: {
            const double n = static_cast<double>(a.dim());
            return n * sum_diag_squares(a) - tr * tr;
        }
        case EstimatorKind::kMubs: {
            const double n = static_cast<double>(mubs_probe_dim(a.dim()));
            return n / (n + 1) * tr2 - tr * tr / (n + 1);
        }
        case EstimatorKind::kHutchinson:
            return 2 * (tr2 - sum_diag_squares(a));
        case EstimatorKind::kGaussian:
            return 2 * tr2;
    }
    throw std::invalid_argument("analytic_variance: unknown estimator");
}

double worst_case_variance(EstimatorKind kind, std::size_t n, double tr_a, double tr_a2, bool psd) {
    const double d = static_cast<double>(n);
    switch (kind) {
        case EstimatorKind::kFixedBasis:
            return (d - 1) * tr_a * tr_a;
        case EstimatorKind::kMubs:
            return (psd ? d - 1 : d) / (d + 1) * tr_a2;
        case EstimatorKind::kHutchinson:
            return 2 * (d - 1) / d * tr_a2;
        case EstimatorKind::kGaussian:
            return 2 * tr_a2;
    }
    throw std::invalid_argument("worst_case_variance: unknown estimator");
}

EnumerationResult enumerate_variance(EstimatorKind kind, const QuadraticFormOracle &oracle, std::size_t cap) {
    const std::size_t n = oracle.dim();
    if (n == 0) {
        throw std::invalid_argument("enumerate_variance: dimension 0");
    }
    if (n > cap) {
        throw std::invalid_argument("enumerate_variance: dimension " + std::to_string(n) + " above cap " +
                                    std::to_string(cap));
    }
    const double scale = static_cast<double>(n);
    std::vector<double> values;
    ComplexVector x(n);
    switch (kind) {
        case EstimatorKind::kFixedBasis:
            for (std::size_t i = 0; i < n; i++) {
                std::fill(x.begin(), x.end(), Complex{0, 0});
                x[i] = {1, 0};
                values.push_back(scale * oracle.quad_form(x));
            }
            break;
        case EstimatorKind::kMubs: {
            auto p = PrimeDim::try_make(n);
            if (!p) {
                throw std::invalid_argument("enumerate_variance: MUB enumeration needs a prime dimension, got " +
                                            std::to_string(n));
            }
            for (std::uint64_t a = 0; a <= n; a++) {
                for (std::uint64_t b = 0; b < n; b++) {
                    mub_vector_into(*p, a, b, x);
                    values.push_back(scale * oracle.quad_form(x));
                }
            }
            break;
        }
        default:
            throw std::invalid_argument("enumerate_variance: only the fixed-basis and MUB estimators are enumerable");
    }
    return summarize(values);
}

EnumerationResult enumerate_variance(EstimatorKind kind, const DenseMatrix &a, std::size_t cap) {
    if (a.dim() > cap) {
        throw std::invalid_argument("enumerate_variance: dimension " + std::to_string(a.dim()) + " above cap " +
                                    std::to_string(cap));
    }
    return enumerate_variance(kind, *make_dense_oracle(a), cap);
}

VarianceReport variance_report(EstimatorKind kind, const DenseMatrix &a, bool psd, std::size_t cap) {
    VarianceReport r{kind, analytic_variance(kind, a), 0, std::nullopt};
    std::size_t n = kind == EstimatorKind::kMubs ? mubs_probe_dim(a.dim()) : a.dim();
    r.worst_case_bound = worst_case_variance(kind, n, a.trace(), trace_of_square(a), psd);
    if (kind == EstimatorKind::kFixedBasis && a.dim() <= cap && a.dim() > 0) {
        r.enumerated = enumerate_variance(kind, a, cap).variance;
    } else if (kind == EstimatorKind::kMubs && n <= cap) {
        r.enumerated = enumerate_variance(kind, a.padded(n), cap).variance;
    }
    return r;
}

ProjectorCheck projector_check(PrimeDim p) {
    const std::uint64_t n = p.value();
    if (n > kMaxProjectorDim) {
        throw std::invalid_argument("projector_check: dimension " + std::to_string(n) + " too large (max " +
                                    std::to_string(kMaxProjectorDim) + ")");
    }
    const Eigen::Index d = static_cast<Eigen::Index>(n * n);
    Eigen::MatrixXcd projector = Eigen::MatrixXcd::Zero(d, d);
    Eigen::VectorXcd doubled(d);
    ComplexVector x(n);
    for (std::uint64_t a = 0; a <= n; a++) {
        for (std::uint64_t b = 0; b < n; b++) {
            mub_vector_into(p, a, b, x);
            for (std::uint64_t i = 0; i < n; i++) {
                for (std::uint64_t j = 0; j < n; j++) {
                    doubled(static_cast<Eigen::Index>(i * n + j)) = x[i] * x[j];
                }
            }
            projector.noalias() += 0.5 * doubled * doubled.adjoint();
        }
    }

    ProjectorCheck check{p, projector.trace().real(), projector.cwiseAbs2().sum(), {}, 0, 0};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(projector, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("projector_check: eigensolver failed");
    }
    const auto &evals = solver.eigenvalues();
    check.eigenvalues.assign(evals.data(), evals.data() + evals.size());
    for (double e : check.eigenvalues) {
        if (e > kProjectorEigenTolerance) {
            check.rank++;
        }
        check.max_eigen_deviation = std::max(check.max_eigen_deviation, std::min(std::abs(e), std::abs(e - 1)));
    }
    return check;
}

SingleShotMoments empirical_single_shot_moments(const QuadraticFormOracle &oracle, EstimatorKind kind,
                                                std::uint64_t samples, std::uint64_t seed,
                                                const EstimateOptions &options) {
    if (samples < 4) {
        throw std::invalid_argument("empirical_single_shot_moments: need at least 4 samples");
    }
    std::vector<double> shots = sample_single_shots(oracle, kind, samples, seed, options);
    const double count = static_cast<double>(samples);
    CompensatedSum sum;
    for (double s : shots) {
        sum.add(s);
    }
    SingleShotMoments m;
    m.samples = samples;
    m.mean = sum.value() / count;
    CompensatedSum m2;
    CompensatedSum m4;
    for (double s : shots) {
        double d = (s - m.mean) * (s - m.mean);
        m2.add(d);
        m4.add(d * d);
    }
    m.variance = m2.value() / (count - 1);
    // Var(s^2) = (mu_4 - sigma^4 (N - 3) / (N - 1)) / N.
    double mu4 = m4.value() / count;
    double var_of_var = (mu4 - m.variance * m.variance * (count - 3) / (count - 1)) / count;
    m.variance_standard_error = std::sqrt(std::max(0.0, var_of_var));
    return m;
}

void write_variance_table(const DenseMatrix &a, std::ostream &out, bool psd) {
    const double tr = a.trace();
    const double tr2 = trace_of_square(a);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-12s %20s %20s %20s %36s\n", "estimator", "V", "V_enumerated", "V_worst", "R");
    out << buf;
    for (EstimatorKind kind : kAllEstimators) {
        VarianceReport r = variance_report(kind, a, psd);
        std::size_t n = kind == EstimatorKind::kMubs ? mubs_probe_dim(a.dim()) : a.dim();
        std::string enumerated = "-";
        if (r.enumerated) {
            char e[32];
            std::snprintf(e, sizeof(e), "%.12g", *r.enumerated);
            enumerated = e;
        }
        std::snprintf(buf, sizeof(buf), "%-12s %20.12g %20s %20.12g %36s\n", std::string(estimator_name(kind)).c_str(),
                      r.analytic, enumerated.c_str(), r.worst_case_bound,
                      random_bits_required(kind, n).describe().c_str());
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "n = %zu, Tr(A) = %.12g, Tr(A^2) = %.12g\n", a.dim(), tr, tr2);
    out << buf;
}

}  // namespace mubtrace
