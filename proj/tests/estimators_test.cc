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

#include <cmath>
#include <cstring>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "mubtrace/analysis.h"
#include "mubtrace/mub.h"
#include "test_util.h"

using namespace mubtrace;

TEST(estimators, names_round_trip) {
    for (EstimatorKind kind : kAllEstimators) {
        ASSERT_EQ(parse_estimator_kind(estimator_name(kind)), kind);
    }
    ASSERT_EQ(parse_estimator_kind("unit"), EstimatorKind::kFixedBasis);
    ASSERT_FALSE(parse_estimator_kind("bogus").has_value());
}

TEST(estimators, fixed_basis_probe) {
    RandomStream s(1, 0);
    ProbeVector p = draw_probe(EstimatorKind::kFixedBasis, 4, s);
    ASSERT_EQ(p.scale, 4);
    int ones = 0;
    for (const auto &v : p.x) {
        ASSERT_TRUE(v == Complex(0, 0) || v == Complex(1, 0));
        ones += v == Complex(1, 0);
    }
    ASSERT_EQ(ones, 1);
    ASSERT_EQ(p.bits_used, 2u);  // 4 is a power of two, so no rejection
}

TEST(estimators, hutchinson_probe) {
    RandomStream s(2, 0);
    ProbeVector p = draw_probe(EstimatorKind::kHutchinson, 3, s);
    ASSERT_EQ(p.scale, 1);
    ASSERT_EQ(p.bits_used, 3u);
    for (const auto &v : p.x) {
        ASSERT_TRUE(v == Complex(1, 0) || v == Complex(-1, 0));
    }
}

TEST(estimators, gaussian_probe) {
    RandomStream s(3, 0);
    ProbeVector p = draw_probe(EstimatorKind::kGaussian, 10, s);
    ASSERT_EQ(p.scale, 1);
    ASSERT_EQ(p.bits_used, 640u);
    for (const auto &v : p.x) {
        ASSERT_EQ(v.imag(), 0);
    }
}

TEST(estimators, mubs_probe_is_a_family_vector) {
    MubFamily family = generate_mub_family(PrimeDim(5));
    std::set<std::pair<std::size_t, std::size_t>> hit;
    for (std::uint64_t i = 0; i < 400; i++) {
        RandomStream s(4, i);
        ProbeVector p = draw_probe(EstimatorKind::kMubs, 5, s);
        ASSERT_EQ(p.scale, 5);
        ASSERT_NEAR(squared_norm(p.x), 1, 1e-14);
        ASSERT_GE(p.bits_used, random_bits_required(EstimatorKind::kMubs, 5).bits());
        bool found = false;
        for (std::size_t a = 0; a < family.num_bases() && !found; a++) {
            for (std::size_t b = 0; b < 5 && !found; b++) {
                if (std::memcmp(family.bases[a][b].data(), p.x.data(), 5 * sizeof(Complex)) == 0) {
                    hit.insert({a, b});
                    found = true;
                }
            }
        }
        ASSERT_TRUE(found);
    }
    ASSERT_EQ(hit.size(), 30u);
    RandomStream s(0, 0);
    ASSERT_THROW(draw_probe(EstimatorKind::kMubs, 6, s), std::invalid_argument);
    ASSERT_THROW(draw_probe(EstimatorKind::kFixedBasis, 0, s), std::invalid_argument);
}

TEST(estimators, single_shot_examples) {
    auto id5 = make_dense_oracle(DenseMatrix::identity(5));
    for (std::uint64_t i = 0; i < 50; i++) {
        RandomStream s(5, i);
        ASSERT_NEAR(single_shot(*id5, draw_probe(EstimatorKind::kMubs, 5, s)), 5, 1e-13);
    }

    std::vector<double> d700 = {7, 0, 0};
    auto diag7 = make_dense_oracle(DenseMatrix::diagonal(d700));
    ProbeVector e0{{{1, 0}, {0, 0}, {0, 0}}, 3, 0};
    ASSERT_EQ(single_shot(*diag7, e0), 21);

    std::vector<double> d11 = {1, 1};
    auto id2 = make_dense_oracle(DenseMatrix::diagonal(d11));
    for (std::uint64_t i = 0; i < 8; i++) {
        RandomStream s(6, i);
        ASSERT_EQ(single_shot(*id2, draw_probe(EstimatorKind::kHutchinson, 2, s)), 2);
    }
    ASSERT_THROW(single_shot(*id2, e0), std::invalid_argument);
}

TEST(estimators, hutchinson_exact_on_diagonal) {
    std::mt19937_64 rng(1);
    std::vector<double> d(9);
    for (auto &v : d) {
        v = std::normal_distribution<double>()(rng);
    }
    double sum = 0;
    for (double v : d) {
        sum += v;
    }
    auto oracle = make_dense_oracle(DenseMatrix::diagonal(d));
    std::vector<double> shots = sample_single_shots(*oracle, EstimatorKind::kHutchinson, 100, 3);
    for (double s : shots) {
        ASSERT_NEAR(s, sum, 1e-13);
    }
}

TEST(estimators, random_bits_required_matches_formulas) {
    ASSERT_EQ(random_bits_required(EstimatorKind::kFixedBasis, 1024).bits(), 10u);
    ASSERT_EQ(random_bits_required(EstimatorKind::kMubs, 5).bits(), 6u);
    ASSERT_EQ(random_bits_required(EstimatorKind::kHutchinson, 100).bits(), 100u);
    BitRequirement g = random_bits_required(EstimatorKind::kGaussian, 8);
    ASSERT_FALSE(g.exact.has_value());
    ASSERT_EQ(g.fixed_precision, 512u);
    ASSERT_NE(g.describe().find("unbounded"), std::string::npos);
    ASSERT_EQ(random_bits_required(EstimatorKind::kFixedBasis, 1).bits(), 0u);
    ASSERT_EQ(random_bits_required(EstimatorKind::kMubs, 16).bits(), 4u + 5u);
}

TEST(estimators, identity_mubs_has_zero_variance) {
    auto id5 = make_dense_oracle(DenseMatrix::identity(5));
    TraceEstimate e = estimate_trace(*id5, EstimatorKind::kMubs, 100, 99);
    ASSERT_NEAR(e.mean, 5, 1e-12);
    ASSERT_NEAR(e.sample_variance, 0, 1e-20);
    ASSERT_EQ(e.samples, 100u);
    ASSERT_EQ(e.probe_dim, 5u);
    ASSERT_GE(e.total_bits, e.theoretical_bits);
    ASSERT_EQ(e.theoretical_bits, 600u);
}

TEST(estimators, single_sample_variance_is_zero) {
    std::mt19937_64 rng(2);
    auto oracle = make_dense_oracle(testutil::random_psd(4, rng));
    TraceEstimate e = estimate_trace(*oracle, EstimatorKind::kGaussian, 1, 0);
    ASSERT_EQ(e.sample_variance, 0);
    ASSERT_THROW(estimate_trace(*oracle, EstimatorKind::kGaussian, 0, 0), std::invalid_argument);
}

TEST(estimators, mubs_pads_non_prime_dimensions) {
    std::vector<double> d = {1, 0, 0, 0};
    auto oracle = make_dense_oracle(DenseMatrix::diagonal(d));
    TraceEstimate e = estimate_trace(*oracle, EstimatorKind::kMubs, 10, 1);
    ASSERT_EQ(e.probe_dim, 5u);
    ASSERT_EQ(e.theoretical_bits, 10u * 6u);

    // Dimension 1 pads to 2.
    std::vector<double> one = {3};
    TraceEstimate e1 = estimate_trace(*make_dense_oracle(DenseMatrix::diagonal(one)), EstimatorKind::kMubs, 20, 1);
    ASSERT_EQ(e1.probe_dim, 2u);

    // Enumerating the padded diag(1, 0, 0) at p = 3 is trivially prime; at 4 -> 5 the mean stays 1.
    std::vector<double> d3 = {1, 0, 0};
    EnumerationResult r = enumerate_variance(EstimatorKind::kMubs, DenseMatrix::diagonal(d3));
    ASSERT_NEAR(r.mean, 1, 1e-12);
    EnumerationResult r4 = enumerate_variance(EstimatorKind::kMubs, *padded_oracle(oracle, 5));
    ASSERT_NEAR(r4.mean, 1, 1e-12);
}

TEST(estimators, deterministic_across_runs_and_threads) {
    std::mt19937_64 rng(3);
    auto oracle = make_dense_oracle(testutil::random_psd(11, rng));
    for (EstimatorKind kind : kAllEstimators) {
        TraceEstimate a = estimate_trace(*oracle, kind, 257, 1234, {1});
        TraceEstimate b = estimate_trace(*oracle, kind, 257, 1234, {1});
        TraceEstimate c = estimate_trace(*oracle, kind, 257, 1234, {4});
        TraceEstimate d = estimate_trace(*oracle, kind, 257, 1234, {7});
        for (const auto *other : {&b, &c, &d}) {
            ASSERT_EQ(std::memcmp(&a.mean, &other->mean, sizeof(double)), 0);
            ASSERT_EQ(std::memcmp(&a.sample_variance, &other->sample_variance, sizeof(double)), 0);
            ASSERT_EQ(a.total_bits, other->total_bits);
        }
        TraceEstimate e = estimate_trace(*oracle, kind, 257, 1235, {1});
        ASSERT_NE(a.mean, e.mean);
    }
}

TEST(estimators, prefix_property_of_per_sample_streams) {
    // Sample i depends only on (seed, i), so a longer run extends a shorter one.
    std::mt19937_64 rng(4);
    auto oracle = make_dense_oracle(testutil::random_symmetric(7, rng));
    auto short_run = sample_single_shots(*oracle, EstimatorKind::kMubs, 10, 5);
    auto long_run = sample_single_shots(*oracle, EstimatorKind::kMubs, 30, 5);
    for (std::size_t i = 0; i < 10; i++) {
        ASSERT_EQ(short_run[i], long_run[i]);
    }
}

TEST(estimators, converges_to_trace) {
    std::mt19937_64 rng(5);
    DenseMatrix a = testutil::random_psd(7, rng);
    auto oracle = make_dense_oracle(a);
    for (EstimatorKind kind : kAllEstimators) {
        const std::uint64_t samples = 20000;
        TraceEstimate e = estimate_trace(*oracle, kind, samples, 77);
        double se = std::sqrt(analytic_variance(kind, a) / samples);
        ASSERT_NEAR(e.mean, a.trace(), 5 * se + 1e-9) << estimator_name(kind);
    }
}

TEST(estimators, basis_estimators_spend_at_least_theoretical_bits) {
    for (std::size_t n : {5, 16, 1024}) {
        auto oracle = make_dense_oracle(DenseMatrix::identity(n));
        for (EstimatorKind kind : {EstimatorKind::kFixedBasis, EstimatorKind::kMubs}) {
            TraceEstimate e = estimate_trace(*oracle, kind, 50, 3);
            ASSERT_GE(e.total_bits, e.theoretical_bits) << n;
        }
    }
}
