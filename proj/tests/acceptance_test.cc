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

// End-to-end acceptance checks. Prints one PASS / FAIL / SKIP line per criterion and exits
// nonzero if any criterion fails. Expected values come from the brute-force helpers in
// test_util.h or from closed forms evaluated here, never from the library under test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mubtrace/analysis.h"
#include "mubtrace/estimators.h"
#include "mubtrace/experiment.h"
#include "mubtrace/graph.h"
#include "mubtrace/mub.h"
#include "test_util.h"

using namespace mubtrace;

namespace {

constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13};

struct Outcome {
    enum Status { kPass, kFail, kSkip } status;
    std::string detail;
};

Outcome pass(std::string d) {
    return {Outcome::kPass, std::move(d)};
}
Outcome fail(std::string d) {
    return {Outcome::kFail, std::move(d)};
}
Outcome skip(std::string d) {
    return {Outcome::kSkip, std::move(d)};
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double rel_gap(double actual, double expected) {
    return std::abs(actual - expected) / std::max(1.0, std::abs(expected));
}

double sum_diag_sq(const DenseMatrix &a) {
    double s = 0;
    for (std::size_t i = 0; i < a.dim(); i++) {
        s += a(i, i) * a(i, i);
    }
    return s;
}

double frob_sq(const DenseMatrix &a) {
    double s = 0;
    for (double v : a.data()) {
        s += v * v;
    }
    return s;
}

// Fifty random PSD matrices per prime dimension, shared by criteria 2 and 3.
const std::vector<DenseMatrix> &psd_corpus() {
    static const std::vector<DenseMatrix> corpus = [] {
        std::mt19937_64 rng(20260301);
        std::vector<DenseMatrix> out;
        for (std::uint64_t p : kPrimes) {
            for (int i = 0; i < 50; i++) {
                out.push_back(testutil::random_psd(p, rng));
            }
        }
        return out;
    }();
    return corpus;
}

Outcome mub_validity() {
    double worst_gram = 0, worst_overlap = 0;
    for (std::uint64_t p : kPrimes) {
        MubFamily f = generate_mub_family(PrimeDim(p));
        if (f.num_bases() != p + 1) {
            return fail("p=" + std::to_string(p) + " has " + std::to_string(f.num_bases()) + " bases");
        }
        const double flat = 1 / std::sqrt(static_cast<double>(p));
        for (std::size_t a = 0; a < f.num_bases(); a++) {
            for (std::size_t b = 0; b < f.num_bases(); b++) {
                for (std::size_t i = 0; i < p; i++) {
                    for (std::size_t j = 0; j < p; j++) {
                        double mag = std::abs(inner_product(f.bases[a][i], f.bases[b][j]));
                        if (a == b) {
                            worst_gram = std::max(worst_gram, std::abs(mag - (i == j ? 1.0 : 0.0)));
                        } else {
                            worst_overlap = std::max(worst_overlap, std::abs(mag - flat));
                        }
                    }
                }
            }
        }
    }
    std::string d = "max gram dev " + sci(worst_gram) + ", max overlap dev " + sci(worst_overlap);
    return worst_gram < 1e-10 && worst_overlap < 1e-10 ? pass(d) : fail(d);
}

Outcome exact_unbiasedness() {
    double worst = 0;
    for (const DenseMatrix &a : psd_corpus()) {
        EnumerationResult r = enumerate_variance(EstimatorKind::kMubs, a);
        worst = std::max(worst, std::abs(r.mean - a.trace()) / std::abs(a.trace()));
    }
    std::string d = "300 matrices, max rel dev " + sci(worst);
    return worst <= 1e-9 ? pass(d) : fail(d);
}

Outcome variance_formula() {
    double worst_mubs = 0, worst_fixed = 0;
    for (const DenseMatrix &a : psd_corpus()) {
        const double n = static_cast<double>(a.dim());
        const double tr = a.trace();
        const double mubs = n / (n + 1) * frob_sq(a) - tr * tr / (n + 1);
        worst_mubs = std::max(worst_mubs, rel_gap(enumerate_variance(EstimatorKind::kMubs, a).variance, mubs));
        const double fixed = n * sum_diag_sq(a) - tr * tr;
        worst_fixed =
            std::max(worst_fixed, rel_gap(enumerate_variance(EstimatorKind::kFixedBasis, a).variance, fixed));
    }
    std::string d = "mubs max rel dev " + sci(worst_mubs) + ", fixed max rel dev " + sci(worst_fixed);
    return worst_mubs <= 1e-9 && worst_fixed <= 1e-12 ? pass(d) : fail(d);
}

Outcome projector_claims() {
    std::string d;
    bool ok = true;
    for (std::uint64_t p : {2, 3, 5}) {
        ProjectorCheck c = projector_check(PrimeDim(p));
        const double half = static_cast<double>(p * (p + 1)) / 2;
        double worst_eig = 0;
        std::size_t rank = 0;
        for (double e : c.eigenvalues) {
            worst_eig = std::max(worst_eig, std::min(std::abs(e), std::abs(e - 1)));
            rank += e > 0.5;
        }
        ok = ok && std::abs(c.trace_P - half) <= 1e-9 && std::abs(c.trace_P_sq - c.trace_P) <= 1e-9 &&
             worst_eig <= 1e-8 && rank == p * (p + 1) / 2 && c.rank == rank;
        d += "p=" + std::to_string(p) + " tr " + sci(c.trace_P) + " rank " + std::to_string(rank) + " eigdev " +
             sci(worst_eig) + "; ";
    }
    return ok ? pass(d) : fail(d);
}

Outcome worst_cases() {
    std::string d;
    for (std::size_t n : {3, 5, 7}) {
        std::vector<double> diag(n, 0.0);
        diag[0] = 1;
        double fixed = enumerate_variance(EstimatorKind::kFixedBasis, DenseMatrix::diagonal(diag)).variance;
        if (fixed != static_cast<double>(n - 1)) {
            return fail("fixed n=" + std::to_string(n) + " gave " + sci(fixed));
        }
        DenseMatrix ones(n, std::vector<double>(n * n, 1.0));
        const double nn = static_cast<double>(n);
        const double expected = nn * nn * (nn - 1) / (nn + 1);
        const double hutch = 2 * (nn * nn - nn);
        double mubs = enumerate_variance(EstimatorKind::kMubs, ones).variance;
        if (std::abs(mubs - expected) > 1e-9 * expected || !(mubs < hutch)) {
            return fail("all-ones n=" + std::to_string(n) + " gave " + sci(mubs) + ", expected " + sci(expected));
        }
        d += "n=" + std::to_string(n) + " mubs " + sci(mubs) + " < hutchinson " + sci(hutch) + "; ";
    }
    return pass(d);
}

Outcome statistical_variance() {
    std::mt19937_64 rng(606);
    DenseMatrix a = testutil::random_symmetric(20, rng);
    auto oracle = make_dense_oracle(a);
    const double tr2 = frob_sq(a);
    std::string d;
    bool ok = true;
    for (auto [kind, expected] : {std::pair{EstimatorKind::kHutchinson, 2 * (tr2 - sum_diag_sq(a))},
                                  std::pair{EstimatorKind::kGaussian, 2 * tr2}}) {
        SingleShotMoments m = empirical_single_shot_moments(*oracle, kind, 100000, 7);
        double z = (m.variance - expected) / m.variance_standard_error;
        ok = ok && std::abs(z) <= 5;
        d += std::string(estimator_name(kind)) + " z=" + sci(z) + "; ";
    }
    return ok ? pass(d) : fail(d);
}

Outcome triangle_oracle() {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 200; t++) {
        std::size_t n = 1 + rng() % 64;
        double p = std::uniform_real_distribution<double>(0, 0.6)(rng);
        std::bernoulli_distribution coin(p);
        std::vector<Graph::Edge> edges;
        for (std::size_t u = 0; u < n; u++) {
            for (std::size_t v = u + 1; v < n; v++) {
                if (coin(rng)) {
                    edges.emplace_back(u, v);
                }
            }
        }
        Graph g(n, edges);
        std::vector<double> adj(n * n, 0.0);
        for (auto [u, v] : g.edges()) {
            adj[u * n + v] = adj[v * n + u] = 1;
        }
        auto cube = testutil::multiply(testutil::multiply(adj, adj, n), adj, n);
        double tr = 0;
        for (std::size_t i = 0; i < n; i++) {
            tr += cube[i * n + i];
        }
        if (static_cast<double>(exact_triangle_count(g)) * 6 != tr) {
            return fail("graph " + std::to_string(t) + " disagrees with dense Tr(A^3)/6");
        }
    }
    std::uint64_t k3 = exact_triangle_count(testutil::complete_graph(3));
    std::uint64_t k4 = exact_triangle_count(testutil::complete_graph(4));
    std::string d = "200 graphs agree; K3 " + std::to_string(k3) + ", K4 " + std::to_string(k4);
    return k3 == 1 && k4 == 4 ? pass(d) : fail(d);
}

Outcome triangle_end_to_end() {
    Graph g = erdos_renyi_graph(200, 0.1, 2026);
    const std::uint64_t exact = exact_triangle_count(g);
    auto count_within = [&](EstimatorKind kind) {
        int within = 0;
        for (std::uint64_t t = 0; t < 100; t++) {
            TriangleEstimate e = estimate_triangles(g, kind, 200, derive_key(2026, {t}), {0}, exact);
            within += *e.abs_rel_error < 0.05;
        }
        return within;
    };
    const int mubs = count_within(EstimatorKind::kMubs);
    const int hutchinson = count_within(EstimatorKind::kHutchinson);

    // Relative standard deviation of the 200-sample mean from the closed-form single-shot
    // variance p/(p+1) Tr(A^6) - Tr(A^3)^2/(p+1) on the padded adjacency matrix.
    const std::size_t n = g.num_vertices();
    std::vector<double> adj(n * n, 0.0);
    for (auto [u, v] : g.edges()) {
        adj[u * n + v] = adj[v * n + u] = 1;
    }
    auto cube = testutil::multiply(testutil::multiply(adj, adj, n), adj, n);
    double tr3 = 0, tr6 = 0;
    for (std::size_t i = 0; i < n * n; i++) {
        tr6 += cube[i] * cube[i];
    }
    for (std::size_t i = 0; i < n; i++) {
        tr3 += cube[i * n + i];
    }
    const double p = static_cast<double>(next_prime_at_least(n));
    const double rel_std = std::sqrt((p / (p + 1) * tr6 - tr3 * tr3 / (p + 1)) / 200) / tr3;
    std::string d = "mubs " + std::to_string(mubs) + "/100 under 5% (need 90), hutchinson " +
                    std::to_string(hutchinson) + "/100; triangles " + std::to_string(exact) +
                    ", rel std of mean " + sci(rel_std);
    return mubs >= 90 ? pass(d) : fail(d);
}

Outcome snap_triangle_counts() {
    const char *env = std::getenv("MUBTRACE_SNAP_DIR");
    if (env == nullptr) {
        return skip("set MUBTRACE_SNAP_DIR to a directory holding the SNAP edge lists");
    }
    namespace fs = std::filesystem;
    struct Dataset {
        const char *file;
        std::uint64_t triangles;
    };
    const Dataset datasets[] = {{"CA-GrQc.txt", 48260},
                                {"cit-HepTh.txt", 1478735},
                                {"CA-AstroPh.txt", 1351441},
                                {"Wiki-Vote.txt", 608389}};
    std::string d;
    bool ok = true;
    int found = 0;
    for (const Dataset &ds : datasets) {
        fs::path path = fs::path(env) / ds.file;
        if (!fs::exists(path)) {
            d += std::string(ds.file) + " missing; ";
            continue;
        }
        found++;
        std::uint64_t count = exact_triangle_count(read_snap_edge_list_file(path.string()));
        ok = ok && count == ds.triangles;
        d += std::string(ds.file) + " " + std::to_string(count) + (count == ds.triangles ? " ok; " : " MISMATCH; ");
    }
    if (found == 0) {
        return skip(d);
    }
    fs::path grqc = fs::path(env) / "CA-GrQc.txt";
    if (fs::exists(grqc)) {
        ExperimentConfig c;
        c.input = grqc.string();
        c.format = InputFormat::kSnap;
        c.task = Task::kTriangles;
        c.estimators = {EstimatorKind::kMubs, EstimatorKind::kHutchinson, EstimatorKind::kGaussian};
        c.sample_counts = {10, 100};
        c.trials = 50;
        auto rows = run_benchmark(c);
        for (std::size_t s = 0; s < c.sample_counts.size(); s++) {
            double mubs = rows[s].mean_abs_rel_err;
            for (std::size_t k = 1; k < c.estimators.size(); k++) {
                ok = ok && mubs < rows[k * c.sample_counts.size() + s].mean_abs_rel_err;
            }
        }
        d += "CA-GrQc ordering " + std::string(ok ? "holds" : "violated");
    }
    return ok ? pass(d) : fail(d);
}

Outcome randomness_accounting() {
    auto ceil_log2 = [](std::uint64_t m) {
        std::uint64_t b = 0;
        while ((std::uint64_t{1} << b) < m) {
            b++;
        }
        return b;
    };
    auto formula = [&](EstimatorKind kind, std::uint64_t n) -> std::uint64_t {
        switch (kind) {
            case EstimatorKind::kFixedBasis:
                return ceil_log2(n);
            case EstimatorKind::kMubs:
                return ceil_log2(n) + ceil_log2(n + 1);
            case EstimatorKind::kHutchinson:
                return n;
            case EstimatorKind::kGaussian:
                return 64 * n;
        }
        return 0;
    };
    std::string d;
    const std::uint64_t samples = 40;
    for (std::uint64_t n : {5, 16, 1024}) {
        auto oracle = make_dense_oracle(DenseMatrix::identity(n));
        for (EstimatorKind kind : kAllEstimators) {
            BitRequirement req = random_bits_required(kind, n);
            if (req.bits() != formula(kind, n)) {
                return fail(std::string(estimator_name(kind)) + " n=" + std::to_string(n) + " reports " +
                            std::to_string(req.bits()));
            }
            if ((kind == EstimatorKind::kGaussian) == req.exact.has_value()) {
                return fail("gaussian must be unbounded, the others exact");
            }
            TraceEstimate e = estimate_trace(*oracle, kind, samples, 5);
            const std::uint64_t per_probe = formula(kind, e.probe_dim);
            if (e.theoretical_bits != samples * per_probe) {
                return fail(std::string(estimator_name(kind)) + " n=" + std::to_string(n) + " theoretical " +
                            std::to_string(e.theoretical_bits));
            }
            const bool basis = kind == EstimatorKind::kFixedBasis || kind == EstimatorKind::kMubs;
            if (basis && e.total_bits < e.theoretical_bits) {
                return fail(std::string(estimator_name(kind)) + " n=" + std::to_string(n) + " consumed " +
                            std::to_string(e.total_bits));
            }
        }
        d += "n=" + std::to_string(n) + " ok; ";
    }
    return pass(d);
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        double limit_seconds;  // 0 means no runtime bound
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "mub validity", 5, mub_validity},
        {2, "exact unbiasedness", 30, exact_unbiasedness},
        {3, "variance formula", 60, variance_formula},
        {4, "projector", 60, projector_claims},
        {5, "worst-case instances", 0, worst_cases},
        {6, "statistical variance", 30, statistical_variance},
        {7, "triangle oracle", 0, triangle_oracle},
        {8, "triangle estimation", 120, triangle_end_to_end},
        {9, "snap triangle counts", 0, snap_triangle_counts},
        {10, "randomness accounting", 0, randomness_accounting},
    };
    psd_corpus();
    int failures = 0;
    for (const Criterion &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = fail(std::string("exception: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.status == Outcome::kPass && c.limit_seconds > 0 && seconds > c.limit_seconds) {
            o = fail(o.detail + " [over time limit " + sci(c.limit_seconds) + " s]");
        }
        const char *tag = o.status == Outcome::kPass ? "PASS" : o.status == Outcome::kFail ? "FAIL" : "SKIP";
        failures += o.status == Outcome::kFail;
        std::printf("[%s] criterion %2d %-24s %7.2fs  %s\n", tag, c.id, c.name, seconds, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
