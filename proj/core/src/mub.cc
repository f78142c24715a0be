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

#include "mubtrace/mub.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mubtrace {

namespace {

/// exp(2 pi i k / p) * amplitude, with k in [0, p) folded into (-p/2, p/2] first so the angle
/// passed to sin/cos stays small.
Complex root_of_unity(std::uint64_t k, std::uint64_t p, double amplitude) {
    double signed_k = 2 * k > p ? -static_cast<double>(p - k) : static_cast<double>(k);
    double angle = 2 * std::numbers::pi * signed_k / static_cast<double>(p);
    return {amplitude * std::cos(angle), amplitude * std::sin(angle)};
}

void fill_qubit_vector(std::uint64_t basis_index, std::uint64_t vector_index, std::span<Complex> out) {
    const double h = std::numbers::sqrt2 / 2;
    double sign = vector_index == 0 ? 1.0 : -1.0;
    switch (basis_index) {
        case 0:
            out[0] = {h, 0};
            out[1] = {sign * h, 0};
            return;
        case 1:
            out[0] = {h, 0};
            out[1] = {0, sign * h};
            return;
        default:
            out[0] = vector_index == 0 ? Complex{1, 0} : Complex{0, 0};
            out[1] = vector_index == 1 ? Complex{1, 0} : Complex{0, 0};
            return;
    }
}

}  // namespace

void mub_vector_into(PrimeDim p, std::uint64_t basis_index, std::uint64_t vector_index, std::span<Complex> out) {
    const std::uint64_t n = p.value();
    if (basis_index > n) {
        throw std::out_of_range("basis index " + std::to_string(basis_index) + " out of range [0, " +
                                std::to_string(n) + "]");
    }
    if (vector_index >= n) {
        throw std::out_of_range("vector index " + std::to_string(vector_index) + " out of range [0, " +
                                std::to_string(n) + ")");
    }
    if (out.size() != n) {
        throw std::out_of_range("output span has size " + std::to_string(out.size()) + ", expected " +
                                std::to_string(n));
    }
    if (n == 2) {
        fill_qubit_vector(basis_index, vector_index, out);
        return;
    }
    if (basis_index == n) {
        std::fill(out.begin(), out.end(), Complex{0, 0});
        out[vector_index] = {1, 0};
        return;
    }

    // Phase exponent e(l) = a l^2 + b l (mod p), advanced by its first difference
    // e(l+1) - e(l) = a (2l + 1) + b, whose own increment is 2a. Everything stays in [0, p).
    const std::uint64_t a = basis_index;
    const std::uint64_t b = vector_index;
    const std::uint64_t two_a = (2 * a) % n;
    const double amplitude = 1 / std::sqrt(static_cast<double>(n));
    std::uint64_t exponent = 0;
    std::uint64_t step = (a + b) % n;
    for (std::uint64_t l = 0; l < n; l++) {
        out[l] = root_of_unity(exponent, n, amplitude);
        exponent += step;
        if (exponent >= n) {
            exponent -= n;
        }
        step += two_a;
        if (step >= n) {
            step -= n;
        }
    }
}

ComplexVector mub_vector(PrimeDim p, std::uint64_t basis_index, std::uint64_t vector_index) {
    ComplexVector v(p.value());
    mub_vector_into(p, basis_index, vector_index, v);
    return v;
}

MubFamily generate_mub_family(PrimeDim p) {
    const std::uint64_t n = p.value();
    MubFamily family{p, {}};
    family.bases.resize(n + 1);
    for (std::uint64_t a = 0; a <= n; a++) {
        family.bases[a].reserve(n);
        for (std::uint64_t b = 0; b < n; b++) {
            family.bases[a].push_back(mub_vector(p, a, b));
        }
    }
    return family;
}

VerificationReport verify_mub_family(const MubFamily &family, double tol) {
    const std::uint64_t n = family.dim.value();
    VerificationReport report;
    bool well_formed = family.bases.size() == n + 1;
    for (const auto &basis : family.bases) {
        well_formed &= basis.size() == n;
        for (const auto &v : basis) {
            well_formed &= v.size() == n;
        }
    }
    if (!well_formed) {
        report.max_orthonormality_error = std::numeric_limits<double>::infinity();
        report.max_unbiasedness_error = std::numeric_limits<double>::infinity();
        report.pass = false;
        return report;
    }

    const double unbiased = 1 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < family.bases.size(); i++) {
        for (std::size_t j = i; j < family.bases.size(); j++) {
            for (std::size_t u = 0; u < n; u++) {
                for (std::size_t v = (i == j ? u : 0); v < n; v++) {
                    Complex overlap = inner_product(family.bases[i][u], family.bases[j][v]);
                    if (i == j) {
                        double expected = u == v ? 1.0 : 0.0;
                        report.max_orthonormality_error =
                            std::max(report.max_orthonormality_error, std::abs(overlap - expected));
                    } else {
                        report.max_unbiasedness_error =
                            std::max(report.max_unbiasedness_error, std::abs(std::abs(overlap) - unbiased));
                    }
                }
            }
        }
    }
    report.pass = report.max_orthonormality_error <= tol && report.max_unbiasedness_error <= tol;
    return report;
}

void write_mub_csv(const MubFamily &family, std::ostream &out) {
    const std::uint64_t n = family.dim.value();
    out << "basis_index,vector_index";
    for (std::uint64_t l = 0; l < n; l++) {
        out << ",re_" << l << ",im_" << l;
    }
    out << '\n';
    char buf[64];
    for (std::size_t a = 0; a < family.bases.size(); a++) {
        for (std::size_t b = 0; b < family.bases[a].size(); b++) {
            out << a << ',' << b;
            for (const auto &c : family.bases[a][b]) {
                std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", c.real(), c.imag());
                out << buf;
            }
            out << '\n';
        }
    }
}

}  // namespace mubtrace
