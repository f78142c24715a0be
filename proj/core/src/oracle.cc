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

#include "mubtrace/oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mubtrace {

namespace {

void check_dim(std::size_t expected, std::size_t actual, const char *what) {
    if (expected != actual) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (expected " + std::to_string(expected) +
                                    ", got " + std::to_string(actual) + ")");
    }
}

class DenseOracle final : public QuadraticFormOracle {
   public:
    explicit DenseOracle(DenseMatrix m) : m_(std::move(m)) {
    }
    std::size_t dim() const override {
        return m_.dim();
    }
    double quad_form(std::span<const Complex> x) const override {
        return dense_quad_form(m_, x);
    }
    bool has_matvec() const override {
        return true;
    }
    void matvec(std::span<const Complex> x, std::span<Complex> y) const override {
        dense_matvec(m_, x, y);
    }
    std::optional<double> known_trace() const override {
        return m_.trace();
    }

   private:
    DenseMatrix m_;
};

class SparseOracle final : public QuadraticFormOracle {
   public:
    explicit SparseOracle(SparseSymmetric m) : m_(std::move(m)) {
    }
    std::size_t dim() const override {
        return m_.dim();
    }
    double quad_form(std::span<const Complex> x) const override {
        return sparse_quad_form(m_, x);
    }
    bool has_matvec() const override {
        return true;
    }
    void matvec(std::span<const Complex> x, std::span<Complex> y) const override {
        sparse_matvec(m_, x, y);
    }
    std::optional<double> known_trace() const override {
        return m_.trace();
    }

   private:
    SparseSymmetric m_;
};

class PowerOracle final : public QuadraticFormOracle {
   public:
    PowerOracle(OraclePtr base, unsigned k) : base_(std::move(base)), k_(k) {
    }
    std::size_t dim() const override {
        return base_->dim();
    }
    double quad_form(std::span<const Complex> x) const override {
        check_dim(dim(), x.size(), "power_oracle quad_form");
        if (k_ == 1) {
            return base_->quad_form(x);
        }
        // x^dagger A^k x = y^dagger A^(k mod 2) y with y = A^(k/2) x, since A is symmetric.
        ComplexVector y(x.begin(), x.end());
        ComplexVector scratch(dim());
        for (unsigned i = 0; i < k_ / 2; i++) {
            base_->matvec(y, scratch);
            std::swap(y, scratch);
        }
        return k_ % 2 == 1 ? base_->quad_form(y) : squared_norm(y);
    }
    bool has_matvec() const override {
        return true;
    }
    void matvec(std::span<const Complex> x, std::span<Complex> y) const override {
        check_dim(dim(), x.size(), "power_oracle matvec");
        check_dim(dim(), y.size(), "power_oracle matvec");
        ComplexVector cur(x.begin(), x.end());
        ComplexVector next(dim());
        for (unsigned i = 0; i < k_; i++) {
            base_->matvec(cur, next);
            std::swap(cur, next);
        }
        std::copy(cur.begin(), cur.end(), y.begin());
    }
    std::optional<double> known_trace() const override {
        return k_ == 1 ? base_->known_trace() : std::nullopt;
    }

   private:
    OraclePtr base_;
    unsigned k_;
};

class PaddedOracle final : public QuadraticFormOracle {
   public:
    PaddedOracle(OraclePtr base, std::size_t padded_dim) : base_(std::move(base)), dim_(padded_dim) {
    }
    std::size_t dim() const override {
        return dim_;
    }
    double quad_form(std::span<const Complex> x) const override {
        check_dim(dim_, x.size(), "padded_oracle quad_form");
        return base_->quad_form(x.first(base_->dim()));
    }
    bool has_matvec() const override {
        return base_->has_matvec();
    }
    void matvec(std::span<const Complex> x, std::span<Complex> y) const override {
        check_dim(dim_, x.size(), "padded_oracle matvec");
        check_dim(dim_, y.size(), "padded_oracle matvec");
        const std::size_t n = base_->dim();
        base_->matvec(x.first(n), y.first(n));
        std::fill(y.begin() + static_cast<std::ptrdiff_t>(n), y.end(), Complex{0, 0});
    }
    std::optional<double> known_trace() const override {
        return base_->known_trace();
    }

   private:
    OraclePtr base_;
    std::size_t dim_;
};

}  // namespace

DenseMatrix::DenseMatrix(std::size_t n, std::vector<double> data) : n_(n), data_(std::move(data)) {
    if (data_.size() != n * n) {
        throw std::invalid_argument("DenseMatrix: expected " + std::to_string(n * n) + " entries, got " +
                                    std::to_string(data_.size()));
    }
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i + 1; j < n; j++) {
            if (data_[i * n + j] != data_[j * n + i]) {
                throw std::invalid_argument("DenseMatrix: not symmetric at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            }
        }
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; i++) {
        m.data_[i * n + i] = 1;
    }
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
    DenseMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); i++) {
        m.data_[i * diag.size() + i] = diag[i];
    }
    return m;
}

double DenseMatrix::trace() const {
    double t = 0;
    for (std::size_t i = 0; i < n_; i++) {
        t += data_[i * n_ + i];
    }
    return t;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0;
    for (double v : data_) {
        s += v * v;
    }
    return std::sqrt(s);
}

DenseMatrix DenseMatrix::padded(std::size_t m) const {
    if (m < n_) {
        throw std::invalid_argument("DenseMatrix::padded: target dimension " + std::to_string(m) +
                                    " is smaller than " + std::to_string(n_));
    }
    DenseMatrix out(m);
    for (std::size_t i = 0; i < n_; i++) {
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * n_), n_,
                    out.data_.begin() + static_cast<std::ptrdiff_t>(i * m));
    }
    return out;
}

SparseSymmetric::SparseSymmetric(std::size_t n, std::vector<Entry> entries) : n_(n), entries_(std::move(entries)) {
    for (auto &e : entries_) {
        if (e.row >= n_ || e.col >= n_) {
            throw std::invalid_argument("SparseSymmetric: entry (" + std::to_string(e.row) + ", " +
                                        std::to_string(e.col) + ") out of range for dimension " +
                                        std::to_string(n_));
        }
        if (e.row > e.col) {
            std::swap(e.row, e.col);
        }
    }
    std::sort(entries_.begin(), entries_.end(), [](const Entry &a, const Entry &b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    auto dup = std::adjacent_find(entries_.begin(), entries_.end(), [](const Entry &a, const Entry &b) {
        return a.row == b.row && a.col == b.col;
    });
    if (dup != entries_.end()) {
        throw std::invalid_argument("SparseSymmetric: duplicate coordinate (" + std::to_string(dup->row) + ", " +
                                    std::to_string(dup->col) + ")");
    }
}

SparseSymmetric SparseSymmetric::from_dense(const DenseMatrix &m) {
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < m.dim(); i++) {
        for (std::size_t j = i; j < m.dim(); j++) {
            if (m(i, j) != 0) {
                entries.push_back({i, j, m(i, j)});
            }
        }
    }
    return SparseSymmetric(m.dim(), std::move(entries));
}

double SparseSymmetric::trace() const {
    double t = 0;
    for (const auto &e : entries_) {
        if (e.row == e.col) {
            t += e.value;
        }
    }
    return t;
}

double SparseSymmetric::frobenius_norm() const {
    double s = 0;
    for (const auto &e : entries_) {
        s += (e.row == e.col ? 1 : 2) * e.value * e.value;
    }
    return std::sqrt(s);
}

DenseMatrix SparseSymmetric::to_dense() const {
    DenseMatrix m(n_);
    for (const auto &e : entries_) {
        m.set_symmetric(e.row, e.col, e.value);
    }
    return m;
}

void QuadraticFormOracle::matvec(std::span<const Complex>, std::span<Complex>) const {
    throw std::logic_error("this oracle does not provide matvec");
}

double dense_quad_form(const DenseMatrix &m, std::span<const Complex> x) {
    check_dim(m.dim(), x.size(), "dense_quad_form");
    Complex total = 0;
    for (std::size_t i = 0; i < m.dim(); i++) {
        auto row = m.row(i);
        Complex ax = 0;
        for (std::size_t j = 0; j < m.dim(); j++) {
            ax += row[j] * x[j];
        }
        total += std::conj(x[i]) * ax;
    }
    double limit = 1e-8 * squared_norm(x) * m.frobenius_norm();
    if (std::abs(total.imag()) > limit) {
        throw std::logic_error("dense_quad_form: imaginary part " + std::to_string(total.imag()) +
                               " exceeds roundoff bound");
    }
    return total.real();
}

double sparse_quad_form(const SparseSymmetric &m, std::span<const Complex> x) {
    check_dim(m.dim(), x.size(), "sparse_quad_form");
    double total = 0;
    for (const auto &e : m.entries()) {
        if (e.row == e.col) {
            total += e.value * std::norm(x[e.row]);
        } else {
            total += 2 * e.value * (std::conj(x[e.row]) * x[e.col]).real();
        }
    }
    return total;
}

void dense_matvec(const DenseMatrix &m, std::span<const Complex> x, std::span<Complex> y) {
    check_dim(m.dim(), x.size(), "dense_matvec");
    check_dim(m.dim(), y.size(), "dense_matvec");
    for (std::size_t i = 0; i < m.dim(); i++) {
        auto row = m.row(i);
        Complex s = 0;
        for (std::size_t j = 0; j < m.dim(); j++) {
            s += row[j] * x[j];
        }
        y[i] = s;
    }
}

void sparse_matvec(const SparseSymmetric &m, std::span<const Complex> x, std::span<Complex> y) {
    check_dim(m.dim(), x.size(), "sparse_matvec");
    check_dim(m.dim(), y.size(), "sparse_matvec");
    std::fill(y.begin(), y.end(), Complex{0, 0});
    for (const auto &e : m.entries()) {
        y[e.row] += e.value * x[e.col];
        if (e.row != e.col) {
            y[e.col] += e.value * x[e.row];
        }
    }
}

OraclePtr make_dense_oracle(DenseMatrix m) {
    return std::make_shared<DenseOracle>(std::move(m));
}

OraclePtr make_sparse_oracle(SparseSymmetric m) {
    return std::make_shared<SparseOracle>(std::move(m));
}

OraclePtr power_oracle(OraclePtr base, unsigned k) {
    if (base == nullptr) {
        throw std::invalid_argument("power_oracle: null base");
    }
    if (k == 0) {
        throw std::invalid_argument("power_oracle: exponent must be at least 1");
    }
    if (!base->has_matvec()) {
        throw std::invalid_argument("power_oracle: base oracle has no matvec capability");
    }
    return std::make_shared<PowerOracle>(std::move(base), k);
}

OraclePtr padded_oracle(OraclePtr base, std::size_t padded_dim) {
    if (base == nullptr) {
        throw std::invalid_argument("padded_oracle: null base");
    }
    if (padded_dim < base->dim()) {
        throw std::invalid_argument("padded_oracle: dimension mismatch (padded dimension " +
                                    std::to_string(padded_dim) + " < base dimension " +
                                    std::to_string(base->dim()) + ")");
    }
    return std::make_shared<PaddedOracle>(std::move(base), padded_dim);
}

}  // namespace mubtrace
