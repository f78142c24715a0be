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

#ifndef MUBTRACE_ORACLE_H
#define MUBTRACE_ORACLE_H

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mubtrace/types.h"

namespace mubtrace {

/// Dense real symmetric n x n matrix, row-major.
class DenseMatrix {
   public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {
    }
    /// Throws std::invalid_argument unless data has n*n entries and is exactly symmetric.
    DenseMatrix(std::size_t n, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix diagonal(std::span<const double> diag);

    std::size_t dim() const {
        return n_;
    }
    double operator()(std::size_t i, std::size_t j) const {
        return data_[i * n_ + j];
    }
    /// Sets both (i, j) and (j, i).
    void set_symmetric(std::size_t i, std::size_t j, double v) {
        data_[i * n_ + j] = v;
        data_[j * n_ + i] = v;
    }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * n_, n_};
    }
    std::span<const double> data() const {
        return data_;
    }

    double trace() const;
    double frobenius_norm() const;
    /// Zero-padded copy of dimension m >= dim().
    DenseMatrix padded(std::size_t m) const;

    bool operator==(const DenseMatrix &) const = default;

   private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Sparse real symmetric matrix stored as its upper triangle (row <= col), sorted by (row, col).
class SparseSymmetric {
   public:
    struct Entry {
        std::size_t row;
        std::size_t col;
        double value;
        bool operator==(const Entry &) const = default;
    };

    SparseSymmetric() = default;
    /// Entries below the diagonal are mirrored to the upper triangle. Throws std::invalid_argument on
    /// an out-of-range index or a coordinate given twice (after mirroring).
    SparseSymmetric(std::size_t n, std::vector<Entry> entries);

    static SparseSymmetric from_dense(const DenseMatrix &m);

    std::size_t dim() const {
        return n_;
    }
    std::size_t nnz() const {
        return entries_.size();
    }
    std::span<const Entry> entries() const {
        return entries_;
    }

    double trace() const;
    double frobenius_norm() const;
    DenseMatrix to_dense() const;

    bool operator==(const SparseSymmetric &) const = default;

   private:
    std::size_t n_ = 0;
    std::vector<Entry> entries_;
};

/// Matrix-free access to x^dagger A x for a real symmetric A.
///
/// Implementations are immutable after construction, so concurrent calls are safe.
class QuadraticFormOracle {
   public:
    virtual ~QuadraticFormOracle() = default;

    virtual std::size_t dim() const = 0;

    /// x^dagger A x. Throws std::invalid_argument if x.size() != dim().
    virtual double quad_form(std::span<const Complex> x) const = 0;

    virtual bool has_matvec() const {
        return false;
    }
    /// y = A x. Throws std::logic_error when has_matvec() is false.
    virtual void matvec(std::span<const Complex> x, std::span<Complex> y) const;

    /// Tr(A) when it is available without extra work.
    virtual std::optional<double> known_trace() const {
        return std::nullopt;
    }

    ComplexVector apply(std::span<const Complex> x) const {
        ComplexVector y(dim());
        matvec(x, y);
        return y;
    }
};

using OraclePtr = std::shared_ptr<const QuadraticFormOracle>;

/// Re(x^dagger M x) in O(n^2). Throws std::logic_error if the imaginary part exceeds
/// 1e-8 * |x|^2 * |M|_F, which can only come from a broken symmetric input.
double dense_quad_form(const DenseMatrix &m, std::span<const Complex> x);

/// x^dagger M x in O(nnz); exactly real by construction.
double sparse_quad_form(const SparseSymmetric &m, std::span<const Complex> x);

void dense_matvec(const DenseMatrix &m, std::span<const Complex> x, std::span<Complex> y);
void sparse_matvec(const SparseSymmetric &m, std::span<const Complex> x, std::span<Complex> y);

OraclePtr make_dense_oracle(DenseMatrix m);
OraclePtr make_sparse_oracle(SparseSymmetric m);

/// Oracle for A^k built from k-fold matvecs of `base`; A^k is never formed.
/// quad_form costs floor(k/2) matvecs plus one base quad_form (odd k) or a squared norm (even k).
/// Throws std::invalid_argument for k == 0 or a base without matvec.
OraclePtr power_oracle(OraclePtr base, unsigned k);

/// Embeds `base` in a larger dimension with zero rows and columns appended. Trace is unchanged.
/// Throws std::invalid_argument if padded_dim < base->dim().
OraclePtr padded_oracle(OraclePtr base, std::size_t padded_dim);

}  // namespace mubtrace

#endif
