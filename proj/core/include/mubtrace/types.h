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

#ifndef MUBTRACE_TYPES_H
#define MUBTRACE_TYPES_H

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mubtrace {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Sum of |x_i|^2.
inline double squared_norm(std::span<const Complex> x) {
    double s = 0;
    for (const auto &v : x) {
        s += std::norm(v);
    }
    return s;
}

/// x^dagger y.
inline Complex inner_product(std::span<const Complex> x, std::span<const Complex> y) {
    Complex s = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

/// Neumaier-compensated running sum. Used wherever a reduction must not depend on how the
/// terms were produced (e.g. by how many threads).
class CompensatedSum {
   public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            carry_ += (sum_ - t) + v;
        } else {
            carry_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const {
        return sum_ + carry_;
    }

   private:
    double sum_ = 0;
    double carry_ = 0;
};

}  // namespace mubtrace

#endif
