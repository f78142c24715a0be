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

#ifndef MUBTRACE_MUB_H
#define MUBTRACE_MUB_H

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mubtrace/primes.h"
#include "mubtrace/types.h"

namespace mubtrace {

inline constexpr double kDefaultMubTolerance = 1e-10;

/// A complete set of p + 1 mutually unbiased bases of C^p.
///
/// bases[a][b] is the b-th vector of the a-th basis. Index p is the standard basis. For odd p the
/// remaining bases are the quadratic-phase bases
///
///     bases[a][b]_l = exp(2 pi i (a l^2 + b l) / p) / sqrt(p),
///
/// and for p = 2 they are the X and Y eigenbases.
struct MubFamily {
    PrimeDim dim;
    std::vector<std::vector<ComplexVector>> bases;

    std::size_t num_bases() const {
        return bases.size();
    }
};

struct VerificationReport {
    double max_orthonormality_error = 0;
    double max_unbiasedness_error = 0;
    bool pass = false;
};

/// Writes one vector of the family into `out` (size p) in O(p) time without building the family.
/// Throws std::out_of_range for basis_index > p, vector_index >= p, or a wrongly sized `out`.
void mub_vector_into(PrimeDim p, std::uint64_t basis_index, std::uint64_t vector_index, std::span<Complex> out);

ComplexVector mub_vector(PrimeDim p, std::uint64_t basis_index, std::uint64_t vector_index);

MubFamily generate_mub_family(PrimeDim p);

/// Exhaustively checks within-basis orthonormality and cross-basis overlaps |u^dagger v| = 1/sqrt(p).
/// A family with the wrong number of bases or wrongly sized vectors fails with infinite errors.
VerificationReport verify_mub_family(const MubFamily &family, double tol = kDefaultMubTolerance);

/// CSV with one row per vector: basis_index,vector_index,re_0,im_0,...,re_{p-1},im_{p-1}.
/// Values use 17 significant digits.
void write_mub_csv(const MubFamily &family, std::ostream &out);

}  // namespace mubtrace

#endif
