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

#ifndef MUBTRACE_MATRIX_MARKET_H
#define MUBTRACE_MATRIX_MARKET_H

#include <iosfwd>
#include <string>
#include <variant>

#include "mubtrace/oracle.h"
#include "mubtrace/parse_error.h"

namespace mubtrace {

// Reader for the NIST Matrix Market exchange format, restricted to real square symmetric matrices.
//
//   %%MatrixMarket matrix array      real|integer|double        general|symmetric
//   %%MatrixMarket matrix coordinate real|integer|double|pattern general|symmetric
//
// Array data is column-major (lower triangle only when symmetric). Coordinate indices are 1-based.
// A "general" file must still describe a symmetric matrix; it is checked entry by entry.
// All failures raise ParseError.

using MatrixMarketMatrix = std::variant<DenseMatrix, SparseSymmetric>;

/// Array files become DenseMatrix, coordinate files SparseSymmetric.
MatrixMarketMatrix read_matrix_market(std::istream &in);
MatrixMarketMatrix read_matrix_market_file(const std::string &path);

/// Array format, symmetric lower triangle, 17 significant digits.
void write_matrix_market_array(const DenseMatrix &m, std::ostream &out);
/// Coordinate format, symmetric lower triangle, 17 significant digits.
void write_matrix_market_coordinate(const SparseSymmetric &m, std::ostream &out);

OraclePtr make_oracle(MatrixMarketMatrix m);

}  // namespace mubtrace

#endif
