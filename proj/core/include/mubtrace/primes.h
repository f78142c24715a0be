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

#ifndef MUBTRACE_PRIMES_H
#define MUBTRACE_PRIMES_H

#include <cstdint>
#include <optional>

namespace mubtrace {

/// True iff n is prime. Trial division; intended for dimensions, not cryptographic sizes.
bool is_prime(std::uint64_t n);

/// A dimension certified prime at construction.
class PrimeDim {
   public:
    /// Throws std::invalid_argument if p is not prime.
    explicit PrimeDim(std::uint64_t p);

    static std::optional<PrimeDim> try_make(std::uint64_t p);

    std::uint64_t value() const {
        return p_;
    }
    operator std::uint64_t() const {
        return p_;
    }

    bool operator==(const PrimeDim &) const = default;

   private:
    struct Unchecked {};
    PrimeDim(std::uint64_t p, Unchecked) : p_(p) {
    }
    std::uint64_t p_;
};

/// Smallest prime p >= n. Requires n >= 2 (throws std::invalid_argument otherwise).
PrimeDim next_prime_at_least(std::uint64_t n);

}  // namespace mubtrace

#endif
