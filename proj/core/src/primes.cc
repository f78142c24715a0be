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

#include "mubtrace/primes.h"

#include <limits>
#include <stdexcept>
#include <string>

namespace mubtrace {

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    if (n < 4) {
        return true;
    }
    if (n % 2 == 0 || n % 3 == 0) {
        return false;
    }
    // Candidates of the form 6k +- 1. d <= n / d avoids overflowing d * d.
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) {
            return false;
        }
    }
    return true;
}

PrimeDim::PrimeDim(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) {
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    }
}

std::optional<PrimeDim> PrimeDim::try_make(std::uint64_t p) {
    if (!is_prime(p)) {
        return std::nullopt;
    }
    return PrimeDim(p, Unchecked{});
}

PrimeDim next_prime_at_least(std::uint64_t n) {
    if (n < 2) {
        throw std::invalid_argument("next_prime_at_least requires n >= 2, got " + std::to_string(n));
    }
    for (std::uint64_t c = n; c != std::numeric_limits<std::uint64_t>::max(); ++c) {
        if (auto p = PrimeDim::try_make(c)) {
            return *p;
        }
    }
    throw std::overflow_error("no 64-bit prime at least " + std::to_string(n));
}

}  // namespace mubtrace
