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

#ifndef MUBTRACE_RANDOM_STREAM_H
#define MUBTRACE_RANDOM_STREAM_H

#include <cstdint>
#include <initializer_list>
#include <optional>

namespace mubtrace {

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Folds a list of identifiers into one 64-bit key. Different lists give unrelated keys.
std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> ids);

/// A deterministic bit source keyed by (seed, stream_id).
///
/// Identical keys deliver identical bit sequences. Bits are handed out in exact widths from a
/// 64-bit buffer and every delivered bit is counted, so bits_consumed() is the true randomness
/// cost of whatever was drawn.
class RandomStream {
   public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    /// The next `count` bits (count <= 64) as the low bits of the result.
    std::uint64_t bits(unsigned count);

    /// Uniform integer in [0, m) by rejection on ceil(log2 m)-bit blocks. m == 1 costs no bits.
    /// Throws std::invalid_argument for m == 0.
    std::uint64_t uniform_below(std::uint64_t m);

    /// Uniform double in (0, 1] from 53 bits.
    double uniform_open_closed();
    /// Uniform double in [0, 1) from 53 bits.
    double uniform_closed_open();

    /// Standard normal via Box-Muller; each pair of normals costs two 53-bit uniforms.
    double standard_normal();

    std::uint64_t bits_consumed() const {
        return bit_counter_;
    }

   private:
    std::uint64_t next_word();

    std::uint64_t state_;
    std::uint64_t buffer_ = 0;
    unsigned buffered_ = 0;
    std::uint64_t bit_counter_ = 0;
    std::optional<double> spare_normal_;
};

}  // namespace mubtrace

#endif
