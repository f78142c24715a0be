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

#include "mubtrace/random_stream.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mubtrace {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
}

std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t key = mix64(seed + kGolden);
    for (std::uint64_t id : ids) {
        key = mix64(key ^ mix64(id + kGolden)) + kGolden;
    }
    return key;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) : state_(derive_key(seed, {stream_id})) {
}

std::uint64_t RandomStream::next_word() {
    state_ += kGolden;
    return mix64(state_);
}

std::uint64_t RandomStream::bits(unsigned count) {
    if (count > 64) {
        throw std::invalid_argument("RandomStream::bits: at most 64 bits per call");
    }
    bit_counter_ += count;
    std::uint64_t out = 0;
    unsigned filled = 0;
    while (filled < count) {
        if (buffered_ == 0) {
            buffer_ = next_word();
            buffered_ = 64;
        }
        unsigned take = std::min(count - filled, buffered_);
        std::uint64_t chunk = take == 64 ? buffer_ : buffer_ & ((std::uint64_t{1} << take) - 1);
        out |= chunk << filled;
        buffer_ = take == 64 ? 0 : buffer_ >> take;
        buffered_ -= take;
        filled += take;
    }
    return out;
}

std::uint64_t RandomStream::uniform_below(std::uint64_t m) {
    if (m == 0) {
        throw std::invalid_argument("RandomStream::uniform_below: empty range");
    }
    const unsigned width = static_cast<unsigned>(std::bit_width(m - 1));
    while (true) {
        std::uint64_t v = bits(width);
        if (v < m) {
            return v;
        }
    }
}

double RandomStream::uniform_open_closed() {
    return static_cast<double>(bits(53) + 1) * 0x1.0p-53;
}

double RandomStream::uniform_closed_open() {
    return static_cast<double>(bits(53)) * 0x1.0p-53;
}

double RandomStream::standard_normal() {
    if (spare_normal_) {
        double z = *spare_normal_;
        spare_normal_.reset();
        return z;
    }
    double radius = std::sqrt(-2 * std::log(uniform_open_closed()));
    double angle = 2 * std::numbers::pi * uniform_closed_open();
    spare_normal_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

}  // namespace mubtrace
