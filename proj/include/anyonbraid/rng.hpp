// Copyright 2026 The anyonbraid authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

namespace anyonbraid {

/// Source of fair random bits consumed by measurements. Tests substitute
/// fixed sequences to force specific outcome patterns.
struct BitSource {
    virtual ~BitSource() = default;
    virtual bool bit() = 0;
};

/// Splittable seeded generator (SplitMix64 core). Every stochastic operation
/// in the library takes an explicit seed or stream, so runs replay bit-exactly
/// on any platform. split() derives an independent child stream.
class Rng final : public BitSource {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    bool bit() override { return (next() >> 63) != 0; }

    Rng split() { return Rng(next() ^ 0x632be59bd9b4e019ULL); }

  private:
    std::uint64_t state_;
};

/// Replays a fixed bit sequence, then repeats `fill` forever. Lets tests pin
/// every measurement outcome (e.g. the forced all-+1 cluster run).
class FixedBits final : public BitSource {
  public:
    explicit FixedBits(std::vector<bool> bits = {}, bool fill = false)
        : bits_(std::move(bits)), fill_(fill) {}

    bool bit() override {
        if (pos_ < bits_.size()) return bits_[pos_++];
        return fill_;
    }

  private:
    std::vector<bool> bits_;
    std::size_t pos_ = 0;
    bool fill_;
};

}  // namespace anyonbraid
