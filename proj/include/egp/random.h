// Copyright 2026 The EGP Authors
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

#ifndef EGP_RANDOM_H_
#define EGP_RANDOM_H_

#include <cstdint>
#include <random>

namespace egp {

// Named random streams. Each randomized step draws from its own stream so
// that adding draws to one step never shifts another.
enum class Stream : std::uint64_t {
  kEgoSelection = 1,
  kEgoArms = 2,
  kClusterOrder = 3,
  kClusterArms = 4,
  kNoise = 5,
  kReplication = 6,
};

// SplitMix64 finalizer.
std::uint64_t MixBits(std::uint64_t x);

// Seed for (master, stream, index), stable across platforms and thread
// counts. `index` distinguishes Monte Carlo replications.
std::uint64_t DeriveSeed(std::uint64_t master, Stream stream,
                         std::uint64_t index = 0);

using Engine = std::mt19937_64;

inline Engine MakeEngine(std::uint64_t master, Stream stream,
                         std::uint64_t index = 0) {
  return Engine(DeriveSeed(master, stream, index));
}

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementations.
std::uint64_t UniformBelow(Engine& engine, std::uint64_t bound);

// Fisher-Yates shuffle driven by UniformBelow.
template <typename T>
void Shuffle(T& items, Engine& engine) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(UniformBelow(engine, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

// Standard normal draw (Marsaglia polar method).
double StandardNormal(Engine& engine);

}  // namespace egp

#endif  // EGP_RANDOM_H_
