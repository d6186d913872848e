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

#include "egp/random.h"

#include <cmath>
#include <limits>

namespace egp {

std::uint64_t MixBits(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t master, Stream stream,
                         std::uint64_t index) {
  std::uint64_t h = MixBits(master);
  h = MixBits(h ^ static_cast<std::uint64_t>(stream));
  return MixBits(h ^ MixBits(index));
}

std::uint64_t UniformBelow(Engine& engine, std::uint64_t bound) {
  // Lemire-style rejection on the low end keeps the draw exactly uniform.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = engine();
    if (r >= threshold) return r % bound;
  }
}

double StandardNormal(Engine& engine) {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  while (true) {
    const double u = 2.0 * static_cast<double>(engine() >> 11) * kScale - 1.0;
    const double v = 2.0 * static_cast<double>(engine() >> 11) * kScale - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      // Only one of the pair is used so every call consumes a fresh pair and
      // the stream position never depends on call history.
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

}  // namespace egp
