// Copyright 2026 The gfrft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GFRFT_RNG_HPP
#define GFRFT_RNG_HPP

#include <cstdint>
#include <random>

namespace gfrft {

// Seeded generator used for every random draw in the library. Uniform
// variates are built from the raw 64-bit engine output rather than
// std::uniform_real_distribution so sequences do not depend on the standard
// library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gfrft

#endif  // GFRFT_RNG_HPP
