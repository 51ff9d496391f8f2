// Copyright 2026 The seqtail Authors
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
#include <random>
#include <string_view>

#include "seqtail/types.hpp"

namespace seqtail {

/// Derives an independent stream seed from a root seed and a stream label.
/// The same (root, label) pair always yields the same seed, so every source
/// of randomness in a run can be named and reproduced.
std::uint64_t stream_seed(std::uint64_t root, std::string_view label);

/// Seeded random stream. All distributions are implemented explicitly
/// (inverse-CDF normals) so that sequences depend only on the engine,
/// not on the standard library's distribution internals.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}
  RngStream(std::uint64_t root, std::string_view label) : eng_(stream_seed(root, label)) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via the inverse CDF, one engine draw per variate.
  double normal();

  /// Uniform integer in [0, n).
  Index uniform_index(Index n) {
    return static_cast<Index>(eng_() % static_cast<std::uint64_t>(n));
  }

 private:
  std::mt19937_64 eng_;
};

double norm_pdf(double z);
double norm_cdf(double z);

/// Inverse standard normal CDF (Wichura's AS 241, double precision).
double norm_quantile(double u);

}  // namespace seqtail
