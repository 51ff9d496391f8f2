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

#include "seqtail/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace seqtail {

namespace {

// Linear-interpolation quantile on a sorted sample.
double sorted_quantile(const std::vector<double>& sorted, double q) {
  const auto n = sorted.size();
  if (n == 1) return sorted[0];
  double pos = q * static_cast<double>(n - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = static_cast<std::size_t>(std::ceil(pos));
  double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

DiagnosticStep diagnostic_step(const Vector& means, const Vector& variances, double y_f,
                               double variance_floor) {
  if (means.size() != variances.size() || means.size() == 0) {
    throw std::invalid_argument("diagnostic_step: empty or mismatched inputs");
  }
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(means.size()));
  Index excluded = 0;
  for (Index i = 0; i < means.size(); ++i) {
    if (!(variances(i) > variance_floor)) {
      ++excluded;
      continue;
    }
    s.push_back(-std::abs(means(i) - y_f) / std::sqrt(variances(i)));
  }
  if (s.empty()) {
    throw std::invalid_argument("diagnostic_step: every point was excluded");
  }
  std::sort(s.begin(), s.end());
  DiagnosticStep step;
  step.min = s.front();
  step.q25 = sorted_quantile(s, 0.25);
  step.median = sorted_quantile(s, 0.5);
  step.q75 = sorted_quantile(s, 0.75);
  step.max = s.back();
  step.n_excluded = excluded;
  return step;
}

ConvergenceFlag convergence_flag(const DiagnosticTrace& trace, double threshold, int window) {
  if (window < 1) throw std::invalid_argument("convergence_flag: window must be >= 1");
  ConvergenceFlag flag;
  const auto n = static_cast<int>(trace.steps.size());
  if (n < window) {
    flag.note = "trace has " + std::to_string(n) + " iterations, window needs " +
                std::to_string(window);
    return flag;
  }
  for (int i = n - window; i < n; ++i) {
    if (!(trace.steps[static_cast<std::size_t>(i)].median < threshold)) return flag;
  }
  flag.converged = true;
  return flag;
}

}  // namespace seqtail
