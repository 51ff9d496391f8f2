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

#include "seqtail/problems.hpp"

#include <algorithm>
#include <cmath>

#include "seqtail/rng.hpp"

namespace seqtail {

double short_column(const Vector& x, const ShortColumnSpec& spec) {
  if (x.size() != 3) throw std::invalid_argument("short_column: expects 3 inputs");
  if (!(spec.width > 0.0 && spec.depth > 0.0)) {
    throw std::invalid_argument("short_column: width and depth must be > 0");
  }
  const double xm = x(0), xp = x(1), xz = x(2);
  if (!(xz > 0.0)) throw std::domain_error("short_column: yield stress must be > 0");
  const double b = spec.width, h = spec.depth;
  return 1.0 - 4.0 * xm / (b * h * h * xz) - xp * xp / (b * b * h * h * xz * xz);
}

InputModel short_column_model() {
  InputModel model;
  model.marginals.push_back(Marginal::normal(2000.0, 400.0));
  model.marginals.push_back(Marginal::normal(500.0, 100.0));
  model.marginals.push_back(Marginal::lognormal(5.0, 0.5));
  return model;
}

BlackBox short_column_blackbox(const ShortColumnSpec& spec) {
  return make_function_blackbox([spec](const Vector& x) { return short_column(x, spec); }, 3,
                                "short_column");
}

std::pair<double, double> stress_ratio_coords(const Vector& x) {
  if (x.size() != 3) throw std::invalid_argument("stress_ratio_coords: expects 3 inputs");
  const double t1 = x(0) / x(2);
  const double t2 = (x(1) / x(2)) * (x(1) / x(2));
  return {t1, t2};
}

TruthEstimate brute_force_truth(const BlackBox& box, const InputModel& model,
                                const TailSpec& tail, EstimateMode mode, Index n_big,
                                std::uint64_t seed) {
  model.validate();
  if (n_big < 1) throw std::invalid_argument("brute_force_truth: n_big must be >= 1");
  if (box.dim != model.dim()) {
    throw std::invalid_argument("brute_force_truth: dimension mismatch");
  }

  // Chunked evaluation keeps the sample matrix small; each chunk gets a
  // named seed stream so the total is independent of the chunk size.
  constexpr Index kChunk = 65536;
  TruthEstimate out;
  out.n = n_big;

  if (mode == EstimateMode::Probability) {
    tail.validate_probability();
    Index hits = 0;
    Index done = 0;
    for (Index chunk = 0; done < n_big; ++chunk) {
      const Index len = std::min(kChunk, n_big - done);
      Matrix pts = model.sample(len, stream_seed(seed, "oracle-" + std::to_string(chunk)));
      for (Index i = 0; i < len; ++i) {
        const double y = evaluate(box, pts.row(i));
        const bool beyond =
            tail.direction == TailDirection::Upper ? y > tail.y_f : y < tail.y_f;
        if (beyond) ++hits;
      }
      done += len;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n_big);
    out.value = p;
    out.std_error = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n_big));
    return out;
  }

  tail.validate_quantile();
  std::vector<double> ys;
  ys.reserve(static_cast<std::size_t>(n_big));
  Index done = 0;
  for (Index chunk = 0; done < n_big; ++chunk) {
    const Index len = std::min(kChunk, n_big - done);
    Matrix pts = model.sample(len, stream_seed(seed, "oracle-" + std::to_string(chunk)));
    for (Index i = 0; i < len; ++i) ys.push_back(evaluate(box, pts.row(i)));
    done += len;
  }
  std::sort(ys.begin(), ys.end());
  // Quantile with Pr(Y beyond q) = p_f; for the upper tail that is the
  // (1 - p_f) empirical quantile.
  const double level = tail.direction == TailDirection::Upper ? 1.0 - tail.p_f : tail.p_f;
  const auto n = static_cast<Index>(ys.size());
  Index k = static_cast<Index>(std::floor(level * static_cast<double>(n)));
  k = std::clamp(k, Index{0}, n - 1);
  out.value = ys[static_cast<std::size_t>(k)];

  // Spacing-based standard error: se(q) = sqrt(p (1-p) / n) / f(q), with the
  // density estimated from the order-statistic gap around k.
  const Index half_window = std::max<Index>(1, static_cast<Index>(std::sqrt(n)));
  const Index lo = std::max(Index{0}, k - half_window);
  const Index hi = std::min(n - 1, k + half_window);
  const double gap = ys[static_cast<std::size_t>(hi)] - ys[static_cast<std::size_t>(lo)];
  const double density =
      gap > 0.0 ? static_cast<double>(hi - lo) / (static_cast<double>(n) * gap) : 0.0;
  out.std_error = density > 0.0
                      ? std::sqrt(level * (1.0 - level) / static_cast<double>(n)) / density
                      : 0.0;
  return out;
}

Problem make_problem(const std::string& name, Index dim, double timeout_s,
                     const ShortColumnSpec& spec) {
  if (name == "short_column") {
    return Problem{short_column_blackbox(spec), short_column_model()};
  }
  constexpr std::string_view kExternal = "external:";
  if (name.rfind(kExternal, 0) == 0) {
    const std::string command = name.substr(kExternal.size());
    if (dim < 1) {
      throw std::invalid_argument("external problem: dimension must be given and >= 1");
    }
    return Problem{make_external_blackbox(command, dim, timeout_s), std::nullopt};
  }
  throw std::invalid_argument("unknown problem '" + name +
                              "' (expected short_column or external:<command>)");
}

}  // namespace seqtail
