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

#include "seqtail/criteria.hpp"

#include <cmath>
#include <limits>

#include "seqtail/rng.hpp"

namespace seqtail {

void AcquisitionConfig::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("acquisition: alpha must be > 0");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("acquisition: epsilon must be >= 0");
}

double expected_improvement(double mean, double variance, double y_f, double alpha) {
  if (!(variance > kVarianceFloor)) return 0.0;
  const double sd = std::sqrt(variance);
  const double delta = y_f - mean;
  const double u1 = delta / sd - alpha;
  const double u2 = delta / sd + alpha;
  const double cdf_gap = norm_cdf(u2) - norm_cdf(u1);
  const double pdf1 = norm_pdf(u1);
  const double pdf2 = norm_pdf(u2);
  double ei = (alpha * alpha * variance - delta * delta) * cdf_gap +
              variance * ((u2 * pdf2 - u1 * pdf1) - cdf_gap) +
              2.0 * (mean - y_f) * sd * (pdf2 - pdf1);
  return ei > 0.0 ? ei : 0.0;
}

double expected_improvement(const Prediction& pred, double y_f, double alpha) {
  return expected_improvement(pred.mean, pred.variance, y_f, alpha);
}

double discrepancy_score(double mean, double variance, double y_f) {
  if (!(variance > kVarianceFloor)) return std::numeric_limits<double>::infinity();
  return std::abs(mean - y_f) / std::sqrt(variance);
}

double discrepancy_score(const Prediction& pred, double y_f) {
  return discrepancy_score(pred.mean, pred.variance, y_f);
}

double expected_discrepancy(double mean, double variance, double y_f, double epsilon) {
  if (!(variance > kVarianceFloor)) return std::numeric_limits<double>::infinity();
  const double delta = mean - y_f;
  return delta * delta / variance + epsilon / variance + 1.0;
}

ScoredCandidate select_next(const Vector& means, const Vector& variances,
                            const AcquisitionConfig& cfg, double y_f,
                            const std::vector<char>& admissible) {
  cfg.validate();
  const Index n = means.size();
  if (variances.size() != n || static_cast<Index>(admissible.size()) != n) {
    throw std::invalid_argument("select_next: size mismatch");
  }
  const bool maximize = cfg.kind == AcquisitionKind::ExpectedImprovement;
  ScoredCandidate best;
  for (Index i = 0; i < n; ++i) {
    if (!admissible[i]) continue;
    double score;
    if (cfg.kind == AcquisitionKind::ExpectedImprovement) {
      score = expected_improvement(means(i), variances(i), y_f, cfg.alpha);
    } else if (cfg.epsilon > 0.0) {
      score = expected_discrepancy(means(i), variances(i), y_f, cfg.epsilon);
      if (std::isinf(score)) continue;
    } else {
      score = discrepancy_score(means(i), variances(i), y_f);
      if (std::isinf(score)) continue;
    }
    const bool better = best.index < 0 || (maximize ? score > best.score : score < best.score);
    if (better) {
      best = ScoredCandidate{i, score, means(i), variances(i)};
    }
  }
  if (best.index < 0) {
    throw SelectionError("select_next: no admissible candidate");
  }
  return best;
}

std::vector<char> admissible_mask(const Matrix& candidates_scaled, const Matrix& train_scaled,
                                  double tol) {
  const Index n = candidates_scaled.rows();
  std::vector<char> mask(n, 1);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < train_scaled.rows(); ++k) {
      if ((candidates_scaled.row(i) - train_scaled.row(k)).norm() <= tol) {
        mask[i] = 0;
        break;
      }
    }
  }
  return mask;
}

}  // namespace seqtail
