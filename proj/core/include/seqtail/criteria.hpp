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

#include <vector>

#include "seqtail/gp.hpp"
#include "seqtail/types.hpp"

namespace seqtail {

// Acquisition criteria for sequential augmentation: contour expected
// improvement and the standardized discrepancy, both scored from the
// model-averaged predictive mean and variance.

enum class AcquisitionKind { ExpectedImprovement, Discrepancy };

struct AcquisitionConfig {
  AcquisitionKind kind = AcquisitionKind::Discrepancy;
  double alpha = 1.96;    ///< EI confidence multiplier
  double epsilon = 0.0;   ///< discrepancy regularizer

  void validate() const;
};

/// Predictive variances below this are treated as exactly-known points:
/// inadmissible for the discrepancy criterion and zero improvement for EI.
inline constexpr double kVarianceFloor = 1e-14;

/// Closed-form contour expected improvement: the expectation of
/// max(alpha^2 v - (y - y_f)^2, 0) restricted to |y - y_f| < alpha sqrt(v)
/// under y ~ N(mean, variance). Returns 0 when variance is (numerically) 0.
double expected_improvement(double mean, double variance, double y_f, double alpha);
double expected_improvement(const Prediction& pred, double y_f, double alpha);

/// |mean - y_f| / sqrt(variance); +inf when variance is below the floor
/// (a point already known exactly cannot be informative).
double discrepancy_score(double mean, double variance, double y_f);
double discrepancy_score(const Prediction& pred, double y_f);

/// Expected discrepancy with the epsilon regularizer (reduces to the
/// monotone transform of discrepancy_score at epsilon = 0).
double expected_discrepancy(double mean, double variance, double y_f, double epsilon);

struct ScoredCandidate {
  Index index = -1;
  double score = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

/// Picks argmax EI or argmin discrepancy over the admissible candidates.
/// Ties break toward the smallest index. Throws SelectionError when no
/// candidate is admissible.
ScoredCandidate select_next(const Vector& means, const Vector& variances,
                            const AcquisitionConfig& cfg, double y_f,
                            const std::vector<char>& admissible);

/// Marks candidates within `tol` scaled Euclidean distance of any training
/// point as inadmissible.
std::vector<char> admissible_mask(const Matrix& candidates_scaled, const Matrix& train_scaled,
                                  double tol = 1e-12);

}  // namespace seqtail
