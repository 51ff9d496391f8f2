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

#include "seqtail/designs.hpp"
#include "seqtail/types.hpp"

namespace seqtail {

// Tail-probability and quantile estimators over predictive means on an MC
// set, plain or stratified-weighted.

enum class TailDirection { Upper, Lower };

struct TailSpec {
  TailDirection direction = TailDirection::Upper;
  double y_f = 0.0;  ///< threshold, probability mode
  double p_f = 0.0;  ///< target probability, quantile mode

  void validate_probability() const;
  void validate_quantile() const;
};

/// Fraction of predictions strictly beyond the threshold (above for the
/// upper tail, below for the lower tail).
double prob_estimate(const Vector& preds, double y_f, TailDirection direction);

/// Stratum-weighted exceedance: sum_h w_h * within-stratum fraction.
double stratified_prob_estimate(const StratifiedSet& set, const Vector& preds, double y_f,
                                TailDirection direction);

/// Per-point weights w_h / n_h of a stratified set, for weighted quantiles.
Vector point_weights(const StratifiedSet& set);

/// Weighted empirical quantile: the smallest value t with weighted
/// strict-exceedance fraction <= p_f (largest such t for the lower tail).
/// Unweighted overload uses equal weights.
double quantile_estimate(const Vector& preds, const Vector& weights, double p_f,
                         TailDirection direction);
double quantile_estimate(const Vector& preds, double p_f, TailDirection direction);

}  // namespace seqtail
