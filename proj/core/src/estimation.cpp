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

#include "seqtail/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace seqtail {

void TailSpec::validate_probability() const {
  if (!std::isfinite(y_f)) throw std::invalid_argument("tail spec: y_f must be finite");
}

void TailSpec::validate_quantile() const {
  if (!(p_f > 0.0 && p_f < 1.0)) {
    throw std::invalid_argument("tail spec: p_f must lie in (0, 1)");
  }
}

double prob_estimate(const Vector& preds, double y_f, TailDirection direction) {
  if (preds.size() < 1) throw std::invalid_argument("prob_estimate: empty predictions");
  Index count = 0;
  if (direction == TailDirection::Upper) {
    count = (preds.array() > y_f).count();
  } else {
    count = (preds.array() < y_f).count();
  }
  return static_cast<double>(count) / static_cast<double>(preds.size());
}

double stratified_prob_estimate(const StratifiedSet& set, const Vector& preds, double y_f,
                                TailDirection direction) {
  set.validate();
  if (preds.size() != set.points.rows()) {
    throw std::invalid_argument("stratified_prob_estimate: predictions misaligned with set");
  }
  const Index n_strata = set.n_strata();
  std::vector<Index> hits(n_strata, 0);
  std::vector<Index> counts(n_strata, 0);
  for (Index i = 0; i < preds.size(); ++i) {
    const int h = set.stratum_id[i];
    counts[h]++;
    const bool beyond =
        direction == TailDirection::Upper ? preds(i) > y_f : preds(i) < y_f;
    if (beyond) hits[h]++;
  }
  double p = 0.0;
  for (Index h = 0; h < n_strata; ++h) {
    if (counts[h] == 0) {
      throw std::invalid_argument("stratified_prob_estimate: stratum " + std::to_string(h) +
                                  " has no points");
    }
    p += set.weights(h) * static_cast<double>(hits[h]) / static_cast<double>(counts[h]);
  }
  return p;
}

Vector point_weights(const StratifiedSet& set) {
  set.validate();
  Vector w(set.points.rows());
  for (Index i = 0; i < w.size(); ++i) {
    w(i) = set.weights(set.stratum_id[i]) / static_cast<double>(set.per_stratum);
  }
  return w;
}

namespace {

// Smallest t such that sum of weights of predictions strictly above t is
// <= p_f. Walking the distinct values in descending order, the answer is
// the first value whose cumulative weight (inclusive) exceeds p_f.
double upper_weighted_quantile(const Vector& preds, const Vector& weights, double p_f) {
  const Index n = preds.size();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return preds(a) > preds(b); });

  const double total = weights.sum();
  double cum = 0.0;
  Index i = 0;
  while (i < n) {
    // Group ties so strict exceedance is computed per distinct value.
    const double v = preds(order[i]);
    double group = 0.0;
    while (i < n && preds(order[i]) == v) {
      group += weights(order[i]);
      ++i;
    }
    if ((cum + group) / total > p_f) return v;
    cum += group;
  }
  return preds(order[n - 1]);
}

}  // namespace

double quantile_estimate(const Vector& preds, const Vector& weights, double p_f,
                         TailDirection direction) {
  if (!(p_f > 0.0 && p_f < 1.0)) {
    throw std::invalid_argument("quantile_estimate: p_f must lie in (0, 1)");
  }
  const Index n = preds.size();
  if (n < 1) throw std::invalid_argument("quantile_estimate: empty predictions");
  if (weights.size() != n) throw std::invalid_argument("quantile_estimate: weight size mismatch");
  for (Index i = 0; i < n; ++i) {
    if (!(weights(i) > 0.0)) {
      throw std::invalid_argument("quantile_estimate: weights must be > 0");
    }
  }
  if (direction == TailDirection::Upper) {
    return upper_weighted_quantile(preds, weights, p_f);
  }
  return -upper_weighted_quantile(-preds, weights, p_f);
}

double quantile_estimate(const Vector& preds, double p_f, TailDirection direction) {
  return quantile_estimate(preds, Vector::Ones(preds.size()), p_f, direction);
}

}  // namespace seqtail
