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
#include <string>
#include <variant>
#include <vector>

#include "seqtail/rng.hpp"
#include "seqtail/types.hpp"

namespace seqtail {

// Independent marginal distributions of the random inputs: parametric,
// empirical, and two-stratum tail-over-sampling mixtures, plus the
// censored-Weibull fit used to model a lower tail.

enum class AxisTransform { Identity, Exponential };

struct NormalMarginal {
  double mean = 0.0;
  double sd = 1.0;
};

/// Parameters of the underlying normal on the log scale.
struct LognormalMarginal {
  double log_mean = 0.0;
  double log_sd = 1.0;
};

struct EmpiricalMarginal {
  std::vector<double> values;  ///< sorted ascending
};

/// Two-stratum mixture H = p1 G1 + (1 - p1) G2 over empirical strata.
/// `natural_p` is the fraction of the source data in the lower stratum,
/// kept for stratified-weight correction.
struct TwoStratumMixture {
  EmpiricalMarginal lower;
  EmpiricalMarginal upper;
  double p1 = 0.5;
  double natural_p = 0.1;
};

class Marginal {
 public:
  explicit Marginal(NormalMarginal m);
  explicit Marginal(LognormalMarginal m);
  explicit Marginal(EmpiricalMarginal m);
  explicit Marginal(TwoStratumMixture m);

  static Marginal normal(double mean, double sd) { return Marginal(NormalMarginal{mean, sd}); }
  static Marginal lognormal(double log_mean, double log_sd) {
    return Marginal(LognormalMarginal{log_mean, log_sd});
  }
  static Marginal empirical(std::vector<double> values);

  double sample(RngStream& rng) const;
  double cdf(double x) const;
  double quantile(double u) const;  ///< u in (0, 1)

  /// Design-region bounds: mean +- 3 sd for parametric kinds (log scale for
  /// lognormal), data min/max for empirical kinds.
  std::pair<double, double> design_bounds() const;
  AxisTransform design_transform() const;

  bool is_mixture() const;
  const TwoStratumMixture* mixture() const;  ///< nullptr unless a mixture
  std::string kind_name() const;

 private:
  std::variant<NormalMarginal, LognormalMarginal, EmpiricalMarginal, TwoStratumMixture> dist_;
};

struct InputModel {
  std::vector<Marginal> marginals;

  Index dim() const { return static_cast<Index>(marginals.size()); }
  void validate() const;

  /// n i.i.d. rows from the product of marginals.
  Matrix sample(Index n, std::uint64_t seed) const;
};

struct CensoredWeibullFit {
  double shape = 1.0;
  double scale = 1.0;
  double location = 0.0;  ///< 0 for the 2-parameter variant
  double cutoff_value = 0.0;
  Index n_complete = 0;
  Index n_censored = 0;
  double log_likelihood = 0.0;
};

/// Censored Weibull log likelihood: complete observations contribute
/// log f(x), censored ones log S(cutoff).
double censored_weibull_loglik(const std::vector<double>& complete, Index n_censored,
                               double cutoff, double shape, double scale, double location);

/// Maximum-likelihood Weibull fit where only the lower `lower_fraction` of
/// the data is complete and the rest is right-censored at the cutoff.
/// n_params = 3 frees the location parameter (kept below min of the data).
/// lower_fraction = 1 reduces to the complete-data MLE.
/// Throws FitFailureError when the multi-start optimizer fails to converge
/// or the likelihood is degenerate.
CensoredWeibullFit fit_censored_weibull(std::vector<double> data, double lower_fraction,
                                        int n_params);

/// Splits data at the `split_fraction` empirical quantile into two
/// empirical strata sampled with probability (p1, 1 - p1). Records
/// split_fraction as the natural lower-stratum probability.
Marginal build_tail_mixture(std::vector<double> data, double split_fraction, double p1);

}  // namespace seqtail
