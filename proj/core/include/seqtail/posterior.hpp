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
#include <utility>
#include <vector>

#include "seqtail/gp.hpp"
#include "seqtail/types.hpp"

namespace seqtail {

// Bayesian treatment of the correlation parameters. The constant mean and
// process variance are integrated out analytically (vague uniform and
// inverse-gamma priors), leaving a marginal posterior over the range and
// smoothness parameters that is explored by component-wise random-walk
// Metropolis in (log theta, logit-scaled power) coordinates.

/// Independent priors: log theta_j uniform on [log_theta_min, log_theta_max]
/// (scaled inputs), power_j uniform on [1, 2].
struct CorrelationPrior {
  double log_theta_min = -4.605170185988091;  // log 0.01
  double log_theta_max = 3.912023005428146;   // log 50

  bool contains(const CorrelationParams& psi) const;
  void validate() const;
};

struct McmcConfig {
  int burn_in = 500;
  int thin = 5;
  int draws = 100;         ///< retained sample size M
  double step_size = 0.5;  ///< initial random-walk step in transformed coordinates
  bool map_mode = false;   ///< point estimate instead of a chain
  int map_starts = 8;

  void validate() const;
};

struct PosteriorSample {
  std::vector<CorrelationParams> draws;
  double acceptance_rate = 0.0;
  std::uint64_t chain_seed = 0;
  std::string warning;  ///< set when the acceptance rate lands outside [0.05, 0.95]

  Index size() const { return static_cast<Index>(draws.size()); }
};

/// Log marginal likelihood of the outputs given psi, with the mean and
/// variance integrated out:
///   -0.5 log|R| - 0.5 log(1^T R^-1 1) - ((n-1)/2) log sigma2_hat.
/// Returns a constant (0) for exactly constant outputs, where the
/// likelihood carries no information about psi, and -inf when the kernel
/// cannot be factorized at maximum jitter.
double log_marginal(const Matrix& scaled_points, const Vector& y, const CorrelationParams& psi);

/// Component-wise random-walk Metropolis sample of the correlation
/// parameters. Step sizes adapt toward 0.30 acceptance during burn-in and
/// are frozen afterwards. With cfg.map_mode the result holds the single
/// MAP point (multi-start simplex search) instead.
PosteriorSample sample_posterior(const Matrix& scaled_points, const Vector& y,
                                 const CorrelationPrior& prior, const McmcConfig& cfg,
                                 std::uint64_t seed);

/// MAP estimate of psi under the same posterior (multi-start Nelder-Mead in
/// transformed coordinates).
CorrelationParams map_estimate(const Matrix& scaled_points, const Vector& y,
                               const CorrelationPrior& prior, int starts, std::uint64_t seed);

/// Model-averaged prediction over posterior draws: mean is the average of
/// conditional means, variance adds the empirical variance of the means
/// (law of total variance, divisor M-1; zero when M = 1).
struct MixturePrediction {
  double mean = 0.0;
  double variance = 0.0;
  std::vector<std::pair<double, double>> per_draw;  ///< (mean, variance) per draw
};

MixturePrediction mixture_predict(const Vector& xstar_scaled, const Matrix& scaled_points,
                                  const Vector& y, const PosteriorSample& psis);

MixturePrediction mixture_predict_states(const Vector& xstar_scaled, const Matrix& scaled_points,
                                         const std::vector<DrawState>& states);

}  // namespace seqtail
