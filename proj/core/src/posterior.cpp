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

#include "seqtail/posterior.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>

#include "seqtail/optimize.hpp"
#include "seqtail/rng.hpp"

namespace seqtail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logit(double u) { return std::log(u / (1.0 - u)); }
double inv_logit(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Transformed coordinates z = (log theta_1..d, logit(power_1..d - 1)).
CorrelationParams params_from_coords(const Vector& z) {
  const Index d = z.size() / 2;
  CorrelationParams psi;
  psi.theta = z.head(d).array().exp();
  psi.power = Vector::Ones(d) + z.tail(d).unaryExpr([](double v) { return inv_logit(v); });
  return psi;
}

Vector coords_from_params(const CorrelationParams& psi) {
  const Index d = psi.dim();
  Vector z(2 * d);
  z.head(d) = psi.theta.array().log();
  for (Index j = 0; j < d; ++j) z(d + j) = logit(psi.power(j) - 1.0);
  return z;
}

// Log posterior density in transformed coordinates: marginal likelihood,
// uniform log-theta prior (constant inside bounds), and the Jacobian of the
// logit map for the uniform power prior.
double log_posterior_coords(const Vector& z, const Matrix& scaled_points, const Vector& y,
                            const CorrelationPrior& prior) {
  const Index d = z.size() / 2;
  for (Index j = 0; j < d; ++j) {
    if (z(j) < prior.log_theta_min || z(j) > prior.log_theta_max) return kNegInf;
  }
  CorrelationParams psi = params_from_coords(z);
  double lp = log_marginal(scaled_points, y, psi);
  if (lp == kNegInf) return kNegInf;
  for (Index j = 0; j < d; ++j) {
    const double u = psi.power(j) - 1.0;  // in (0, 1)
    lp += std::log(u) + std::log(1.0 - u);
  }
  return lp;
}

}  // namespace

bool CorrelationPrior::contains(const CorrelationParams& psi) const {
  for (Index j = 0; j < psi.dim(); ++j) {
    const double lt = std::log(psi.theta(j));
    if (!(lt >= log_theta_min && lt <= log_theta_max)) return false;
    if (!(psi.power(j) >= 1.0 && psi.power(j) <= 2.0)) return false;
  }
  return true;
}

void CorrelationPrior::validate() const {
  if (!std::isfinite(log_theta_min) || !std::isfinite(log_theta_max) ||
      !(log_theta_min < log_theta_max)) {
    throw std::invalid_argument("correlation prior: need finite log_theta_min < log_theta_max");
  }
}

void McmcConfig::validate() const {
  if (draws < 1) throw std::invalid_argument("mcmc: draws must be >= 1");
  if (burn_in < 0) throw std::invalid_argument("mcmc: burn_in must be >= 0");
  if (thin < 1) throw std::invalid_argument("mcmc: thin must be >= 1");
  if (!(step_size >= 0.0)) throw std::invalid_argument("mcmc: step_size must be >= 0");
  if (map_starts < 1) throw std::invalid_argument("mcmc: map_starts must be >= 1");
}

double log_marginal(const Matrix& scaled_points, const Vector& y, const CorrelationParams& psi) {
  const Index n = y.size();
  // Constant outputs: sigma2_hat vanishes for every psi and the marginal
  // carries no information; treat the likelihood as flat.
  if (y.maxCoeff() - y.minCoeff() == 0.0) return 0.0;

  KernelFactorization fac;
  try {
    fac = factorize(scaled_points, psi);
  } catch (const IllConditionedKernelError&) {
    return kNegInf;
  }
  double log_det = 2.0 * fac.chol.diagonal().array().log().sum();

  const Vector ones = Vector::Ones(n);
  Vector half_1 = fac.chol.triangularView<Eigen::Lower>().solve(ones);
  Vector half_y = fac.chol.triangularView<Eigen::Lower>().solve(y);
  double ones_quad = half_1.squaredNorm();
  double mu = half_1.dot(half_y) / ones_quad;
  double sigma2 = (half_y - mu * half_1).squaredNorm() / static_cast<double>(n - 1);
  if (!(sigma2 > 0.0)) return kNegInf;

  return -0.5 * log_det - 0.5 * std::log(ones_quad) -
         0.5 * static_cast<double>(n - 1) * std::log(sigma2);
}

CorrelationParams map_estimate(const Matrix& scaled_points, const Vector& y,
                               const CorrelationPrior& prior, int starts, std::uint64_t seed) {
  const Index d = scaled_points.cols();
  RngStream rng(seed);
  auto objective = [&](const Vector& z) {
    double lp = log_posterior_coords(z, scaled_points, y, prior);
    return lp == kNegInf ? 1e300 : -lp;
  };

  Vector best_x;
  double best_val = std::numeric_limits<double>::infinity();
  for (int s = 0; s < starts; ++s) {
    Vector z0(2 * d);
    for (Index j = 0; j < d; ++j) {
      z0(j) = prior.log_theta_min + rng.uniform() * (prior.log_theta_max - prior.log_theta_min);
      z0(d + j) = logit(0.05 + 0.9 * rng.uniform());
    }
    SimplexResult r = nelder_mead(objective, z0, 0.7, 300, 1e-9);
    if (r.value < best_val) {
      best_val = r.value;
      best_x = r.x;
    }
  }
  // Clamp back into the prior box; the simplex may end on the boundary.
  for (Index j = 0; j < d; ++j) {
    best_x(j) = std::clamp(best_x(j), prior.log_theta_min, prior.log_theta_max);
  }
  return params_from_coords(best_x);
}

PosteriorSample sample_posterior(const Matrix& scaled_points, const Vector& y,
                                 const CorrelationPrior& prior, const McmcConfig& cfg,
                                 std::uint64_t seed) {
  prior.validate();
  cfg.validate();
  const Index d = scaled_points.cols();

  PosteriorSample out;
  out.chain_seed = seed;

  if (cfg.map_mode) {
    out.draws.push_back(map_estimate(scaled_points, y, prior, cfg.map_starts, seed));
    out.acceptance_rate = 1.0;
    return out;
  }

  RngStream rng(seed);
  const Index k = 2 * d;

  // Deterministic starting point: theta = 1, power = 1.5.
  Vector z = Vector::Zero(k);
  double lp = log_posterior_coords(z, scaled_points, y, prior);

  Vector step = Vector::Constant(k, cfg.step_size);
  std::vector<long> win_accept(k, 0), win_attempt(k, 0);
  constexpr int kAdaptWindow = 50;

  long post_accept = 0, post_attempt = 0;
  const int total_sweeps = cfg.burn_in + cfg.thin * cfg.draws;
  out.draws.reserve(cfg.draws);

  for (int sweep = 0; sweep < total_sweeps; ++sweep) {
    const bool in_burn = sweep < cfg.burn_in;
    for (Index c = 0; c < k; ++c) {
      double old = z(c);
      z(c) = old + step(c) * rng.normal();
      double lp_new = log_posterior_coords(z, scaled_points, y, prior);
      bool accept = false;
      if (lp_new > lp) {
        accept = true;
      } else if (lp_new != kNegInf) {
        accept = std::log(rng.uniform()) < lp_new - lp;
      }
      if (accept) {
        lp = lp_new;
      } else {
        z(c) = old;
      }
      if (in_burn) {
        win_attempt[c]++;
        if (accept) win_accept[c]++;
      } else {
        post_attempt++;
        if (accept) post_accept++;
      }
    }
    if (in_burn && (sweep + 1) % kAdaptWindow == 0) {
      for (Index c = 0; c < k; ++c) {
        if (win_attempt[c] == 0) continue;
        double rate = static_cast<double>(win_accept[c]) / static_cast<double>(win_attempt[c]);
        step(c) = std::clamp(step(c) * std::exp(0.6 * (rate - 0.30)), 1e-3, 5.0);
        win_accept[c] = win_attempt[c] = 0;
      }
    }
    if (!in_burn && (sweep - cfg.burn_in + 1) % cfg.thin == 0) {
      out.draws.push_back(params_from_coords(z));
      if (static_cast<int>(out.draws.size()) == cfg.draws) break;
    }
  }
  // Degenerate configs (thin misalignment) still return at least the
  // current point.
  while (static_cast<int>(out.draws.size()) < cfg.draws) {
    out.draws.push_back(params_from_coords(z));
  }

  out.acceptance_rate =
      post_attempt > 0 ? static_cast<double>(post_accept) / static_cast<double>(post_attempt) : 1.0;
  if (out.acceptance_rate < 0.05 || out.acceptance_rate > 0.95) {
    out.warning = "mcmc acceptance rate " + std::to_string(out.acceptance_rate) +
                  " outside [0.05, 0.95] after adaptation";
  }
  return out;
}

MixturePrediction mixture_predict_states(const Vector& xstar_scaled, const Matrix& scaled_points,
                                         const std::vector<DrawState>& states) {
  if (states.empty()) throw std::invalid_argument("mixture_predict: empty posterior sample");
  MixturePrediction out;
  const Index m = static_cast<Index>(states.size());
  out.per_draw.reserve(states.size());
  double sum_mean = 0.0, sum_var = 0.0;
  for (const auto& st : states) {
    Prediction p = predict_with_state(xstar_scaled, scaled_points, st);
    out.per_draw.emplace_back(p.mean, p.variance);
    sum_mean += p.mean;
    sum_var += p.variance;
  }
  out.mean = sum_mean / static_cast<double>(m);
  double between = 0.0;
  if (m > 1) {
    for (const auto& [pm, pv] : out.per_draw) {
      between += (pm - out.mean) * (pm - out.mean);
    }
    between /= static_cast<double>(m - 1);
  }
  out.variance = sum_var / static_cast<double>(m) + between;
  return out;
}

MixturePrediction mixture_predict(const Vector& xstar_scaled, const Matrix& scaled_points,
                                  const Vector& y, const PosteriorSample& psis) {
  if (psis.draws.empty()) throw std::invalid_argument("mixture_predict: empty posterior sample");
  std::vector<DrawState> states;
  states.reserve(psis.draws.size());
  for (const auto& psi : psis.draws) {
    states.push_back(make_draw_state(scaled_points, y, psi));
  }
  return mixture_predict_states(xstar_scaled, scaled_points, states);
}

}  // namespace seqtail
