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

#include "seqtail/input_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seqtail/optimize.hpp"

namespace seqtail {

namespace {

void check_empirical(const EmpiricalMarginal& e) {
  if (e.values.empty()) throw std::invalid_argument("empirical marginal: no data");
  for (double v : e.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("empirical marginal: non-finite value");
  }
}

double empirical_cdf(const std::vector<double>& sorted, double x) {
  auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
  return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

double empirical_quantile(const std::vector<double>& sorted, double u) {
  const auto n = static_cast<Index>(sorted.size());
  Index k = static_cast<Index>(std::floor(u * static_cast<double>(n)));
  if (k < 0) k = 0;
  if (k >= n) k = n - 1;
  return sorted[k];
}

}  // namespace

Marginal::Marginal(NormalMarginal m) : dist_(m) {
  if (!(m.sd > 0.0)) throw std::invalid_argument("normal marginal: sd must be > 0");
  if (!std::isfinite(m.mean)) throw std::invalid_argument("normal marginal: non-finite mean");
}

Marginal::Marginal(LognormalMarginal m) : dist_(m) {
  if (!(m.log_sd > 0.0)) throw std::invalid_argument("lognormal marginal: log_sd must be > 0");
  if (!std::isfinite(m.log_mean)) {
    throw std::invalid_argument("lognormal marginal: non-finite log_mean");
  }
}

Marginal::Marginal(EmpiricalMarginal m) : dist_(std::move(m)) {
  auto& e = std::get<EmpiricalMarginal>(dist_);
  check_empirical(e);
  std::sort(e.values.begin(), e.values.end());
}

Marginal::Marginal(TwoStratumMixture m) : dist_(std::move(m)) {
  auto& mx = std::get<TwoStratumMixture>(dist_);
  check_empirical(mx.lower);
  check_empirical(mx.upper);
  std::sort(mx.lower.values.begin(), mx.lower.values.end());
  std::sort(mx.upper.values.begin(), mx.upper.values.end());
  if (!(mx.p1 > 0.0 && mx.p1 < 1.0)) {
    throw std::invalid_argument("two-stratum mixture: p1 must lie in (0, 1)");
  }
  if (!(mx.natural_p > 0.0 && mx.natural_p < 1.0)) {
    throw std::invalid_argument("two-stratum mixture: natural_p must lie in (0, 1)");
  }
}

Marginal Marginal::empirical(std::vector<double> values) {
  return Marginal(EmpiricalMarginal{std::move(values)});
}

double Marginal::sample(RngStream& rng) const {
  return std::visit(
      [&rng](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalMarginal>) {
          return d.mean + d.sd * rng.normal();
        } else if constexpr (std::is_same_v<T, LognormalMarginal>) {
          return std::exp(d.log_mean + d.log_sd * rng.normal());
        } else if constexpr (std::is_same_v<T, EmpiricalMarginal>) {
          return d.values[rng.uniform_index(static_cast<Index>(d.values.size()))];
        } else {
          const auto& stratum = rng.uniform() < d.p1 ? d.lower : d.upper;
          return stratum.values[rng.uniform_index(static_cast<Index>(stratum.values.size()))];
        }
      },
      dist_);
}

double Marginal::cdf(double x) const {
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalMarginal>) {
          return norm_cdf((x - d.mean) / d.sd);
        } else if constexpr (std::is_same_v<T, LognormalMarginal>) {
          if (x <= 0.0) return 0.0;
          return norm_cdf((std::log(x) - d.log_mean) / d.log_sd);
        } else if constexpr (std::is_same_v<T, EmpiricalMarginal>) {
          return empirical_cdf(d.values, x);
        } else {
          return d.p1 * empirical_cdf(d.lower.values, x) +
                 (1.0 - d.p1) * empirical_cdf(d.upper.values, x);
        }
      },
      dist_);
}

double Marginal::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("marginal quantile: u must be in (0, 1)");
  return std::visit(
      [u, this](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalMarginal>) {
          return d.mean + d.sd * norm_quantile(u);
        } else if constexpr (std::is_same_v<T, LognormalMarginal>) {
          return std::exp(d.log_mean + d.log_sd * norm_quantile(u));
        } else if constexpr (std::is_same_v<T, EmpiricalMarginal>) {
          return empirical_quantile(d.values, u);
        } else {
          // Numeric inversion of the mixture CDF over the data range.
          double lo = std::min(d.lower.values.front(), d.upper.values.front());
          double hi = std::max(d.lower.values.back(), d.upper.values.back());
          for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (cdf(mid) < u) {
              lo = mid;
            } else {
              hi = mid;
            }
          }
          return hi;
        }
      },
      dist_);
}

std::pair<double, double> Marginal::design_bounds() const {
  return std::visit(
      [](const auto& d) -> std::pair<double, double> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalMarginal>) {
          return {d.mean - 3.0 * d.sd, d.mean + 3.0 * d.sd};
        } else if constexpr (std::is_same_v<T, LognormalMarginal>) {
          return {std::exp(d.log_mean - 3.0 * d.log_sd), std::exp(d.log_mean + 3.0 * d.log_sd)};
        } else if constexpr (std::is_same_v<T, EmpiricalMarginal>) {
          return {d.values.front(), d.values.back()};
        } else {
          double lo = std::min(d.lower.values.front(), d.upper.values.front());
          double hi = std::max(d.lower.values.back(), d.upper.values.back());
          return {lo, hi};
        }
      },
      dist_);
}

AxisTransform Marginal::design_transform() const {
  return std::holds_alternative<LognormalMarginal>(dist_) ? AxisTransform::Exponential
                                                          : AxisTransform::Identity;
}

bool Marginal::is_mixture() const { return std::holds_alternative<TwoStratumMixture>(dist_); }

const TwoStratumMixture* Marginal::mixture() const {
  return std::get_if<TwoStratumMixture>(&dist_);
}

std::string Marginal::kind_name() const {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, NormalMarginal>) return "normal";
        if constexpr (std::is_same_v<T, LognormalMarginal>) return "lognormal";
        if constexpr (std::is_same_v<T, EmpiricalMarginal>) return "empirical";
        return "two_stratum_mixture";
      },
      dist_);
}

void InputModel::validate() const {
  if (marginals.empty()) throw std::invalid_argument("input model: needs at least one marginal");
}

Matrix InputModel::sample(Index n, std::uint64_t seed) const {
  validate();
  if (n < 1) throw std::invalid_argument("input model sample: n must be >= 1");
  RngStream rng(seed);
  Matrix out(n, dim());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < dim(); ++j) {
      out(i, j) = marginals[j].sample(rng);
    }
  }
  return out;
}

double censored_weibull_loglik(const std::vector<double>& complete, Index n_censored,
                               double cutoff, double shape, double scale, double location) {
  if (!(shape > 0.0) || !(scale > 0.0)) return -std::numeric_limits<double>::infinity();
  double ll = 0.0;
  const double log_shape = std::log(shape);
  const double log_scale = std::log(scale);
  for (double x : complete) {
    const double z = (x - location) / scale;
    if (!(z > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += log_shape - log_scale + (shape - 1.0) * std::log(z) - std::pow(z, shape);
  }
  if (n_censored > 0) {
    const double zc = (cutoff - location) / scale;
    if (!(zc > 0.0)) return -std::numeric_limits<double>::infinity();
    ll += static_cast<double>(n_censored) * (-std::pow(zc, shape));
  }
  return ll;
}

CensoredWeibullFit fit_censored_weibull(std::vector<double> data, double lower_fraction,
                                        int n_params) {
  if (!(lower_fraction > 0.0 && lower_fraction <= 1.0)) {
    throw std::invalid_argument("fit_censored_weibull: lower_fraction must be in (0, 1]");
  }
  if (n_params != 2 && n_params != 3) {
    throw std::invalid_argument("fit_censored_weibull: n_params must be 2 or 3");
  }
  std::sort(data.begin(), data.end());
  const Index n = static_cast<Index>(data.size());
  Index n_complete =
      lower_fraction >= 1.0 ? n : static_cast<Index>(std::floor(lower_fraction * n));
  if (n_complete < 10) {
    throw std::invalid_argument("fit_censored_weibull: need >= 10 points below the cutoff");
  }
  std::vector<double> complete(data.begin(), data.begin() + n_complete);
  const Index n_censored = n - n_complete;
  const double cutoff = complete.back();
  const double min_x = complete.front();

  if (complete.front() == complete.back()) {
    throw FitFailureError("fit_censored_weibull: complete observations are identical", Vector(),
                          -std::numeric_limits<double>::infinity());
  }
  if (n_params == 2 && !(min_x > 0.0)) {
    throw std::invalid_argument("fit_censored_weibull: 2-parameter fit needs positive data");
  }

  // Coordinates: (log shape, log scale[, s]) with location = min_x - exp(s),
  // keeping the location strictly below the smallest complete observation.
  const double data_span = complete.back() - complete.front();
  auto unpack = [&](const Vector& zv, double& shape, double& scale, double& location) {
    shape = std::exp(zv(0));
    scale = std::exp(zv(1));
    location = n_params == 3 ? min_x - std::exp(zv(2)) : 0.0;
  };
  auto objective = [&](const Vector& zv) {
    double shape, scale, location;
    unpack(zv, shape, scale, location);
    if (shape > 1e4 || scale > 1e12) return 1e300;
    double ll = censored_weibull_loglik(complete, n_censored, cutoff, shape, scale, location);
    return std::isfinite(ll) ? -ll : 1e300;
  };

  RngStream rng(0x5eedfeedULL);
  const int starts = 8;
  Vector best;
  double best_val = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  for (int s = 0; s < starts; ++s) {
    Vector z0(n_params == 3 ? 3 : 2);
    z0(0) = std::log(0.5 + 4.0 * rng.uniform());  // shape in [0.5, 4.5]
    const double scale_ref = n_params == 3 ? data_span : cutoff;
    z0(1) = std::log(scale_ref * (0.3 + 2.0 * rng.uniform()));
    if (n_params == 3) z0(2) = std::log(data_span * (0.05 + rng.uniform()));
    SimplexResult r = nelder_mead(objective, z0, 0.5, 600, 1e-10);
    any_converged = any_converged || r.converged;
    if (r.value < best_val) {
      best_val = r.value;
      best = r.x;
    }
  }

  CensoredWeibullFit fit;
  unpack(best, fit.shape, fit.scale, fit.location);
  fit.cutoff_value = cutoff;
  fit.n_complete = n_complete;
  fit.n_censored = n_censored;
  fit.log_likelihood = -best_val;

  if (!any_converged || !std::isfinite(fit.log_likelihood)) {
    throw FitFailureError("fit_censored_weibull: optimizer did not converge", best,
                          -best_val);
  }
  return fit;
}

Marginal build_tail_mixture(std::vector<double> data, double split_fraction, double p1) {
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw std::invalid_argument("build_tail_mixture: split_fraction must be in (0, 1)");
  }
  if (!(p1 > 0.0 && p1 < 1.0)) {
    throw std::invalid_argument("build_tail_mixture: p1 must be in (0, 1)");
  }
  std::sort(data.begin(), data.end());
  const Index n = static_cast<Index>(data.size());
  const Index n_lower = static_cast<Index>(std::floor(split_fraction * static_cast<double>(n)));
  if (n_lower < 1 || n - n_lower < 1) {
    throw std::invalid_argument("build_tail_mixture: a stratum would be empty");
  }
  TwoStratumMixture mx;
  mx.lower.values.assign(data.begin(), data.begin() + n_lower);
  mx.upper.values.assign(data.begin() + n_lower, data.end());
  mx.p1 = p1;
  mx.natural_p = split_fraction;
  return Marginal(std::move(mx));
}

}  // namespace seqtail
