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

#include "seqtail/designs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seqtail/csv.hpp"

namespace seqtail {

void DesignRegion::validate() const {
  if (lower.size() == 0 || lower.size() != upper.size() ||
      static_cast<Index>(transform.size()) != lower.size()) {
    throw std::invalid_argument("design region: inconsistent sizes");
  }
  for (Index j = 0; j < lower.size(); ++j) {
    if (!(lower(j) < upper(j))) {
      throw std::invalid_argument("design region: lower must be < upper in dimension " +
                                  std::to_string(j));
    }
  }
}

DesignRegion DesignRegion::from_model(const InputModel& model) {
  model.validate();
  DesignRegion region;
  const Index d = model.dim();
  region.lower.resize(d);
  region.upper.resize(d);
  region.transform.resize(d);
  for (Index j = 0; j < d; ++j) {
    auto [lo, hi] = model.marginals[j].design_bounds();
    region.lower(j) = lo;
    region.upper(j) = hi;
    region.transform[j] = model.marginals[j].design_transform();
  }
  region.validate();
  return region;
}

InputScaler DesignRegion::scaler() const {
  validate();
  return InputScaler{lower, upper - lower};
}

Matrix random_design(const InputModel& model, Index n0, std::uint64_t seed) {
  return model.sample(n0, seed);
}

Matrix uniform_lhd(const DesignRegion& region, Index n0, std::uint64_t seed) {
  region.validate();
  if (n0 < 1) throw std::invalid_argument("uniform_lhd: n0 must be >= 1");
  const Index d = region.dim();
  RngStream rng(seed);
  Matrix out(n0, d);
  std::vector<Index> perm(n0);
  for (Index j = 0; j < d; ++j) {
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = n0 - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.uniform_index(i + 1)]);
    }
    const bool log_scale = region.transform[j] == AxisTransform::Exponential;
    const double lo = log_scale ? std::log(region.lower(j)) : region.lower(j);
    const double hi = log_scale ? std::log(region.upper(j)) : region.upper(j);
    for (Index i = 0; i < n0; ++i) {
      const double u = (static_cast<double>(perm[i]) + rng.uniform()) / static_cast<double>(n0);
      const double v = lo + u * (hi - lo);
      out(i, j) = log_scale ? std::exp(v) : v;
    }
  }
  return out;
}

Matrix mc_set(const InputModel& model, Index n, std::uint64_t seed) {
  return model.sample(n, seed);
}

void StratifiedSet::validate() const {
  if (weights.size() == 0 || per_stratum < 1) {
    throw std::invalid_argument("stratified set: empty");
  }
  if (points.rows() != weights.size() * per_stratum ||
      static_cast<Index>(stratum_id.size()) != points.rows()) {
    throw std::invalid_argument("stratified set: inconsistent sizes");
  }
  if (std::abs(weights.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("stratified set: weights must sum to 1 within 1e-12");
  }
  for (Index h = 0; h < weights.size(); ++h) {
    if (!(weights(h) > 0.0)) throw std::invalid_argument("stratified set: weights must be > 0");
  }
}

StratifiedSet stratified_mc_set(const InputModel& model, Index per_stratum, std::uint64_t seed,
                                Index cap) {
  model.validate();
  const Index d = model.dim();
  for (Index j = 0; j < d; ++j) {
    if (!model.marginals[j].is_mixture()) {
      throw std::invalid_argument(
          "stratified_mc_set: every marginal must be a two-stratum mixture (dimension " +
          std::to_string(j) + " is " + model.marginals[j].kind_name() + ")");
    }
  }
  if (per_stratum < 1) throw std::invalid_argument("stratified_mc_set: per_stratum must be >= 1");
  if (d > 30) throw std::invalid_argument("stratified_mc_set: too many dimensions");
  const Index n_strata = Index{1} << d;
  if (n_strata * per_stratum > cap) {
    throw std::invalid_argument("stratified_mc_set: 2^d * per_stratum = " +
                                std::to_string(n_strata * per_stratum) +
                                " exceeds the cap of " + std::to_string(cap));
  }

  RngStream rng(seed);
  StratifiedSet set;
  set.per_stratum = per_stratum;
  set.points.resize(n_strata * per_stratum, d);
  set.stratum_id.resize(n_strata * per_stratum);
  set.weights.resize(n_strata);

  Index row = 0;
  for (Index h = 0; h < n_strata; ++h) {
    double w = 1.0;
    for (Index j = 0; j < d; ++j) {
      const auto* mx = model.marginals[j].mixture();
      const bool use_lower = (h >> j) & 1;
      w *= use_lower ? mx->natural_p : 1.0 - mx->natural_p;
    }
    set.weights(h) = w;
    for (Index i = 0; i < per_stratum; ++i, ++row) {
      set.stratum_id[row] = static_cast<int>(h);
      for (Index j = 0; j < d; ++j) {
        const auto* mx = model.marginals[j].mixture();
        const auto& vals = ((h >> j) & 1) ? mx->lower.values : mx->upper.values;
        set.points(row, j) = vals[rng.uniform_index(static_cast<Index>(vals.size()))];
      }
    }
  }
  // Product weights over complementary probabilities sum to 1 exactly up to
  // rounding; normalize the residual away so downstream validation is exact.
  set.weights /= set.weights.sum();
  set.validate();
  return set;
}

void write_design_csv(const std::string& path, const Matrix& points,
                      const std::vector<std::string>& names) {
  if (static_cast<Index>(names.size()) != points.cols()) {
    throw std::invalid_argument("write_design_csv: one name per column required");
  }
  CsvWriter w(path);
  w.row(names);
  std::vector<std::string> cells(points.cols());
  for (Index i = 0; i < points.rows(); ++i) {
    for (Index j = 0; j < points.cols(); ++j) cells[j] = format_number(points(i, j));
    w.row(cells);
  }
  w.close();
}

Matrix read_design_csv(const std::string& path) {
  auto rows = read_csv(path);
  if (rows.size() < 2) throw std::invalid_argument("read_design_csv: no data rows in " + path);
  const auto d = rows[1].size();
  Matrix out(static_cast<Index>(rows.size() - 1), static_cast<Index>(d));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw std::invalid_argument("read_design_csv: ragged row in " + path);
    }
    for (std::size_t j = 0; j < d; ++j) {
      out(static_cast<Index>(i - 1), static_cast<Index>(j)) = std::stod(rows[i][j]);
    }
  }
  return out;
}

void write_stratified_csv(const std::string& path, const StratifiedSet& set,
                          const std::vector<std::string>& names) {
  set.validate();
  if (static_cast<Index>(names.size()) != set.points.cols()) {
    throw std::invalid_argument("write_stratified_csv: one name per column required");
  }
  CsvWriter w(path);
  std::vector<std::string> header = names;
  header.push_back("stratum_id");
  header.push_back("weight");
  w.row(header);
  std::vector<std::string> cells(set.points.cols() + 2);
  for (Index i = 0; i < set.points.rows(); ++i) {
    for (Index j = 0; j < set.points.cols(); ++j) cells[j] = format_number(set.points(i, j));
    cells[set.points.cols()] = std::to_string(set.stratum_id[i]);
    cells[set.points.cols() + 1] = format_number(set.weights(set.stratum_id[i]));
    w.row(cells);
  }
  w.close();
}

}  // namespace seqtail
