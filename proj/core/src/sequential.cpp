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

#include "seqtail/sequential.hpp"

#include <cmath>
#include <iostream>

#include "seqtail/rng.hpp"

namespace seqtail {

SeedPack SeedPack::from_root(std::uint64_t root) {
  SeedPack s;
  s.design = stream_seed(root, "design");
  s.mc = stream_seed(root, "mc");
  s.candidate = stream_seed(root, "candidate");
  s.chain = stream_seed(root, "chain");
  return s;
}

void ExperimentConfig::validate(EstimateMode mode) const {
  if (n0 < 2) throw std::invalid_argument("experiment: n0 must be >= 2");
  if (n_plus < 1) throw std::invalid_argument("experiment: n_plus must be >= 1");
  if (mc_n < 1) throw std::invalid_argument("experiment: mc.n must be >= 1");
  if (!stratified && candidate_policy == CandidatePolicy::Fresh && candidate_n < 1) {
    throw std::invalid_argument("experiment: candidate.n must be >= 1");
  }
  if (stratified && per_stratum < 1) {
    throw std::invalid_argument("experiment: per_stratum must be >= 1");
  }
  acquisition.validate();
  mcmc.validate();
  prior.validate();
  if (mode == EstimateMode::Probability) {
    tail.validate_probability();
  } else {
    tail.validate_quantile();
  }
}

namespace {

RunResult run_sequential(EstimateMode mode, const ExperimentConfig& cfg, const InputModel& model,
                         const BlackBox& box, const PreparedSets& prepared) {
  cfg.validate(mode);
  model.validate();
  if (box.dim != model.dim()) {
    throw std::invalid_argument("experiment: black box dimension does not match the input model");
  }

  const DesignRegion region = DesignRegion::from_model(model);
  const InputScaler scaler = region.scaler();

  // Initial design.
  Matrix design;
  if (prepared.initial_design) {
    design = *prepared.initial_design;
  } else if (cfg.design == DesignKind::Random) {
    design = random_design(model, cfg.n0, cfg.seeds.design);
  } else {
    design = uniform_lhd(region, cfg.n0, cfg.seeds.design);
  }
  if (design.rows() != cfg.n0 || design.cols() != model.dim()) {
    throw std::invalid_argument("experiment: initial design has the wrong shape");
  }

  // MC set, frozen for the whole run.
  Matrix mc_points;
  std::optional<StratifiedSet> strat;
  if (cfg.stratified) {
    strat = prepared.stratified_set ? *prepared.stratified_set
                                    : stratified_mc_set(model, cfg.per_stratum, cfg.seeds.mc);
    mc_points = strat->points;
  } else {
    mc_points = prepared.mc_points ? *prepared.mc_points : mc_set(model, cfg.mc_n, cfg.seeds.mc);
  }

  // Candidate set, frozen as well. Stratified runs search the MC set itself.
  Matrix candidates;
  if (prepared.candidate_points) {
    candidates = *prepared.candidate_points;
  } else if (cfg.candidate_policy == CandidatePolicy::McSet || cfg.stratified) {
    candidates = mc_points;
  } else {
    candidates = model.sample(cfg.candidate_n, cfg.seeds.candidate);
  }

  // Evaluate the initial design.
  TrainingSet train;
  train.points = design;
  train.outputs.resize(design.rows());
  for (Index i = 0; i < design.rows(); ++i) {
    try {
      train.outputs(i) = evaluate(box, design.row(i));
    } catch (const EvaluationError& e) {
      throw RunAbortedError(std::string("initial design evaluation failed: ") + e.what(),
                            Trace{});
    }
  }

  const Matrix mc_scaled = scaler.to_unit_rows(mc_points);
  const Matrix cand_scaled = scaler.to_unit_rows(candidates);

  std::vector<char> admissible =
      admissible_mask(cand_scaled, scaler.to_unit_rows(train.points), cfg.duplicate_tol);

  Vector strat_weights;
  if (strat) strat_weights = point_weights(*strat);

  RunResult result;
  result.trace.iterations.reserve(cfg.n_plus);

  RngStream check_rng(stream_seed(cfg.seeds.chain, "determinism-check"));

  const bool need_mc_variance = cfg.collect_diagnostics;
  for (int iter = 1; iter <= cfg.n_plus; ++iter) {
    const std::uint64_t fit_seed = stream_seed(cfg.seeds.chain, "refit-" + std::to_string(iter));
    Surrogate fit = Surrogate::fit(train, scaler, cfg.prior, cfg.mcmc, fit_seed);

    BatchPrediction mc_pred = fit.predict_batch_scaled(mc_scaled, need_mc_variance);

    double estimate;
    if (mode == EstimateMode::Probability) {
      estimate = strat ? stratified_prob_estimate(*strat, mc_pred.mean, cfg.tail.y_f,
                                                  cfg.tail.direction)
                       : prob_estimate(mc_pred.mean, cfg.tail.y_f, cfg.tail.direction);
    } else {
      estimate = strat ? quantile_estimate(mc_pred.mean, strat_weights, cfg.tail.p_f,
                                           cfg.tail.direction)
                       : quantile_estimate(mc_pred.mean, cfg.tail.p_f, cfg.tail.direction);
    }

    // Quantile runs chase the current estimate as if it were the contour.
    const double target = mode == EstimateMode::Probability ? cfg.tail.y_f : estimate;

    if (cfg.collect_diagnostics) {
      result.diagnostics.steps.push_back(
          diagnostic_step(mc_pred.mean, mc_pred.variance, target));
    }

    IterationRecord rec;
    rec.iteration = iter;
    rec.n = train.size();
    rec.estimate = estimate;
    rec.max_jitter = fit.max_jitter();
    rec.mcmc_acceptance = fit.sample().acceptance_rate;
    rec.n_candidates_excluded =
        static_cast<Index>(std::count(admissible.begin(), admissible.end(), char{0}));

    if (iter < cfg.n_plus) {
      BatchPrediction cand_pred = fit.predict_batch_scaled(cand_scaled, true);
      ScoredCandidate chosen =
          select_next(cand_pred.mean, cand_pred.variance, cfg.acquisition, target, admissible);
      Vector x_new = candidates.row(chosen.index);
      double y_new;
      try {
        y_new = evaluate(box, x_new);
      } catch (const EvaluationError& e) {
        result.trace.iterations.push_back(std::move(rec));
        throw RunAbortedError(std::string("evaluation failed at iteration ") +
                                  std::to_string(iter) + ": " + e.what(),
                              std::move(result.trace));
      }

      rec.has_selection = true;
      rec.x = x_new;
      rec.y = y_new;
      rec.criterion_value = chosen.score;

      train.points.conservativeResize(train.points.rows() + 1, Eigen::NoChange);
      train.points.row(train.points.rows() - 1) = x_new.transpose();
      train.outputs.conservativeResize(train.outputs.size() + 1);
      train.outputs(train.outputs.size() - 1) = y_new;

      const Vector scaled_new = scaler.to_unit(x_new);
      for (Index i = 0; i < candidates.rows(); ++i) {
        if (admissible[i] &&
            (cand_scaled.row(i) - scaled_new.transpose()).norm() <= cfg.duplicate_tol) {
          admissible[i] = 0;
        }
      }
    }
    result.trace.iterations.push_back(std::move(rec));
    result.trace.final_estimate = estimate;
    result.estimate = estimate;
  }

  if (cfg.determinism_check && train.size() > 0) {
    const Index i = check_rng.uniform_index(train.size());
    const double again = evaluate(box, train.points.row(i));
    const double ref = train.outputs(i);
    const double scale = std::max(std::abs(ref), 1.0);
    if (std::abs(again - ref) > 1e-9 * scale) {
      std::cerr << "warning: black box is not deterministic at training point " << i
                << " (delta " << std::abs(again - ref) << ")\n";
    }
  }
  return result;
}

}  // namespace

RunResult run_probability(const ExperimentConfig& cfg, const InputModel& model,
                          const BlackBox& box, const PreparedSets& prepared) {
  return run_sequential(EstimateMode::Probability, cfg, model, box, prepared);
}

RunResult run_quantile(const ExperimentConfig& cfg, const InputModel& model, const BlackBox& box,
                       const PreparedSets& prepared) {
  return run_sequential(EstimateMode::Quantile, cfg, model, box, prepared);
}

}  // namespace seqtail
