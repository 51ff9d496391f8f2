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
#include <optional>
#include <vector>

#include "seqtail/blackbox.hpp"
#include "seqtail/criteria.hpp"
#include "seqtail/designs.hpp"
#include "seqtail/diagnostics.hpp"
#include "seqtail/estimation.hpp"
#include "seqtail/input_models.hpp"
#include "seqtail/posterior.hpp"
#include "seqtail/predictor.hpp"
#include "seqtail/types.hpp"

namespace seqtail {

// Sequential estimation loop: refit the surrogate, predict the MC set,
// estimate the tail probability or quantile, pick the next evaluation by
// the acquisition criterion, run the simulator, augment, repeat.

enum class DesignKind { Random, UniformLhd };
enum class CandidatePolicy { Fresh, McSet };
enum class EstimateMode { Probability, Quantile };

struct SeedPack {
  std::uint64_t design = 0;
  std::uint64_t mc = 0;
  std::uint64_t candidate = 0;
  std::uint64_t chain = 0;

  /// Expands a root seed into the named streams.
  static SeedPack from_root(std::uint64_t root);
};

struct ExperimentConfig {
  Index n0 = 20;
  int n_plus = 20;
  TailSpec tail;
  AcquisitionConfig acquisition;
  DesignKind design = DesignKind::UniformLhd;
  Index mc_n = 100000;
  CandidatePolicy candidate_policy = CandidatePolicy::Fresh;
  Index candidate_n = 10000;
  bool stratified = false;
  Index per_stratum = 50;
  McmcConfig mcmc;
  CorrelationPrior prior;
  SeedPack seeds;
  bool collect_diagnostics = false;
  bool determinism_check = false;
  double duplicate_tol = 1e-12;

  void validate(EstimateMode mode) const;
};

struct IterationRecord {
  int iteration = 0;        ///< 1-based
  Index n = 0;              ///< training size when the estimate was computed
  double estimate = 0.0;
  bool has_selection = false;
  Vector x;                 ///< selected point (raw units)
  double y = 0.0;           ///< simulator output at the selected point
  double criterion_value = 0.0;
  double max_jitter = 0.0;
  double mcmc_acceptance = 0.0;
  Index n_candidates_excluded = 0;
};

struct Trace {
  std::vector<IterationRecord> iterations;
  double final_estimate = 0.0;
};

/// Pre-generated inputs for studies that share designs or MC sets across
/// runs; anything left empty is generated from the config seeds.
struct PreparedSets {
  std::optional<Matrix> initial_design;
  std::optional<Matrix> mc_points;
  std::optional<StratifiedSet> stratified_set;
  std::optional<Matrix> candidate_points;
};

struct RunResult {
  double estimate = 0.0;
  Trace trace;
  DiagnosticTrace diagnostics;  ///< empty unless cfg.collect_diagnostics
};

/// A black-box failure mid-run; carries the iterations completed so far.
class RunAbortedError : public Error {
 public:
  RunAbortedError(const std::string& msg, Trace partial)
      : Error(msg), trace(std::move(partial)) {}
  Trace trace;
};

RunResult run_probability(const ExperimentConfig& cfg, const InputModel& model,
                          const BlackBox& box, const PreparedSets& prepared = {});
RunResult run_quantile(const ExperimentConfig& cfg, const InputModel& model, const BlackBox& box,
                       const PreparedSets& prepared = {});

}  // namespace seqtail
