// Copyright 2026 The FxSearcher Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FXSEARCHER_OPTIMIZER_H_
#define FXSEARCHER_OPTIMIZER_H_

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fxsearcher/fx_params.h"
#include "fxsearcher/gaussian_process.h"
#include "fxsearcher/scorer.h"

namespace fxsearcher {

struct SearchConfig {
  int dimension = kNumParams;
  int max_iterations = 100;  // total objective evaluations, initial design included
  int patience = 30;
  int init_samples = 20;
  int acq_candidates = 2048;
  int acq_refine_steps = 50;
  double refine_step_stddev = 0.05;
  std::uint64_t seed = 0;
  // An evaluation counts as an improvement only if it beats the incumbent by
  // more than this.
  double improvement_tolerance = 1e-6;
  // Hyperparameters are refit after every evaluation until the data set holds
  // this many observations, then every `refit_interval` evaluations.
  int refit_every_iteration_until = 50;
  int refit_interval = 5;
  int max_consecutive_failures = 10;
  GpFitOptions gp;

  // Throws ConfigError when the configuration is inconsistent.
  void Validate() const;
};

struct Observation {
  std::vector<double> x;
  ScoreBreakdown score;
  int iteration = 0;  // 0-based evaluation index
  double wall_time_ms = 0.0;
};

struct FailedEvaluation {
  std::vector<double> x;
  int iteration = 0;
  std::string message;
};

enum class StopReason { kBudget, kPatience };
std::string_view StopReasonName(StopReason reason);

struct SearchResult {
  std::vector<double> best_x;
  ScoreBreakdown best_score;
  int best_iteration = -1;
  std::vector<Observation> trace;
  std::vector<FailedEvaluation> failures;
  StopReason stop_reason = StopReason::kBudget;
  int evaluations = 0;  // successful and failed
};

// Maps a point of [0, 1]^dimension to its score. May throw; failures are
// recorded and skipped.
using Objective = std::function<ScoreBreakdown(std::span<const double>)>;

// Candidate generation and refinement for the next evaluation: acq_candidates
// shifted Sobol points, the best by expected improvement over `best_observed`,
// then acq_refine_steps single-coordinate Gaussian perturbations accepted only
// when they raise the expected improvement. Deterministic given the rng state.
std::vector<double> ProposeNext(const GpModel& model, double best_observed,
                                std::mt19937_64& rng, const SearchConfig& config);

struct OptimizeHooks {
  // Milliseconds from an arbitrary origin; defaults to a steady clock.
  std::function<double()> now_ms;
  // Called after every successful evaluation.
  std::function<void(const Observation&, const ScoreBreakdown& best)> on_observation;
};

// Bayesian optimization loop: init_samples shifted Sobol points, then
// fit -> propose -> evaluate until max_iterations evaluations or `patience`
// consecutive evaluations without improvement. Throws OptimizationAborted after
// more than max_consecutive_failures failed evaluations in a row.
SearchResult Optimize(const Objective& objective, const SearchConfig& config,
                      const OptimizeHooks& hooks = {});

}  // namespace fxsearcher

#endif  // FXSEARCHER_OPTIMIZER_H_
