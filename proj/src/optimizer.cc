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

#include "fxsearcher/optimizer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "fxsearcher/acquisition.h"
#include "fxsearcher/errors.h"
#include "fxsearcher/sobol.h"

namespace fxsearcher {
namespace {

std::vector<double> RandomShift(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> shift(dim);
  for (double& s : shift) s = u(rng);
  return shift;
}

double Acquisition(const GpModel& model, const Eigen::VectorXd& x, double best) {
  const GpPrediction p = model.Predict(x);
  return ExpectedImprovement(p.mean, p.stddev, best);
}

double DefaultNowMs() {
  using Clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(Clock::now().time_since_epoch())
      .count();
}

}  // namespace

void SearchConfig::Validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (dimension < 1) fail("dimension must be at least 1");
  if (max_iterations < 1) fail("max_iterations must be at least 1");
  if (init_samples < 2) fail("init_samples must be at least 2");
  if (init_samples >= max_iterations) {
    fail("init_samples (" + std::to_string(init_samples) +
         ") must be smaller than max_iterations (" +
         std::to_string(max_iterations) + ")");
  }
  if (patience < 1) fail("patience must be at least 1");
  if (acq_candidates < 1) fail("acq_candidates must be at least 1");
  if (acq_refine_steps < 0) fail("acq_refine_steps must be non-negative");
  if (refit_interval < 1) fail("refit_interval must be at least 1");
}

std::string_view StopReasonName(StopReason reason) {
  return reason == StopReason::kPatience ? "patience" : "budget";
}

std::vector<double> ProposeNext(const GpModel& model, double best_observed,
                                std::mt19937_64& rng, const SearchConfig& config) {
  const int dim = model.dim();
  SobolSequence sobol(dim, RandomShift(dim, rng));
  Eigen::VectorXd best_x(dim);
  double best_ei = -1.0;
  for (int i = 0; i < config.acq_candidates; ++i) {
    const std::vector<double> p = sobol.Next();
    const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.data(), dim);
    const double ei = Acquisition(model, x, best_observed);
    if (ei > best_ei) {
      best_ei = ei;
      best_x = x;
    }
  }

  std::uniform_int_distribution<int> pick(0, dim - 1);
  std::normal_distribution<double> step(0.0, config.refine_step_stddev);
  for (int s = 0; s < config.acq_refine_steps; ++s) {
    Eigen::VectorXd trial = best_x;
    const int k = pick(rng);
    trial[k] = std::clamp(trial[k] + step(rng), 0.0, 1.0);
    const double ei = Acquisition(model, trial, best_observed);
    if (ei > best_ei) {
      best_ei = ei;
      best_x = std::move(trial);
    }
  }
  return {best_x.data(), best_x.data() + dim};
}

SearchResult Optimize(const Objective& objective, const SearchConfig& config,
                      const OptimizeHooks& hooks) {
  config.Validate();
  const auto now = hooks.now_ms ? hooks.now_ms : DefaultNowMs;
  std::mt19937_64 rng(config.seed);
  const int dim = config.dimension;

  SearchResult result;
  result.best_score.s_final = -std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  int consecutive_failures = 0;
  std::optional<GpHyperparameters> hyper;
  int last_fit_size = 0;

  SobolSequence initial(dim, RandomShift(dim, rng));

  for (int iteration = 0; iteration < config.max_iterations; ++iteration) {
    std::vector<double> x;
    if (static_cast<int>(result.trace.size()) < config.init_samples ||
        result.trace.size() < 2) {
      x = initial.Next();
    } else {
      std::vector<Eigen::VectorXd> xs;
      std::vector<double> ys;
      for (const auto& obs : result.trace) {
        xs.push_back(Eigen::Map<const Eigen::VectorXd>(obs.x.data(), dim));
        ys.push_back(obs.score.s_final);
      }
      const int n = static_cast<int>(xs.size());
      const bool refit = !hyper || n <= config.refit_every_iteration_until ||
                         n - last_fit_size >= config.refit_interval;
      std::optional<GpModel> model;
      if (refit) {
        model = FitGp(std::move(xs), std::move(ys), rng, config.gp, hyper);
        hyper = model->hyperparameters();
        last_fit_size = n;
      } else {
        MergeDuplicateInputs(xs, ys);
        Eigen::MatrixXd xm(static_cast<Eigen::Index>(xs.size()), dim);
        for (std::size_t i = 0; i < xs.size(); ++i) {
          xm.row(static_cast<Eigen::Index>(i)) = xs[i].transpose();
        }
        model = GpModel::Build(
            std::move(xm), Eigen::Map<const Eigen::VectorXd>(ys.data(), ys.size()),
            *hyper);
      }
      x = ProposeNext(*model, result.best_score.s_final, rng, config);
    }

    ++result.evaluations;
    const double start = now();
    ScoreBreakdown score;
    try {
      score = objective(x);
    } catch (const std::exception& e) {
      result.failures.push_back({x, iteration, e.what()});
      ++since_improvement;
      if (++consecutive_failures > config.max_consecutive_failures) {
        std::ostringstream os;
        os << "optimization aborted after " << consecutive_failures
           << " consecutive failed evaluations; last error: " << e.what();
        throw OptimizationAborted(os.str());
      }
      if (since_improvement >= config.patience) {
        result.stop_reason = StopReason::kPatience;
        break;
      }
      continue;
    }
    consecutive_failures = 0;
    Observation obs{x, score, iteration, now() - start};
    const bool first = result.best_iteration < 0;
    if (first ||
        score.s_final > result.best_score.s_final + config.improvement_tolerance) {
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (first || score.s_final > result.best_score.s_final) {
      result.best_score = score;
      result.best_x = x;
      result.best_iteration = iteration;
    }
    result.trace.push_back(std::move(obs));
    if (hooks.on_observation) hooks.on_observation(result.trace.back(), result.best_score);
    if (since_improvement >= config.patience) {
      result.stop_reason = StopReason::kPatience;
      break;
    }
  }
  if (result.trace.empty()) {
    throw OptimizationAborted("no evaluation succeeded");
  }
  return result;
}

}  // namespace fxsearcher
