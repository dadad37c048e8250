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

#ifndef FXSEARCHER_GAUSSIAN_PROCESS_H_
#define FXSEARCHER_GAUSSIAN_PROCESS_H_

#include <optional>
#include <random>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace fxsearcher {

struct GpHyperparameters {
  Eigen::VectorXd lengthscales;  // one per input dimension (ARD)
  double signal_variance = 1.0;
  double noise_variance = 1e-6;
};

// Box constraints and search effort for marginal-likelihood fitting. All
// searches happen in log space.
struct GpFitOptions {
  int restarts = 16;
  int sweeps = 3;
  int golden_steps = 10;  // objective evaluations per coordinate line search
  double min_lengthscale = 1e-3;
  double max_lengthscale = 10.0;
  double min_signal_variance = 0.05;
  double max_signal_variance = 20.0;
  double min_noise_variance = 1e-6;  // jitter floor
  double max_noise_variance = 1.0;
};

// Largest jitter added to the diagonal before a factorization is declared
// impossible. Jitter starts at 1e-6 and doubles.
inline constexpr double kMaxGpJitter = 1e-2;

// Matern-5/2 kernel with ARD lengthscales.
double Matern52(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b,
                const GpHyperparameters& hp);

struct GpPrediction {
  double mean = 0.0;
  double stddev = 0.0;  // latent function, excludes observation noise
};

// Gaussian-process regression model with standardized targets. Immutable once
// built; safe for concurrent Predict calls.
class GpModel {
 public:
  // `inputs` holds one observation per row. Throws NumericalError if the Gram
  // matrix cannot be factorized even after jitter escalation.
  static GpModel Build(Eigen::MatrixXd inputs, Eigen::VectorXd targets,
                       GpHyperparameters hp);

  GpPrediction Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  // Log marginal likelihood of the standardized targets.
  double LogMarginalLikelihood() const { return log_marginal_likelihood_; }

  int dim() const { return static_cast<int>(inputs_.cols()); }
  int size() const { return static_cast<int>(inputs_.rows()); }
  const GpHyperparameters& hyperparameters() const { return hp_; }
  // Noise actually on the diagonal, including any jitter that was needed.
  double effective_noise() const { return effective_noise_; }
  double target_mean() const { return target_mean_; }
  double target_scale() const { return target_scale_; }
  const Eigen::MatrixXd& inputs() const { return inputs_; }
  const Eigen::VectorXd& targets() const { return targets_; }

 private:
  GpModel() = default;

  Eigen::MatrixXd inputs_;
  Eigen::VectorXd targets_;
  GpHyperparameters hp_;
  double target_mean_ = 0.0;
  double target_scale_ = 1.0;
  double effective_noise_ = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd alpha_;
  double log_marginal_likelihood_ = 0.0;
};

// Merges inputs that agree within 1e-9 in every coordinate, averaging their
// targets. Order of first appearance is preserved.
void MergeDuplicateInputs(std::vector<Eigen::VectorXd>& inputs,
                          std::vector<double>& targets);

// Fits hyperparameters by maximizing the log marginal likelihood: one start
// at `warm_start` (or a default) plus restarts - 1 random starts, each refined
// by coordinate-wise golden-section sweeps. Duplicates are merged first.
// Throws PreconditionError for fewer than 2 distinct observations.
GpModel FitGp(std::vector<Eigen::VectorXd> inputs, std::vector<double> targets,
              std::mt19937_64& rng, const GpFitOptions& options = {},
              const std::optional<GpHyperparameters>& warm_start = std::nullopt);

}  // namespace fxsearcher

#endif  // FXSEARCHER_GAUSSIAN_PROCESS_H_
