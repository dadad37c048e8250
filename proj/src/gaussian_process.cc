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

#include "fxsearcher/gaussian_process.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fxsearcher/errors.h"

namespace fxsearcher {
namespace {

constexpr double kSqrt5 = 2.2360679774997896964;
constexpr double kDuplicateTolerance = 1e-9;
constexpr double kInitialJitter = 1e-6;

double Matern52FromSquaredDistance(double r2, double signal_variance) {
  const double r = std::sqrt(std::max(r2, 0.0));
  const double s = kSqrt5 * r;
  return signal_variance * (1.0 + s + 5.0 * r2 / 3.0) * std::exp(-s);
}

struct Standardized {
  Eigen::VectorXd values;
  double mean;
  double scale;
};

Standardized Standardize(const Eigen::VectorXd& y) {
  const double mean = y.mean();
  const double var = (y.array() - mean).square().mean();
  double scale = std::sqrt(var);
  if (!(scale > 1e-12)) scale = 1.0;
  return {(y.array() - mean) / scale, mean, scale};
}

// Fills the lower triangle of the kernel matrix plus diagonal noise.
Eigen::MatrixXd GramFromSquaredDistances(const Eigen::MatrixXd& r2,
                                         double signal_variance, double noise) {
  const Eigen::Index n = r2.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    k(j, j) = signal_variance + noise;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      k(i, j) = Matern52FromSquaredDistance(r2(i, j), signal_variance);
    }
  }
  return k;
}

double LmlFromFactor(const Eigen::LLT<Eigen::MatrixXd>& llt,
                     const Eigen::VectorXd& y, Eigen::VectorXd* alpha_out) {
  Eigen::VectorXd alpha = llt.solve(y);
  const auto& l = llt.matrixLLT();
  double log_det_half = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) log_det_half += std::log(l(i, i));
  const double lml = -0.5 * y.dot(alpha) - log_det_half -
                     0.5 * static_cast<double>(y.size()) *
                         std::log(2.0 * std::numbers::pi);
  if (alpha_out) *alpha_out = std::move(alpha);
  return lml;
}

// Evaluates the log marginal likelihood over log-space hyperparameters
// theta = (log l_1 .. log l_d, log signal variance, log noise variance).
class LikelihoodSurface {
 public:
  LikelihoodSurface(const Eigen::MatrixXd& x, Eigen::VectorXd y)
      : n_(x.rows()), d_(x.cols()), y_(std::move(y)) {
    sq_diff_.reserve(d_);
    for (Eigen::Index k = 0; k < d_; ++k) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
      for (Eigen::Index j = 0; j < n_; ++j) {
        for (Eigen::Index i = j + 1; i < n_; ++i) {
          const double diff = x(i, k) - x(j, k);
          m(i, j) = diff * diff;
        }
      }
      sq_diff_.push_back(std::move(m));
    }
  }

  Eigen::Index dim() const { return d_; }

  Eigen::MatrixXd SquaredDistances(const Eigen::VectorXd& theta) const {
    Eigen::MatrixXd r2 = Eigen::MatrixXd::Zero(n_, n_);
    for (Eigen::Index k = 0; k < d_; ++k) {
      r2 += sq_diff_[k] * std::exp(-2.0 * theta[k]);
    }
    return r2;
  }

  // Contribution of one lengthscale to the scaled squared distances.
  Eigen::MatrixXd Term(Eigen::Index k, double log_lengthscale) const {
    return sq_diff_[k] * std::exp(-2.0 * log_lengthscale);
  }

  double Evaluate(const Eigen::MatrixXd& r2, double log_signal,
                  double log_noise) const {
    const Eigen::MatrixXd k =
        GramFromSquaredDistances(r2, std::exp(log_signal), std::exp(log_noise));
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) {
      return -std::numeric_limits<double>::infinity();
    }
    const double lml = LmlFromFactor(llt, y_, nullptr);
    return std::isfinite(lml) ? lml : -std::numeric_limits<double>::infinity();
  }

 private:
  Eigen::Index n_, d_;
  Eigen::VectorXd y_;
  std::vector<Eigen::MatrixXd> sq_diff_;
};

// Golden-section search for the maximum of f on [lo, hi] using `steps`
// evaluations. Returns the best point seen and its value.
template <typename Fn>
std::pair<double, double> GoldenSectionMax(Fn f, double lo, double hi, int steps) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  double best_x = fc >= fd ? c : d;
  double best_f = std::max(fc, fd);
  for (int i = 2; i < steps; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc > best_f) best_f = fc, best_x = c;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd > best_f) best_f = fd, best_x = d;
    }
  }
  return {best_x, best_f};
}

struct LogBounds {
  Eigen::VectorXd lo, hi;
};

LogBounds MakeBounds(Eigen::Index d, const GpFitOptions& o) {
  LogBounds b{Eigen::VectorXd(d + 2), Eigen::VectorXd(d + 2)};
  b.lo.head(d).setConstant(std::log(o.min_lengthscale));
  b.hi.head(d).setConstant(std::log(o.max_lengthscale));
  b.lo[d] = std::log(o.min_signal_variance);
  b.hi[d] = std::log(o.max_signal_variance);
  b.lo[d + 1] = std::log(o.min_noise_variance);
  b.hi[d + 1] = std::log(o.max_noise_variance);
  return b;
}

Eigen::VectorXd ToTheta(const GpHyperparameters& hp, const LogBounds& bounds) {
  const Eigen::Index d = hp.lengthscales.size();
  Eigen::VectorXd theta(d + 2);
  theta.head(d) = hp.lengthscales.array().log();
  theta[d] = std::log(hp.signal_variance);
  theta[d + 1] = std::log(hp.noise_variance);
  return theta.cwiseMax(bounds.lo).cwiseMin(bounds.hi);
}

GpHyperparameters FromTheta(const Eigen::VectorXd& theta) {
  const Eigen::Index d = theta.size() - 2;
  return {theta.head(d).array().exp(), std::exp(theta[d]), std::exp(theta[d + 1])};
}

// Coordinate-wise golden-section ascent from `theta`; returns the final value.
double RefineCoordinatewise(const LikelihoodSurface& surface, Eigen::VectorXd& theta,
                            const LogBounds& bounds, const GpFitOptions& o) {
  const Eigen::Index d = surface.dim();
  Eigen::MatrixXd r2 = surface.SquaredDistances(theta);
  double current = surface.Evaluate(r2, theta[d], theta[d + 1]);
  for (int sweep = 0; sweep < o.sweeps; ++sweep) {
    for (Eigen::Index k = 0; k < d + 2; ++k) {
      std::pair<double, double> best;
      if (k < d) {
        const Eigen::MatrixXd base = r2 - surface.Term(k, theta[k]);
        best = GoldenSectionMax(
            [&](double t) {
              return surface.Evaluate(base + surface.Term(k, t), theta[d],
                                      theta[d + 1]);
            },
            bounds.lo[k], bounds.hi[k], o.golden_steps);
        if (best.second > current) {
          theta[k] = best.first;
          r2 = base + surface.Term(k, theta[k]);
          current = best.second;
        }
      } else {
        best = GoldenSectionMax(
            [&](double t) {
              return k == d ? surface.Evaluate(r2, t, theta[d + 1])
                            : surface.Evaluate(r2, theta[d], t);
            },
            bounds.lo[k], bounds.hi[k], o.golden_steps);
        if (best.second > current) {
          theta[k] = best.first;
          current = best.second;
        }
      }
    }
  }
  return current;
}

}  // namespace

double Matern52(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b,
                const GpHyperparameters& hp) {
  const double r2 = ((a - b).array() / hp.lengthscales.array()).square().sum();
  return Matern52FromSquaredDistance(r2, hp.signal_variance);
}

GpModel GpModel::Build(Eigen::MatrixXd inputs, Eigen::VectorXd targets,
                       GpHyperparameters hp) {
  if (inputs.rows() != targets.size() || inputs.rows() < 1) {
    throw PreconditionError("GP needs matching, non-empty inputs and targets");
  }
  if (hp.lengthscales.size() != inputs.cols()) {
    throw PreconditionError("GP lengthscale count does not match input dimension");
  }
  GpModel model;
  const Standardized s = Standardize(targets);
  model.inputs_ = std::move(inputs);
  model.targets_ = std::move(targets);
  model.hp_ = std::move(hp);
  model.target_mean_ = s.mean;
  model.target_scale_ = s.scale;

  const Eigen::Index n = model.inputs_.rows();
  Eigen::MatrixXd r2(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      r2(i, j) = ((model.inputs_.row(i) - model.inputs_.row(j)).array() /
                  model.hp_.lengthscales.transpose().array())
                     .square()
                     .sum();
    }
  }
  double jitter = 0.0;
  while (true) {
    const double noise = model.hp_.noise_variance + jitter;
    model.llt_.compute(
        GramFromSquaredDistances(r2, model.hp_.signal_variance, noise));
    if (model.llt_.info() == Eigen::Success) {
      model.effective_noise_ = noise;
      break;
    }
    jitter = jitter == 0.0 ? kInitialJitter : 2.0 * jitter;
    if (jitter > kMaxGpJitter) {
      throw NumericalError("GP Gram matrix is ill-conditioned even with jitter " +
                           std::to_string(kMaxGpJitter));
    }
  }
  model.log_marginal_likelihood_ = LmlFromFactor(model.llt_, s.values, &model.alpha_);
  return model;
}

GpPrediction GpModel::Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::Index n = inputs_.rows();
  Eigen::VectorXd k_star(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k_star[i] = Matern52(inputs_.row(i).transpose(), x, hp_);
  }
  const double mean_std = k_star.dot(alpha_);
  const Eigen::VectorXd v = llt_.matrixL().solve(k_star);
  const double var_std = std::max(0.0, hp_.signal_variance - v.squaredNorm());
  return {target_mean_ + target_scale_ * mean_std,
          target_scale_ * std::sqrt(var_std)};
}

void MergeDuplicateInputs(std::vector<Eigen::VectorXd>& inputs,
                          std::vector<double>& targets) {
  std::vector<Eigen::VectorXd> merged_x;
  std::vector<double> sums;
  std::vector<int> counts;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < merged_x.size(); ++j) {
      if ((merged_x[j] - inputs[i]).cwiseAbs().maxCoeff() <= kDuplicateTolerance) {
        sums[j] += targets[i];
        ++counts[j];
        found = true;
        break;
      }
    }
    if (!found) {
      merged_x.push_back(inputs[i]);
      sums.push_back(targets[i]);
      counts.push_back(1);
    }
  }
  targets.resize(merged_x.size());
  for (std::size_t j = 0; j < merged_x.size(); ++j) targets[j] = sums[j] / counts[j];
  inputs = std::move(merged_x);
}

GpModel FitGp(std::vector<Eigen::VectorXd> inputs, std::vector<double> targets,
              std::mt19937_64& rng, const GpFitOptions& options,
              const std::optional<GpHyperparameters>& warm_start) {
  if (inputs.size() != targets.size()) {
    throw PreconditionError("GP inputs and targets differ in length");
  }
  MergeDuplicateInputs(inputs, targets);
  if (inputs.size() < 2) {
    throw PreconditionError("GP fitting needs at least 2 distinct observations, got " +
                            std::to_string(inputs.size()));
  }
  const auto n = static_cast<Eigen::Index>(inputs.size());
  const Eigen::Index d = inputs.front().size();
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x.row(i) = inputs[i].transpose();
    y[i] = targets[i];
  }

  const LikelihoodSurface surface(x, Standardize(y).values);
  const LogBounds bounds = MakeBounds(d, options);

  GpHyperparameters first;
  if (warm_start && warm_start->lengthscales.size() == d) {
    first = *warm_start;
  } else {
    first.lengthscales = Eigen::VectorXd::Constant(
        d, std::min(options.max_lengthscale, 0.5 * std::sqrt(static_cast<double>(d))));
    first.signal_variance = 1.0;
    first.noise_variance = 1e-4;
  }

  // Random starts are drawn from a central sub-box where the likelihood is
  // not flat; the refinement still searches the full bounds.
  std::uniform_real_distribution<double> log_ls(std::log(0.05), std::log(5.0));
  std::uniform_real_distribution<double> log_sf(std::log(0.5), std::log(2.0));
  std::uniform_real_distribution<double> log_sn(std::log(1e-6), std::log(1e-2));

  Eigen::VectorXd best_theta;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int start = 0; start < std::max(1, options.restarts); ++start) {
    Eigen::VectorXd theta(d + 2);
    if (start == 0) {
      theta = ToTheta(first, bounds);
    } else {
      for (Eigen::Index k = 0; k < d; ++k) theta[k] = log_ls(rng);
      theta[d] = log_sf(rng);
      theta[d + 1] = log_sn(rng);
      theta = theta.cwiseMax(bounds.lo).cwiseMin(bounds.hi);
    }
    const double value = RefineCoordinatewise(surface, theta, bounds, options);
    if (value > best_value || best_theta.size() == 0) {
      best_value = value;
      best_theta = theta;
    }
  }
  return GpModel::Build(std::move(x), std::move(y), FromTheta(best_theta));
}

}  // namespace fxsearcher
