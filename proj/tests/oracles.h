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

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the library.

#ifndef FXSEARCHER_TESTS_ORACLES_H_
#define FXSEARCHER_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace fxsearcher::testing {

// Dense textbook GP with a hand-written Gaussian elimination solve. Shares no
// code with the library.
struct DenseOracle {
  std::vector<std::vector<double>> x;
  std::vector<double> y;  // standardized
  double mean = 0.0, scale = 1.0;
  std::vector<double> lengthscales;
  double sf2 = 1.0, sn2 = 0.0;

  double Kernel(const std::vector<double>& a, const std::vector<double>& b) const {
    double r2 = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double d = (a[k] - b[k]) / lengthscales[k];
      r2 += d * d;
    }
    const double r = std::sqrt(r2);
    return sf2 * (1.0 + std::sqrt(5.0) * r + 5.0 / 3.0 * r2) * std::exp(-std::sqrt(5.0) * r);
  }

  std::vector<std::vector<double>> Gram() const {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> k(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) k[i][j] = Kernel(x[i], x[j]) + (i == j ? sn2 : 0.0);
    }
    return k;
  }

  // Solves K z = b by partial-pivot elimination; also returns log|det K|.
  static std::vector<double> Solve(std::vector<std::vector<double>> a, std::vector<double> b,
                                   double* log_det = nullptr) {
    const std::size_t n = b.size();
    double ld = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
      }
      std::swap(a[c], a[p]);
      std::swap(b[c], b[p]);
      ld += std::log(std::abs(a[c][c]));
      for (std::size_t r = c + 1; r < n; ++r) {
        const double f = a[r][c] / a[c][c];
        for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        b[r] -= f * b[c];
      }
    }
    std::vector<double> z(n);
    for (std::size_t i = n; i-- > 0;) {
      double s = b[i];
      for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * z[k];
      z[i] = s / a[i][i];
    }
    if (log_det) *log_det = ld;
    return z;
  }

  std::pair<double, double> Posterior(const std::vector<double>& q) const {
    std::vector<double> ks(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) ks[i] = Kernel(x[i], q);
    const auto alpha = Solve(Gram(), y);
    const auto v = Solve(Gram(), ks);
    double m = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      m += ks[i] * alpha[i];
      quad += ks[i] * v[i];
    }
    return {mean + scale * m, scale * scale * (sf2 - quad)};
  }

  double LogMarginalLikelihood() const {
    double log_det = 0.0;
    const auto alpha = Solve(Gram(), y, &log_det);
    double quad = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) quad += y[i] * alpha[i];
    return -0.5 * quad - 0.5 * log_det - 0.5 * y.size() * std::log(2.0 * std::numbers::pi);
  }
};

// E[max(S - best, 0)] for S ~ N(mu, sigma^2) by composite Simpson's rule on
// [mu - 12 sigma, mu + 12 sigma] with `points` nodes.
inline double QuadratureEi(double mu, double sigma, double best, int points) {
  const double lo = std::max(best, mu - 12.0 * sigma);
  const double hi = mu + 12.0 * sigma;
  if (hi <= lo) return 0.0;
  const int intervals = points - (points % 2 == 0 ? 2 : 1);
  const double h = (hi - lo) / intervals;
  double sum = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double s = lo + i * h;
    const double z = (s - mu) / sigma;
    const double f = (s - best) * std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
    const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  return sum * h / 3.0;
}

}  // namespace fxsearcher::testing

#endif  // FXSEARCHER_TESTS_ORACLES_H_
