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

#include "fxsearcher/acquisition.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fxsearcher/errors.h"

namespace fxsearcher {

double StandardNormalPdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double StandardNormalCdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double ExpectedImprovement(double mean, double stddev, double best) {
  if (!(stddev >= 0.0)) {
    throw PreconditionError("expected improvement needs stddev >= 0");
  }
  const double gap = mean - best;
  if (stddev == 0.0) return std::max(gap, 0.0);
  const double z = gap / stddev;
  return std::max(0.0, gap * StandardNormalCdf(z) + stddev * StandardNormalPdf(z));
}

}  // namespace fxsearcher
