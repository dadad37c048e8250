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

#include "fxsearcher/sobol.h"

#include <cmath>

#include <boost/random/sobol.hpp>

#include "fxsearcher/errors.h"

namespace fxsearcher {

struct SobolSequence::Engine {
  explicit Engine(int dim) : sobol(static_cast<std::size_t>(dim)) {}
  boost::random::sobol sobol;
};

SobolSequence::SobolSequence(int dim, std::vector<double> shift)
    : dim_(dim), shift_(std::move(shift)) {
  if (dim_ <= 0) throw PreconditionError("Sobol dimension must be positive");
  if (shift_.empty()) shift_.assign(dim_, 0.0);
  if (static_cast<int>(shift_.size()) != dim_) {
    throw PreconditionError("Sobol shift has the wrong dimension");
  }
  engine_ = std::make_unique<Engine>(dim_);
}

SobolSequence::~SobolSequence() = default;
SobolSequence::SobolSequence(SobolSequence&&) noexcept = default;
SobolSequence& SobolSequence::operator=(SobolSequence&&) noexcept = default;

std::vector<double> SobolSequence::Next() {
  std::vector<double> point(dim_);
  for (int d = 0; d < dim_; ++d) {
    const double u = std::ldexp(static_cast<double>(engine_->sobol() >> 11), -53);
    double v = u + shift_[d];
    if (v >= 1.0) v -= 1.0;
    point[d] = v;
  }
  return point;
}

}  // namespace fxsearcher
