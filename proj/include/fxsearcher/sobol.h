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

#ifndef FXSEARCHER_SOBOL_H_
#define FXSEARCHER_SOBOL_H_

#include <memory>
#include <span>
#include <vector>

namespace fxsearcher {

// Low-discrepancy points in [0, 1)^dim (Joe-Kuo direction numbers), starting
// after the all-zero point. An optional shift is added modulo 1 to every
// point (Cranley-Patterson rotation) so different draws cover the cube with
// different, still well-spread, point sets.
class SobolSequence {
 public:
  explicit SobolSequence(int dim, std::vector<double> shift = {});
  ~SobolSequence();
  SobolSequence(SobolSequence&&) noexcept;
  SobolSequence& operator=(SobolSequence&&) noexcept;

  int dim() const { return dim_; }
  std::vector<double> Next();

 private:
  struct Engine;
  int dim_;
  std::vector<double> shift_;
  std::unique_ptr<Engine> engine_;
};

}  // namespace fxsearcher

#endif  // FXSEARCHER_SOBOL_H_
