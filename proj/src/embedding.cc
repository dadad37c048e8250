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

#include "fxsearcher/embedding.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "fxsearcher/errors.h"

namespace fxsearcher {

Embedding::Embedding(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw PreconditionError("embedding is empty");
  double sq = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw PreconditionError("embedding contains a non-finite value");
    }
    sq += v * v;
  }
  norm_ = std::sqrt(sq);
  if (!(norm_ > 0.0)) throw PreconditionError("embedding is the zero vector");
}

Embedding Embedding::FromFloats(std::span<const float> values) {
  return Embedding(std::vector<double>(values.begin(), values.end()));
}

double CosineSimilarity(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("embedding dimensions differ: " +
                                 std::to_string(a.dim()) + " vs " +
                                 std::to_string(b.dim()));
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values()[i] * b.values()[i];
  }
  return std::clamp(dot / (a.norm() * b.norm()), -1.0, 1.0);
}

}  // namespace fxsearcher
