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

#ifndef FXSEARCHER_EMBEDDING_H_
#define FXSEARCHER_EMBEDDING_H_

#include <span>
#include <string>
#include <vector>

namespace fxsearcher {

// Non-zero, finite embedding vector.
class Embedding {
 public:
  // Throws PreconditionError on empty, zero or non-finite input.
  explicit Embedding(std::vector<double> values);
  static Embedding FromFloats(std::span<const float> values);

  std::size_t dim() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double norm() const { return norm_; }

 private:
  std::vector<double> values_;
  double norm_;
};

// a.b / (|a| |b|), clamped to [-1, 1]. Throws DimensionMismatchError.
double CosineSimilarity(const Embedding& a, const Embedding& b);

struct BackendInfo {
  int embedding_dim = 0;
  int sample_rate = 0;
  std::string model_id;
};

// Source of text and audio embeddings in a shared space. Implementations are
// expected to be deterministic and safe to call from several threads.
class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  virtual BackendInfo Info() = 0;
  virtual std::vector<std::vector<float>> EmbedTexts(
      const std::vector<std::string>& texts) = 0;
  // `mono` is a single channel at `sample_rate`.
  virtual std::vector<float> EmbedAudio(std::span<const float> mono,
                                        int sample_rate) = 0;
};

}  // namespace fxsearcher

#endif  // FXSEARCHER_EMBEDDING_H_
