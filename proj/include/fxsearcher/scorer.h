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

#ifndef FXSEARCHER_SCORER_H_
#define FXSEARCHER_SCORER_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "fxsearcher/audio_buffer.h"
#include "fxsearcher/embedding.h"

namespace fxsearcher {

// Describes the artifacts the search should steer away from.
inline constexpr std::string_view kDefaultGuidePrompt =
    "A harsh, distorted, muddy, unclear, oversaturated, unpleasant sound.";

struct PromptPair {
  std::string target_prompt;
  std::string guide_prompt = std::string(kDefaultGuidePrompt);
  bool guide_enabled = true;
};

struct ScoreBreakdown {
  double s_target = 0.0;
  double s_guide = 0.0;
  // Always s_target - s_guide.
  double s_final = 0.0;

  friend bool operator==(const ScoreBreakdown&, const ScoreBreakdown&) = default;
};

// Builds a breakdown with s_final = s_target - s_guide.
ScoreBreakdown MakeScore(double s_target, double s_guide);

// Validating, caching front end to an EmbeddingBackend. Text embeddings are
// cached by exact prompt string for the lifetime of the client; audio
// embeddings are never cached. Thread-safe.
class EmbeddingClient {
 public:
  // Queries the backend's info once.
  explicit EmbeddingClient(std::shared_ptr<EmbeddingBackend> backend);

  const BackendInfo& info() const { return info_; }

  // Throws PreconditionError on an empty prompt and ProtocolError if the
  // backend returns a vector of the wrong dimension.
  Embedding EmbedText(const std::string& prompt);

  // Requires mono audio at info().sample_rate; throws PreconditionError naming
  // both rates otherwise.
  Embedding EmbedAudio(const AudioBuffer& audio);

  // Number of text requests actually forwarded to the backend.
  int backend_text_requests() const;

 private:
  Embedding Validate(const std::vector<float>& raw, const char* what) const;

  std::shared_ptr<EmbeddingBackend> backend_;
  BackendInfo info_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, Embedding> text_cache_;
  int text_requests_ = 0;
};

// Prompt embeddings are loop invariant; compute them once per run.
struct PromptEmbeddings {
  Embedding target;
  std::optional<Embedding> guide;  // empty when the guide is disabled
};

PromptEmbeddings EmbedPrompts(const PromptPair& prompts, EmbeddingClient& client);

// Scores an already embedded audio clip.
ScoreBreakdown ScoreEmbedding(const Embedding& audio,
                              const PromptEmbeddings& prompts);

// Downmixes and resamples to what the backend expects.
AudioBuffer PrepareForBackend(const AudioBuffer& audio, int backend_rate);

// Scores candidate audio against the prompts. The audio is prepared for the
// backend first. Keeps a record of recent audio hashes and counts a flaky
// score when identical audio produces scores more than 1e-6 apart.
class Scorer {
 public:
  Scorer(std::shared_ptr<EmbeddingClient> client, PromptPair prompts);

  ScoreBreakdown Score(const AudioBuffer& audio);

  const PromptPair& prompts() const { return prompts_; }
  const PromptEmbeddings& prompt_embeddings() const { return embeddings_; }
  EmbeddingClient& client() { return *client_; }
  int flaky_scores() const;

 private:
  std::shared_ptr<EmbeddingClient> client_;
  PromptPair prompts_;
  PromptEmbeddings embeddings_;
  mutable std::mutex mutex_;
  std::unordered_map<std::uint64_t, ScoreBreakdown> seen_;
  int flaky_ = 0;
};

}  // namespace fxsearcher

#endif  // FXSEARCHER_SCORER_H_
