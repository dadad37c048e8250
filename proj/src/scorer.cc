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

#include "fxsearcher/scorer.h"

#include <bit>
#include <cmath>
#include <iostream>
#include <string>
#include <utility>

#include "fxsearcher/errors.h"
#include "fxsearcher/resample.h"

namespace fxsearcher {
namespace {

constexpr double kFlakyTolerance = 1e-6;
constexpr std::size_t kMaxRememberedClips = 4096;

std::uint64_t HashAudio(const AudioBuffer& audio) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v) {
    for (int s = 0; s < 64; s += 8) {
      h ^= (v >> s) & 0xFF;
      h *= 0x100000001b3ull;
    }
  };
  mix(static_cast<std::uint32_t>(audio.sample_rate()));
  for (const auto& ch : audio.channels()) {
    for (double x : ch) mix(std::bit_cast<std::uint64_t>(x));
  }
  return h;
}

}  // namespace

ScoreBreakdown MakeScore(double s_target, double s_guide) {
  return {s_target, s_guide, s_target - s_guide};
}

EmbeddingClient::EmbeddingClient(std::shared_ptr<EmbeddingBackend> backend)
    : backend_(std::move(backend)), info_(backend_->Info()) {
  if (info_.embedding_dim <= 0 || info_.sample_rate <= 0) {
    throw ProtocolError("backend reported an invalid embedding_dim or sample_rate");
  }
}

Embedding EmbeddingClient::Validate(const std::vector<float>& raw,
                                    const char* what) const {
  if (static_cast<int>(raw.size()) != info_.embedding_dim) {
    throw ProtocolError(std::string(what) + " embedding has dimension " +
                        std::to_string(raw.size()) + ", backend advertises " +
                        std::to_string(info_.embedding_dim));
  }
  try {
    return Embedding::FromFloats(raw);
  } catch (const PreconditionError& e) {
    throw ProtocolError(std::string(what) + " embedding rejected: " + e.what());
  }
}

Embedding EmbeddingClient::EmbedText(const std::string& prompt) {
  if (prompt.empty()) throw PreconditionError("prompt must not be empty");
  {
    std::lock_guard lock(mutex_);
    if (auto it = text_cache_.find(prompt); it != text_cache_.end()) {
      return it->second;
    }
    ++text_requests_;
  }
  auto raw = backend_->EmbedTexts({prompt});
  if (raw.size() != 1) {
    throw ProtocolError("backend returned " + std::to_string(raw.size()) +
                        " text embeddings for one prompt");
  }
  Embedding e = Validate(raw.front(), "text");
  std::lock_guard lock(mutex_);
  return text_cache_.try_emplace(prompt, std::move(e)).first->second;
}

Embedding EmbeddingClient::EmbedAudio(const AudioBuffer& audio) {
  if (audio.num_channels() != 1) {
    throw PreconditionError("audio for embedding must be mono, got " +
                            std::to_string(audio.num_channels()) + " channels");
  }
  if (audio.sample_rate() != info_.sample_rate) {
    throw PreconditionError("audio for embedding must be at " +
                            std::to_string(info_.sample_rate) + " Hz, got " +
                            std::to_string(audio.sample_rate()) + " Hz");
  }
  // The wire format is float-32 PCM.
  const auto samples = audio.channel(0);
  const std::vector<float> pcm(samples.begin(), samples.end());
  return Validate(backend_->EmbedAudio(pcm, audio.sample_rate()),
                  "audio");
}

int EmbeddingClient::backend_text_requests() const {
  std::lock_guard lock(mutex_);
  return text_requests_;
}

PromptEmbeddings EmbedPrompts(const PromptPair& prompts, EmbeddingClient& client) {
  if (prompts.target_prompt.empty()) {
    throw PreconditionError("target prompt must not be empty");
  }
  PromptEmbeddings out{client.EmbedText(prompts.target_prompt), std::nullopt};
  if (prompts.guide_enabled) out.guide = client.EmbedText(prompts.guide_prompt);
  return out;
}

ScoreBreakdown ScoreEmbedding(const Embedding& audio,
                              const PromptEmbeddings& prompts) {
  const double s_target = CosineSimilarity(audio, prompts.target);
  const double s_guide =
      prompts.guide ? CosineSimilarity(audio, *prompts.guide) : 0.0;
  return MakeScore(s_target, s_guide);
}

AudioBuffer PrepareForBackend(const AudioBuffer& audio, int backend_rate) {
  return Resample(DownmixMono(audio), backend_rate);
}

Scorer::Scorer(std::shared_ptr<EmbeddingClient> client, PromptPair prompts)
    : client_(std::move(client)),
      prompts_(std::move(prompts)),
      embeddings_(EmbedPrompts(prompts_, *client_)) {}

ScoreBreakdown Scorer::Score(const AudioBuffer& audio) {
  const AudioBuffer prepared = PrepareForBackend(audio, client_->info().sample_rate);
  const ScoreBreakdown score =
      ScoreEmbedding(client_->EmbedAudio(prepared), embeddings_);
  const std::uint64_t key = HashAudio(prepared);
  std::lock_guard lock(mutex_);
  if (auto it = seen_.find(key); it != seen_.end()) {
    if (std::abs(it->second.s_target - score.s_target) > kFlakyTolerance ||
        std::abs(it->second.s_guide - score.s_guide) > kFlakyTolerance) {
      ++flaky_;
      std::cerr << "warning: embedding backend is not deterministic; identical "
                   "audio scored "
                << it->second.s_final << " and " << score.s_final << "\n";
    }
  } else if (seen_.size() < kMaxRememberedClips) {
    seen_.emplace(key, score);
  }
  return score;
}

int Scorer::flaky_scores() const {
  std::lock_guard lock(mutex_);
  return flaky_;
}

}  // namespace fxsearcher
