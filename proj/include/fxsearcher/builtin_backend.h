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

#ifndef FXSEARCHER_BUILTIN_BACKEND_H_
#define FXSEARCHER_BUILTIN_BACKEND_H_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "fxsearcher/embedding.h"

namespace fxsearcher {

// Deterministic stand-in for a text-audio embedding model.
//
// Audio maps to 16 signal statistics:
//   [0]      loudness, 1 + 20 log10(rms + 1e-5) / 120
//   [1]      spectral centroid / Nyquist
//   [2]      zero-crossing rate
//   [3..15]  13 mel-band energies, 1 + 10 log10(E + 1e-10) / 120
// Silence therefore maps to (1/6, 0, 0, 1/6, ..., 1/6), never the zero vector.
//
// Text maps to a catalogued vector for a handful of known prompts and to a
// vector derived from a 64-bit FNV-1a hash of the prompt otherwise.
class BuiltinTestBackend : public EmbeddingBackend {
 public:
  static constexpr int kDim = 16;
  static constexpr int kSampleRate = 48000;
  static constexpr int kMelBands = 13;
  static constexpr int kFrameSize = 2048;
  static constexpr int kHopSize = 1024;
  static constexpr const char* kModelId = "builtin-test-v1";

  BackendInfo Info() override;
  std::vector<std::vector<float>> EmbedTexts(
      const std::vector<std::string>& texts) override;
  std::vector<float> EmbedAudio(std::span<const float> mono,
                                int sample_rate) override;

  static std::array<float, kDim> TextVector(const std::string& text);
  static std::array<float, kDim> AudioFeatures(std::span<const float> mono,
                                               int sample_rate);
};

}  // namespace fxsearcher

#endif  // FXSEARCHER_BUILTIN_BACKEND_H_
