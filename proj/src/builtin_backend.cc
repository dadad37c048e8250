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

#include "fxsearcher/builtin_backend.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "fxsearcher/errors.h"
#include "fxsearcher/scorer.h"

namespace fxsearcher {
namespace {

using Vec = std::array<float, BuiltinTestBackend::kDim>;

// Layout: loudness, centroid, zcr, 13 mel bands (low to high).
const std::map<std::string, Vec, std::less<>>& Catalogue() {
  static const std::map<std::string, Vec, std::less<>> catalogue = {
      {"bright",
       {0.0f, 1.0f, 0.5f, -1.0f, -1.0f, -0.8f, -0.6f, -0.4f, -0.2f, 0.0f, 0.2f,
        0.4f, 0.6f, 0.8f, 1.0f, 1.0f}},
      {"dark",
       {0.0f, -1.0f, -0.5f, 1.0f, 1.0f, 0.8f, 0.6f, 0.4f, 0.2f, 0.0f, -0.2f,
        -0.4f, -0.6f, -0.8f, -1.0f, -1.0f}},
      {"loud", {1.0f, 0.0f, 0.0f, 0.3f, 0.3f, 0.3f, 0.3f, 0.3f, 0.3f, 0.3f,
                0.3f, 0.3f, 0.3f, 0.3f, 0.3f, 0.3f}},
      {"quiet", {-1.0f, 0.0f, 0.0f, -0.3f, -0.3f, -0.3f, -0.3f, -0.3f, -0.3f,
                 -0.3f, -0.3f, -0.3f, -0.3f, -0.3f, -0.3f, -0.3f}},
      {std::string(kDefaultGuidePrompt),
       {1.0f, 0.3f, 1.0f, 0.8f, 0.8f, 0.4f, 0.0f, 0.0f, 0.0f, 0.0f, 0.0f, 0.2f,
        0.5f, 0.8f, 1.0f, 1.0f}},
  };
  return catalogue;
}

std::uint64_t Fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t SplitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

}  // namespace

BackendInfo BuiltinTestBackend::Info() {
  return {kDim, kSampleRate, kModelId};
}

std::vector<std::vector<float>> BuiltinTestBackend::EmbedTexts(
    const std::vector<std::string>& texts) {
  std::vector<std::vector<float>> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    const auto v = TextVector(t);
    out.emplace_back(v.begin(), v.end());
  }
  return out;
}

std::vector<float> BuiltinTestBackend::EmbedAudio(std::span<const float> mono,
                                                  int sample_rate) {
  if (sample_rate != kSampleRate) {
    throw PreconditionError("builtin backend expects " +
                            std::to_string(kSampleRate) + " Hz audio, got " +
                            std::to_string(sample_rate) + " Hz");
  }
  const auto v = AudioFeatures(mono, sample_rate);
  return {v.begin(), v.end()};
}

std::array<float, BuiltinTestBackend::kDim> BuiltinTestBackend::TextVector(
    const std::string& text) {
  const auto& catalogue = Catalogue();
  if (auto it = catalogue.find(text); it != catalogue.end()) return it->second;
  Vec v{};
  std::uint64_t state = Fnv1a(text);
  for (float& x : v) {
    // 53 random bits mapped to [-1, 1).
    const double u = static_cast<double>(SplitMix64(state) >> 11) * 0x1.0p-53;
    x = static_cast<float>(2.0 * u - 1.0);
  }
  return v;
}

std::array<float, BuiltinTestBackend::kDim> BuiltinTestBackend::AudioFeatures(
    std::span<const float> mono, int sample_rate) {
  Vec features{};
  const std::size_t n = mono.size();

  double sum_sq = 0.0;
  for (float x : mono) sum_sq += static_cast<double>(x) * x;
  const double rms = n > 0 ? std::sqrt(sum_sq / n) : 0.0;
  features[0] = static_cast<float>(1.0 + 20.0 * std::log10(rms + 1e-5) / 120.0);

  std::size_t crossings = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if ((mono[i - 1] < 0.0f) != (mono[i] < 0.0f)) ++crossings;
  }
  features[2] = n > 1 ? static_cast<float>(static_cast<double>(crossings) / (n - 1)) : 0.0f;

  // Average one-sided power spectrum over Hann frames, scaled so that the
  // bins sum to the mean signal power.
  constexpr int kBins = kFrameSize / 2 + 1;
  std::vector<double> window(kFrameSize);
  double window_sq = 0.0;
  for (int i = 0; i < kFrameSize; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / kFrameSize);
    window_sq += window[i] * window[i];
  }
  std::vector<double> power(kBins, 0.0);
  Eigen::FFT<double> fft;
  std::vector<double> frame(kFrameSize);
  std::vector<std::complex<double>> spectrum;
  int frames = 0;
  for (std::size_t start = 0; frames == 0 || start + kFrameSize <= n;
       start += kHopSize) {
    for (int i = 0; i < kFrameSize; ++i) {
      const std::size_t idx = start + i;
      frame[i] = idx < n ? mono[idx] * window[i] : 0.0;
    }
    fft.fwd(spectrum, frame);
    for (int k = 0; k < kBins; ++k) {
      const double scale = (k == 0 || k == kBins - 1) ? 1.0 : 2.0;
      power[k] += scale * std::norm(spectrum[k]) / (kFrameSize * window_sq);
    }
    ++frames;
  }
  for (double& p : power) p /= frames;

  const double nyquist = sample_rate / 2.0;
  double total = 0.0, weighted = 0.0;
  for (int k = 0; k < kBins; ++k) {
    const double hz = static_cast<double>(k) * sample_rate / kFrameSize;
    total += power[k];
    weighted += hz * power[k];
  }
  features[1] = total > 1e-20 ? static_cast<float>(weighted / total / nyquist) : 0.0f;

  // Triangular filters equally spaced on the mel scale from 0 to Nyquist.
  std::array<double, kMelBands + 2> edges{};
  const double mel_max = HzToMel(nyquist);
  for (int b = 0; b < kMelBands + 2; ++b) {
    edges[b] = MelToHz(mel_max * b / (kMelBands + 1));
  }
  for (int b = 0; b < kMelBands; ++b) {
    double energy = 0.0;
    for (int k = 0; k < kBins; ++k) {
      const double hz = static_cast<double>(k) * sample_rate / kFrameSize;
      double w = 0.0;
      if (hz > edges[b] && hz <= edges[b + 1]) {
        w = (hz - edges[b]) / (edges[b + 1] - edges[b]);
      } else if (hz > edges[b + 1] && hz < edges[b + 2]) {
        w = (edges[b + 2] - hz) / (edges[b + 2] - edges[b + 1]);
      }
      energy += w * power[k];
    }
    features[3 + b] =
        static_cast<float>(1.0 + 10.0 * std::log10(energy + 1e-10) / 120.0);
  }
  return features;
}

}  // namespace fxsearcher
