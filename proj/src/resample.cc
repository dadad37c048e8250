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

#include "fxsearcher/resample.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "fxsearcher/errors.h"

namespace fxsearcher {
namespace {

constexpr int kWindowTableSize = 4096;

// Kaiser window sampled on u in [0, 1]; w(u) = I0(beta sqrt(1-u^2)) / I0(beta).
const std::array<double, kWindowTableSize + 2>& KaiserTable() {
  static const auto table = [] {
    std::array<double, kWindowTableSize + 2> t{};
    const double norm = std::cyl_bessel_i(0.0, kResampleKaiserBeta);
    for (int i = 0; i <= kWindowTableSize; ++i) {
      const double u = static_cast<double>(i) / kWindowTableSize;
      t[i] = std::cyl_bessel_i(
                 0.0, kResampleKaiserBeta * std::sqrt(std::max(0.0, 1.0 - u * u))) /
             norm;
    }
    t[kWindowTableSize + 1] = 0.0;
    return t;
  }();
  return table;
}

double KaiserWindow(double u) {
  u = std::abs(u);
  if (u >= 1.0) return 0.0;
  const auto& table = KaiserTable();
  const double x = u * kWindowTableSize;
  const int i = static_cast<int>(x);
  const double frac = x - i;
  return table[i] + frac * (table[i + 1] - table[i]);
}

// Interpolates one output sample at input position base + frac, 0 <= frac < 1.
double InterpolateAt(std::span<const double> input, std::int64_t base, double frac,
                    double cutoff, int half_taps) {
  const auto last = static_cast<std::int64_t>(input.size()) - 1;
  const double window_span = half_taps;
  double acc = 0.0;
  double weight_sum = 0.0;
  for (int k = -half_taps + 1; k <= half_taps; ++k) {
    // Distance from the interpolation point to input sample base + k.
    const double t = frac - k;
    const double arg = std::numbers::pi * cutoff * t;
    const double sinc = std::abs(arg) < 1e-12 ? 1.0 : std::sin(arg) / arg;
    const double w = sinc * KaiserWindow(t / window_span);
    const std::int64_t idx = std::clamp<std::int64_t>(base + k, 0, last);
    acc += w * input[static_cast<std::size_t>(idx)];
    weight_sum += w;
  }
  return weight_sum != 0.0 ? acc / weight_sum : 0.0;
}

}  // namespace

std::vector<double> ResampleByStep(std::span<const double> input, double step,
                                  std::size_t output_length) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw PreconditionError("resampling step must be positive and finite");
  }
  std::vector<double> out(output_length, 0.0);
  if (input.empty()) return out;
  const double cutoff = std::min(1.0, 1.0 / step);
  const int half_taps =
      static_cast<int>(std::ceil(kResampleZeroCrossings / cutoff));
  for (std::size_t n = 0; n < output_length; ++n) {
    const double pos = static_cast<double>(n) * step;
    const double base = std::floor(pos);
    out[n] = InterpolateAt(input, static_cast<std::int64_t>(base), pos - base,
                           cutoff, half_taps);
  }
  return out;
}

AudioBuffer Resample(const AudioBuffer& buffer, int target_rate) {
  if (target_rate <= 0) {
    throw PreconditionError("target sample rate must be positive, got " +
                            std::to_string(target_rate));
  }
  const int source_rate = buffer.sample_rate();
  if (target_rate == source_rate) return buffer;

  const auto frames = static_cast<std::uint64_t>(buffer.num_frames());
  const std::uint64_t out_frames =
      (frames * static_cast<std::uint64_t>(target_rate) +
       static_cast<std::uint64_t>(source_rate) / 2) /
      static_cast<std::uint64_t>(source_rate);
  const double cutoff =
      std::min(1.0, static_cast<double>(target_rate) / source_rate);
  const int half_taps =
      static_cast<int>(std::ceil(kResampleZeroCrossings / cutoff));

  std::vector<std::vector<double>> channels;
  channels.reserve(buffer.num_channels());
  for (int c = 0; c < buffer.num_channels(); ++c) {
    const auto input = buffer.channel(c);
    std::vector<double> out(out_frames, 0.0);
    if (!input.empty()) {
      for (std::uint64_t n = 0; n < out_frames; ++n) {
        // Exact rational position n * source / target.
        const std::uint64_t num = n * static_cast<std::uint64_t>(source_rate);
        const auto base = static_cast<std::int64_t>(num / target_rate);
        const double frac =
            static_cast<double>(num % target_rate) / target_rate;
        out[n] = InterpolateAt(input, base, frac, cutoff, half_taps);
      }
    }
    channels.push_back(std::move(out));
  }
  return AudioBuffer(std::move(channels), target_rate);
}

AudioBuffer DownmixMono(const AudioBuffer& buffer) {
  if (buffer.num_channels() == 1) return buffer;
  const std::size_t frames = buffer.num_frames();
  const int channels = buffer.num_channels();
  std::vector<double> mono(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    double sum = 0.0;
    for (int c = 0; c < channels; ++c) sum += buffer.channel(c)[i];
    mono[i] = sum / channels;
  }
  return AudioBuffer::Mono(std::move(mono), buffer.sample_rate());
}

}  // namespace fxsearcher
