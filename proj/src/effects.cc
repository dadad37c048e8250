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

#include "fxsearcher/effects.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "fxsearcher/errors.h"
#include "fxsearcher/resample.h"

namespace fxsearcher {
namespace {

using Channels = std::vector<std::vector<double>>;

template <typename Fn>
AudioBuffer MapSamples(const AudioBuffer& buffer, Fn fn) {
  Channels out = buffer.channels();
  for (auto& ch : out) {
    for (double& v : ch) v = fn(v);
  }
  return AudioBuffer(std::move(out), buffer.sample_rate());
}

struct Biquad {
  double b0, b1, b2, a1, a2;
};

// Peaking EQ from the RBJ audio EQ cookbook, normalized by a0.
Biquad PeakingBiquad(double f0, double gain_db, double q, double rate) {
  const double a = std::pow(10.0, gain_db / 40.0);
  const double w0 = 2.0 * std::numbers::pi * f0 / rate;
  const double alpha = std::sin(w0) / (2.0 * q);
  const double cosw = std::cos(w0);
  const double a0 = 1.0 + alpha / a;
  return {(1.0 + alpha * a) / a0, (-2.0 * cosw) / a0, (1.0 - alpha * a) / a0,
          (-2.0 * cosw) / a0, (1.0 - alpha / a) / a0};
}

void RunBiquad(const Biquad& f, std::vector<double>& x) {
  double x1 = 0, x2 = 0, y1 = 0, y2 = 0;
  for (double& v : x) {
    const double y = f.b0 * v + f.b1 * x1 + f.b2 * x2 - f.a1 * y1 - f.a2 * y2;
    x2 = x1;
    x1 = v;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

void CheckInRange(const char* what, double value, double lo, double hi) {
  if (!std::isfinite(value) || value < lo || value > hi) {
    throw PreconditionError(std::string(what) + " = " + std::to_string(value) +
                            " is outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  }
}

int ScaledTuning(int samples_at_reference, double rate) {
  const auto n = static_cast<int>(
      std::lround(samples_at_reference * rate / freeverb::kReferenceRate));
  return std::max(n, 1);
}

class Comb {
 public:
  explicit Comb(int length) : buffer_(length, 0.0) {}
  double Process(double input, double feedback, double damp) {
    const double output = buffer_[index_];
    store_ = output * (1.0 - damp) + store_ * damp;
    buffer_[index_] = input + store_ * feedback;
    if (++index_ == buffer_.size()) index_ = 0;
    return output;
  }

 private:
  std::vector<double> buffer_;
  std::size_t index_ = 0;
  double store_ = 0.0;
};

class Allpass {
 public:
  explicit Allpass(int length) : buffer_(length, 0.0) {}
  double Process(double input) {
    const double delayed = buffer_[index_];
    buffer_[index_] = input + delayed * freeverb::kAllpassFeedback;
    if (++index_ == buffer_.size()) index_ = 0;
    return delayed - input;
  }

 private:
  std::vector<double> buffer_;
  std::size_t index_ = 0;
};

// Normalized cross-correlation of two equal-length windows read from `x`,
// treating samples outside the signal as zero.
double Ncc(const std::vector<double>& x, std::int64_t a, std::int64_t b,
           int length) {
  const auto n = static_cast<std::int64_t>(x.size());
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (int i = 0; i < length; ++i) {
    const std::int64_t ia = a + i, ib = b + i;
    const double va = (ia >= 0 && ia < n) ? x[ia] : 0.0;
    const double vb = (ib >= 0 && ib < n) ? x[ib] : 0.0;
    ab += va * vb;
    aa += va * va;
    bb += vb * vb;
  }
  const double denom = std::sqrt(aa * bb);
  return denom > 1e-20 ? ab / denom : 0.0;
}

// WSOLA time-scale modification of every channel to `output_length` samples.
Channels WsolaStretch(const Channels& input, std::size_t output_length,
                      int rate) {
  const int window = std::max(4, static_cast<int>(std::lround(kWsolaWindowSeconds * rate)));
  const int hop = std::max(1, static_cast<int>(std::lround(kWsolaHopSeconds * rate)));
  const int tolerance =
      static_cast<int>(std::lround(kWsolaToleranceSeconds * rate));
  const std::size_t input_length = input.front().size();
  const double analysis_hop =
      output_length > 0
          ? hop * static_cast<double>(input_length) / output_length
          : 0.0;

  // Alignment is decided on the channel mean.
  std::vector<double> guide(input_length, 0.0);
  for (std::size_t i = 0; i < input_length; ++i) {
    double s = 0.0;
    for (const auto& ch : input) s += ch[i];
    guide[i] = s / input.size();
  }

  std::vector<double> hann(window);
  for (int i = 0; i < window; ++i) {
    hann[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / window);
  }

  std::vector<std::vector<double>> acc(input.size(),
                                       std::vector<double>(output_length, 0.0));
  std::vector<double> weight(output_length, 0.0);
  const auto in_len = static_cast<std::int64_t>(input_length);
  std::int64_t previous = 0;
  for (std::size_t k = 0; k * hop < output_length; ++k) {
    std::int64_t start = 0;
    if (k > 0) {
      const auto nominal = static_cast<std::int64_t>(std::llround(k * analysis_hop));
      const std::int64_t natural = previous + hop;
      start = nominal;
      double best = Ncc(guide, nominal, natural, window);
      for (int d = -tolerance; d <= tolerance; ++d) {
        if (d == 0) continue;
        const double score = Ncc(guide, nominal + d, natural, window);
        if (score > best) {
          best = score;
          start = nominal + d;
        }
      }
    }
    previous = start;
    const std::size_t out_start = k * hop;
    for (int i = 0; i < window && out_start + i < output_length; ++i) {
      const std::int64_t src = start + i;
      weight[out_start + i] += hann[i];
      if (src < 0 || src >= in_len) continue;
      for (std::size_t c = 0; c < input.size(); ++c) {
        acc[c][out_start + i] += hann[i] * input[c][src];
      }
    }
  }

  Channels out(input.size(), std::vector<double>(output_length, 0.0));
  for (std::size_t c = 0; c < input.size(); ++c) {
    for (std::size_t n = 0; n < output_length; ++n) {
      if (weight[n] > 1e-8) out[c][n] = acc[c][n] / weight[n];
    }
  }
  return out;
}

}  // namespace

AudioBuffer ApplyEqualizer(const AudioBuffer& buffer,
                           std::span<const double, kNumEqBands> gains_db) {
  const double rate = buffer.sample_rate();
  std::vector<Biquad> filters;
  for (int b = 0; b < kNumEqBands; ++b) {
    if (kEqCenterFrequenciesHz[b] >= rate / 2.0) continue;
    // A 0 dB peaking band is an exact identity.
    if (gains_db[b] == 0.0) continue;
    filters.push_back(
        PeakingBiquad(kEqCenterFrequenciesHz[b], gains_db[b], kEqQ, rate));
  }
  if (filters.empty()) return buffer;
  Channels out;
  for (const auto& ch : buffer.channels()) {
    std::vector<double> work = ch;
    for (const auto& f : filters) RunBiquad(f, work);
    out.push_back(std::move(work));
  }
  return AudioBuffer(std::move(out), buffer.sample_rate());
}

AudioBuffer ApplyDistortion(const AudioBuffer& buffer, double drive_db) {
  const double gain = std::pow(10.0, drive_db / 20.0);
  return MapSamples(buffer, [gain](double x) { return std::tanh(gain * x); });
}

AudioBuffer ApplyBitcrush(const AudioBuffer& buffer, double bit_depth) {
  CheckInRange("bit_depth", bit_depth, kBitcrushMinDepth, kBitcrushMaxDepth);
  const double q = std::pow(2.0, bit_depth - 1.0);
  return MapSamples(buffer, [q](double x) {
    return std::round(std::clamp(x, -1.0, 1.0) * q) / q;
  });
}

AudioBuffer ApplyPitchShift(const AudioBuffer& buffer, double semitones) {
  CheckInRange("semitones", semitones, -12.0, 12.0);
  if (semitones == 0.0 || buffer.num_frames() == 0) return buffer;
  const double ratio = std::pow(2.0, semitones / 12.0);
  const std::size_t frames = buffer.num_frames();
  const auto shifted_length = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(frames / ratio)));
  Channels shifted;
  for (const auto& ch : buffer.channels()) {
    shifted.push_back(ResampleByStep(ch, ratio, shifted_length));
  }
  return AudioBuffer(WsolaStretch(shifted, frames, buffer.sample_rate()),
                     buffer.sample_rate());
}

AudioBuffer ApplyDelay(const AudioBuffer& buffer, double delay_seconds) {
  CheckInRange("delay_seconds", delay_seconds, kDelayRangeSeconds.lo,
               kDelayRangeSeconds.hi);
  const auto delay = static_cast<std::size_t>(
      std::llround(delay_seconds * buffer.sample_rate()));
  Channels out;
  for (const auto& ch : buffer.channels()) {
    const std::size_t n = ch.size();
    std::vector<double> wet(n, 0.0);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (delay > 0 && i >= delay) wet[i] = ch[i - delay] + kDelayFeedback * wet[i - delay];
      y[i] = kDelayMix * ch[i] + (1.0 - kDelayMix) * wet[i];
    }
    out.push_back(std::move(y));
  }
  return AudioBuffer(std::move(out), buffer.sample_rate());
}

AudioBuffer ApplyReverb(const AudioBuffer& buffer, double room_size,
                        double damping, double wet_level) {
  CheckInRange("room_size", room_size, 0.0, 1.0);
  CheckInRange("damping", damping, 0.0, 1.0);
  CheckInRange("wet_level", wet_level, 0.0, 1.0);
  if (wet_level == 0.0) return buffer;

  const double rate = buffer.sample_rate();
  const double feedback = freeverb::kRoomOffset + freeverb::kRoomScale * room_size;
  const double damp = freeverb::kDampScale * damping;
  const double wet_gain = wet_level * freeverb::kWetScale * freeverb::kFixedGain;
  Channels out;
  for (int c = 0; c < buffer.num_channels(); ++c) {
    const int spread = (c % 2 == 1) ? freeverb::kStereoSpread : 0;
    std::vector<Comb> combs;
    for (int t : freeverb::kCombTunings) combs.emplace_back(ScaledTuning(t + spread, rate));
    std::vector<Allpass> allpasses;
    for (int t : freeverb::kAllpassTunings) {
      allpasses.emplace_back(ScaledTuning(t + spread, rate));
    }
    const auto x = buffer.channel(c);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      double wet = 0.0;
      for (auto& comb : combs) wet += comb.Process(x[i], feedback, damp);
      for (auto& ap : allpasses) wet = ap.Process(wet);
      y[i] = (1.0 - wet_level) * x[i] + wet_gain * wet;
    }
    out.push_back(std::move(y));
  }
  return AudioBuffer(std::move(out), buffer.sample_rate());
}

}  // namespace fxsearcher
