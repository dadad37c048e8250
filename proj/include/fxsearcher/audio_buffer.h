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

#ifndef FXSEARCHER_AUDIO_BUFFER_H_
#define FXSEARCHER_AUDIO_BUFFER_H_

#include <cstddef>
#include <span>
#include <vector>

namespace fxsearcher {

// Channel-separated audio in double precision. Amplitudes are nominally in [-1, 1] but are
// not clipped. Construction validates that all channels have equal length,
// the sample rate is positive, and every sample is finite; a constructed
// buffer is never modified afterwards.
class AudioBuffer {
 public:
  AudioBuffer(std::vector<std::vector<double>> channels, int sample_rate);

  static AudioBuffer Mono(std::vector<double> samples, int sample_rate);

  int sample_rate() const { return sample_rate_; }
  int num_channels() const { return static_cast<int>(channels_.size()); }
  std::size_t num_frames() const {
    return channels_.empty() ? 0 : channels_.front().size();
  }
  std::span<const double> channel(int index) const { return channels_[index]; }
  const std::vector<std::vector<double>>& channels() const { return channels_; }

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;

 private:
  std::vector<std::vector<double>> channels_;
  int sample_rate_;
};

}  // namespace fxsearcher

#endif  // FXSEARCHER_AUDIO_BUFFER_H_
