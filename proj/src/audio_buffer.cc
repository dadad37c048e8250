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

#include "fxsearcher/audio_buffer.h"

#include <cmath>
#include <string>
#include <utility>

#include "fxsearcher/errors.h"

namespace fxsearcher {

AudioBuffer::AudioBuffer(std::vector<std::vector<double>> channels,
                         int sample_rate)
    : channels_(std::move(channels)), sample_rate_(sample_rate) {
  if (sample_rate_ <= 0) {
    throw PreconditionError("sample rate must be positive, got " +
                            std::to_string(sample_rate_));
  }
  if (channels_.empty()) {
    throw PreconditionError("audio buffer needs at least one channel");
  }
  const std::size_t frames = channels_.front().size();
  for (const auto& ch : channels_) {
    if (ch.size() != frames) {
      throw PreconditionError("audio channels have unequal lengths");
    }
    for (double v : ch) {
      if (!std::isfinite(v)) {
        throw PreconditionError("audio buffer contains a non-finite sample");
      }
    }
  }
}

AudioBuffer AudioBuffer::Mono(std::vector<double> samples, int sample_rate) {
  std::vector<std::vector<double>> channels;
  channels.push_back(std::move(samples));
  return AudioBuffer(std::move(channels), sample_rate);
}

}  // namespace fxsearcher
