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

#ifndef FXSEARCHER_RESAMPLE_H_
#define FXSEARCHER_RESAMPLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "fxsearcher/audio_buffer.h"

namespace fxsearcher {

// Kaiser-windowed sinc interpolation parameters. Shared by every resampling
// path so results are reproducible.
inline constexpr double kResampleKaiserBeta = 8.0;
inline constexpr int kResampleZeroCrossings = 32;

// Band-limited interpolation of `input` at positions n * step for
// n = 0 .. output_length - 1, where step is measured in input samples per
// output sample. When step > 1 the sinc cutoff is lowered to 1 / step so the
// output does not alias. Samples beyond either end repeat the edge value, and
// the kernel weights at every position are normalized to unit sum so DC is
// preserved exactly.
std::vector<double> ResampleByStep(std::span<const double> input, double step,
                                  std::size_t output_length);

// Converts every channel to `target_rate`. The output has
// round(frames * target_rate / sample_rate) frames. A matching rate returns
// an identical copy.
AudioBuffer Resample(const AudioBuffer& buffer, int target_rate);

// Arithmetic mean across channels.
AudioBuffer DownmixMono(const AudioBuffer& buffer);

}  // namespace fxsearcher

#endif  // FXSEARCHER_RESAMPLE_H_
