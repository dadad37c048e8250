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

#ifndef FXSEARCHER_EFFECTS_H_
#define FXSEARCHER_EFFECTS_H_

#include <array>
#include <span>

#include "fxsearcher/audio_buffer.h"
#include "fxsearcher/fx_params.h"

namespace fxsearcher {

// Graphic EQ centers (ISO 2/3-octave series), one peaking band per gain.
inline constexpr std::array<double, kNumEqBands> kEqCenterFrequenciesHz = {
    25, 40, 63, 100, 160, 250, 400, 630, 1000, 1600, 2500, 4000, 6300, 10000,
    16000};
inline constexpr double kEqQ = 1.5;

inline constexpr double kDelayFeedback = 0.3;
inline constexpr double kDelayMix = 0.5;

inline constexpr double kBitcrushMinDepth = 4.0;
inline constexpr double kBitcrushMaxDepth = 16.0;

// WSOLA framing used by the pitch shifter, in seconds.
inline constexpr double kWsolaWindowSeconds = 0.050;
inline constexpr double kWsolaHopSeconds = 0.0125;
inline constexpr double kWsolaToleranceSeconds = 0.005;

// Freeverb constants. Comb and allpass lengths are in samples at 44.1 kHz.
namespace freeverb {
inline constexpr std::array<int, 8> kCombTunings = {1116, 1188, 1277, 1356,
                                                    1422, 1491, 1557, 1617};
inline constexpr std::array<int, 4> kAllpassTunings = {556, 441, 341, 225};
inline constexpr int kStereoSpread = 23;
inline constexpr double kReferenceRate = 44100.0;
inline constexpr double kAllpassFeedback = 0.5;
inline constexpr double kRoomOffset = 0.28;
inline constexpr double kRoomScale = 0.7;
inline constexpr double kDampScale = 0.4;
inline constexpr double kWetScale = 3.0;
inline constexpr double kFixedGain = 0.015;
}  // namespace freeverb

// Cascade of RBJ peaking biquads. Bands at or above Nyquist are skipped.
AudioBuffer ApplyEqualizer(const AudioBuffer& buffer,
                           std::span<const double, kNumEqBands> gains_db);

// y = tanh(10^(drive_db / 20) * x)
AudioBuffer ApplyDistortion(const AudioBuffer& buffer, double drive_db);

// y = round(clamp(x) * q) / q with q = 2^(bit_depth - 1); the depth is
// not rounded to an integer.
AudioBuffer ApplyBitcrush(const AudioBuffer& buffer, double bit_depth);

// Resamples by 2^(semitones / 12) and restores the original duration with
// WSOLA. Zero semitones returns the input unchanged. Alignment offsets are
// searched on the channel mean and applied to all channels so the stereo image
// stays coherent.
AudioBuffer ApplyPitchShift(const AudioBuffer& buffer, double semitones);

// Feedback delay with fixed feedback and mix; the tail past the end of the
// buffer is dropped.
AudioBuffer ApplyDelay(const AudioBuffer& buffer, double delay_seconds);

// Freeverb: 8 lowpass-feedback combs into 4 series allpasses per channel.
AudioBuffer ApplyReverb(const AudioBuffer& buffer, double room_size,
                        double damping, double wet_level);

}  // namespace fxsearcher

#endif  // FXSEARCHER_EFFECTS_H_
