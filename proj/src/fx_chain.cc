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

#include "fxsearcher/fx_chain.h"

#include "fxsearcher/effects.h"

namespace fxsearcher {

AudioBuffer ApplyChain(const AudioBuffer& buffer, const FxParams& params,
                       const StageSet& stages) {
  AudioBuffer out = buffer;
  if (stages.Contains(Stage::kEqualizer)) {
    out = ApplyEqualizer(out, params.eq_gain_db);
  }
  if (stages.Contains(Stage::kDistortion) && params.enable_distortion) {
    out = ApplyDistortion(out, params.distortion_drive_db);
  }
  if (stages.Contains(Stage::kBitcrush) && params.enable_bitcrush) {
    out = ApplyBitcrush(out, params.bitcrush_bit_depth);
  }
  if (stages.Contains(Stage::kPitchShift) && params.enable_pitch_shift) {
    out = ApplyPitchShift(out, params.pitch_shift_semitones);
  }
  if (stages.Contains(Stage::kDelay) && params.enable_delay) {
    out = ApplyDelay(out, params.delay_seconds);
  }
  if (stages.Contains(Stage::kReverb)) {
    out = ApplyReverb(out, params.reverb_room_size, params.reverb_damping,
                      params.reverb_wet_level);
  }
  return out;
}

}  // namespace fxsearcher
