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

#ifndef FXSEARCHER_FX_CHAIN_H_
#define FXSEARCHER_FX_CHAIN_H_

#include "fxsearcher/audio_buffer.h"
#include "fxsearcher/fx_params.h"

namespace fxsearcher {

// Renders the chain Equalizer -> Distortion -> BitCrush -> PitchShift ->
// Delay -> Reverb. A stage runs when it is in `stages` and, for the four
// optional effects, its activation flag is set.
AudioBuffer ApplyChain(const AudioBuffer& buffer, const FxParams& params,
                       const StageSet& stages = StageSet::All());

}  // namespace fxsearcher

#endif  // FXSEARCHER_FX_CHAIN_H_
