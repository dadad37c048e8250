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

#ifndef FXSEARCHER_WAV_IO_H_
#define FXSEARCHER_WAV_IO_H_

#include <filesystem>

#include "fxsearcher/audio_buffer.h"

namespace fxsearcher {

// Reads a RIFF/WAVE file holding 16-bit PCM, 24-bit PCM or 32-bit IEEE float
// samples (little-endian). Integer PCM is scaled by 1 / 2^(bits-1).
// Throws IoError if the file cannot be opened, UnsupportedFormatError for any
// other encoding and CorruptFileError for malformed or truncated files.
AudioBuffer LoadWav(const std::filesystem::path& path);

// Writes 32-bit IEEE float WAV. Samples are stored as-is, without clipping.
void SaveWav(const AudioBuffer& buffer, const std::filesystem::path& path);

}  // namespace fxsearcher

#endif  // FXSEARCHER_WAV_IO_H_
