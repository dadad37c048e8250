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

#ifndef FXSEARCHER_BASE64_H_
#define FXSEARCHER_BASE64_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fxsearcher {

// Standard alphabet with '=' padding.
std::string Base64Encode(std::span<const std::uint8_t> bytes);
// Throws PreconditionError on characters outside the alphabet or bad padding.
std::vector<std::uint8_t> Base64Decode(std::string_view text);

// Little-endian float-32 PCM <-> base64, as carried by the embedding protocol.
std::string EncodePcmFloat32(std::span<const float> samples);
// Throws PreconditionError if the payload is not a whole number of floats.
std::vector<float> DecodePcmFloat32(std::string_view base64);

}  // namespace fxsearcher

#endif  // FXSEARCHER_BASE64_H_
