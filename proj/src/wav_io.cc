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

#include "fxsearcher/wav_io.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "fxsearcher/errors.h"

namespace fxsearcher {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t ReadU16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void PutU32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out.push_back(static_cast<unsigned char>((v >> shift) & 0xFF));
  }
}

void PutTag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct FormatChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

FormatChunk ParseFormat(const unsigned char* p, std::uint32_t size,
                        const std::string& name) {
  if (size < 16) {
    throw CorruptFileError(name + ": fmt chunk too short");
  }
  FormatChunk fmt;
  fmt.format = ReadU16(p);
  fmt.channels = ReadU16(p + 2);
  fmt.sample_rate = ReadU32(p + 4);
  fmt.block_align = ReadU16(p + 12);
  fmt.bits = ReadU16(p + 14);
  if (fmt.format == kFormatExtensible) {
    if (size < 40) {
      throw CorruptFileError(name + ": extensible fmt chunk too short");
    }
    // The sub-format GUID starts with the plain format tag.
    fmt.format = ReadU16(p + 24);
  }
  const bool pcm = fmt.format == kFormatPcm && (fmt.bits == 16 || fmt.bits == 24);
  const bool ieee = fmt.format == kFormatFloat && fmt.bits == 32;
  if (!pcm && !ieee) {
    throw UnsupportedFormatError(
        name + ": unsupported format (tag " + std::to_string(fmt.format) +
        ", " + std::to_string(fmt.bits) + " bits)");
  }
  if (fmt.channels == 0 || fmt.sample_rate == 0 ||
      fmt.sample_rate > static_cast<std::uint32_t>(INT32_MAX)) {
    throw CorruptFileError(name + ": invalid channel count or sample rate");
  }
  if (fmt.block_align != fmt.channels * (fmt.bits / 8)) {
    throw CorruptFileError(name + ": block align does not match format");
  }
  return fmt;
}

}  // namespace

AudioBuffer LoadWav(const std::filesystem::path& path) {
  const std::string name = path.string();
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + name);
  }
  const std::vector<unsigned char> bytes(
      (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw CorruptFileError(name + ": not a RIFF/WAVE file");
  }

  std::optional<FormatChunk> fmt;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* header = bytes.data() + pos;
    const std::uint32_t size = ReadU32(header + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = bytes.size() - body;
    if (std::memcmp(header, "fmt ", 4) == 0) {
      if (size > available) {
        throw CorruptFileError(name + ": truncated fmt chunk");
      }
      fmt = ParseFormat(bytes.data() + body, size, name);
    } else if (std::memcmp(header, "data", 4) == 0) {
      if (!fmt) {
        throw CorruptFileError(name + ": data chunk precedes fmt chunk");
      }
      if (size > available) {
        throw CorruptFileError(name + ": truncated data chunk");
      }
      if (size % fmt->block_align != 0) {
        throw CorruptFileError(name + ": data size is not a whole frame count");
      }
      const std::size_t frames = size / fmt->block_align;
      const int bytes_per_sample = fmt->bits / 8;
      std::vector<std::vector<double>> channels(fmt->channels,
                                               std::vector<double>(frames));
      const unsigned char* p = bytes.data() + body;
      for (std::size_t i = 0; i < frames; ++i) {
        for (int c = 0; c < fmt->channels; ++c, p += bytes_per_sample) {
          double value = 0.0;
          if (fmt->format == kFormatFloat) {
            value = std::bit_cast<float>(ReadU32(p));
            if (!std::isfinite(value)) {
              throw CorruptFileError(name + ": non-finite float sample");
            }
          } else if (fmt->bits == 16) {
            value = static_cast<std::int16_t>(ReadU16(p)) / 32768.0;
          } else {
            // Sign-extend the 24-bit value through the top of an int32.
            const auto raw = static_cast<std::int32_t>(
                (static_cast<std::uint32_t>(p[0]) << 8) |
                (static_cast<std::uint32_t>(p[1]) << 16) |
                (static_cast<std::uint32_t>(p[2]) << 24));
            value = (raw >> 8) / 8388608.0;
          }
          channels[c][i] = value;
        }
      }
      return AudioBuffer(std::move(channels),
                         static_cast<int>(fmt->sample_rate));
    }
    if (size > available) {
      throw CorruptFileError(name + ": truncated chunk");
    }
    pos = body + size + (size & 1u);
  }
  throw CorruptFileError(name + (fmt ? ": missing data chunk"
                                     : ": missing fmt chunk"));
}

void SaveWav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  const auto channels = static_cast<std::uint16_t>(buffer.num_channels());
  const std::size_t frames = buffer.num_frames();
  const std::uint64_t data_size =
      static_cast<std::uint64_t>(frames) * channels * sizeof(float);
  if (data_size > UINT32_MAX - 36) {
    throw PreconditionError("audio too long for a RIFF/WAVE file");
  }

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  PutU32(out, static_cast<std::uint32_t>(36 + data_size));
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, kFormatFloat);
  PutU16(out, channels);
  PutU32(out, static_cast<std::uint32_t>(buffer.sample_rate()));
  PutU32(out, static_cast<std::uint32_t>(buffer.sample_rate()) * channels * 4);
  PutU16(out, static_cast<std::uint16_t>(channels * 4));
  PutU16(out, 32);
  PutTag(out, "data");
  PutU32(out, static_cast<std::uint32_t>(data_size));
  for (std::size_t i = 0; i < frames; ++i) {
    for (int c = 0; c < channels; ++c) {
      PutU32(out, std::bit_cast<std::uint32_t>(
                         static_cast<float>(buffer.channel(c)[i])));
    }
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot write " + path.string());
  }
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw IoError("failed writing " + path.string());
  }
}

}  // namespace fxsearcher
