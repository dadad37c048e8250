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

#include "fxsearcher/fx_params.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fxsearcher/errors.h"
#include "json.hpp"

namespace fxsearcher {
namespace {

using nlohmann::json;
namespace pi = param_index;

constexpr std::array<std::string_view, kNumStages> kStageNames = {
    "equalizer", "distortion", "bitcrush", "pitch_shift", "delay", "reverb"};

double ToUnit(double value, ParamRange r) { return (value - r.lo) / (r.hi - r.lo); }

double FromUnit(double u, ParamRange r) {
  return std::clamp(r.lo + u * (r.hi - r.lo), r.lo, r.hi);
}

std::string FormatRangeError(std::string_view field, double value, ParamRange r) {
  std::ostringstream os;
  os << field << " = " << value << " is outside [" << r.lo << ", " << r.hi
     << "]";
  return os.str();
}

void CheckRange(std::string_view field, double value, ParamRange r) {
  if (!std::isfinite(value) || value < r.lo || value > r.hi) {
    throw PreconditionError(FormatRangeError(field, value, r));
  }
}

struct ScalarField {
  const char* name;
  double FxParams::*member;
  ParamRange range;
};

constexpr std::array<ScalarField, 7> kScalarFields = {{
    {"distortion_drive_db", &FxParams::distortion_drive_db, kDriveRangeDb},
    {"bitcrush_bit_depth", &FxParams::bitcrush_bit_depth, kBitDepthRange},
    {"pitch_shift_semitones", &FxParams::pitch_shift_semitones,
     kPitchRangeSemitones},
    {"delay_seconds", &FxParams::delay_seconds, kDelayRangeSeconds},
    {"reverb_room_size", &FxParams::reverb_room_size, kUnitRange},
    {"reverb_damping", &FxParams::reverb_damping, kUnitRange},
    {"reverb_wet_level", &FxParams::reverb_wet_level, kUnitRange},
}};

struct FlagField {
  const char* name;
  bool FxParams::*member;
};

constexpr std::array<FlagField, 4> kFlagFields = {{
    {"enable_distortion", &FxParams::enable_distortion},
    {"enable_bitcrush", &FxParams::enable_bitcrush},
    {"enable_pitch_shift", &FxParams::enable_pitch_shift},
    {"enable_delay", &FxParams::enable_delay},
}};

}  // namespace

UnitVector::UnitVector(const std::array<double, kNumParams>& coords)
    : coords_(coords) {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double v = coords_[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      std::ostringstream os;
      os << "unit vector coordinate " << i << " = " << v
         << " is outside [0, 1]";
      throw PreconditionError(os.str());
    }
  }
}

UnitVector UnitVector::FromValues(std::span<const double> coords) {
  if (coords.size() != kNumParams) {
    throw PreconditionError("unit vector needs " + std::to_string(kNumParams) +
                            " coordinates, got " +
                            std::to_string(coords.size()));
  }
  std::array<double, kNumParams> a{};
  std::copy(coords.begin(), coords.end(), a.begin());
  return UnitVector(a);
}

FxParams DecodeParams(const UnitVector& u) {
  FxParams p;
  for (int b = 0; b < kNumEqBands; ++b) {
    p.eq_gain_db[b] = FromUnit(u[pi::kEqFirst + b], kEqGainRangeDb);
  }
  p.distortion_drive_db = FromUnit(u[pi::kDistortionDrive], kDriveRangeDb);
  p.bitcrush_bit_depth = FromUnit(u[pi::kBitcrushDepth], kBitDepthRange);
  p.pitch_shift_semitones = FromUnit(u[pi::kPitchShift], kPitchRangeSemitones);
  p.delay_seconds = FromUnit(u[pi::kDelayTime], kDelayRangeSeconds);
  p.reverb_room_size = FromUnit(u[pi::kReverbRoomSize], kUnitRange);
  p.reverb_damping = FromUnit(u[pi::kReverbDamping], kUnitRange);
  p.reverb_wet_level = FromUnit(u[pi::kReverbWetLevel], kUnitRange);
  p.enable_distortion = u[pi::kEnableDistortion] >= kActivationThreshold;
  p.enable_bitcrush = u[pi::kEnableBitcrush] >= kActivationThreshold;
  p.enable_pitch_shift = u[pi::kEnablePitchShift] >= kActivationThreshold;
  p.enable_delay = u[pi::kEnableDelay] >= kActivationThreshold;
  return p;
}

UnitVector EncodeParams(const FxParams& p) {
  ValidateParams(p);
  std::array<double, kNumParams> c{};
  for (int b = 0; b < kNumEqBands; ++b) {
    c[pi::kEqFirst + b] = ToUnit(p.eq_gain_db[b], kEqGainRangeDb);
  }
  c[pi::kDistortionDrive] = ToUnit(p.distortion_drive_db, kDriveRangeDb);
  c[pi::kBitcrushDepth] = ToUnit(p.bitcrush_bit_depth, kBitDepthRange);
  c[pi::kPitchShift] = ToUnit(p.pitch_shift_semitones, kPitchRangeSemitones);
  c[pi::kDelayTime] = ToUnit(p.delay_seconds, kDelayRangeSeconds);
  c[pi::kReverbRoomSize] = ToUnit(p.reverb_room_size, kUnitRange);
  c[pi::kReverbDamping] = ToUnit(p.reverb_damping, kUnitRange);
  c[pi::kReverbWetLevel] = ToUnit(p.reverb_wet_level, kUnitRange);
  c[pi::kEnableDistortion] = p.enable_distortion ? 1.0 : 0.0;
  c[pi::kEnableBitcrush] = p.enable_bitcrush ? 1.0 : 0.0;
  c[pi::kEnablePitchShift] = p.enable_pitch_shift ? 1.0 : 0.0;
  c[pi::kEnableDelay] = p.enable_delay ? 1.0 : 0.0;
  for (double& v : c) v = std::clamp(v, 0.0, 1.0);
  return UnitVector(c);
}

void ValidateParams(const FxParams& p) {
  for (int b = 0; b < kNumEqBands; ++b) {
    CheckRange("eq_gain_db[" + std::to_string(b) + "]", p.eq_gain_db[b],
               kEqGainRangeDb);
  }
  for (const auto& f : kScalarFields) CheckRange(f.name, p.*(f.member), f.range);
}

FxParams NeutralParams() {
  FxParams p;
  p.eq_gain_db.fill(0.0);
  p.distortion_drive_db = 15.0;
  p.bitcrush_bit_depth = 10.0;
  p.pitch_shift_semitones = 0.0;
  p.delay_seconds = 0.525;
  p.reverb_room_size = 0.5;
  p.reverb_damping = 0.5;
  p.reverb_wet_level = 0.0;
  return p;
}

std::string ParamsToJson(const FxParams& p) {
  json j;
  j["schema_version"] = kParamsSchemaVersion;
  j["eq_gain_db"] = p.eq_gain_db;
  for (const auto& f : kScalarFields) j[f.name] = p.*(f.member);
  for (const auto& f : kFlagFields) j[f.name] = p.*(f.member);
  json ranges;
  ranges["eq_gain_db"] = {kEqGainRangeDb.lo, kEqGainRangeDb.hi};
  for (const auto& f : kScalarFields) ranges[f.name] = {f.range.lo, f.range.hi};
  j["ranges"] = ranges;
  return j.dump(2) + "\n";
}

FxParams ParamsFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("params: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("params: expected a JSON object");
  if (!j.contains("schema_version") ||
      !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != kParamsSchemaVersion) {
    throw ConfigError("params: schema_version mismatch (expected " +
                      std::to_string(kParamsSchemaVersion) + ")");
  }
  auto number = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw ConfigError(std::string("params: missing numeric field ") + key);
    }
    return j[key].get<double>();
  };
  FxParams p;
  if (!j.contains("eq_gain_db") || !j["eq_gain_db"].is_array() ||
      j["eq_gain_db"].size() != kNumEqBands) {
    throw ConfigError("params: eq_gain_db must be an array of 15 numbers");
  }
  for (int b = 0; b < kNumEqBands; ++b) {
    const auto& v = j["eq_gain_db"][b];
    if (!v.is_number()) {
      throw ConfigError("params: eq_gain_db must be an array of 15 numbers");
    }
    p.eq_gain_db[b] = v.get<double>();
  }
  for (const auto& f : kScalarFields) p.*(f.member) = number(f.name);
  for (const auto& f : kFlagFields) {
    if (!j.contains(f.name) || !j[f.name].is_boolean()) {
      throw ConfigError(std::string("params: missing boolean field ") + f.name);
    }
    p.*(f.member) = j[f.name].get<bool>();
  }
  try {
    ValidateParams(p);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
  return p;
}

StageSet StageSet::All() {
  StageSet s;
  s.bits_.set();
  return s;
}

std::vector<std::string> StageSet::Names() const {
  std::vector<std::string> names;
  for (int i = 0; i < kNumStages; ++i) {
    if (bits_.test(i)) names.emplace_back(kStageNames[i]);
  }
  return names;
}

std::string_view StageName(Stage s) {
  return kStageNames[static_cast<std::size_t>(s)];
}

StageSet ParseStages(std::string_view text) {
  StageSet set;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view item = text.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) {
      const auto it = std::find(kStageNames.begin(), kStageNames.end(), item);
      if (it == kStageNames.end()) {
        throw ConfigError("unknown stage '" + std::string(item) +
                          "' (expected one of equalizer, distortion, bitcrush, "
                          "pitch_shift, delay, reverb)");
      }
      set.Add(static_cast<Stage>(it - kStageNames.begin()));
    }
    start = comma + 1;
  }
  if (set.empty()) throw ConfigError("stage list is empty");
  return set;
}

}  // namespace fxsearcher
