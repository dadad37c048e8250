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

#ifndef FXSEARCHER_FX_PARAMS_H_
#define FXSEARCHER_FX_PARAMS_H_

#include <array>
#include <bitset>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fxsearcher {

inline constexpr int kNumEqBands = 15;
// 15 EQ gains, drive, bit depth, pitch, delay time, 3 reverb settings and
// 4 activation flags.
inline constexpr int kNumParams = 26;
inline constexpr int kParamsSchemaVersion = 1;

// Index of each coordinate inside a UnitVector.
namespace param_index {
inline constexpr int kEqFirst = 0;
inline constexpr int kDistortionDrive = 15;
inline constexpr int kBitcrushDepth = 16;
inline constexpr int kPitchShift = 17;
inline constexpr int kDelayTime = 18;
inline constexpr int kReverbRoomSize = 19;
inline constexpr int kReverbDamping = 20;
inline constexpr int kReverbWetLevel = 21;
inline constexpr int kEnableDistortion = 22;
inline constexpr int kEnableBitcrush = 23;
inline constexpr int kEnablePitchShift = 24;
inline constexpr int kEnableDelay = 25;
}  // namespace param_index

struct ParamRange {
  double lo;
  double hi;
};

inline constexpr ParamRange kEqGainRangeDb{-12.0, 12.0};
inline constexpr ParamRange kDriveRangeDb{0.0, 30.0};
inline constexpr ParamRange kBitDepthRange{4.0, 16.0};
inline constexpr ParamRange kPitchRangeSemitones{-12.0, 12.0};
inline constexpr ParamRange kDelayRangeSeconds{0.05, 1.0};
inline constexpr ParamRange kUnitRange{0.0, 1.0};

// Activation coordinates at or above this value switch their effect on.
inline constexpr double kActivationThreshold = 0.5;

struct FxParams {
  std::array<double, kNumEqBands> eq_gain_db{};
  double distortion_drive_db = 0.0;
  double bitcrush_bit_depth = 16.0;
  double pitch_shift_semitones = 0.0;
  double delay_seconds = 0.05;
  double reverb_room_size = 0.0;
  double reverb_damping = 0.0;
  double reverb_wet_level = 0.0;
  bool enable_distortion = false;
  bool enable_bitcrush = false;
  bool enable_pitch_shift = false;
  bool enable_delay = false;

  friend bool operator==(const FxParams&, const FxParams&) = default;
};

// Point of the normalized search space [0, 1]^26, ordered as param_index.
class UnitVector {
 public:
  UnitVector() { coords_.fill(0.0); }
  // Throws PreconditionError unless every value is finite and in [0, 1].
  explicit UnitVector(const std::array<double, kNumParams>& coords);
  // Throws PreconditionError unless exactly 26 values are given.
  static UnitVector FromValues(std::span<const double> coords);

  double operator[](std::size_t i) const { return coords_[i]; }
  const std::array<double, kNumParams>& coords() const { return coords_; }

 private:
  std::array<double, kNumParams> coords_;
};

// Affine map of every scalar coordinate onto its range; activation
// coordinates >= 0.5 enable their effect.
FxParams DecodeParams(const UnitVector& u);

// Inverse affine map; flags encode as exactly 0 or 1.
UnitVector EncodeParams(const FxParams& params);

// Throws PreconditionError naming the first field outside its range.
void ValidateParams(const FxParams& params);

// Parameters that make the chain an identity: EQ flat, reverb dry, all
// optional effects off.
FxParams NeutralParams();

// Flat JSON object with one key per FxParams field, plus "schema_version" and
// a "ranges" table documenting the bounds of every scalar.
std::string ParamsToJson(const FxParams& params);

// Throws ConfigError on malformed JSON, schema mismatch, missing fields or
// values outside their range.
FxParams ParamsFromJson(std::string_view text);

enum class Stage {
  kEqualizer = 0,
  kDistortion,
  kBitcrush,
  kPitchShift,
  kDelay,
  kReverb,
};
inline constexpr int kNumStages = 6;

class StageSet {
 public:
  StageSet() = default;
  static StageSet All();
  StageSet& Add(Stage s) {
    bits_.set(static_cast<std::size_t>(s));
    return *this;
  }
  bool Contains(Stage s) const { return bits_.test(static_cast<std::size_t>(s)); }
  bool empty() const { return bits_.none(); }
  std::vector<std::string> Names() const;

  friend bool operator==(const StageSet&, const StageSet&) = default;

 private:
  std::bitset<kNumStages> bits_;
};

std::string_view StageName(Stage s);
// Parses a comma-separated list such as "equalizer,reverb". Throws ConfigError
// on unknown or empty lists.
StageSet ParseStages(std::string_view text);

}  // namespace fxsearcher

#endif  // FXSEARCHER_FX_PARAMS_H_
