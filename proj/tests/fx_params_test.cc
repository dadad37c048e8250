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

#include <array>
#include <random>
#include <string>

#include "fxsearcher/errors.h"
#include "fxsearcher/fx_params.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace fxsearcher {
namespace {

namespace pi = param_index;

UnitVector Filled(double v) {
  std::array<double, kNumParams> a;
  a.fill(v);
  return UnitVector(a);
}

TEST(UnitVectorTest, RejectsOutOfRangeAndWrongLength) {
  std::array<double, kNumParams> a{};
  a[3] = 1.0000001;
  EXPECT_THROW(UnitVector{a}, PreconditionError);
  a[3] = -0.1;
  EXPECT_THROW(UnitVector{a}, PreconditionError);
  a[3] = std::nan("");
  EXPECT_THROW(UnitVector{a}, PreconditionError);
  const std::vector<double> short_vec(25, 0.5);
  EXPECT_THROW(UnitVector::FromValues(short_vec), PreconditionError);
}

TEST(DecodeParamsTest, AllZerosGivesLowerBoundsAndDisabled) {
  const FxParams p = DecodeParams(Filled(0.0));
  for (double g : p.eq_gain_db) EXPECT_EQ(g, -12.0);
  EXPECT_EQ(p.distortion_drive_db, 0.0);
  EXPECT_EQ(p.bitcrush_bit_depth, 4.0);
  EXPECT_EQ(p.pitch_shift_semitones, -12.0);
  EXPECT_EQ(p.delay_seconds, 0.05);
  EXPECT_EQ(p.reverb_room_size, 0.0);
  EXPECT_EQ(p.reverb_damping, 0.0);
  EXPECT_EQ(p.reverb_wet_level, 0.0);
  EXPECT_FALSE(p.enable_distortion);
  EXPECT_FALSE(p.enable_bitcrush);
  EXPECT_FALSE(p.enable_pitch_shift);
  EXPECT_FALSE(p.enable_delay);
}

TEST(DecodeParamsTest, AllHalvesGivesMidpointsAndEnabled) {
  const FxParams p = DecodeParams(Filled(0.5));
  for (double g : p.eq_gain_db) EXPECT_DOUBLE_EQ(g, 0.0);
  EXPECT_DOUBLE_EQ(p.distortion_drive_db, 15.0);
  EXPECT_DOUBLE_EQ(p.bitcrush_bit_depth, 10.0);
  EXPECT_DOUBLE_EQ(p.pitch_shift_semitones, 0.0);
  EXPECT_DOUBLE_EQ(p.delay_seconds, 0.525);
  EXPECT_DOUBLE_EQ(p.reverb_room_size, 0.5);
  EXPECT_DOUBLE_EQ(p.reverb_damping, 0.5);
  EXPECT_DOUBLE_EQ(p.reverb_wet_level, 0.5);
  EXPECT_TRUE(p.enable_distortion);
  EXPECT_TRUE(p.enable_bitcrush);
  EXPECT_TRUE(p.enable_pitch_shift);
  EXPECT_TRUE(p.enable_delay);
}

TEST(DecodeParamsTest, ActivationThresholdIsInclusive) {
  std::array<double, kNumParams> a;
  a.fill(0.5);
  a[pi::kEnableDistortion] = 0.4999;
  a[pi::kEnableDelay] = 0.5;
  const FxParams p = DecodeParams(UnitVector(a));
  EXPECT_FALSE(p.enable_distortion);
  EXPECT_TRUE(p.enable_delay);
}

TEST(DecodeParamsTest, OnesGiveUpperBounds) {
  const FxParams p = DecodeParams(Filled(1.0));
  for (double g : p.eq_gain_db) EXPECT_EQ(g, 12.0);
  EXPECT_EQ(p.distortion_drive_db, 30.0);
  EXPECT_EQ(p.bitcrush_bit_depth, 16.0);
  EXPECT_EQ(p.pitch_shift_semitones, 12.0);
  EXPECT_EQ(p.delay_seconds, 1.0);
  EXPECT_EQ(p.reverb_wet_level, 1.0);
}

TEST(EncodeParamsTest, MidRangeParamsEncodeToHalvesWithActivationsAtOne) {
  FxParams p;
  p.eq_gain_db.fill(0.0);
  p.distortion_drive_db = 15.0;
  p.bitcrush_bit_depth = 10.0;
  p.pitch_shift_semitones = 0.0;
  p.delay_seconds = 0.525;
  p.reverb_room_size = p.reverb_damping = p.reverb_wet_level = 0.5;
  p.enable_distortion = p.enable_bitcrush = p.enable_pitch_shift = p.enable_delay = true;
  const UnitVector u = EncodeParams(p);
  for (int i = 0; i < pi::kEnableDistortion; ++i) EXPECT_NEAR(u[i], 0.5, 1e-15) << i;
  for (int i = pi::kEnableDistortion; i < kNumParams; ++i) EXPECT_EQ(u[i], 1.0);
}

TEST(EncodeParamsTest, LowerBoundsEncodeToZero) {
  const UnitVector u = EncodeParams(DecodeParams(Filled(0.0)));
  for (int i = 0; i < kNumParams; ++i) EXPECT_EQ(u[i], 0.0) << i;
}

TEST(EncodeParamsTest, RandomRoundTrips) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, kNumParams> a;
    for (double& v : a) v = u01(rng);
    const UnitVector u(a);
    const FxParams p = DecodeParams(u);
    const UnitVector back = EncodeParams(p);
    for (int i = 0; i < pi::kEnableDistortion; ++i) {
      EXPECT_NEAR(back[i], u[i], 1e-12);
    }
    for (int i = pi::kEnableDistortion; i < kNumParams; ++i) {
      EXPECT_EQ(back[i], u[i] >= 0.5 ? 1.0 : 0.0);
    }
    // decode(encode(p)) == p exactly, modulo floating-point on the affine map.
    const FxParams again = DecodeParams(back);
    EXPECT_EQ(again.enable_bitcrush, p.enable_bitcrush);
    EXPECT_NEAR(again.delay_seconds, p.delay_seconds, 1e-12);
  }
}

TEST(EncodeParamsTest, RejectsOutOfRangeParams) {
  FxParams p = NeutralParams();
  p.bitcrush_bit_depth = 3.0;
  EXPECT_THROW(EncodeParams(p), PreconditionError);
}

TEST(ValidateParamsTest, MessageNamesFieldAndRange) {
  FxParams p = NeutralParams();
  p.delay_seconds = 2.0;
  try {
    ValidateParams(p);
    FAIL() << "expected an error";
  } catch (const PreconditionError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("delay_seconds"), std::string::npos) << msg;
    EXPECT_NE(msg.find("[0.05, 1]"), std::string::npos) << msg;
  }
}

TEST(ParamsJsonTest, RoundTripIsExact) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<double, kNumParams> a;
    for (double& v : a) v = u01(rng);
    const FxParams p = DecodeParams(UnitVector(a));
    EXPECT_EQ(ParamsFromJson(ParamsToJson(p)), p);
  }
}

TEST(ParamsJsonTest, CarriesAllFieldsSchemaAndRanges) {
  const auto j = nlohmann::json::parse(ParamsToJson(NeutralParams()));
  EXPECT_EQ(j.at("schema_version"), kParamsSchemaVersion);
  EXPECT_EQ(j.at("eq_gain_db").size(), 15u);
  int scalars = 15;
  for (const char* k : {"distortion_drive_db", "bitcrush_bit_depth",
                        "pitch_shift_semitones", "delay_seconds", "reverb_room_size",
                        "reverb_damping", "reverb_wet_level"}) {
    ASSERT_TRUE(j.contains(k)) << k;
    ++scalars;
    EXPECT_TRUE(j.at("ranges").contains(k)) << k;
  }
  int flags = 0;
  for (const char* k :
       {"enable_distortion", "enable_bitcrush", "enable_pitch_shift", "enable_delay"}) {
    ASSERT_TRUE(j.at(k).is_boolean()) << k;
    ++flags;
  }
  EXPECT_EQ(scalars + flags, kNumParams);
  EXPECT_EQ(j.at("ranges").at("bitcrush_bit_depth"), nlohmann::json({4.0, 16.0}));
}

TEST(ParamsJsonTest, RejectsSchemaMismatchMissingFieldsAndOutOfRange) {
  auto j = nlohmann::json::parse(ParamsToJson(NeutralParams()));
  auto bad = j;
  bad["schema_version"] = 2;
  EXPECT_THROW(ParamsFromJson(bad.dump()), ConfigError);
  bad = j;
  bad.erase("reverb_damping");
  EXPECT_THROW(ParamsFromJson(bad.dump()), ConfigError);
  bad = j;
  bad["eq_gain_db"] = {1.0, 2.0};
  EXPECT_THROW(ParamsFromJson(bad.dump()), ConfigError);
  bad = j;
  bad["enable_delay"] = 1;
  EXPECT_THROW(ParamsFromJson(bad.dump()), ConfigError);
  EXPECT_THROW(ParamsFromJson("{not json"), ConfigError);
  bad = j;
  bad["eq_gain_db"][4] = 13.0;
  try {
    ParamsFromJson(bad.dump());
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("eq_gain_db[4]"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("[-12, 12]"), std::string::npos);
  }
}

TEST(StageSetTest, ParsesNamesAndRejectsUnknown) {
  const StageSet s = ParseStages("equalizer,reverb");
  EXPECT_TRUE(s.Contains(Stage::kEqualizer));
  EXPECT_TRUE(s.Contains(Stage::kReverb));
  EXPECT_FALSE(s.Contains(Stage::kDelay));
  EXPECT_EQ(s.Names(), (std::vector<std::string>{"equalizer", "reverb"}));
  EXPECT_EQ(ParseStages("equalizer,distortion,bitcrush,pitch_shift,delay,reverb"),
            StageSet::All());
  EXPECT_THROW(ParseStages("equalizer,chorus"), ConfigError);
  EXPECT_THROW(ParseStages(""), ConfigError);
}

}  // namespace
}  // namespace fxsearcher
