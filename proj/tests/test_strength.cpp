// Copyright 2026 The ergofatigue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cstring>
#include <fstream>
#include <sstream>

#include "ergo/strength.hpp"
#include "table_data.hpp"

namespace ergo {
namespace {

namespace td = testdata;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string kDefaultFile = std::string(ERGO_DATA_DIR) + "/strength_default.txt";

TEST(Strength, ShoulderCalibration) {
  const auto model = StrengthModel::defaults();
  const auto s = shoulder_flexion_strength(model, 30, 90, Gender::Male);
  EXPECT_NEAR(s.mean, 75.6, 1.5);
  EXPECT_NEAR(s.sigma, 17.5, 1.0);
  EXPECT_NEAR(s.mean, td::kShoulderStrength.mean, 0.02 * td::kShoulderStrength.mean);
  EXPECT_NEAR(s.sigma, td::kShoulderStrength.sigma, 0.06 * td::kShoulderStrength.sigma);
  EXPECT_NEAR(s.mean + 2 * s.sigma, 110.6, 2.0);
}

TEST(Strength, ElbowCalibration) {
  const auto model = StrengthModel::defaults();
  const auto e = elbow_flexion_strength(model, 30, 90, Gender::Male);
  EXPECT_NEAR(e.mean, 75.1, 2.0);
  EXPECT_NEAR(e.sigma, 18.5, 1.5);
  EXPECT_NEAR(e.mean, td::kElbowStrength.mean, 0.02 * td::kElbowStrength.mean);
  EXPECT_NEAR(e.sigma, td::kElbowStrength.sigma, 0.06 * td::kElbowStrength.sigma);
  EXPECT_NEAR(e.mean - 2 * e.sigma, 38.2, 1.0);
}

TEST(Strength, FemaleIsWeaker) {
  const auto model = StrengthModel::defaults();
  EXPECT_LT(shoulder_flexion_strength(model, 30, 90, Gender::Female).mean,
            shoulder_flexion_strength(model, 30, 90, Gender::Male).mean);
}

TEST(Strength, OutOfBoxNamesJoint) {
  const auto model = StrengthModel::defaults();
  try {
    elbow_flexion_strength(model, 30, 170, Gender::Male);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("elbow"), std::string::npos);
  }
  EXPECT_THROW(shoulder_flexion_strength(model, -90, 90, Gender::Male), DomainError);
}

TEST(Percentile, Values) {
  EXPECT_NEAR(percentile_strength(75.620, 17.476, -2).value, 40.668, 1e-12);
  EXPECT_NEAR(percentile_strength(75.141, 18.470, 1).value, 93.611, 1e-12);
  EXPECT_EQ(percentile_strength(75.620, 17.476, 0).value, 75.620);
  EXPECT_THROW(percentile_strength(75.620, 17.476, 3), DomainError);
  auto tail = percentile_strength(10.0, 6.0, -2);
  EXPECT_TRUE(tail.nonphysical);
}

TEST(Percentile, Ordering) {
  const auto model = StrengthModel::defaults();
  for (double s = -60; s <= 180; s += 15) {
    for (double e = 0; e <= 150; e += 15) {
      for (auto joint : {StrengthJoint::ShoulderFlexion, StrengthJoint::ElbowFlexion}) {
        const auto est = model.evaluate(joint, s, e, Gender::Male);
        ASSERT_GT(est.mean, 0);
        for (int z = -2; z < 2; ++z) {
          EXPECT_LT(percentile_strength(est, z).value, percentile_strength(est, z + 1).value);
        }
      }
    }
  }
}

TEST(Surface, SinglePointMatchesEvaluation) {
  const auto model = StrengthModel::defaults();
  auto rows = strength_surface(model, StrengthJoint::ElbowFlexion, Gender::Male, {30, 30, 1},
                               {90, 90, 1});
  ASSERT_EQ(rows.size(), 1u);
  const auto e = elbow_flexion_strength(model, 30, 90, Gender::Male);
  EXPECT_EQ(rows[0].mean, e.mean);
  EXPECT_EQ(rows[0].minus_2sigma, e.mean - 2 * e.sigma);
}

TEST(Surface, RowMajorFiniteAndSpread) {
  const auto model = StrengthModel::defaults();
  auto rows = strength_surface(model, StrengthJoint::ShoulderFlexion, Gender::Female,
                               {-60, 180, 25}, {0, 150, 16});
  ASSERT_EQ(rows.size(), 25u * 16u);
  EXPECT_EQ(rows[1].alpha_s, -60);
  EXPECT_EQ(rows[1].alpha_e, 10);
  EXPECT_EQ(rows[16].alpha_s, -50);
  bool has_calibration_point = false;
  for (const auto& r : rows) {
    EXPECT_TRUE(std::isfinite(r.mean));
    EXPECT_GT(r.mean, 0);
    const double sigma = model.regression(StrengthJoint::ShoulderFlexion).cv * r.mean;
    EXPECT_NEAR(r.plus_2sigma - r.minus_2sigma, 4 * sigma, 1e-9);
    if (r.alpha_s == 30 && r.alpha_e == 90) has_calibration_point = true;
  }
  EXPECT_TRUE(has_calibration_point);
  EXPECT_THROW(strength_surface(model, StrengthJoint::ShoulderFlexion, Gender::Male, {0, 1, 0},
                                {0, 1, 2}),
               DomainError);
}

TEST(Surface, CalibrationRow) {
  const auto model = StrengthModel::defaults();
  auto rows = strength_surface(model, StrengthJoint::ShoulderFlexion, Gender::Male, {0, 60, 3},
                               {60, 120, 3});
  EXPECT_EQ(rows[4].alpha_s, 30);
  EXPECT_EQ(rows[4].alpha_e, 90);
  EXPECT_NEAR(rows[4].mean, td::kShoulderStrength.mean, 0.02 * td::kShoulderStrength.mean);
}

TEST(Strength, Deterministic) {
  const auto a = StrengthModel::defaults().evaluate(StrengthJoint::ElbowFlexion, 12.5, 77.25, Gender::Male);
  const auto b = StrengthModel::defaults().evaluate(StrengthJoint::ElbowFlexion, 12.5, 77.25, Gender::Male);
  EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
}

TEST(StrengthFile, ShippedFileEqualsDefaults) {
  EXPECT_EQ(StrengthModel::load(kDefaultFile), StrengthModel::defaults());
}

TEST(StrengthFile, RoundTrip) {
  const auto model = StrengthModel::defaults();
  EXPECT_EQ(StrengthModel::parse(model.to_text()), model);
}

TEST(StrengthFile, ChecksumMismatch) {
  std::string text = read_file(kDefaultFile);
  const auto pos = text.find("cv 0.2311");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 9, "cv 0.2312");
  EXPECT_THROW(StrengthModel::parse(text), ParseError);
}

TEST(StrengthFile, Diagnostics) {
  const std::string body = "version 1\njoint knee\nend\n";
  try {
    StrengthModel::parse(body);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(StrengthModel::parse("version 2\n"), ParseError);
  EXPECT_THROW(StrengthModel::parse(""), ParseError);
  // Valid body without checksum line.
  std::string text = StrengthModel::defaults().to_text();
  text.resize(text.find("checksum"));
  EXPECT_THROW(StrengthModel::parse(text), ParseError);
}

TEST(StrengthFile, RejectsNonPositiveRegression) {
  JointRegression bad{{{-5.0, 0, 0}}, 1.0, 1.0, 0.2, {0, 10, 0, 10}};
  StrengthModel m(bad, StrengthModel::defaults().regression(StrengthJoint::ElbowFlexion));
  EXPECT_THROW(StrengthModel::parse(m.to_text()), ParseError);
}

}  // namespace
}  // namespace ergo
