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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ergo/fatigue.hpp"
#include "ergo/posture.hpp"
#include "table_data.hpp"

namespace ergo {
namespace {

SweepContext drilling_context(const ComfortSpec& comfort = ComfortSpec::defaults()) {
  const auto seg = segment_params(OperatorProfile<double>{70, 1.70});
  const auto chain = right_arm_chain(seg);
  SweepContext ctx{chain, arm_link_inertia(chain, seg)};
  ctx.comfort = comfort;
  ctx.tool.com_offset = {0.01737, 0.01003};
  ctx.tool.bit_offset = derive_tool_offset(chain.upper_arm_length(), chain.forearm_length(),
                                           SagittalAngles<double>{units::deg_to_rad(22.0),
                                                                  units::deg_to_rad(98.0)},
                                           0.53);
  ctx.load = {2.5, 24.5};
  return ctx;
}

const SweepSpec kGrid{0.40, 0.65, 0.005, 1, 1};

std::vector<PostureCandidate> synthetic(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.01, 1);
  std::vector<PostureCandidate> out(n);
  for (auto& c : out) {
    c.f_fatigue = u(rng);
    c.f_discomfort = u(rng);
  }
  return out;
}

std::size_t argmin_of(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

TEST(StressIndex, Values) {
  EXPECT_EQ(stress_index(Eigen::Vector2d(0, 0), Eigen::Vector2d(75.62, 75.141)), 0.0);
  const Eigen::Vector2d tau(testdata::kTorques[0].shoulder, testdata::kTorques[0].elbow);
  const Eigen::Vector2d cap(testdata::kShoulderStrength.mean, testdata::kElbowStrength.mean);
  EXPECT_NEAR(stress_index(tau, cap), 0.10254, 5e-6);
  EXPECT_NEAR(stress_index((3 * tau).eval(), cap), 9 * stress_index(tau, cap), 1e-12);
  EXPECT_THROW(stress_index(tau, Eigen::Vector2d(1, 0)), DomainError);
  EXPECT_THROW(stress_index(Eigen::VectorXd(tau), Eigen::VectorXd::Ones(3)), DomainError);
}

TEST(StressIndex, RanksLikeFatigueIndex) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ratio(0.01, 0.99);
  for (int i = 0; i < 500; ++i) {
    const double a = ratio(rng), b = ratio(rng);
    const double sa = stress_index(Eigen::Matrix<double, 1, 1>(a * 80), Eigen::Matrix<double, 1, 1>(80));
    const double sb = stress_index(Eigen::Matrix<double, 1, 1>(b * 80), Eigen::Matrix<double, 1, 1>(80));
    for (auto form : {IndexForm::TableConsistent, IndexForm::Literal}) {
      const double ua = fatigue_index(80.0, a * 80, 0.5, {}, form);
      const double ub = fatigue_index(80.0, b * 80, 0.5, {}, form);
      EXPECT_EQ(sa < sb, ua < ub);
    }
  }
}

TEST(Discomfort, BarrierReferenceValues) {
  const JointComfort c{"elbow", 0, 145, 90, 1};
  const auto at_top = comfort_barriers(145.0, c.lower, c.upper);
  EXPECT_NEAR(at_top.upper / std::pow(1.5, 100), 1.0, 1e-12);
  EXPECT_NEAR(at_top.upper, 4.07e17, 0.01e17);
  const auto mid = comfort_barriers(72.5, c.lower, c.upper);
  EXPECT_NEAR(mid.upper / std::pow(1 + 0.5 * std::cos(2.5), 100), 1.0, 1e-12);
  EXPECT_NEAR(mid.upper, 5.94e-23, 0.01e-23);
  EXPECT_DOUBLE_EQ(mid.upper, mid.lower);
  // Far tail of the opposite barrier.
  EXPECT_NEAR(at_top.lower / std::pow(1 + 0.5 * std::cos(5.0), 100), 1.0, 1e-12);
  EXPECT_NEAR(at_top.lower, 5.8e5, 0.1e5);
  EXPECT_THROW(comfort_barriers(1.0, 2.0, 2.0), DomainError);
}

TEST(Discomfort, NeutralLeavesOnlyBarriers) {
  const JointComfort c{"shoulder", -60, 180, 60, 1};
  const auto b = comfort_barriers(60.0, c.lower, c.upper);
  EXPECT_DOUBLE_EQ(joint_discomfort(60.0, c, 1e6), b.upper + b.lower);
}

TEST(Discomfort, IndexSumsJoints) {
  const auto spec = ComfortSpec::anatomical();
  const Eigen::Vector2d q(20, 100);
  EXPECT_DOUBLE_EQ(discomfort_index(q, spec),
                   joint_discomfort(20.0, spec.joints[0], 1e6) + joint_discomfort(100.0, spec.joints[1], 1e6));
  EXPECT_THROW(discomfort_index(Eigen::Vector3d(0, 0, 0), spec), DomainError);
}

TEST(Discomfort, BarrierGrowsMonotonicallyNearLimits) {
  for (const auto& spec : {ComfortSpec::defaults(), ComfortSpec::anatomical()}) {
    for (const auto& c : spec.joints) {
      const double range = c.upper - c.lower;
      double prev_hi = -1, prev_lo = -1;
      for (int i = 0; i <= 200; ++i) {
        const double f = 0.98 + 0.02 * i / 200;
        const double hi = joint_discomfort(c.lower + f * range, c, spec.barrier);
        const double lo = joint_discomfort(c.upper - f * range, c, spec.barrier);
        EXPECT_GT(hi, prev_hi);
        EXPECT_GT(lo, prev_lo);
        prev_hi = hi;
        prev_lo = lo;
      }
      EXPECT_GT(prev_hi, 1e17);
      EXPECT_GT(prev_lo, 1e17);
    }
  }
}

TEST(InverseKinematics, FullReachIsStraight) {
  const double lu = 0.3162, lf = 0.2482;
  const auto a = ik_two_link(Eigen::Vector2d(lu + lf, 0), lu, lf);
  EXPECT_NEAR(a.elbow, 0, 1e-6);
  EXPECT_NEAR(a.shoulder, std::numbers::pi / 2, 1e-9);
}

TEST(InverseKinematics, RightAngleExample) {
  const double lu = 0.3162, lf = 0.2482;
  const Eigen::Vector2d target(lu, -lf);
  // Elbow straight ahead at shoulder height, forearm hanging down.
  const auto up = ik_two_link(target, lu, lf, IkBranch::ElbowUp);
  EXPECT_NEAR(units::rad_to_deg(up.shoulder), 90, 1e-9);
  EXPECT_NEAR(std::abs(units::rad_to_deg(up.elbow)), 90, 1e-9);
  const auto [elbow, grip] = sagittal_points(lu, lf, up);
  EXPECT_NEAR(elbow.x(), lu, 1e-12);
  EXPECT_NEAR(elbow.y(), 0, 1e-12);
  EXPECT_LT((grip - target).norm(), 1e-12);

  auto chain = right_arm_chain(lu, lf);
  chain.limits[3] = {-std::numbers::pi, std::numbers::pi};
  const auto pose = forward_kinematics(chain, sagittal_posture(up.shoulder, up.elbow));
  EXPECT_NEAR(pose.grip.x(), target.x(), 1e-9);
  EXPECT_NEAR(pose.grip.z(), target.y(), 1e-9);
}

TEST(InverseKinematics, BothBranchesReachTarget) {
  const double lu = 0.3162, lf = 0.2482;
  auto chain = right_arm_chain(lu, lf);
  for (auto& l : chain.limits) l = {-2 * std::numbers::pi, 2 * std::numbers::pi};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> r(std::abs(lu - lf) + 1e-3, lu + lf - 1e-3), th(-3.1, 3.1);
  for (int i = 0; i < 500; ++i) {
    const double rho = r(rng), t = th(rng);
    const Eigen::Vector2d target(rho * std::cos(t), rho * std::sin(t));
    for (auto branch : {IkBranch::ElbowDown, IkBranch::ElbowUp}) {
      const auto a = ik_two_link(target, lu, lf, branch);
      const auto pose = forward_kinematics(chain, sagittal_posture(a.shoulder, a.elbow));
      EXPECT_NEAR(pose.grip.x(), target.x(), 1e-9);
      EXPECT_NEAR(pose.grip.z(), target.y(), 1e-9);
      EXPECT_EQ(a.elbow >= 0, branch == IkBranch::ElbowDown);
    }
  }
}

TEST(InverseKinematics, UnreachableReportsInterval) {
  try {
    ik_two_link(Eigen::Vector2d(1.0, 0), 0.3162, 0.2482);
    FAIL();
  } catch (const DomainError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("0.068"), std::string::npos);
    EXPECT_NE(msg.find("0.564"), std::string::npos);
  }
  EXPECT_THROW(ik_two_link(Eigen::Vector2d(0.01, 0), 0.3162, 0.2482), DomainError);
}

TEST(ToolOffset, CalibrationPostureHitsDistance) {
  const auto ctx = drilling_context();
  EXPECT_NEAR(ctx.tool.bit_offset.x(), 0.19660, 5e-5);
  EXPECT_NEAR(ctx.tool.bit_offset.y(), 0.16908, 5e-5);
  const auto c = evaluate_candidate(0.53, ctx);
  EXPECT_NEAR(c.shoulder_deg, 22, 1e-9);
  EXPECT_NEAR(c.elbow_deg, 98, 1e-9);
}

TEST(CombinedObjective, Properties) {
  std::mt19937_64 rng(11);
  auto cands = synthetic(rng, 40);
  EXPECT_NEAR(combined_objective({cands[0]}, 0.3, 0.9)[0], 1.2, 1e-15);
  const auto f10 = combined_objective(cands, 1, 0);
  std::size_t best_fatigue = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].f_fatigue < cands[best_fatigue].f_fatigue) best_fatigue = i;
  }
  EXPECT_EQ(argmin_of(f10), best_fatigue);
  for (double c : {0.01, 2.0, 1e4}) {
    EXPECT_EQ(argmin_of(combined_objective(cands, 0.4 * c, 0.7 * c)),
              argmin_of(combined_objective(cands, 0.4, 0.7)));
  }
  const auto f11 = combined_objective(cands, 1, 1);
  for (double v : f11) {
    EXPECT_GT(v, 0);
    EXPECT_LE(v, 2);
  }
  auto zero = cands;
  for (auto& c : zero) c.f_discomfort = 0;
  EXPECT_THROW(combined_objective(zero, 1, 1), DomainError);
  EXPECT_THROW(combined_objective({}, 1, 1), DomainError);
}

bool dominates(const PostureCandidate& a, const PostureCandidate& b) {
  return a.f_fatigue <= b.f_fatigue && a.f_discomfort <= b.f_discomfort &&
         (a.f_fatigue < b.f_fatigue || a.f_discomfort < b.f_discomfort);
}

TEST(Pareto, SmallCases) {
  PostureCandidate a{}, b{};
  a.f_fatigue = 1;
  a.f_discomfort = 1;
  b.f_fatigue = 2;
  b.f_discomfort = 2;
  EXPECT_EQ(pareto_front({a}), std::vector<std::size_t>{0});
  EXPECT_EQ(pareto_front({b, a}), std::vector<std::size_t>{1});
  EXPECT_EQ(pareto_front({a, a}), std::vector<std::size_t>{0});
}

TEST(Pareto, MatchesBruteForce) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto cands = synthetic(rng, 30);
    cands.push_back(cands[3]);
    const auto front = pareto_front(cands);
    std::vector<bool> in(cands.size(), false);
    for (auto i : front) in[i] = true;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      bool dominated = false;
      for (std::size_t j = 0; j < cands.size(); ++j) dominated = dominated || dominates(cands[j], cands[i]);
      if (dominated) EXPECT_FALSE(in[i]);
      if (!dominated && i != cands.size() - 1) EXPECT_TRUE(in[i]);
    }
    for (std::size_t k = 1; k < front.size(); ++k) {
      EXPECT_LE(cands[front[k - 1]].f_fatigue, cands[front[k]].f_fatigue);
    }
  }
}

TEST(Sweep, WeightedMinimizersArePareto) {
  const auto result = sweep_distance(kGrid, drilling_context());
  const std::vector<std::size_t> front = result.pareto;
  for (int i = 0; i <= 20; ++i) {
    const double w1 = i / 20.0;
    const auto f = combined_objective(result.candidates, w1, 1 - w1);
    const double best = *std::min_element(f.begin(), f.end());
    bool some_on_front = false;
    for (auto p : front) some_on_front = some_on_front || f[p] == best;
    EXPECT_TRUE(some_on_front) << "w1 = " << w1;
    if (w1 > 0 && w1 < 1) {
      const auto k = argmin_of(f);
      for (const auto& c : result.candidates) EXPECT_FALSE(dominates(c, result.candidates[k]));
    }
  }
}

TEST(Sweep, DrillingOptimum) {
  const auto ctx = drilling_context();
  const auto result = sweep_distance(kGrid, ctx);
  EXPECT_EQ(result.candidates.size(), 51u);
  EXPECT_TRUE(result.skipped.empty());
  const double d11 = result.candidates[result.argmin].distance;
  EXPECT_NEAR(d11, 0.53, 0.03);

  const auto d_of = [&](double w1, double w2) {
    return result.candidates[argmin_of(combined_objective(result.candidates, w1, w2))].distance;
  };
  const double d10 = d_of(1, 0), d01 = d_of(0, 1);
  EXPECT_LE(std::min(d10, d01), d11);
  EXPECT_GE(std::max(d10, d01), d11);

  double max_f = 0, max_d = 0;
  for (const auto& c : result.candidates) {
    EXPECT_GE(c.f_fatigue, 0);
    EXPECT_GE(c.f_discomfort, 0);
    max_f = std::max(max_f, c.f_fatigue);
    max_d = std::max(max_d, c.f_discomfort);
    EXPECT_GT(c.f_overall, 0);
    EXPECT_LE(c.f_overall, 2);
  }
  bool attains_f = false, attains_d = false;
  for (const auto& c : result.candidates) {
    attains_f = attains_f || c.f_fatigue == max_f;
    attains_d = attains_d || c.f_discomfort == max_d;
  }
  EXPECT_TRUE(attains_f && attains_d);
}

struct TrendShare {
  double elbow_nonincreasing;
  double shoulder_nondecreasing;
};

TrendShare trends(const SweepResult& r) {
  int e = 0, s = 0;
  const auto& c = r.candidates;
  for (std::size_t i = 1; i < c.size(); ++i) {
    e += c[i].discomfort_elbow <= c[i - 1].discomfort_elbow;
    s += c[i].discomfort_shoulder >= c[i - 1].discomfort_shoulder;
  }
  const double pairs = static_cast<double>(c.size() - 1);
  return {e / pairs, s / pairs};
}

TEST(Sweep, DiscomfortTrends) {
  const auto t = trends(sweep_distance(kGrid, drilling_context()));
  EXPECT_GE(t.elbow_nonincreasing, 0.9);
  EXPECT_GE(t.shoulder_nondecreasing, 0.9);
}

TEST(Sweep, AnatomicalBandsInvertTrends) {
  // Unit weights make the barrier tails dominate the index, so the
  // range-of-motion limits alone do not reproduce the distance trends.
  const auto r = sweep_distance(kGrid, drilling_context(ComfortSpec::anatomical()));
  const auto t = trends(r);
  EXPECT_LT(std::min(t.elbow_nonincreasing, t.shoulder_nondecreasing), 0.9);
}

TEST(Sweep, SkipsUnreachableAndRejectsEmpty) {
  const auto ctx = drilling_context();
  const auto r = sweep_distance(SweepSpec{0.60, 0.90, 0.01, 1, 1}, ctx);
  EXPECT_FALSE(r.skipped.empty());
  EXPECT_FALSE(r.candidates.empty());
  for (std::size_t i = 1; i < r.candidates.size(); ++i) {
    EXPECT_LT(r.candidates[i - 1].distance, r.candidates[i].distance);
  }
  EXPECT_THROW(sweep_distance(SweepSpec{2.0, 2.1, 0.01, 1, 1}, ctx), DomainError);
  EXPECT_THROW(sweep_distance(SweepSpec{0.5, 0.4, 0.01, 1, 1}, ctx), DomainError);
}

TEST(ComfortFile, ShippedFilesMatchDefaults) {
  EXPECT_EQ(ComfortSpec::load(std::string(ERGO_DATA_DIR) + "/comfort_default.txt"), ComfortSpec::defaults());
  EXPECT_EQ(ComfortSpec::load(std::string(ERGO_DATA_DIR) + "/comfort_anatomical.txt"),
            ComfortSpec::anatomical());
  EXPECT_EQ(ComfortSpec::parse(ComfortSpec::anatomical().to_text()), ComfortSpec::anatomical());
}

TEST(ComfortFile, NormalizesOrderAndReportsLines) {
  const auto spec = ComfortSpec::parse("G 1e6\njoint elbow 0 145 90 1\njoint shoulder -60 180 0 1\n");
  EXPECT_EQ(spec, ComfortSpec::anatomical());
  try {
    ComfortSpec::parse("G 1e6\njoint elbow 0 145 200 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(ComfortSpec::parse("joint elbow 0 145 90 1\n"), ParseError);
  EXPECT_THROW(ComfortSpec::parse("G 1e6\njoint wrist 0 145 90 1\n"), ParseError);
  EXPECT_THROW(ComfortSpec::parse("G 1e6\njoint elbow 0 145 90 1\n"), ParseError);
}

}  // namespace
}  // namespace ergo
