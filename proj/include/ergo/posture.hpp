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


#pragma once

// Posture scoring and the working-distance sweep.
//
// A candidate posture is scored by a stress index (sum of squared
// torque-to-strength ratios) and a discomfort index (normalized distance from
// a neutral angle plus steep barriers near the comfort limits). The two are
// normalized over the candidate set and combined with user weights.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ergo/arm.hpp"
#include "ergo/common.hpp"
#include "ergo/strength.hpp"

namespace ergo {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

/// Sum of (torque_i / strength_i)^2.
template <typename DerivedT, typename DerivedS>
typename DerivedT::Scalar stress_index(const Eigen::MatrixBase<DerivedT>& torques,
                                       const Eigen::MatrixBase<DerivedS>& strengths) {
  if (torques.size() != strengths.size()) {
    throw DomainError("stress index: torque and strength counts differ");
  }
  if (!(strengths.array() > 0).all()) throw DomainError("stress index: strength must be positive");
  return (torques.array() / strengths.array()).square().sum();
}

/// Comfort band of one joint, in degrees.
struct JointComfort {
  std::string joint;
  double lower;
  double upper;
  double neutral;
  double gamma;

  friend bool operator==(const JointComfort&, const JointComfort&) = default;
};

struct ComfortSpec {
  double barrier{1e6};  // G
  std::vector<JointComfort> joints;

  /// Shipped comfort bands (data/comfort_default.txt).
  static ComfortSpec defaults();
  /// Anatomical range-of-motion limits with unit weights
  /// (data/comfort_anatomical.txt).
  static ComfortSpec anatomical();
  static ComfortSpec parse(std::string_view text);
  static ComfortSpec load(const std::filesystem::path& path);
  std::string to_text() const;

  const JointComfort& joint(std::string_view name) const;

  friend bool operator==(const ComfortSpec&, const ComfortSpec&) = default;
};

template <typename Scalar>
struct BarrierTerms {
  Scalar upper;
  Scalar lower;
};

template <typename Scalar>
BarrierTerms<Scalar> comfort_barriers(Scalar q, Scalar lower, Scalar upper) {
  if (upper == lower) throw DomainError("comfort limits must differ");
  using std::pow;
  using std::sin;
  constexpr Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
  const Scalar range = upper - lower;
  const Scalar qu = pow(sin(5 * (upper - q) / range + half_pi) / 2 + 1, 100);
  const Scalar ql = pow(sin(5 * (q - lower) / range + half_pi) / 2 + 1, 100);
  return {qu, ql};
}

/// One joint's share of the discomfort index (already divided by G).
template <typename Scalar>
Scalar joint_discomfort(Scalar q, const JointComfort& c, Scalar barrier) {
  const auto b = comfort_barriers(q, Scalar(c.lower), Scalar(c.upper));
  const Scalar dq = (q - Scalar(c.neutral)) / Scalar(c.upper - c.lower);
  return (Scalar(c.gamma) * dq * dq + barrier * b.upper + barrier * b.lower) / barrier;
}

/// `angles` holds one value in degrees per entry of `spec.joints`.
template <typename Derived>
typename Derived::Scalar discomfort_index(const Eigen::MatrixBase<Derived>& angles,
                                          const ComfortSpec& spec) {
  using Scalar = typename Derived::Scalar;
  if (angles.size() != static_cast<Eigen::Index>(spec.joints.size())) {
    throw DomainError("discomfort index: angle count differs from comfort spec");
  }
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < angles.size(); ++i) {
    sum += joint_discomfort(angles[i], spec.joints[i], Scalar(spec.barrier));
  }
  return sum;
}

enum class IkBranch {
  ElbowDown,  // elbow below the shoulder-grip line, normal flexion
  ElbowUp,    // mirror solution, negative elbow flexion
};

/// Anatomical flexion angles in radians.
template <typename Scalar = double>
struct SagittalAngles {
  Scalar shoulder;
  Scalar elbow;
};

/// Elbow and grip of the planar two-link arm, as (forward, up) coordinates.
template <typename Scalar>
std::pair<Vector2<Scalar>, Vector2<Scalar>> sagittal_points(Scalar upper_arm, Scalar forearm,
                                                            const SagittalAngles<Scalar>& a) {
  using std::cos;
  using std::sin;
  const Vector2<Scalar> elbow(upper_arm * sin(a.shoulder), -upper_arm * cos(a.shoulder));
  const Scalar heading = a.shoulder + a.elbow;
  const Vector2<Scalar> grip = elbow + forearm * Vector2<Scalar>(sin(heading), -cos(heading));
  return {elbow, grip};
}

/// Two-link inverse kinematics in the sagittal plane. `target` is the grip
/// position relative to the shoulder as (forward, up).
template <typename Scalar>
SagittalAngles<Scalar> ik_two_link(const Vector2<Scalar>& target, Scalar upper_arm,
                                   Scalar forearm, IkBranch branch = IkBranch::ElbowDown) {
  using std::abs;
  using std::acos;
  using std::atan2;
  using std::sin;
  using std::cos;
  if (!(upper_arm > 0 && forearm > 0)) throw DomainError("link lengths must be positive");
  const Scalar reach = target.norm();
  const Scalar near = abs(upper_arm - forearm);
  const Scalar far = upper_arm + forearm;
  const Scalar slack = Scalar(1e-12) * far;
  if (!(reach >= near - slack && reach <= far + slack)) {
    throw DomainError("target at distance " + std::to_string(double(reach)) +
                      " m is unreachable; reachable interval is [" + std::to_string(double(near)) +
                      ", " + std::to_string(double(far)) + "] m");
  }
  Scalar c = (reach * reach - upper_arm * upper_arm - forearm * forearm) /
             (2 * upper_arm * forearm);
  c = std::clamp(c, Scalar(-1), Scalar(1));
  Scalar elbow = acos(c);
  if (branch == IkBranch::ElbowUp) elbow = -elbow;
  const Scalar heading = atan2(target.x(), -target.y());
  const Scalar inner = atan2(forearm * sin(elbow), upper_arm + forearm * cos(elbow));
  return {heading - inner, elbow};
}

/// Grip-to-bit offset that makes posture `a` put the bit at (distance, 0).
template <typename Scalar>
Vector2<Scalar> derive_tool_offset(Scalar upper_arm, Scalar forearm,
                                   const SagittalAngles<Scalar>& a, Scalar distance) {
  const auto [elbow, grip] = sagittal_points(upper_arm, forearm, a);
  return Vector2<Scalar>(distance, 0) - grip;
}

/// Drill geometry in the sagittal plane, world (forward, up) axes, meters.
struct ToolGeometry {
  Eigen::Vector2d com_offset{0, 0};  // machine centre of mass relative to grip
  Eigen::Vector2d bit_offset{0, 0};  // drill bit relative to grip
  double axis_elevation_deg{0};      // drill axis above horizontal
};

/// Per-arm load.
struct LoadCase {
  double machine_mass{0};  // kg
  double push_force{0};    // N, along the drill axis
};

/// Machine weight at its centre of mass and the reaction of the push at the bit.
std::vector<ExternalWrench<double>> tool_wrenches(const ToolGeometry& tool, const LoadCase& load,
                                                  double gravity = 9.81);

struct PostureCandidate {
  double distance;
  double shoulder_deg;
  double elbow_deg;
  JointVector<double> q;
  Eigen::Vector2d torques;    // shoulder, elbow flexion demand, N*m
  Eigen::Vector2d strengths;  // at the configured population offset
  double discomfort_shoulder;
  double discomfort_elbow;
  double f_fatigue;
  double f_discomfort;
  double f_overall{0};
};

/// Normalizes both columns by their maxima over `candidates` and returns
/// w1 * fatigue + w2 * discomfort per candidate.
std::vector<double> combined_objective(const std::vector<PostureCandidate>& candidates, double w1,
                                       double w2);

/// Indices of the nondominated candidates in (f_fatigue, f_discomfort),
/// ascending in f_fatigue; duplicates appear once.
std::vector<std::size_t> pareto_front(const std::vector<PostureCandidate>& candidates);

struct SweepSpec {
  double start;
  double stop;
  double step{0.005};
  double w1{1};
  double w2{1};
};

struct SweepContext {
  ArmChain<double> chain;
  std::array<LinkInertia<double>, kArmJoints> links;
  StrengthModel strength = StrengthModel::defaults();
  Gender gender{Gender::Male};
  int population_z{-2};
  ComfortSpec comfort = ComfortSpec::defaults();
  ToolGeometry tool{};
  LoadCase load{};
  double gravity{9.81};
  IkBranch branch{IkBranch::ElbowDown};
};

struct SweepResult {
  std::vector<PostureCandidate> candidates;  // ascending distance
  std::vector<double> skipped;               // distances with no admissible posture
  std::size_t argmin;
  std::vector<std::size_t> pareto;
};

/// Scores the posture that puts the bit at (distance, 0). Throws DomainError
/// when the target is unreachable or violates a joint or strength limit.
PostureCandidate evaluate_candidate(double distance, const SweepContext& ctx);

SweepResult sweep_distance(const SweepSpec& spec, const SweepContext& ctx);

}  // namespace ergo
