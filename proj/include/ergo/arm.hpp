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

// Five-joint right arm: modified Denavit-Hartenberg kinematics, cylinder
// segment anthropometry and Newton-Euler joint torques.
//
// World frame (frame 0) sits at the shoulder with x pointing forward, y to
// the operator's left and z up. At q = 0 the arm hangs straight down.
// Flexion of the shoulder (joint 1) and of the elbow (joint 4) are negative
// joint rotations.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/common.hpp"

namespace ergo {

inline constexpr int kArmJoints = 5;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using JointVector = Eigen::Matrix<Scalar, kArmJoints, 1>;

inline constexpr std::array<std::string_view, kArmJoints> kJointNames = {
    "joint 1 (shoulder flexion/extension)",
    "joint 2 (shoulder abduction/adduction)",
    "joint 3 (upper-arm rotation)",
    "joint 4 (elbow flexion/extension)",
    "joint 5 (forearm pronation/supination)",
};

template <typename Scalar = double>
struct DhRow {
  int sigma{0};  // 0 = revolute
  Scalar alpha{0};
  Scalar d{0};
  Scalar theta_offset{0};
  Scalar r{0};
};

/// Placement of the translation column of a link transform.
///
/// `Standard` uses (d, -r sin(alpha), r cos(alpha)), which places the offset
/// r along the new z axis. `AsTypeset` uses (d, -r cos(alpha), r sin(alpha)),
/// a variant that is kept for comparison and does not yield an anatomical
/// arm with the shipped rows.
enum class DhLayout { Standard, AsTypeset };

template <typename Scalar>
Matrix4<Scalar> dh_transform(const DhRow<Scalar>& row, Scalar q,
                             DhLayout layout = DhLayout::Standard) {
  using std::cos;
  using std::sin;
  const Scalar theta = row.theta_offset + q;
  const Scalar ct = cos(theta), st = sin(theta);
  const Scalar ca = cos(row.alpha), sa = sin(row.alpha);
  Matrix4<Scalar> t;
  t << ct, -st, 0, row.d,
       ca * st, ca * ct, -sa, 0,
       sa * st, sa * ct, ca, 0,
       0, 0, 0, 1;
  if (layout == DhLayout::Standard) {
    t(1, 3) = -row.r * sa;
    t(2, 3) = row.r * ca;
  } else {
    t(1, 3) = -row.r * ca;
    t(2, 3) = row.r * sa;
  }
  return t;
}

template <typename Scalar = double>
struct JointLimits {
  Scalar lower;
  Scalar upper;
};

template <typename Scalar = double>
struct ArmChain {
  std::array<DhRow<Scalar>, kArmJoints> rows;
  std::array<JointLimits<Scalar>, kArmJoints> limits;
  /// Offset of the grip along z5 from the elbow (negative: distal).
  Scalar hand_offset;
  DhLayout layout{DhLayout::Standard};

  Scalar upper_arm_length() const { return std::abs(rows[2].r); }
  Scalar forearm_length() const { return std::abs(hand_offset); }
};

/// The default right-arm chain for the given segment lengths.
template <typename Scalar>
ArmChain<Scalar> right_arm_chain(Scalar upper_arm_length, Scalar forearm_length) {
  constexpr Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
  auto deg = [](double v) { return units::deg_to_rad(Scalar(v)); };
  ArmChain<Scalar> chain;
  chain.rows = {{
      {0, -half_pi, 0, -half_pi, 0},
      {0, -half_pi, 0, -half_pi, 0},
      {0, -half_pi, 0, -half_pi, -upper_arm_length},
      {0, -half_pi, 0, 0, 0},
      {0, half_pi, 0, 0, 0},
  }};
  chain.limits = {{
      {deg(-180), deg(60)},
      {deg(-180), deg(30)},
      {deg(-90), deg(90)},
      {deg(-150), deg(10)},
      {deg(-90), deg(90)},
  }};
  chain.hand_offset = -forearm_length;
  return chain;
}

/// Throws DomainError naming the first joint outside its limits.
template <typename Scalar>
void check_joint_limits(const ArmChain<Scalar>& chain, const JointVector<Scalar>& q) {
  for (int j = 0; j < kArmJoints; ++j) {
    const auto& lim = chain.limits[j];
    if (!(q[j] >= lim.lower && q[j] <= lim.upper)) {
      throw DomainError(std::string(kJointNames[j]) + " angle " +
                        std::to_string(units::rad_to_deg(double(q[j]))) +
                        " deg outside limits [" +
                        std::to_string(units::rad_to_deg(double(lim.lower))) + ", " +
                        std::to_string(units::rad_to_deg(double(lim.upper))) + "] deg");
    }
  }
}

template <typename Scalar = double>
struct ArmPose {
  std::array<Matrix4<Scalar>, kArmJoints> frames;  // world pose of frames 1..5
  Matrix4<Scalar> hand;
  Vector3<Scalar> shoulder;
  Vector3<Scalar> elbow;
  Vector3<Scalar> wrist;
  Vector3<Scalar> grip;
};

template <typename Scalar>
Matrix4<Scalar> translate_z(Scalar dz) {
  Matrix4<Scalar> t = Matrix4<Scalar>::Identity();
  t(2, 3) = dz;
  return t;
}

template <typename Scalar>
ArmPose<Scalar> forward_kinematics(const ArmChain<Scalar>& chain, const JointVector<Scalar>& q) {
  check_joint_limits(chain, q);
  ArmPose<Scalar> pose;
  Matrix4<Scalar> t = Matrix4<Scalar>::Identity();
  for (int j = 0; j < kArmJoints; ++j) {
    t = t * dh_transform(chain.rows[j], q[j], chain.layout);
    pose.frames[j] = t;
  }
  pose.hand = t * translate_z(chain.hand_offset);
  pose.shoulder = pose.frames[0].template block<3, 1>(0, 3);
  pose.elbow = pose.frames[2].template block<3, 1>(0, 3);
  pose.wrist = pose.hand.template block<3, 1>(0, 3);
  pose.grip = pose.wrist;
  return pose;
}

template <typename Scalar = double>
struct OperatorProfile {
  Scalar body_mass;  // kg
  Scalar height;     // m
  Gender gender{Gender::Male};
};

template <typename Scalar = double>
struct Segment {
  Scalar mass;
  Scalar length;
  Scalar radius;
  Matrix3<Scalar> inertia;  // about the centre, long axis = z
};

template <typename Scalar = double>
struct SegmentParams {
  Segment<Scalar> upper_arm;
  Segment<Scalar> forearm;  // forearm and hand
};

template <typename Scalar>
Matrix3<Scalar> cylinder_inertia(Scalar mass, Scalar radius, Scalar length) {
  const Scalar axial = mass * radius * radius / 2;
  const Scalar transverse = mass * (3 * radius * radius + length * length) / 12;
  return Eigen::DiagonalMatrix<Scalar, 3>(transverse, transverse, axial).toDenseMatrix();
}

template <typename Scalar>
SegmentParams<Scalar> segment_params(const OperatorProfile<Scalar>& profile) {
  if (!(profile.body_mass > 0)) throw DomainError("body mass must be positive");
  if (!(profile.height > 0)) throw DomainError("height must be positive");
  const Scalar arm_mass = Scalar(0.051) * profile.body_mass;
  auto make = [](Scalar mass, Scalar length) {
    const Scalar radius = Scalar(0.125) * length;
    return Segment<Scalar>{mass, length, radius, cylinder_inertia(mass, radius, length)};
  };
  return {make(Scalar(0.549) * arm_mass, Scalar(0.186) * profile.height),
          make(Scalar(0.451) * arm_mass, Scalar(0.146) * profile.height)};
}

template <typename Scalar>
ArmChain<Scalar> right_arm_chain(const SegmentParams<Scalar>& segments) {
  return right_arm_chain(segments.upper_arm.length, segments.forearm.length);
}

template <typename Scalar = double>
struct LinkInertia {
  Scalar mass{0};
  Vector3<Scalar> com{Vector3<Scalar>::Zero()};        // in the link frame
  Matrix3<Scalar> inertia{Matrix3<Scalar>::Zero()};    // about com, link axes
};

/// Upper arm rides on link 3 (frame origin at the elbow, z3 toward the
/// shoulder); forearm and hand ride on link 5 (z5 pointing away from the
/// grip). Links 1, 2 and 4 are massless.
template <typename Scalar>
std::array<LinkInertia<Scalar>, kArmJoints> arm_link_inertia(const ArmChain<Scalar>& chain,
                                                             const SegmentParams<Scalar>& seg) {
  std::array<LinkInertia<Scalar>, kArmJoints> links{};
  links[2].mass = seg.upper_arm.mass;
  links[2].com = Vector3<Scalar>(0, 0, -chain.rows[2].r / 2);
  links[2].inertia = seg.upper_arm.inertia;
  links[4].mass = seg.forearm.mass;
  links[4].com = Vector3<Scalar>(0, 0, chain.hand_offset / 2);
  links[4].inertia = seg.forearm.inertia;
  return links;
}

enum class OffsetFrame { Hand, World };

/// Force applied to the arm at the grip plus `offset`.
template <typename Scalar = double>
struct ExternalWrench {
  Vector3<Scalar> offset{Vector3<Scalar>::Zero()};
  Vector3<Scalar> force{Vector3<Scalar>::Zero()};  // world axes, N
  OffsetFrame offset_frame{OffsetFrame::Hand};
  std::string tag;
};

/// Recursive Newton-Euler with base acceleration -g. Returns the actuator
/// torque about each joint axis.
template <typename Scalar>
JointVector<Scalar> inverse_dynamics(const ArmChain<Scalar>& chain,
                                     const std::array<LinkInertia<Scalar>, kArmJoints>& links,
                                     const JointVector<Scalar>& q, const JointVector<Scalar>& qd,
                                     const JointVector<Scalar>& qdd,
                                     const std::vector<ExternalWrench<Scalar>>& wrenches,
                                     Scalar gravity = Scalar(9.81)) {
  check_joint_limits(chain, q);
  for (const auto& w : wrenches) {
    if (!w.offset.allFinite() || !w.force.allFinite()) {
      throw DomainError("external wrench '" + w.tag + "' has non-finite components");
    }
  }
  const Vector3<Scalar> z = Vector3<Scalar>::UnitZ();

  std::array<Matrix3<Scalar>, kArmJoints> rot;  // parent_R_child
  std::array<Vector3<Scalar>, kArmJoints> pos;  // child origin in parent
  for (int j = 0; j < kArmJoints; ++j) {
    const Matrix4<Scalar> t = dh_transform(chain.rows[j], q[j], chain.layout);
    rot[j] = t.template block<3, 3>(0, 0);
    pos[j] = t.template block<3, 1>(0, 3);
  }

  std::array<Vector3<Scalar>, kArmJoints> w, wd, force, moment;
  Vector3<Scalar> w_prev = Vector3<Scalar>::Zero();
  Vector3<Scalar> wd_prev = Vector3<Scalar>::Zero();
  Vector3<Scalar> a_prev(0, 0, gravity);
  for (int j = 0; j < kArmJoints; ++j) {
    const Matrix3<Scalar> rt = rot[j].transpose();
    const Vector3<Scalar> w_in = rt * w_prev;
    w[j] = w_in + qd[j] * z;
    wd[j] = rt * wd_prev + qdd[j] * z + w_in.cross(qd[j] * z);
    const Vector3<Scalar> a =
        rt * (a_prev + wd_prev.cross(pos[j]) + w_prev.cross(w_prev.cross(pos[j])));
    const auto& link = links[j];
    const Vector3<Scalar> a_com = a + wd[j].cross(link.com) + w[j].cross(w[j].cross(link.com));
    force[j] = link.mass * a_com;
    moment[j] = link.inertia * wd[j] + w[j].cross(link.inertia * w[j]);
    w_prev = w[j];
    wd_prev = wd[j];
    a_prev = a;
  }

  // Environment loads on the last link, in frame 5 coordinates.
  Matrix3<Scalar> world_r5 = Matrix3<Scalar>::Identity();
  for (const auto& r : rot) world_r5 = world_r5 * r;
  Vector3<Scalar> env_force = Vector3<Scalar>::Zero();
  Vector3<Scalar> env_moment = Vector3<Scalar>::Zero();
  for (const auto& wr : wrenches) {
    const Vector3<Scalar> offset =
        wr.offset_frame == OffsetFrame::Hand ? wr.offset : Vector3<Scalar>(world_r5.transpose() * wr.offset);
    const Vector3<Scalar> point = Vector3<Scalar>(0, 0, chain.hand_offset) + offset;
    const Vector3<Scalar> f = world_r5.transpose() * wr.force;
    env_force += f;
    env_moment += point.cross(f);
  }

  JointVector<Scalar> tau;
  Vector3<Scalar> f_next = -env_force;
  Vector3<Scalar> n_next = -env_moment;
  Vector3<Scalar> p_next = Vector3<Scalar>::Zero();
  Matrix3<Scalar> r_next = Matrix3<Scalar>::Identity();
  for (int j = kArmJoints - 1; j >= 0; --j) {
    const Vector3<Scalar> f_child = r_next * f_next;
    const Vector3<Scalar> f = force[j] + f_child;
    const Vector3<Scalar> n =
        moment[j] + r_next * n_next + p_next.cross(f_child) + links[j].com.cross(force[j]);
    tau[j] = n.dot(z);
    f_next = f;
    n_next = n;
    p_next = pos[j];
    r_next = rot[j];
  }
  return tau;
}

template <typename Scalar>
JointVector<Scalar> static_joint_torques(const ArmChain<Scalar>& chain,
                                         const std::array<LinkInertia<Scalar>, kArmJoints>& links,
                                         const JointVector<Scalar>& q,
                                         const std::vector<ExternalWrench<Scalar>>& wrenches,
                                         Scalar gravity = Scalar(9.81)) {
  const JointVector<Scalar> zero = JointVector<Scalar>::Zero();
  return inverse_dynamics(chain, links, q, zero, zero, wrenches, gravity);
}

/// Joint vector for a sagittal posture given as anatomical flexion angles.
template <typename Scalar>
JointVector<Scalar> sagittal_posture(Scalar shoulder_flexion, Scalar elbow_flexion) {
  JointVector<Scalar> q = JointVector<Scalar>::Zero();
  q[0] = -shoulder_flexion;
  q[3] = -elbow_flexion;
  return q;
}

template <typename Scalar>
JointVector<Scalar> sagittal_posture_deg(Scalar shoulder_deg, Scalar elbow_deg) {
  return sagittal_posture(units::deg_to_rad(shoulder_deg), units::deg_to_rad(elbow_deg));
}

/// Reads an arm definition: five `row sigma alpha d theta_offset r lower upper`
/// lines (radians, meters) and one `hand <offset>` line; `#` starts a comment.
ArmChain<double> parse_arm_definition(std::string_view text);
ArmChain<double> load_arm_definition(const std::filesystem::path& path);

}  // namespace ergo
