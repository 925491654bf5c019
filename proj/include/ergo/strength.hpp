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

// Posture-dependent flexion strength of the shoulder and elbow.
//
// Each joint's mean strength is a polynomial in the shoulder angle alpha_s
// (flexion measured from the vertical torso line, 0 = arm hanging) and the
// included elbow flexion alpha_e (0 = straight arm), both in degrees, scaled
// by a gender factor. The standard deviation is a fixed fraction (the
// coefficient of variation) of the mean.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/common.hpp"

namespace ergo {

enum class StrengthJoint { ShoulderFlexion, ElbowFlexion };

std::string_view to_string(StrengthJoint joint);

struct PolyTerm {
  double coeff;
  int power_s;
  int power_e;

  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

/// Admissible posture box in degrees.
struct AngleBox {
  double shoulder_min;
  double shoulder_max;
  double elbow_min;
  double elbow_max;

  friend bool operator==(const AngleBox&, const AngleBox&) = default;
};

struct JointRegression {
  std::vector<PolyTerm> terms;
  double male_factor;
  double female_factor;
  double cv;
  AngleBox limits;

  double polynomial(double alpha_s, double alpha_e) const;

  friend bool operator==(const JointRegression&, const JointRegression&) = default;
};

struct StrengthEstimate {
  double mean;   // N*m
  double sigma;  // N*m
};

struct PercentileStrength {
  double value;
  bool nonphysical;  // value <= 0, the population tail has no meaning
};

class StrengthModel {
 public:
  StrengthModel(JointRegression shoulder, JointRegression elbow);

  /// Shipped coefficients; identical to data/strength_default.txt.
  static StrengthModel defaults();
  static StrengthModel parse(std::string_view text);
  static StrengthModel load(const std::filesystem::path& path);

  /// Serializes in the data-file format, including the trailing checksum.
  std::string to_text() const;

  StrengthEstimate evaluate(StrengthJoint joint, double alpha_s, double alpha_e,
                            Gender gender) const;

  const JointRegression& regression(StrengthJoint joint) const {
    return joint == StrengthJoint::ShoulderFlexion ? shoulder_ : elbow_;
  }

  friend bool operator==(const StrengthModel&, const StrengthModel&) = default;

 private:
  JointRegression shoulder_;
  JointRegression elbow_;
};

StrengthEstimate shoulder_flexion_strength(const StrengthModel& model, double alpha_s,
                                           double alpha_e, Gender gender);
StrengthEstimate elbow_flexion_strength(const StrengthModel& model, double alpha_s,
                                        double alpha_e, Gender gender);

/// mean + z * sigma for z in {-2, -1, 0, 1, 2}.
PercentileStrength percentile_strength(double mean, double sigma, int z);

inline PercentileStrength percentile_strength(const StrengthEstimate& s, int z) {
  return percentile_strength(s.mean, s.sigma, z);
}

/// Inclusive, evenly spaced axis: `count` points from `first` to `last`.
struct GridAxis {
  double first;
  double last;
  int count;
};

struct SurfaceRow {
  double alpha_s;
  double alpha_e;
  double minus_2sigma;
  double mean;
  double plus_2sigma;
};

/// Row-major over (alpha_s outer, alpha_e inner).
std::vector<SurfaceRow> strength_surface(const StrengthModel& model, StrengthJoint joint,
                                         Gender gender, const GridAxis& shoulder,
                                         const GridAxis& elbow);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace ergo
