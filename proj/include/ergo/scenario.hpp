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

// Scenario documents (YAML) and the reports computed from them.
//
// Quantities are written either as bare numbers in the canonical unit or as
// "<number> <unit>" strings. Canonical units: kg, m, s, deg, N, N*m and
// 1/min for rates. See docs/scenario.md for the full schema.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/common.hpp"
#include "ergo/fatigue.hpp"
#include "ergo/posture.hpp"
#include "ergo/strength.hpp"

namespace ergo {

inline constexpr int kScenarioSchemaVersion = 1;

struct ScenarioOperator {
  double body_mass{70};
  double height{1.70};
  Gender gender{Gender::Male};

  friend bool operator==(const ScenarioOperator&, const ScenarioOperator&) = default;
};

struct ScenarioTask {
  double work_duration{30};  // s
  double rest_duration{0};   // s
  int cycles{1};
  double hole_time{30};  // s

  friend bool operator==(const ScenarioTask&, const ScenarioTask&) = default;
};

struct ScenarioLoads {
  std::vector<double> machine_mass;  // kg, whole machine
  double push_force{0};              // N, whole push
  bool split_per_arm{true};

  /// Load carried by one arm for load case `i`.
  LoadCase per_arm(std::size_t i) const;

  friend bool operator==(const ScenarioLoads&, const ScenarioLoads&) = default;
};

/// Joint angles in degrees, chain convention (flexion is negative).
struct ScenarioPosture {
  std::array<double, kArmJoints> q_deg{};

  double shoulder_flexion() const { return -q_deg[0]; }
  double elbow_flexion() const { return -q_deg[3]; }

  friend bool operator==(const ScenarioPosture&, const ScenarioPosture&) = default;
};

struct ScenarioSweep {
  double start;
  double stop;
  double step{0.005};
  double w1{1};
  double w2{1};
  IkBranch branch{IkBranch::ElbowDown};

  friend bool operator==(const ScenarioSweep&, const ScenarioSweep&) = default;
};

/// Posture that puts the drill bit at (distance, 0); used to solve the
/// grip-to-bit offset.
struct BitCalibration {
  double shoulder_flexion;  // deg
  double elbow_flexion;     // deg
  double distance;          // m

  friend bool operator==(const BitCalibration&, const BitCalibration&) = default;
};

struct ScenarioTool {
  std::array<double, 2> com_offset{0, 0};  // m, (forward, up)
  std::optional<std::array<double, 2>> bit_offset;
  std::optional<BitCalibration> bit_calibration;
  double axis_elevation{0};  // deg

  friend bool operator==(const ScenarioTool&, const ScenarioTool&) = default;
};

struct ExplicitStrength {
  double mean;
  double sigma;

  friend bool operator==(const ExplicitStrength&, const ExplicitStrength&) = default;
};

struct ScenarioStrength {
  enum class Source { Regression, Explicit };
  Source source{Source::Regression};
  std::optional<ExplicitStrength> shoulder;
  std::optional<ExplicitStrength> elbow;

  friend bool operator==(const ScenarioStrength&, const ScenarioStrength&) = default;
};

struct JointTorquePair {
  double shoulder;  // N*m
  double elbow;

  friend bool operator==(const JointTorquePair&, const JointTorquePair&) = default;
};

struct ScenarioFatigue {
  double fatigue_rate{1};      // 1/min
  double recovery_rate{2.4};   // 1/min
  double recovery_fraction{0.99};
  IndexForm index_mode{IndexForm::TableConsistent};
  double trajectory_step{1};  // s

  friend bool operator==(const ScenarioFatigue&, const ScenarioFatigue&) = default;
};

struct Scenario {
  int schema_version{kScenarioSchemaVersion};
  std::string name;
  ScenarioOperator op;
  ScenarioTask task;
  ScenarioLoads loads;
  std::optional<ScenarioPosture> posture;
  std::optional<ScenarioSweep> sweep;
  ScenarioTool tool;
  ScenarioStrength strength;
  std::vector<JointTorquePair> torques;  // injected per load case, optional
  std::vector<int> population_z{-2, -1, 0, 1, 2};
  int stress_z{-2};
  ScenarioFatigue fatigue;
  ComfortSpec comfort = ComfortSpec::defaults();

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses and validates a scenario. Throws ParseError with the offending
/// line and field path.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical YAML; parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

/// Grip-to-bit offset in effect for `scenario` (zero when not configured).
Eigen::Vector2d resolve_bit_offset(const Scenario& scenario);

SweepContext make_sweep_context(const Scenario& scenario);

struct TorqueRow {
  double machine_mass;  // kg per arm
  std::string joint;
  double torque;  // N*m
  bool injected;
};

struct StrengthRow {
  std::string joint;
  double shoulder_flexion;  // deg
  double elbow_flexion;
  double mean;
  double sigma;
  int z;
  double value;
  bool nonphysical;
};

struct EnduranceRow {
  double machine_mass;
  std::string joint;
  int z;
  double gamma_max;
  double load;
  double endurance;  // s
  LimitStatus status;
};

struct IndexRow {
  double machine_mass;
  std::string joint;
  int z;
  double duration;  // s
  double index;
};

struct RecoveryRow {
  double machine_mass;
  std::string joint;
  int z;
  double recovery;  // s
  RecoveryStatus status;
};

struct HolesRow {
  double machine_mass;
  int z;
  std::int64_t holes;
  std::string limiting_joint;
  LimitStatus status;
};

struct TrajectorySeries {
  double machine_mass;
  std::string joint;
  int z;
  std::vector<CapacitySample<double>> samples;  // time in minutes
  std::vector<double> end_of_rest;
  bool cumulative_fatigue;
  bool overexertion;
};

struct Report {
  std::string scenario_name;
  double shoulder_flexion;  // deg, posture the tables refer to
  double elbow_flexion;
  std::vector<TorqueRow> torques;
  std::vector<StrengthRow> strengths;
  std::vector<EnduranceRow> endurance;
  std::vector<IndexRow> index;
  std::vector<RecoveryRow> recovery;
  std::vector<HolesRow> holes;
  std::vector<TrajectorySeries> trajectories;
  std::optional<SweepResult> sweep;
  std::vector<std::string> warnings;
};

Report run_scenario(const Scenario& scenario);

enum class ReportFormat { Csv, JsonLines };

ReportFormat parse_report_format(std::string_view text);

/// Bit flags selecting what emit_report writes.
enum ReportSection : unsigned {
  kSectionTorque = 1u << 0,
  kSectionStrength = 1u << 1,
  kSectionEndurance = 1u << 2,
  kSectionIndex = 1u << 3,
  kSectionRecovery = 1u << 4,
  kSectionHoles = 1u << 5,
  kSectionTrajectory = 1u << 6,
  kSectionSweep = 1u << 7,
  kSectionAll = 0xffu,
};

void emit_report(const Report& report, ReportFormat format, std::ostream& out,
                 unsigned sections = kSectionAll);
/// Strength surfaces of both joints, one table per joint.
void emit_strength_surface(const std::vector<SurfaceRow>& shoulder,
                           const std::vector<SurfaceRow>& elbow, ReportFormat format,
                           std::ostream& out);

/// Writes to `destination`; throws IoError when it cannot be written.
void emit_report(const Report& report, ReportFormat format,
                 const std::filesystem::path& destination, unsigned sections = kSectionAll);

}  // namespace ergo
