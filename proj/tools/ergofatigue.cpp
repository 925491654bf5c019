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


// Command-line front end.
//
// Exit codes: 0 success, 1 computation error, 2 scenario or usage error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ergo/scenario.hpp"
#include "ergo/strength.hpp"

namespace {

constexpr int kExitComputation = 1;
constexpr int kExitScenario = 2;

struct Options {
  std::string scenario;
  std::string out;
  std::string format = "csv";
  std::vector<int> z;
  std::string weights;
  std::optional<double> step;
  std::string mode;
  std::optional<double> grid;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<double, double> parse_weights(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--weights expects w1,w2");
  try {
    std::size_t used = 0;
    const double w1 = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw UsageError("--weights expects w1,w2");
    const std::string rest = text.substr(comma + 1);
    const double w2 = std::stod(rest, &used);
    if (used != rest.size()) throw UsageError("--weights expects w1,w2");
    if (!(w1 >= 0 && w2 >= 0) || (w1 == 0 && w2 == 0)) {
      throw UsageError("--weights must be nonnegative and not both zero");
    }
    return {w1, w2};
  } catch (const std::logic_error&) {
    throw UsageError("--weights expects two numbers, w1,w2");
  }
}

void apply_overrides(ergo::Scenario& s, const Options& o) {
  if (!o.z.empty()) {
    for (int z : o.z) {
      if (z < -2 || z > 2) throw UsageError("--z values must be in {-2, -1, 0, 1, 2}");
    }
    s.population_z = o.z;
  }
  if (!o.mode.empty()) s.fatigue.index_mode = ergo::parse_index_form(o.mode);
  if (!o.weights.empty() || o.step) {
    if (!s.sweep) throw UsageError("--weights and --step need a scenario with a sweep section");
    if (!o.weights.empty()) std::tie(s.sweep->w1, s.sweep->w2) = parse_weights(o.weights);
    if (o.step) {
      if (!(*o.step > 0)) throw UsageError("--step must be positive");
      s.sweep->step = *o.step;
    }
  }
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario file (YAML)")->required();
  cmd->add_option("--out", o.out, "Output path (default: standard output)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--z", o.z, "Population offsets, e.g. --z -2,0,2")->delimiter(',');
  cmd->add_option("--weights", o.weights, "Objective weights w1,w2 (sweep scenarios)");
  cmd->add_option("--step", o.step, "Sweep step in meters (sweep scenarios)");
  cmd->add_option("--mode", o.mode, "Fatigue index form")->check(CLI::IsMember({"table", "literal"}));
}

int run(const std::string& command, const Options& o) {
  ergo::Scenario scenario;
  try {
    scenario = ergo::load_scenario(o.scenario);
    apply_overrides(scenario, o);
  } catch (const ergo::ParseError& e) {
    std::cerr << "scenario error: " << o.scenario << ": " << e.what() << "\n";
    return kExitScenario;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitScenario;
  }
  if (command == "optimize" && !scenario.sweep) {
    std::cerr << "scenario error: " << o.scenario << ": optimize needs a sweep section\n";
    return kExitScenario;
  }
  const auto format = ergo::parse_report_format(o.format);

  std::ostringstream buffer;
  try {
    if (command == "strength" && o.grid) {
      if (!(*o.grid > 0)) throw UsageError("--grid must be positive");
      const auto model = ergo::StrengthModel::defaults();
      auto axis = [&](double lo, double hi) {
        return ergo::GridAxis{lo, lo + std::floor((hi - lo) / *o.grid + 1e-9) * *o.grid,
                              static_cast<int>(std::floor((hi - lo) / *o.grid + 1e-9)) + 1};
      };
      std::vector<ergo::SurfaceRow> rows[2];
      int k = 0;
      for (auto joint : {ergo::StrengthJoint::ShoulderFlexion, ergo::StrengthJoint::ElbowFlexion}) {
        const auto& b = model.regression(joint).limits;
        rows[k++] = ergo::strength_surface(model, joint, scenario.op.gender,
                                           axis(b.shoulder_min, b.shoulder_max),
                                           axis(b.elbow_min, b.elbow_max));
      }
      ergo::emit_strength_surface(rows[0], rows[1], format, buffer);
    } else {
      const auto report = ergo::run_scenario(scenario);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
      unsigned sections = ergo::kSectionAll;
      if (command == "endurance") {
        sections = ergo::kSectionEndurance | ergo::kSectionIndex | ergo::kSectionRecovery |
                   ergo::kSectionHoles;
      } else if (command == "schedule") {
        sections = ergo::kSectionTrajectory;
      } else if (command == "torque") {
        sections = ergo::kSectionTorque;
      } else if (command == "strength") {
        sections = ergo::kSectionStrength;
      } else if (command == "optimize") {
        sections = ergo::kSectionSweep;
      }
      ergo::emit_report(report, format, buffer, sections);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitScenario;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }

  if (o.out.empty()) {
    std::cout << buffer.str();
    std::cout.flush();
    return std::cout ? 0 : kExitComputation;
  }
  std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
  if (!out || !(out << buffer.str()) || !out.flush()) {
    std::cerr << "error: cannot write " << o.out << "\n";
    return kExitComputation;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint-level fatigue, torque and posture analysis of manual tasks"};
  app.require_subcommand(1);
  Options opts;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"endurance", "Endurance time, fatigue index, recovery time and hole capacity tables"},
      {"schedule", "Capacity trajectories over the work/rest plan"},
      {"torque", "Static joint torques for each load case"},
      {"strength", "Joint strength at the task posture, or the strength surface with --grid"},
      {"optimize", "Working-distance sweep, optimum and Pareto set"},
      {"report", "Every table and series"},
  };
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, opts);
    if (name == "strength") {
      cmd->add_option("--grid", opts.grid, "Surface spacing in degrees over the admissible box");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitScenario;
  }
  return run(app.get_subcommands().front()->get_name(), opts);
}
