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


#include "ergo/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <set>
#include <sstream>

namespace ergo {

namespace {

enum class Kind { Mass, Length, Time, Angle, Force, Torque, Rate, Plain };

struct UnitFactor {
  std::string_view unit;
  double factor;
};

std::vector<UnitFactor> units_for(Kind kind) {
  switch (kind) {
    case Kind::Mass:
      return {{"kg", 1}, {"g", 1e-3}};
    case Kind::Length:
      return {{"m", 1}, {"cm", 1e-2}, {"mm", 1e-3}};
    case Kind::Time:
      return {{"s", 1}, {"min", 60}, {"ms", 1e-3}};
    case Kind::Angle:
      return {{"deg", 1}, {"rad", 180 / std::numbers::pi}};
    case Kind::Force:
      return {{"N", 1}};
    case Kind::Torque:
      return {{"N*m", 1}, {"N.m", 1}, {"Nm", 1}, {"N·m", 1}};
    case Kind::Rate:
      return {{"1/min", 1}, {"/min", 1}, {"1/s", 60}, {"/s", 60}};
    case Kind::Plain:
      return {};
  }
  return {};
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::Mass: return "mass";
    case Kind::Length: return "length";
    case Kind::Time: return "time";
    case Kind::Angle: return "angle";
    case Kind::Force: return "force";
    case Kind::Torque: return "torque";
    case Kind::Rate: return "rate";
    case Kind::Plain: return "dimensionless number";
  }
  return "";
}

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

[[noreturn]] void fail(const YAML::Node& node, const std::string& path, const std::string& msg) {
  throw ParseError(path + ": " + msg, line_of(node));
}

void expect_map(const YAML::Node& node, const std::string& path) {
  if (!node.IsMap()) fail(node, path, "expected a mapping");
}

void check_keys(const YAML::Node& node, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  expect_map(node, path);
  for (auto it = node.begin(); it != node.end(); ++it) {
    const auto key = it->first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string list;
      for (auto a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
      fail(it->first, path.empty() ? key : path + "." + key,
           "unknown key (allowed: " + list + ")");
    }
  }
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

YAML::Node required(const YAML::Node& parent, const std::string& path, std::string_view key) {
  const YAML::Node n = parent[std::string(key)];
  if (!n) fail(parent, join(path, key), "missing required field");
  return n;
}

std::string scalar(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) fail(node, path, "expected a scalar value");
  return node.Scalar();
}

double quantity(const YAML::Node& node, const std::string& path, Kind kind) {
  const std::string text = scalar(node, path);
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  while (begin < end && *begin == ' ') ++begin;
  if (begin < end && *begin == '+') ++begin;
  double value = 0;
  auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || !std::isfinite(value)) {
    fail(node, path, "expected a " + std::string(kind_name(kind)) + ", got '" + text + "'");
  }
  std::string unit(res.ptr, end);
  unit.erase(0, unit.find_first_not_of(' '));
  unit.erase(unit.find_last_not_of(' ') + 1);
  if (unit.empty()) return value;
  for (const auto& u : units_for(kind)) {
    if (u.unit == unit) return value * u.factor;
  }
  std::string accepted;
  for (const auto& u : units_for(kind)) accepted += (accepted.empty() ? "" : ", ") + std::string(u.unit);
  if (kind == Kind::Plain) fail(node, path, "unit mismatch: '" + unit + "' given for a dimensionless value");
  fail(node, path, "unit mismatch: '" + unit + "' is not a " + std::string(kind_name(kind)) +
                       " unit (expected " + accepted + ")");
}

int integer(const YAML::Node& node, const std::string& path) {
  const std::string text = scalar(node, path);
  int value = 0;
  const char* begin = text.data();
  if (!text.empty() && text[0] == '+') ++begin;
  auto res = std::from_chars(begin, text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    fail(node, path, "expected an integer, got '" + text + "'");
  }
  return value;
}

bool boolean(const YAML::Node& node, const std::string& path) {
  const std::string text = scalar(node, path);
  if (text == "true") return true;
  if (text == "false") return false;
  fail(node, path, "expected true or false, got '" + text + "'");
}

std::array<double, 2> pair_of(const YAML::Node& node, const std::string& path, Kind kind) {
  if (!node.IsSequence() || node.size() != 2) fail(node, path, "expected a two-element list");
  return {quantity(node[0], path + "[0]", kind), quantity(node[1], path + "[1]", kind)};
}

double positive(const YAML::Node& node, const std::string& path, Kind kind) {
  const double v = quantity(node, path, kind);
  if (!(v > 0)) fail(node, path, "must be positive");
  return v;
}

double nonnegative(const YAML::Node& node, const std::string& path, Kind kind) {
  const double v = quantity(node, path, kind);
  if (!(v >= 0)) fail(node, path, "must be nonnegative");
  return v;
}

int population_offset(const YAML::Node& node, const std::string& path) {
  const int z = integer(node, path);
  if (z < -2 || z > 2) fail(node, path, "population offset must be one of -2, -1, 0, 1, 2");
  return z;
}

ScenarioOperator parse_operator(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"body_mass", "height", "gender"});
  ScenarioOperator op;
  op.body_mass = positive(required(n, path, "body_mass"), join(path, "body_mass"), Kind::Mass);
  op.height = positive(required(n, path, "height"), join(path, "height"), Kind::Length);
  if (n["gender"]) {
    try {
      op.gender = parse_gender(scalar(n["gender"], join(path, "gender")));
    } catch (const ParseError& e) {
      fail(n["gender"], join(path, "gender"), e.what());
    }
  }
  return op;
}

ScenarioTask parse_task(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"work_duration", "rest_duration", "cycles", "hole_time"});
  ScenarioTask t;
  t.work_duration =
      positive(required(n, path, "work_duration"), join(path, "work_duration"), Kind::Time);
  if (n["rest_duration"]) {
    t.rest_duration = nonnegative(n["rest_duration"], join(path, "rest_duration"), Kind::Time);
  }
  if (n["cycles"]) {
    t.cycles = integer(n["cycles"], join(path, "cycles"));
    if (t.cycles < 1) fail(n["cycles"], join(path, "cycles"), "must be at least 1");
  }
  if (n["hole_time"]) t.hole_time = positive(n["hole_time"], join(path, "hole_time"), Kind::Time);
  return t;
}

ScenarioLoads parse_loads(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"machine_mass", "push_force", "split_per_arm"});
  ScenarioLoads l;
  const auto mm = required(n, path, "machine_mass");
  const std::string mpath = join(path, "machine_mass");
  if (mm.IsSequence()) {
    if (mm.size() == 0) fail(mm, mpath, "needs at least one load case");
    for (std::size_t i = 0; i < mm.size(); ++i) {
      l.machine_mass.push_back(
          nonnegative(mm[i], mpath + "[" + std::to_string(i) + "]", Kind::Mass));
    }
  } else {
    l.machine_mass.push_back(nonnegative(mm, mpath, Kind::Mass));
  }
  if (n["push_force"]) l.push_force = nonnegative(n["push_force"], join(path, "push_force"), Kind::Force);
  if (n["split_per_arm"]) l.split_per_arm = boolean(n["split_per_arm"], join(path, "split_per_arm"));
  return l;
}

ScenarioPosture parse_posture(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"q", "shoulder_flexion", "elbow_flexion"});
  ScenarioPosture p;
  const bool has_q = static_cast<bool>(n["q"]);
  const bool has_sagittal = n["shoulder_flexion"] || n["elbow_flexion"];
  if (has_q == has_sagittal) {
    fail(n, path, "give either q (five joint angles) or shoulder_flexion and elbow_flexion");
  }
  if (has_q) {
    const auto q = n["q"];
    if (!q.IsSequence() || q.size() != kArmJoints) fail(q, join(path, "q"), "expected five joint angles");
    for (int j = 0; j < kArmJoints; ++j) {
      p.q_deg[j] = quantity(q[j], join(path, "q") + "[" + std::to_string(j) + "]", Kind::Angle);
    }
  } else {
    p.q_deg[0] = -quantity(required(n, path, "shoulder_flexion"), join(path, "shoulder_flexion"),
                           Kind::Angle);
    p.q_deg[3] =
        -quantity(required(n, path, "elbow_flexion"), join(path, "elbow_flexion"), Kind::Angle);
  }
  return p;
}

ScenarioSweep parse_sweep(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"start", "stop", "step", "weights", "branch"});
  ScenarioSweep s{};
  s.start = quantity(required(n, path, "start"), join(path, "start"), Kind::Length);
  s.stop = quantity(required(n, path, "stop"), join(path, "stop"), Kind::Length);
  if (!(s.stop >= s.start)) fail(n, path, "stop must not be below start");
  if (n["step"]) s.step = positive(n["step"], join(path, "step"), Kind::Length);
  if (n["weights"]) {
    const auto w = pair_of(n["weights"], join(path, "weights"), Kind::Plain);
    if (!(w[0] >= 0 && w[1] >= 0) || (w[0] == 0 && w[1] == 0)) {
      fail(n["weights"], join(path, "weights"), "weights must be nonnegative and not both zero");
    }
    s.w1 = w[0];
    s.w2 = w[1];
  }
  if (n["branch"]) {
    const auto b = scalar(n["branch"], join(path, "branch"));
    if (b == "elbow-down") {
      s.branch = IkBranch::ElbowDown;
    } else if (b == "elbow-up") {
      s.branch = IkBranch::ElbowUp;
    } else {
      fail(n["branch"], join(path, "branch"), "expected elbow-down or elbow-up");
    }
  }
  return s;
}

ScenarioTool parse_tool(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"com_offset", "bit_offset", "bit_calibration", "axis_elevation"});
  ScenarioTool t;
  if (n["com_offset"]) t.com_offset = pair_of(n["com_offset"], join(path, "com_offset"), Kind::Length);
  if (n["bit_offset"] && n["bit_calibration"]) {
    fail(n, path, "give at most one of bit_offset and bit_calibration");
  }
  if (n["bit_offset"]) t.bit_offset = pair_of(n["bit_offset"], join(path, "bit_offset"), Kind::Length);
  if (n["bit_calibration"]) {
    const auto c = n["bit_calibration"];
    const auto cpath = join(path, "bit_calibration");
    check_keys(c, cpath, {"shoulder_flexion", "elbow_flexion", "distance"});
    t.bit_calibration = BitCalibration{
        quantity(required(c, cpath, "shoulder_flexion"), join(cpath, "shoulder_flexion"), Kind::Angle),
        quantity(required(c, cpath, "elbow_flexion"), join(cpath, "elbow_flexion"), Kind::Angle),
        quantity(required(c, cpath, "distance"), join(cpath, "distance"), Kind::Length)};
  }
  if (n["axis_elevation"]) {
    t.axis_elevation = quantity(n["axis_elevation"], join(path, "axis_elevation"), Kind::Angle);
  }
  return t;
}

ExplicitStrength parse_explicit_strength(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"mean", "sigma"});
  return {positive(required(n, path, "mean"), join(path, "mean"), Kind::Torque),
          nonnegative(required(n, path, "sigma"), join(path, "sigma"), Kind::Torque)};
}

ScenarioStrength parse_strength(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"source", "shoulder", "elbow"});
  ScenarioStrength s;
  const auto src = scalar(required(n, path, "source"), join(path, "source"));
  if (src == "regression") {
    s.source = ScenarioStrength::Source::Regression;
    if (n["shoulder"] || n["elbow"]) {
      fail(n, path, "exactly one strength source: explicit values given with source regression");
    }
  } else if (src == "explicit") {
    s.source = ScenarioStrength::Source::Explicit;
    s.shoulder = parse_explicit_strength(required(n, path, "shoulder"), join(path, "shoulder"));
    s.elbow = parse_explicit_strength(required(n, path, "elbow"), join(path, "elbow"));
  } else {
    fail(n["source"], join(path, "source"), "expected regression or explicit");
  }
  return s;
}

ScenarioFatigue parse_fatigue(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"fatigue_rate", "recovery_rate", "recovery_fraction", "index_mode",
                       "trajectory_step"});
  ScenarioFatigue f;
  if (n["fatigue_rate"]) f.fatigue_rate = positive(n["fatigue_rate"], join(path, "fatigue_rate"), Kind::Rate);
  if (n["recovery_rate"]) {
    f.recovery_rate = positive(n["recovery_rate"], join(path, "recovery_rate"), Kind::Rate);
  }
  if (n["recovery_fraction"]) {
    f.recovery_fraction = quantity(n["recovery_fraction"], join(path, "recovery_fraction"), Kind::Plain);
    if (!(f.recovery_fraction > 0 && f.recovery_fraction <= 1)) {
      fail(n["recovery_fraction"], join(path, "recovery_fraction"), "must lie in (0, 1]");
    }
  }
  if (n["index_mode"]) {
    try {
      f.index_mode = parse_index_form(scalar(n["index_mode"], join(path, "index_mode")));
    } catch (const ParseError& e) {
      fail(n["index_mode"], join(path, "index_mode"), e.what());
    }
  }
  if (n["trajectory_step"]) {
    f.trajectory_step = positive(n["trajectory_step"], join(path, "trajectory_step"), Kind::Time);
  }
  return f;
}

ComfortSpec parse_comfort(const YAML::Node& n, const std::string& path) {
  check_keys(n, path, {"G", "shoulder", "elbow"});
  ComfortSpec spec;
  spec.barrier = positive(required(n, path, "G"), join(path, "G"), Kind::Plain);
  spec.joints.clear();
  for (std::string_view name : {"shoulder", "elbow"}) {
    const auto j = required(n, path, name);
    const auto jpath = join(path, name);
    check_keys(j, jpath, {"lower", "upper", "neutral", "gamma"});
    JointComfort c{std::string(name),
                   quantity(required(j, jpath, "lower"), join(jpath, "lower"), Kind::Angle),
                   quantity(required(j, jpath, "upper"), join(jpath, "upper"), Kind::Angle),
                   quantity(required(j, jpath, "neutral"), join(jpath, "neutral"), Kind::Angle),
                   nonnegative(required(j, jpath, "gamma"), join(jpath, "gamma"), Kind::Plain)};
    if (!(c.lower < c.neutral && c.neutral < c.upper)) {
      fail(j, jpath, "needs lower < neutral < upper");
    }
    spec.joints.push_back(c);
  }
  return spec;
}

std::string fmt(double v) {
  if (v == 0) v = 0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string with_unit(double v, std::string_view unit) { return fmt(v) + " " + std::string(unit); }

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::pair<double, double> arm_lengths(const ScenarioOperator& op) {
  const auto seg = segment_params(OperatorProfile<double>{op.body_mass, op.height, op.gender});
  return {seg.upper_arm.length, seg.forearm.length};
}

void check_sweep_reachable(const Scenario& s, const YAML::Node& node) {
  const auto [lu, lf] = arm_lengths(s.op);
  const Eigen::Vector2d offset = resolve_bit_offset(s);
  const double near = std::abs(lu - lf);
  const double far = lu + lf;
  const auto& sw = *s.sweep;
  const auto count = static_cast<std::size_t>(std::floor((sw.stop - sw.start) / sw.step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double d = sw.start + static_cast<double>(i) * sw.step;
    const double reach = (Eigen::Vector2d(d, 0) - offset).norm();
    if (reach >= near && reach <= far) return;
  }
  char msg[200];
  std::snprintf(msg, sizeof msg,
                "unreachable sweep range [%g, %g] m: the grip must stay within [%.4f, %.4f] m of "
                "the shoulder with bit offset (%.4f, %.4f) m",
                sw.start, sw.stop, near, far, offset.x(), offset.y());
  fail(node, "sweep", msg);
}

}  // namespace

LoadCase ScenarioLoads::per_arm(std::size_t i) const {
  const double share = split_per_arm ? 0.5 : 1.0;
  return {machine_mass.at(i) * share, push_force * share};
}

Scenario parse_scenario(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError("malformed YAML: " + e.msg, e.mark.line + 1);
  }
  if (!root || root.IsNull()) throw ParseError("empty scenario document");
  try {
    check_keys(root, "", {"schema_version", "name", "operator", "task", "loads", "posture", "sweep",
                          "tool", "strength", "torques", "population_z", "stress_z", "fatigue",
                          "comfort"});
    Scenario s;
    s.schema_version = integer(required(root, "", "schema_version"), "schema_version");
    if (s.schema_version != kScenarioSchemaVersion) {
      fail(root["schema_version"], "schema_version",
           "unsupported version " + std::to_string(s.schema_version) + " (this build reads " +
               std::to_string(kScenarioSchemaVersion) + ")");
    }
    if (root["name"]) s.name = scalar(root["name"], "name");
    s.op = parse_operator(required(root, "", "operator"), "operator");
    s.task = parse_task(required(root, "", "task"), "task");
    s.loads = parse_loads(required(root, "", "loads"), "loads");
    if (static_cast<bool>(root["posture"]) == static_cast<bool>(root["sweep"])) {
      fail(root["sweep"] ? root["sweep"] : root, "posture",
           "exactly one posture source (posture or sweep) is required");
    }
    if (root["posture"]) s.posture = parse_posture(root["posture"], "posture");
    if (root["sweep"]) s.sweep = parse_sweep(root["sweep"], "sweep");
    if (root["tool"]) s.tool = parse_tool(root["tool"], "tool");
    if (root["strength"]) s.strength = parse_strength(root["strength"], "strength");
    if (root["torques"]) {
      const auto t = root["torques"];
      if (!t.IsSequence()) fail(t, "torques", "expected a list with one entry per load case");
      if (t.size() != s.loads.machine_mass.size()) {
        fail(t, "torques", "has " + std::to_string(t.size()) + " entries but there are " +
                               std::to_string(s.loads.machine_mass.size()) + " load cases");
      }
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto path = "torques[" + std::to_string(i) + "]";
        check_keys(t[i], path, {"shoulder", "elbow"});
        s.torques.push_back(
            {nonnegative(required(t[i], path, "shoulder"), join(path, "shoulder"), Kind::Torque),
             nonnegative(required(t[i], path, "elbow"), join(path, "elbow"), Kind::Torque)});
      }
    }
    if (root["population_z"]) {
      const auto z = root["population_z"];
      s.population_z.clear();
      if (z.IsSequence()) {
        if (z.size() == 0) fail(z, "population_z", "needs at least one value");
        for (std::size_t i = 0; i < z.size(); ++i) {
          s.population_z.push_back(population_offset(z[i], "population_z[" + std::to_string(i) + "]"));
        }
      } else {
        s.population_z.push_back(population_offset(z, "population_z"));
      }
      std::set<int> seen(s.population_z.begin(), s.population_z.end());
      if (seen.size() != s.population_z.size()) fail(z, "population_z", "duplicate values");
    }
    if (root["stress_z"]) s.stress_z = population_offset(root["stress_z"], "stress_z");
    if (root["fatigue"]) s.fatigue = parse_fatigue(root["fatigue"], "fatigue");
    if (root["comfort"]) s.comfort = parse_comfort(root["comfort"], "comfort");
    if (s.sweep) check_sweep_reachable(s, root["sweep"]);
    return s;
  } catch (const YAML::Exception& e) {
    throw ParseError(e.msg, e.mark.line + 1);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scenario " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream o;
  o << "schema_version: " << s.schema_version << "\n";
  if (!s.name.empty()) o << "name: " << quoted(s.name) << "\n";
  o << "operator:\n"
    << "  body_mass: " << with_unit(s.op.body_mass, "kg") << "\n"
    << "  height: " << with_unit(s.op.height, "m") << "\n"
    << "  gender: " << to_string(s.op.gender) << "\n";
  o << "task:\n"
    << "  work_duration: " << with_unit(s.task.work_duration, "s") << "\n"
    << "  rest_duration: " << with_unit(s.task.rest_duration, "s") << "\n"
    << "  cycles: " << s.task.cycles << "\n"
    << "  hole_time: " << with_unit(s.task.hole_time, "s") << "\n";
  o << "loads:\n  machine_mass: [";
  for (std::size_t i = 0; i < s.loads.machine_mass.size(); ++i) {
    o << (i ? ", " : "") << with_unit(s.loads.machine_mass[i], "kg");
  }
  o << "]\n"
    << "  push_force: " << with_unit(s.loads.push_force, "N") << "\n"
    << "  split_per_arm: " << (s.loads.split_per_arm ? "true" : "false") << "\n";
  if (s.posture) {
    o << "posture:\n  q: [";
    for (int j = 0; j < kArmJoints; ++j) o << (j ? ", " : "") << with_unit(s.posture->q_deg[j], "deg");
    o << "]\n";
  }
  if (s.sweep) {
    o << "sweep:\n"
      << "  start: " << with_unit(s.sweep->start, "m") << "\n"
      << "  stop: " << with_unit(s.sweep->stop, "m") << "\n"
      << "  step: " << with_unit(s.sweep->step, "m") << "\n"
      << "  weights: [" << fmt(s.sweep->w1) << ", " << fmt(s.sweep->w2) << "]\n"
      << "  branch: " << (s.sweep->branch == IkBranch::ElbowDown ? "elbow-down" : "elbow-up")
      << "\n";
  }
  o << "tool:\n"
    << "  com_offset: [" << with_unit(s.tool.com_offset[0], "m") << ", "
    << with_unit(s.tool.com_offset[1], "m") << "]\n";
  if (s.tool.bit_offset) {
    o << "  bit_offset: [" << with_unit((*s.tool.bit_offset)[0], "m") << ", "
      << with_unit((*s.tool.bit_offset)[1], "m") << "]\n";
  }
  if (s.tool.bit_calibration) {
    const auto& c = *s.tool.bit_calibration;
    o << "  bit_calibration:\n"
      << "    shoulder_flexion: " << with_unit(c.shoulder_flexion, "deg") << "\n"
      << "    elbow_flexion: " << with_unit(c.elbow_flexion, "deg") << "\n"
      << "    distance: " << with_unit(c.distance, "m") << "\n";
  }
  o << "  axis_elevation: " << with_unit(s.tool.axis_elevation, "deg") << "\n";
  o << "strength:\n";
  if (s.strength.source == ScenarioStrength::Source::Regression) {
    o << "  source: regression\n";
  } else {
    o << "  source: explicit\n";
    for (auto [name, v] : {std::pair{"shoulder", s.strength.shoulder}, {"elbow", s.strength.elbow}}) {
      o << "  " << name << ":\n"
        << "    mean: " << with_unit(v->mean, "N*m") << "\n"
        << "    sigma: " << with_unit(v->sigma, "N*m") << "\n";
    }
  }
  if (!s.torques.empty()) {
    o << "torques:\n";
    for (const auto& t : s.torques) {
      o << "  - shoulder: " << with_unit(t.shoulder, "N*m") << "\n"
        << "    elbow: " << with_unit(t.elbow, "N*m") << "\n";
    }
  }
  o << "population_z: [";
  for (std::size_t i = 0; i < s.population_z.size(); ++i) o << (i ? ", " : "") << s.population_z[i];
  o << "]\n";
  o << "stress_z: " << s.stress_z << "\n";
  o << "fatigue:\n"
    << "  fatigue_rate: " << with_unit(s.fatigue.fatigue_rate, "1/min") << "\n"
    << "  recovery_rate: " << with_unit(s.fatigue.recovery_rate, "1/min") << "\n"
    << "  recovery_fraction: " << fmt(s.fatigue.recovery_fraction) << "\n"
    << "  index_mode: " << to_string(s.fatigue.index_mode) << "\n"
    << "  trajectory_step: " << with_unit(s.fatigue.trajectory_step, "s") << "\n";
  o << "comfort:\n  G: " << fmt(s.comfort.barrier) << "\n";
  for (const auto& j : s.comfort.joints) {
    o << "  " << j.joint << ":\n"
      << "    lower: " << with_unit(j.lower, "deg") << "\n"
      << "    upper: " << with_unit(j.upper, "deg") << "\n"
      << "    neutral: " << with_unit(j.neutral, "deg") << "\n"
      << "    gamma: " << fmt(j.gamma) << "\n";
  }
  return o.str();
}

Eigen::Vector2d resolve_bit_offset(const Scenario& s) {
  if (s.tool.bit_offset) return {(*s.tool.bit_offset)[0], (*s.tool.bit_offset)[1]};
  if (s.tool.bit_calibration) {
    const auto& c = *s.tool.bit_calibration;
    const auto [lu, lf] = arm_lengths(s.op);
    return derive_tool_offset(lu, lf,
                              SagittalAngles<double>{units::deg_to_rad(c.shoulder_flexion),
                                                     units::deg_to_rad(c.elbow_flexion)},
                              c.distance);
  }
  return {0, 0};
}

SweepContext make_sweep_context(const Scenario& s) {
  const auto seg = segment_params(OperatorProfile<double>{s.op.body_mass, s.op.height, s.op.gender});
  const auto chain = right_arm_chain(seg);
  SweepContext ctx{chain, arm_link_inertia(chain, seg)};
  ctx.gender = s.op.gender;
  ctx.population_z = s.stress_z;
  ctx.comfort = s.comfort;
  ctx.tool.com_offset = {s.tool.com_offset[0], s.tool.com_offset[1]};
  ctx.tool.bit_offset = resolve_bit_offset(s);
  ctx.tool.axis_elevation_deg = s.tool.axis_elevation;
  ctx.load = s.loads.per_arm(0);
  if (s.sweep) ctx.branch = s.sweep->branch;
  return ctx;
}

}  // namespace ergo
