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


#include "ergo/posture.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace ergo {

namespace {

double number(const std::string& tok, int line) {
  double v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError("expected a number, got '" + tok + "'", line);
  }
  return v;
}

std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

ComfortSpec ComfortSpec::defaults() {
  return {1e6, {{"shoulder", -90, 150, 0, 1e6}, {"elbow", -10, 200, 55, 1e6}}};
}

ComfortSpec ComfortSpec::anatomical() {
  return {1e6, {{"shoulder", -60, 180, 0, 1}, {"elbow", 0, 145, 90, 1}}};
}

const JointComfort& ComfortSpec::joint(std::string_view name) const {
  for (const auto& j : joints) {
    if (j.joint == name) return j;
  }
  throw DomainError("comfort spec has no joint '" + std::string(name) + "'");
}

ComfortSpec ComfortSpec::parse(std::string_view text) {
  ComfortSpec spec;
  spec.joints.clear();
  bool have_barrier = false;
  JointComfort shoulder{}, elbow{};
  bool have_shoulder = false, have_elbow = false;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "G") {
      if (tok.size() != 2) throw ParseError("G expects one value", line_no);
      if (have_barrier) throw ParseError("duplicate G line", line_no);
      spec.barrier = number(tok[1], line_no);
      if (!(spec.barrier > 0)) throw ParseError("G must be positive", line_no);
      have_barrier = true;
    } else if (tok[0] == "joint") {
      if (!have_barrier) throw ParseError("the G header must precede joint rows", line_no);
      if (tok.size() != 6) throw ParseError("joint expects: name lower upper neutral gamma", line_no);
      JointComfort j{tok[1], number(tok[2], line_no), number(tok[3], line_no),
                     number(tok[4], line_no), number(tok[5], line_no)};
      if (!(j.lower < j.neutral && j.neutral < j.upper)) {
        throw ParseError("joint '" + j.joint + "' needs lower < neutral < upper", line_no);
      }
      if (j.gamma < 0) throw ParseError("gamma must be nonnegative", line_no);
      if (j.joint == "shoulder") {
        if (have_shoulder) throw ParseError("duplicate joint 'shoulder'", line_no);
        shoulder = j;
        have_shoulder = true;
      } else if (j.joint == "elbow") {
        if (have_elbow) throw ParseError("duplicate joint 'elbow'", line_no);
        elbow = j;
        have_elbow = true;
      } else {
        throw ParseError("unknown joint '" + j.joint + "' (expected shoulder|elbow)", line_no);
      }
    } else {
      throw ParseError("unknown key '" + tok[0] + "'", line_no);
    }
  }
  if (!have_barrier) throw ParseError("missing G header");
  if (!have_shoulder || !have_elbow) throw ParseError("both shoulder and elbow rows are required");
  spec.joints = {shoulder, elbow};
  return spec;
}

ComfortSpec ComfortSpec::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open comfort spec " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string ComfortSpec::to_text() const {
  std::string out = "G " + format_number(barrier) + "\n";
  for (const auto& j : joints) {
    out += "joint " + j.joint + ' ' + format_number(j.lower) + ' ' + format_number(j.upper) + ' ' +
           format_number(j.neutral) + ' ' + format_number(j.gamma) + '\n';
  }
  return out;
}

std::vector<ExternalWrench<double>> tool_wrenches(const ToolGeometry& tool, const LoadCase& load,
                                                  double gravity) {
  if (!(load.machine_mass >= 0)) throw DomainError("machine mass must be nonnegative");
  if (!(load.push_force >= 0)) throw DomainError("push force must be nonnegative");
  const double elevation = units::deg_to_rad(tool.axis_elevation_deg);
  ExternalWrench<double> weight;
  weight.offset = {tool.com_offset.x(), 0, tool.com_offset.y()};
  weight.offset_frame = OffsetFrame::World;
  weight.force = {0, 0, -load.machine_mass * gravity};
  weight.tag = "machine weight";
  ExternalWrench<double> push;
  push.offset = {tool.bit_offset.x(), 0, tool.bit_offset.y()};
  push.offset_frame = OffsetFrame::World;
  push.force = -load.push_force * Eigen::Vector3d(std::cos(elevation), 0, std::sin(elevation));
  push.tag = "push reaction";
  return {weight, push};
}

std::vector<double> combined_objective(const std::vector<PostureCandidate>& candidates, double w1,
                                       double w2) {
  if (candidates.empty()) throw DomainError("combined objective: no candidates");
  if (!(w1 >= 0 && w2 >= 0)) throw DomainError("combined objective: weights must be nonnegative");
  double max_f = 0, max_d = 0;
  for (const auto& c : candidates) {
    max_f = std::max(max_f, c.f_fatigue);
    max_d = std::max(max_d, c.f_discomfort);
  }
  if (!(max_f > 0)) throw DomainError("combined objective: fatigue column is all zero");
  if (!(max_d > 0)) throw DomainError("combined objective: discomfort column is all zero");
  std::vector<double> out;
  out.reserve(candidates.size());
  for (const auto& c : candidates) out.push_back(w1 * c.f_fatigue / max_f + w2 * c.f_discomfort / max_d);
  return out;
}

std::vector<std::size_t> pareto_front(const std::vector<PostureCandidate>& candidates) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = candidates[a];
    const auto& cb = candidates[b];
    if (ca.f_fatigue != cb.f_fatigue) return ca.f_fatigue < cb.f_fatigue;
    return ca.f_discomfort < cb.f_discomfort;
  });
  std::vector<std::size_t> front;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i : order) {
    if (candidates[i].f_discomfort < best) {
      front.push_back(i);
      best = candidates[i].f_discomfort;
    }
  }
  return front;
}

PostureCandidate evaluate_candidate(double distance, const SweepContext& ctx) {
  const double lu = ctx.chain.upper_arm_length();
  const double lf = ctx.chain.forearm_length();
  const Eigen::Vector2d target = Eigen::Vector2d(distance, 0) - ctx.tool.bit_offset;
  const auto angles = ik_two_link(target, lu, lf, ctx.branch);

  PostureCandidate c{};
  c.distance = distance;
  c.shoulder_deg = units::rad_to_deg(angles.shoulder);
  c.elbow_deg = units::rad_to_deg(angles.elbow);
  c.q = sagittal_posture(angles.shoulder, angles.elbow);
  const auto tau = static_joint_torques(ctx.chain, ctx.links, c.q,
                                        tool_wrenches(ctx.tool, ctx.load, ctx.gravity), ctx.gravity);
  c.torques = {std::abs(tau[0]), std::abs(tau[3])};

  int k = 0;
  for (auto joint : {StrengthJoint::ShoulderFlexion, StrengthJoint::ElbowFlexion}) {
    const auto est = ctx.strength.evaluate(joint, c.shoulder_deg, c.elbow_deg, ctx.gender);
    const auto p = percentile_strength(est, ctx.population_z);
    if (p.nonphysical) {
      throw DomainError(std::string(to_string(joint)) + " strength is nonphysical at z = " +
                        std::to_string(ctx.population_z));
    }
    c.strengths[k++] = p.value;
  }
  c.f_fatigue = stress_index(c.torques, c.strengths);
  const double g = ctx.comfort.barrier;
  c.discomfort_shoulder = joint_discomfort(c.shoulder_deg, ctx.comfort.joint("shoulder"), g);
  c.discomfort_elbow = joint_discomfort(c.elbow_deg, ctx.comfort.joint("elbow"), g);
  c.f_discomfort = c.discomfort_shoulder + c.discomfort_elbow;
  return c;
}

SweepResult sweep_distance(const SweepSpec& spec, const SweepContext& ctx) {
  if (!(spec.step > 0)) throw DomainError("sweep step must be positive");
  if (!(spec.stop >= spec.start)) throw DomainError("sweep range must satisfy start <= stop");
  const auto count =
      static_cast<std::size_t>(std::floor((spec.stop - spec.start) / spec.step + 1e-9)) + 1;
  SweepResult result{};
  for (std::size_t i = 0; i < count; ++i) {
    const double d = spec.start + static_cast<double>(i) * spec.step;
    try {
      result.candidates.push_back(evaluate_candidate(d, ctx));
    } catch (const DomainError&) {
      result.skipped.push_back(d);
    }
  }
  if (result.candidates.empty()) {
    throw DomainError("no admissible posture for distances in [" + format_number(spec.start) +
                      ", " + format_number(spec.stop) + "] m");
  }
  const auto overall = combined_objective(result.candidates, spec.w1, spec.w2);
  result.argmin = 0;
  for (std::size_t i = 0; i < overall.size(); ++i) {
    result.candidates[i].f_overall = overall[i];
    if (overall[i] < overall[result.argmin]) result.argmin = i;
  }
  result.pareto = pareto_front(result.candidates);
  return result;
}

}  // namespace ergo
