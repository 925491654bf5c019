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


#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "ergo/scenario.hpp"

namespace ergo {

namespace {

constexpr std::array<StrengthJoint, 2> kJoints = {StrengthJoint::ShoulderFlexion,
                                                  StrengthJoint::ElbowFlexion};

std::string_view to_string(RecoveryStatus status) {
  switch (status) {
    case RecoveryStatus::Reached:
      return "reached";
    case RecoveryStatus::AlreadyRecovered:
      return "already recovered";
    case RecoveryStatus::Unreachable:
      return "unreachable";
  }
  return "unknown";
}

std::string cell_label(double mass, std::string_view joint, int z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "load %.3f kg per arm, %s, z = %+d", mass,
                std::string(joint).c_str(), z);
  return buf;
}

}  // namespace

Report run_scenario(const Scenario& s) {
  Report report;
  report.scenario_name = s.name;
  const auto seg = segment_params(OperatorProfile<double>{s.op.body_mass, s.op.height, s.op.gender});
  const auto chain = right_arm_chain(seg);
  const auto links = arm_link_inertia(chain, seg);

  JointVector<double> q;
  if (s.posture) {
    for (int j = 0; j < kArmJoints; ++j) q[j] = units::deg_to_rad(s.posture->q_deg[j]);
  } else {
    const auto ctx = make_sweep_context(s);
    SweepSpec spec{s.sweep->start, s.sweep->stop, s.sweep->step, s.sweep->w1, s.sweep->w2};
    try {
      report.sweep = sweep_distance(spec, ctx);
    } catch (const DomainError& e) {
      throw DomainError(std::string("distance sweep: ") + e.what());
    }
    q = report.sweep->candidates[report.sweep->argmin].q;
  }
  report.shoulder_flexion = -units::rad_to_deg(q[0]);
  report.elbow_flexion = -units::rad_to_deg(q[3]);

  // Joint torque demand per load case.
  std::vector<std::array<double, 2>> demand;
  for (std::size_t i = 0; i < s.loads.machine_mass.size(); ++i) {
    const auto load = s.loads.per_arm(i);
    std::array<double, 2> tau{};
    const bool injected = !s.torques.empty();
    if (injected) {
      tau = {s.torques[i].shoulder, s.torques[i].elbow};
    } else {
      ToolGeometry tool;
      tool.com_offset = {s.tool.com_offset[0], s.tool.com_offset[1]};
      tool.bit_offset = resolve_bit_offset(s);
      tool.axis_elevation_deg = s.tool.axis_elevation;
      JointVector<double> t;
      try {
        t = static_joint_torques(chain, links, q, tool_wrenches(tool, load));
      } catch (const DomainError& e) {
        throw DomainError("posture: " + std::string(e.what()));
      }
      tau = {std::abs(t[0]), std::abs(t[3])};
    }
    demand.push_back(tau);
    for (int j = 0; j < 2; ++j) {
      report.torques.push_back({load.machine_mass, std::string(to_string(kJoints[j])), tau[j], injected});
    }
  }

  // Strength per joint and population offset.
  std::array<StrengthEstimate, 2> strength{};
  if (s.strength.source == ScenarioStrength::Source::Explicit) {
    strength = {StrengthEstimate{s.strength.shoulder->mean, s.strength.shoulder->sigma},
                StrengthEstimate{s.strength.elbow->mean, s.strength.elbow->sigma}};
  } else {
    const auto model = StrengthModel::defaults();
    for (int j = 0; j < 2; ++j) {
      try {
        strength[j] = model.evaluate(kJoints[j], report.shoulder_flexion, report.elbow_flexion,
                                     s.op.gender);
      } catch (const DomainError& e) {
        throw DomainError("strength at the task posture: " + std::string(e.what()));
      }
    }
  }
  for (int j = 0; j < 2; ++j) {
    for (int z : s.population_z) {
      const auto p = percentile_strength(strength[j], z);
      report.strengths.push_back({std::string(to_string(kJoints[j])), report.shoulder_flexion,
                                  report.elbow_flexion, strength[j].mean, strength[j].sigma, z,
                                  p.value, p.nonphysical});
      if (p.nonphysical) {
        throw DomainError(std::string(to_string(kJoints[j])) + " strength at z = " +
                          std::to_string(z) + " is nonphysical (" + std::to_string(p.value) +
                          " N*m)");
      }
    }
  }

  const FatigueParams<double> params{s.fatigue.fatigue_rate, s.fatigue.recovery_rate};
  const double hole = units::seconds_to_minutes(s.task.hole_time);
  const TaskCycle<double> base_cycle{units::seconds_to_minutes(s.task.work_duration),
                                     units::seconds_to_minutes(s.task.rest_duration), 0,
                                     s.task.cycles};
  const double step = units::seconds_to_minutes(s.fatigue.trajectory_step);

  for (std::size_t i = 0; i < demand.size(); ++i) {
    const double mass = s.loads.per_arm(i).machine_mass;
    for (int j = 0; j < 2; ++j) {
      const std::string joint(to_string(kJoints[j]));
      for (int z : s.population_z) {
        const double gmax = percentile_strength(strength[j], z).value;
        const double load = demand[i][j];
        try {
          const auto e = endurance_time(gmax, load, params);
          report.endurance.push_back({mass, joint, z, gmax, load,
                                      units::minutes_to_seconds(e.minutes), e.status});
          if (e.status == LimitStatus::Overexertion) {
            report.warnings.push_back(cell_label(mass, joint, z) + ": overexertion, load " +
                                      std::to_string(load) + " N*m exceeds strength " +
                                      std::to_string(gmax) + " N*m");
          }
          report.index.push_back({mass, joint, z, s.task.hole_time,
                                  fatigue_index(gmax, load, hole, params, s.fatigue.index_mode)});
          const double g0 = capacity_under_load(gmax, gmax, load, hole, params);
          const auto r = recovery_time_to_fraction(gmax, g0, s.fatigue.recovery_fraction, params);
          report.recovery.push_back({mass, joint, z, units::minutes_to_seconds(r.minutes), r.status});
          auto cycle = base_cycle;
          cycle.load_torque = load;
          auto traj = simulate_schedule(JointCapacity<double>{gmax, gmax, 0}, cycle, params, step,
                                        s.fatigue.index_mode);
          report.trajectories.push_back({mass, joint, z, std::move(traj.samples),
                                         std::move(traj.end_of_rest), traj.cumulative_fatigue,
                                         traj.overexertion});
        } catch (const DomainError& e) {
          throw DomainError(cell_label(mass, joint, z) + ": " + e.what());
        }
      }
    }
    for (int z : s.population_z) {
      HolesRow row{mass, z, std::numeric_limits<std::int64_t>::max(), "none",
                   LimitStatus::NoFatigueLimit};
      for (int j = 0; j < 2; ++j) {
        const double gmax = percentile_strength(strength[j], z).value;
        const auto h = holes_capacity(gmax, demand[i][j], hole, params);
        if (h.status == LimitStatus::NoFatigueLimit) continue;
        if (row.status == LimitStatus::NoFatigueLimit || h.holes < row.holes) {
          row.holes = h.holes;
          row.status = h.status;
          row.limiting_joint = std::string(to_string(kJoints[j]));
        }
      }
      report.holes.push_back(row);
    }
  }
  return report;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "jsonl") return ReportFormat::JsonLines;
  throw ParseError("unknown format '" + std::string(text) + "' (expected csv|jsonl)");
}

namespace {

/// Fixed 3-decimal text, ties rounded up.
std::string dec3(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  double r = round_half_up(v, 3);
  if (r == 0) r = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

/// Six significant digits, for objective values spanning many decades.
std::string sig6(double v) {
  if (v == 0) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

nlohmann::ordered_json json3(double v) {
  if (!std::isfinite(v)) return nullptr;
  double r = round_half_up(v, 3);
  if (r == 0) r = 0;
  return r;
}

nlohmann::ordered_json json6(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(sig6(v));
}

std::string holes_text(const HolesRow& h) {
  return h.status == LimitStatus::NoFatigueLimit ? "inf" : std::to_string(h.holes);
}

class Writer {
 public:
  Writer(ReportFormat format, std::ostream& out) : format_(format), out_(out) {}

  void comment(const std::string& text) {
    if (format_ == ReportFormat::Csv) out_ << "# " << text << "\n";
  }

  void begin_table(const std::string& name, std::vector<std::string> header) {
    if (format_ == ReportFormat::Csv) {
      if (blocks_++) out_ << "\n";
      out_ << "# table: " << name << "\n";
      write_csv(header);
    }
    table_ = name;
    header_ = std::move(header);
  }

  /// `text` feeds CSV, `json` feeds JSON lines; both align with the header.
  void row(const std::vector<std::string>& text, const std::vector<nlohmann::ordered_json>& json) {
    if (format_ == ReportFormat::Csv) {
      write_csv(text);
      return;
    }
    nlohmann::ordered_json obj;
    obj["table"] = table_;
    for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = json[i];
    out_ << obj.dump() << "\n";
  }

 private:
  void write_csv(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
  }

  ReportFormat format_;
  std::ostream& out_;
  std::string table_;
  std::vector<std::string> header_;
  int blocks_ = 0;
};

std::string flag(bool b) { return b ? "true" : "false"; }

}  // namespace

void emit_report(const Report& r, ReportFormat format, std::ostream& out, unsigned sections) {
  Writer w(format, out);
  using J = nlohmann::ordered_json;
  if (!r.scenario_name.empty()) w.comment("scenario: " + r.scenario_name);
  w.comment("posture: shoulder_flexion_deg=" + dec3(r.shoulder_flexion) +
            " elbow_flexion_deg=" + dec3(r.elbow_flexion));

  if (sections & kSectionTorque) {
    w.begin_table("torque", {"load_kg", "joint", "torque_Nm", "source"});
    for (const auto& t : r.torques) {
      const std::string src = t.injected ? "injected" : "computed";
      w.row({dec3(t.machine_mass), t.joint, dec3(t.torque), src},
            {json3(t.machine_mass), t.joint, json3(t.torque), src});
    }
  }
  if (sections & kSectionStrength) {
    w.begin_table("strength", {"joint", "shoulder_flexion_deg", "elbow_flexion_deg", "mean_Nm",
                               "sigma_Nm", "z", "value_Nm", "nonphysical"});
    for (const auto& s : r.strengths) {
      w.row({s.joint, dec3(s.shoulder_flexion), dec3(s.elbow_flexion), dec3(s.mean), dec3(s.sigma),
             std::to_string(s.z), dec3(s.value), flag(s.nonphysical)},
            {s.joint, json3(s.shoulder_flexion), json3(s.elbow_flexion), json3(s.mean),
             json3(s.sigma), s.z, json3(s.value), s.nonphysical});
    }
  }
  if (sections & kSectionEndurance) {
    w.begin_table("endurance",
                  {"load_kg", "joint", "z", "gamma_max_Nm", "load_Nm", "endurance_s", "status"});
    for (const auto& e : r.endurance) {
      const std::string status(to_string(e.status));
      w.row({dec3(e.machine_mass), e.joint, std::to_string(e.z), dec3(e.gamma_max), dec3(e.load),
             dec3(e.endurance), status},
            {json3(e.machine_mass), e.joint, e.z, json3(e.gamma_max), json3(e.load),
             json3(e.endurance), status});
    }
  }
  if (sections & kSectionIndex) {
    w.begin_table("fatigue_index", {"load_kg", "joint", "z", "duration_s", "index"});
    for (const auto& i : r.index) {
      w.row({dec3(i.machine_mass), i.joint, std::to_string(i.z), dec3(i.duration), dec3(i.index)},
            {json3(i.machine_mass), i.joint, i.z, json3(i.duration), json3(i.index)});
    }
  }
  if (sections & kSectionRecovery) {
    w.begin_table("recovery", {"load_kg", "joint", "z", "recovery_s", "status"});
    for (const auto& x : r.recovery) {
      const std::string status(to_string(x.status));
      w.row({dec3(x.machine_mass), x.joint, std::to_string(x.z), dec3(x.recovery), status},
            {json3(x.machine_mass), x.joint, x.z, json3(x.recovery), status});
    }
  }
  if (sections & kSectionHoles) {
    w.begin_table("holes", {"load_kg", "z", "holes", "limiting_joint", "status"});
    for (const auto& h : r.holes) {
      const std::string status(to_string(h.status));
      J holes = h.status == LimitStatus::NoFatigueLimit ? J(nullptr) : J(h.holes);
      w.row({dec3(h.machine_mass), std::to_string(h.z), holes_text(h), h.limiting_joint, status},
            {json3(h.machine_mass), h.z, holes, h.limiting_joint, status});
    }
  }
  if (sections & kSectionTrajectory) {
    w.begin_table("schedule",
                  {"load_kg", "joint", "z", "cycles", "cumulative_fatigue", "overexertion"});
    for (const auto& t : r.trajectories) {
      w.row({dec3(t.machine_mass), t.joint, std::to_string(t.z), std::to_string(t.end_of_rest.size()),
             flag(t.cumulative_fatigue), flag(t.overexertion)},
            {json3(t.machine_mass), t.joint, t.z, t.end_of_rest.size(), t.cumulative_fatigue,
             t.overexertion});
    }
    w.begin_table("end_of_rest", {"load_kg", "joint", "z", "cycle", "gamma_cem_Nm"});
    for (const auto& t : r.trajectories) {
      for (std::size_t c = 0; c < t.end_of_rest.size(); ++c) {
        w.row({dec3(t.machine_mass), t.joint, std::to_string(t.z), std::to_string(c + 1),
               dec3(t.end_of_rest[c])},
              {json3(t.machine_mass), t.joint, t.z, c + 1, json3(t.end_of_rest[c])});
      }
    }
    for (const auto& t : r.trajectories) {
      char name[96];
      std::snprintf(name, sizeof name, "capacity load_kg=%s joint=%s z=%d",
                    dec3(t.machine_mass).c_str(), t.joint.c_str(), t.z);
      w.begin_table(name, {"time_s", "gamma_cem_Nm"});
      for (const auto& p : t.samples) {
        const double ts = units::minutes_to_seconds(p.time);
        w.row({dec3(ts), dec3(p.gamma_cem)}, {json3(ts), json3(p.gamma_cem)});
      }
      std::snprintf(name, sizeof name, "fatigue_index load_kg=%s joint=%s z=%d",
                    dec3(t.machine_mass).c_str(), t.joint.c_str(), t.z);
      w.begin_table(name, {"time_s", "index"});
      for (const auto& p : t.samples) {
        const double ts = units::minutes_to_seconds(p.time);
        w.row({dec3(ts), dec3(p.fatigue_index)}, {json3(ts), json3(p.fatigue_index)});
      }
    }
  }
  if ((sections & kSectionSweep) && r.sweep) {
    const auto& sw = *r.sweep;
    std::vector<bool> on_front(sw.candidates.size(), false);
    for (auto i : sw.pareto) on_front[i] = true;
    w.begin_table("sweep", {"distance_m", "shoulder_flexion_deg", "elbow_flexion_deg",
                            "torque_shoulder_Nm", "torque_elbow_Nm", "strength_shoulder_Nm",
                            "strength_elbow_Nm", "stress_index", "discomfort_shoulder",
                            "discomfort_elbow", "discomfort_index", "overall", "argmin", "pareto"});
    for (std::size_t i = 0; i < sw.candidates.size(); ++i) {
      const auto& c = sw.candidates[i];
      const bool argmin = i == sw.argmin;
      w.row({dec3(c.distance), dec3(c.shoulder_deg), dec3(c.elbow_deg), dec3(c.torques[0]),
             dec3(c.torques[1]), dec3(c.strengths[0]), dec3(c.strengths[1]), sig6(c.f_fatigue),
             sig6(c.discomfort_shoulder), sig6(c.discomfort_elbow), sig6(c.f_discomfort),
             sig6(c.f_overall), flag(argmin), flag(on_front[i])},
            {json3(c.distance), json3(c.shoulder_deg), json3(c.elbow_deg), json3(c.torques[0]),
             json3(c.torques[1]), json3(c.strengths[0]), json3(c.strengths[1]), json6(c.f_fatigue),
             json6(c.discomfort_shoulder), json6(c.discomfort_elbow), json6(c.f_discomfort),
             json6(c.f_overall), argmin, on_front[i]});
    }
    const auto& best = sw.candidates[sw.argmin];
    w.begin_table("argmin", {"distance_m", "shoulder_flexion_deg", "elbow_flexion_deg", "overall"});
    w.row({dec3(best.distance), dec3(best.shoulder_deg), dec3(best.elbow_deg), sig6(best.f_overall)},
          {json3(best.distance), json3(best.shoulder_deg), json3(best.elbow_deg),
           json6(best.f_overall)});
    w.begin_table("pareto", {"distance_m", "stress_index", "discomfort_index"});
    for (auto i : sw.pareto) {
      const auto& c = sw.candidates[i];
      w.row({dec3(c.distance), sig6(c.f_fatigue), sig6(c.f_discomfort)},
            {json3(c.distance), json6(c.f_fatigue), json6(c.f_discomfort)});
    }
    w.begin_table("skipped", {"distance_m"});
    for (double d : sw.skipped) w.row({dec3(d)}, {json3(d)});
    struct Column {
      const char* name;
      double PostureCandidate::*field;
    };
    for (auto col : {Column{"overall", &PostureCandidate::f_overall},
                     Column{"stress_index", &PostureCandidate::f_fatigue},
                     Column{"discomfort_index", &PostureCandidate::f_discomfort},
                     Column{"discomfort_shoulder", &PostureCandidate::discomfort_shoulder},
                     Column{"discomfort_elbow", &PostureCandidate::discomfort_elbow}}) {
      w.begin_table(std::string("series ") + col.name, {"distance_m", col.name});
      for (const auto& c : sw.candidates) {
        w.row({dec3(c.distance), sig6(c.*col.field)}, {json3(c.distance), json6(c.*col.field)});
      }
    }
  }
}

void emit_strength_surface(const std::vector<SurfaceRow>& shoulder,
                           const std::vector<SurfaceRow>& elbow, ReportFormat format,
                           std::ostream& out) {
  Writer w(format, out);
  for (auto [name, rows] : {std::pair{"strength_surface shoulder", &shoulder},
                            std::pair{"strength_surface elbow", &elbow}}) {
    w.begin_table(name, {"shoulder_flexion_deg", "elbow_flexion_deg", "minus_2sigma_Nm",
                         "mean_Nm", "plus_2sigma_Nm"});
    for (const auto& row : *rows) {
      w.row({dec3(row.alpha_s), dec3(row.alpha_e), dec3(row.minus_2sigma), dec3(row.mean),
             dec3(row.plus_2sigma)},
            {json3(row.alpha_s), json3(row.alpha_e), json3(row.minus_2sigma), json3(row.mean),
             json3(row.plus_2sigma)});
    }
  }
}

void emit_report(const Report& report, ReportFormat format,
                 const std::filesystem::path& destination, unsigned sections) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report to " + destination.string());
  emit_report(report, format, out, sections);
  out.flush();
  if (!out) throw IoError("error while writing report to " + destination.string());
}

}  // namespace ergo
