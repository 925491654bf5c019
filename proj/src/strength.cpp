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


#include "ergo/strength.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace ergo {

namespace {

std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

double to_double(const std::string& tok, int line) {
  double v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError("expected a number, got '" + tok + "'", line);
  }
  return v;
}

int to_int(const std::string& tok, int line) {
  int v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + tok + "'", line);
  }
  return v;
}

void check_mean_positive(const JointRegression& r, std::string_view joint, int line) {
  constexpr int kProbe = 24;
  const auto& b = r.limits;
  for (int i = 0; i <= kProbe; ++i) {
    for (int j = 0; j <= kProbe; ++j) {
      const double s = b.shoulder_min + (b.shoulder_max - b.shoulder_min) * i / kProbe;
      const double e = b.elbow_min + (b.elbow_max - b.elbow_min) * j / kProbe;
      if (!(r.polynomial(s, e) > 0)) {
        throw ParseError(std::string(joint) + " regression is not positive over its angle box",
                         line);
      }
    }
  }
}

struct PartialRegression {
  JointRegression reg{};
  bool has_male = false;
  bool has_female = false;
  bool has_cv = false;
  bool has_limits = false;
  int start_line = 0;
};

JointRegression finish(PartialRegression& p, std::string_view joint, int line) {
  if (p.reg.terms.empty()) throw ParseError(std::string(joint) + ": no polynomial terms", line);
  if (!p.has_male || !p.has_female) {
    throw ParseError(std::string(joint) + ": both male and female factors are required", line);
  }
  if (!p.has_cv) throw ParseError(std::string(joint) + ": missing cv", line);
  if (!p.has_limits) throw ParseError(std::string(joint) + ": missing limits", line);
  check_mean_positive(p.reg, joint, p.start_line);
  return p.reg;
}

}  // namespace

std::string_view to_string(StrengthJoint joint) {
  return joint == StrengthJoint::ShoulderFlexion ? "shoulder" : "elbow";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double JointRegression::polynomial(double alpha_s, double alpha_e) const {
  double sum = 0;
  for (const auto& t : terms) {
    sum += t.coeff * std::pow(alpha_s, t.power_s) * std::pow(alpha_e, t.power_e);
  }
  return sum;
}

StrengthModel::StrengthModel(JointRegression shoulder, JointRegression elbow)
    : shoulder_(std::move(shoulder)), elbow_(std::move(elbow)) {}

StrengthModel StrengthModel::defaults() {
  JointRegression shoulder{
      {{227.338, 0, 0}, {0.525, 0, 1}, {-0.296, 1, 0}},
      0.2845,
      0.1707,
      0.2311,
      {-60, 180, 0, 150},
  };
  JointRegression elbow{
      {{336.29, 0, 0}, {1.544, 0, 1}, {-0.0085, 0, 2}, {-0.5, 1, 0}},
      0.1913,
      0.1148,
      0.2458,
      {-60, 180, 0, 150},
  };
  return StrengthModel(std::move(shoulder), std::move(elbow));
}

StrengthModel StrengthModel::parse(std::string_view text) {
  std::optional<JointRegression> shoulder;
  std::optional<JointRegression> elbow;
  std::optional<PartialRegression> open;
  std::string open_name;
  bool have_version = false;
  bool have_checksum = false;

  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::size_t next = eol == std::string_view::npos ? text.size() : eol + 1;
    std::string_view raw = text.substr(pos, next - pos);
    const std::size_t line_start = pos;
    pos = next;
    ++line_no;

    if (have_checksum) {
      if (!split_tokens(raw).empty()) throw ParseError("content after checksum line", line_no);
      continue;
    }
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto tok = split_tokens(raw);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto need = [&](std::size_t n) {
      if (tok.size() != n) {
        throw ParseError("'" + key + "' expects " + std::to_string(n - 1) + " value(s)", line_no);
      }
    };

    if (!have_version) {
      if (key != "version") throw ParseError("first entry must be 'version'", line_no);
      need(2);
      if (tok[1] != "1") throw ParseError("unsupported version " + tok[1], line_no);
      have_version = true;
      continue;
    }
    if (key == "checksum") {
      need(3);
      if (open) throw ParseError("checksum inside joint block", line_no);
      if (tok[1] != "fnv1a64") throw ParseError("unsupported checksum " + tok[1], line_no);
      char expect[17];
      std::snprintf(expect, sizeof expect, "%016llx",
                    static_cast<unsigned long long>(fnv1a64(text.substr(0, line_start))));
      if (tok[2] != expect) {
        throw ParseError("checksum mismatch (file says " + tok[2] + ", content hashes to " +
                             expect + ")",
                         line_no);
      }
      have_checksum = true;
      continue;
    }
    if (key == "joint") {
      need(2);
      if (open) throw ParseError("nested joint block", line_no);
      if (tok[1] != "shoulder" && tok[1] != "elbow") {
        throw ParseError("unknown joint '" + tok[1] + "' (expected shoulder|elbow)", line_no);
      }
      if ((tok[1] == "shoulder" && shoulder) || (tok[1] == "elbow" && elbow)) {
        throw ParseError("duplicate joint '" + tok[1] + "'", line_no);
      }
      open.emplace();
      open->start_line = line_no;
      open_name = tok[1];
      continue;
    }
    if (!open) throw ParseError("'" + key + "' outside a joint block", line_no);
    auto& p = *open;
    if (key == "end") {
      need(1);
      auto reg = finish(p, open_name, line_no);
      (open_name == "shoulder" ? shoulder : elbow) = std::move(reg);
      open.reset();
    } else if (key == "term") {
      need(4);
      const int ps = to_int(tok[2], line_no);
      const int pe = to_int(tok[3], line_no);
      if (ps < 0 || pe < 0) throw ParseError("term powers must be nonnegative", line_no);
      p.reg.terms.push_back({to_double(tok[1], line_no), ps, pe});
    } else if (key == "gender") {
      need(3);
      const double f = to_double(tok[2], line_no);
      if (!(f > 0)) throw ParseError("gender factor must be positive", line_no);
      const Gender g = [&] {
        try {
          return parse_gender(tok[1]);
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line_no);
        }
      }();
      (g == Gender::Male ? p.reg.male_factor : p.reg.female_factor) = f;
      (g == Gender::Male ? p.has_male : p.has_female) = true;
    } else if (key == "cv") {
      need(2);
      p.reg.cv = to_double(tok[1], line_no);
      if (p.reg.cv < 0) throw ParseError("cv must be nonnegative", line_no);
      p.has_cv = true;
    } else if (key == "limits") {
      need(5);
      p.reg.limits = {to_double(tok[1], line_no), to_double(tok[2], line_no),
                      to_double(tok[3], line_no), to_double(tok[4], line_no)};
      if (!(p.reg.limits.shoulder_min < p.reg.limits.shoulder_max) ||
          !(p.reg.limits.elbow_min < p.reg.limits.elbow_max)) {
        throw ParseError("limits must satisfy min < max", line_no);
      }
      p.has_limits = true;
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }
  if (!have_version) throw ParseError("empty strength file");
  if (open) throw ParseError("unterminated joint block '" + open_name + "'", line_no);
  if (!shoulder || !elbow) throw ParseError("both shoulder and elbow blocks are required");
  if (!have_checksum) throw ParseError("missing checksum line");
  return StrengthModel(std::move(*shoulder), std::move(*elbow));
}

StrengthModel StrengthModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open strength file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string StrengthModel::to_text() const {
  std::ostringstream out;
  out << "version 1\n";
  for (auto joint : {StrengthJoint::ShoulderFlexion, StrengthJoint::ElbowFlexion}) {
    const auto& r = regression(joint);
    out << "joint " << to_string(joint) << '\n';
    for (const auto& t : r.terms) {
      out << "  term " << format_number(t.coeff) << ' ' << t.power_s << ' ' << t.power_e << '\n';
    }
    out << "  gender male " << format_number(r.male_factor) << '\n';
    out << "  gender female " << format_number(r.female_factor) << '\n';
    out << "  cv " << format_number(r.cv) << '\n';
    out << "  limits " << format_number(r.limits.shoulder_min) << ' '
        << format_number(r.limits.shoulder_max) << ' ' << format_number(r.limits.elbow_min)
        << ' ' << format_number(r.limits.elbow_max) << '\n';
    out << "end\n";
  }
  std::string body = out.str();
  char sum[17];
  std::snprintf(sum, sizeof sum, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
  return body + "checksum fnv1a64 " + sum + "\n";
}

StrengthEstimate StrengthModel::evaluate(StrengthJoint joint, double alpha_s, double alpha_e,
                                         Gender gender) const {
  const auto& r = regression(joint);
  const auto& b = r.limits;
  const std::string name(to_string(joint));
  if (!(alpha_s >= b.shoulder_min && alpha_s <= b.shoulder_max)) {
    throw DomainError(name + " strength: shoulder angle " + format_number(alpha_s) +
                      " deg outside [" + format_number(b.shoulder_min) + ", " +
                      format_number(b.shoulder_max) + "]");
  }
  if (!(alpha_e >= b.elbow_min && alpha_e <= b.elbow_max)) {
    throw DomainError(name + " strength: elbow angle " + format_number(alpha_e) +
                      " deg outside [" + format_number(b.elbow_min) + ", " +
                      format_number(b.elbow_max) + "]");
  }
  const double factor = gender == Gender::Male ? r.male_factor : r.female_factor;
  const double mean = factor * r.polynomial(alpha_s, alpha_e);
  return {mean, r.cv * mean};
}

StrengthEstimate shoulder_flexion_strength(const StrengthModel& model, double alpha_s,
                                           double alpha_e, Gender gender) {
  return model.evaluate(StrengthJoint::ShoulderFlexion, alpha_s, alpha_e, gender);
}

StrengthEstimate elbow_flexion_strength(const StrengthModel& model, double alpha_s,
                                        double alpha_e, Gender gender) {
  return model.evaluate(StrengthJoint::ElbowFlexion, alpha_s, alpha_e, gender);
}

PercentileStrength percentile_strength(double mean, double sigma, int z) {
  if (z < -2 || z > 2) {
    throw DomainError("population offset z must be one of -2, -1, 0, 1, 2 (got " +
                      std::to_string(z) + ")");
  }
  if (sigma < 0) throw DomainError("sigma must be nonnegative");
  const double value = mean + z * sigma;
  return {value, !(value > 0)};
}

std::vector<SurfaceRow> strength_surface(const StrengthModel& model, StrengthJoint joint,
                                         Gender gender, const GridAxis& shoulder,
                                         const GridAxis& elbow) {
  if (shoulder.count < 1 || elbow.count < 1) throw DomainError("strength surface grid is empty");
  auto at = [](const GridAxis& a, int i) {
    return a.count == 1 ? a.first : a.first + (a.last - a.first) * i / (a.count - 1);
  };
  std::vector<SurfaceRow> rows;
  rows.reserve(static_cast<std::size_t>(shoulder.count) * elbow.count);
  for (int i = 0; i < shoulder.count; ++i) {
    for (int j = 0; j < elbow.count; ++j) {
      const double s = at(shoulder, i);
      const double e = at(elbow, j);
      const auto est = model.evaluate(joint, s, e, gender);
      rows.push_back({s, e, est.mean - 2 * est.sigma, est.mean, est.mean + 2 * est.sigma});
    }
  }
  return rows;
}

}  // namespace ergo
