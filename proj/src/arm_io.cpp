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


#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ergo/arm.hpp"

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

}  // namespace

ArmChain<double> parse_arm_definition(std::string_view text) {
  ArmChain<double> chain{};
  int rows = 0;
  bool have_hand = false;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "row") {
      if (tok.size() != 8) {
        throw ParseError("row expects: sigma alpha d theta_offset r lower upper", line_no);
      }
      if (rows == kArmJoints) {
        throw ParseError("too many rows (the arm has exactly 5 joints)", line_no);
      }
      if (tok[1] != "0") throw ParseError("only revolute joints (sigma 0) are supported", line_no);
      DhRow<double> row{0, number(tok[2], line_no), number(tok[3], line_no),
                        number(tok[4], line_no), number(tok[5], line_no)};
      JointLimits<double> lim{number(tok[6], line_no), number(tok[7], line_no)};
      if (!(lim.lower < lim.upper)) throw ParseError("joint limits need lower < upper", line_no);
      chain.rows[rows] = row;
      chain.limits[rows] = lim;
      ++rows;
    } else if (tok[0] == "hand") {
      if (tok.size() != 2) throw ParseError("hand expects one offset value", line_no);
      if (have_hand) throw ParseError("duplicate hand line", line_no);
      chain.hand_offset = number(tok[1], line_no);
      have_hand = true;
    } else {
      throw ParseError("unknown key '" + tok[0] + "'", line_no);
    }
  }
  if (rows != kArmJoints) {
    throw ParseError("arm definition has " + std::to_string(rows) +
                     " rows, exactly 5 are required");
  }
  if (!have_hand) throw ParseError("missing hand line");
  return chain;
}

ArmChain<double> load_arm_definition(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open arm definition " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_arm_definition(buf.str());
}

}  // namespace ergo
