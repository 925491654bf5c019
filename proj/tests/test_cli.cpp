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


#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string scenario(const std::string& name) {
  return std::string(ERGO_DATA_DIR) + "/scenarios/" + name;
}

Run cli(const std::string& args) {
  const auto dir = fs::temp_directory_path();
  const auto out = dir / ("ergo_cli_" + std::to_string(::getpid()) + ".out");
  const auto err = dir / ("ergo_cli_" + std::to_string(::getpid()) + ".err");
  const std::string cmd =
      std::string("'") + ERGO_CLI_PATH + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  fs::remove(out);
  fs::remove(err);
  return r;
}

TEST(Cli, EnduranceTables) {
  const auto r = cli("endurance --scenario " + scenario("drilling_injected.yaml"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# table: endurance"), std::string::npos);
  EXPECT_NE(r.out.find("# table: holes"), std::string::npos);
  EXPECT_EQ(r.out.find("# table: torque"), std::string::npos);
  EXPECT_NE(r.out.find("2.500,shoulder,0,75.620,23.043,233.99"), std::string::npos);
}

TEST(Cli, PopulationOverride) {
  const auto r = cli("endurance --scenario " + scenario("drilling_injected.yaml") + " --z 0");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find(",-2,"), std::string::npos);
  EXPECT_NE(r.out.find(",0,"), std::string::npos);
  EXPECT_EQ(cli("endurance --scenario " + scenario("drilling_injected.yaml") + " --z 5").code, 2);
}

TEST(Cli, OutputIsByteIdentical) {
  const auto a = cli("report --scenario " + scenario("drilling_injected.yaml"));
  const auto b = cli("report --scenario " + scenario("drilling_injected.yaml"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto path = fs::temp_directory_path() / "ergo_cli_report.csv";
  ASSERT_EQ(cli("report --scenario " + scenario("drilling_injected.yaml") + " --out " + path.string()).code, 0);
  EXPECT_EQ(slurp(path), a.out);
  fs::remove(path);
}

TEST(Cli, JsonLines) {
  const auto r = cli("torque --format jsonl --scenario " + scenario("drilling_first_principles.yaml"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("{\"table\":\"torque\"", 0), 0u);
  EXPECT_NE(r.out.find("\"source\":\"computed\""), std::string::npos);
}

TEST(Cli, OverexertionWarnsOnStderr) {
  const auto r = cli("endurance --scenario " + scenario("overexertion.yaml"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning:"), std::string::npos);
  EXPECT_NE(r.err.find("overexertion"), std::string::npos);
  EXPECT_NE(r.out.find("overexertion"), std::string::npos);
}

TEST(Cli, OptimizeWithCoarseStep) {
  const auto r = cli("optimize --step 0.05 --weights 1,1 --scenario " + scenario("drilling_sweep.yaml"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# table: argmin"), std::string::npos);
  EXPECT_NE(r.out.find("# table: pareto"), std::string::npos);
  const auto single = cli("optimize --step 1 --scenario " + scenario("drilling_sweep.yaml"));
  ASSERT_EQ(single.code, 0) << single.err;
  const auto sweep = single.out.substr(single.out.find("# table: sweep"));
  const auto table = sweep.substr(0, sweep.find("\n\n"));
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 2);
  EXPECT_NE(single.out.find("# table: argmin\ndistance_m,shoulder_flexion_deg,elbow_flexion_deg,overall\n0.400,"),
            std::string::npos);
  EXPECT_EQ(cli("optimize --scenario " + scenario("drilling_injected.yaml")).code, 2);
  EXPECT_EQ(cli("optimize --weights 1 --scenario " + scenario("drilling_sweep.yaml")).code, 2);
}

TEST(Cli, StrengthSurface) {
  const auto r = cli("strength --grid 30 --scenario " + scenario("drilling_injected.yaml"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# table: strength_surface shoulder"), std::string::npos);
  EXPECT_NE(r.out.find("# table: strength_surface elbow"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("endurance --scenario /nonexistent.yaml").code, 2);
  EXPECT_EQ(cli("endurance").code, 2);
  EXPECT_EQ(cli("bogus").code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("endurance --format xml --scenario " + scenario("drilling_injected.yaml")).code, 2);
  const auto unwritable =
      cli("endurance --out /nonexistent-dir/x.csv --scenario " + scenario("drilling_injected.yaml"));
  EXPECT_EQ(unwritable.code, 1);
  EXPECT_NE(unwritable.err.find("cannot write"), std::string::npos);

  const auto tmp = fs::temp_directory_path() / "ergo_cli_bad.yaml";
  std::ofstream(tmp) << "schema_version: 1\noperator: {body_mass: 70 m, height: 1.7 m}\n";
  const auto bad = cli("endurance --scenario " + tmp.string());
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
  fs::remove(tmp);
}

TEST(Cli, ComputationErrorExitsOne) {
  // Mean minus two sigma is negative for the shoulder.
  const auto tmp = fs::temp_directory_path() / "ergo_cli_nonphysical.yaml";
  std::ofstream(tmp) << "schema_version: 1\n"
                        "operator: {body_mass: 70 kg, height: 1.70 m}\n"
                        "task: {work_duration: 30 s}\n"
                        "loads: {machine_mass: [5 kg]}\n"
                        "posture: {shoulder_flexion: 30 deg, elbow_flexion: 90 deg}\n"
                        "strength:\n"
                        "  source: explicit\n"
                        "  shoulder: {mean: 20 N*m, sigma: 15 N*m}\n"
                        "  elbow: {mean: 20 N*m, sigma: 5 N*m}\n";
  const auto r = cli("endurance --scenario " + tmp.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("nonphysical"), std::string::npos);
  fs::remove(tmp);
}

TEST(Cli, HelpForEverySubcommand) {
  for (const char* sub : {"endurance", "schedule", "torque", "strength", "optimize", "report"}) {
    const auto r = cli(std::string(sub) + " --help");
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("--scenario"), std::string::npos) << sub;
  }
  EXPECT_EQ(cli("--help").code, 0);
}

}  // namespace
