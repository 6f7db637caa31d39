// Copyright 2026 The decmilp Authors.
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


// Runs the command-line tool as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "decmilp/oracle.hpp"
#include "decmilp/valuation.hpp"
#include "json.hpp"
#include "test_util.hpp"

namespace decmilp {
namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result cli(const std::string& args) {
  const std::string cmd = std::string(DECMILP_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  Result r;
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

double field(const std::string& out, const std::string& key) {
  std::istringstream in(out);
  std::string k;
  double v;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (ls >> k >> v && k == key) return v;
  }
  ADD_FAILURE() << "no '" << key << "' in output:\n" << out;
  return 0.0;
}

std::string temp(const std::string& name) { return ::testing::TempDir() + name; }

void write(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

TEST(CliTest, SolveMatchesOracleAndRoundTrips) {
  const std::string inst = instance_path("mabc.dpomdp");
  const std::string json = temp("cli_mabc3.json");
  const Result s = cli("solve " + inst + " -k 3 --variant milp-pr --json " + json);
  ASSERT_EQ(s.code, 0) << s.out;
  const Result b = cli("brute " + inst + " -k 3");
  ASSERT_EQ(b.code, 0);
  EXPECT_NEAR(field(s.out, "value"), field(b.out, "value"), 1e-6);
  const Result e = cli("evaluate " + inst + " -k 3 --policy " + json);
  ASSERT_EQ(e.code, 0) << e.out;
  EXPECT_NEAR(field(e.out, "tree_value"), field(s.out, "value"), 1e-6);
  EXPECT_NEAR(field(e.out, "sequence_form_value"), field(e.out, "tree_value"), 1e-9);
  std::ifstream in(json);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc["status"], "optimal");
  ASSERT_TRUE(doc.contains("dominance"));
}

TEST(CliTest, TigerPrunedReportsNothingRemoved) {
  const std::string inst = instance_path("matiger.dpomdp");
  const std::string json = temp("cli_tiger2.json");
  const Result p = cli("solve " + inst + " -k 2 --variant milp-pr --json " + json);
  const Result m = cli("solve " + inst + " -k 2 --variant milp");
  ASSERT_EQ(p.code, 0);
  ASSERT_EQ(m.code, 0);
  EXPECT_NEAR(field(p.out, "value"), field(m.out, "value"), 1e-6);
  std::ifstream in(json);
  const auto doc = nlohmann::json::parse(in);
  for (const auto& agent : doc["dominance"]) {
    for (const auto& c : agent["removed_by_length"]) EXPECT_EQ(c.get<int>(), 0);
  }
}

TEST(CliTest, EvaluateHandWrittenPolicy) {
  // Both agents always take action 0 for two steps.
  const std::string inst = instance_path("mabc.dpomdp");
  const std::string path = temp("cli_const.json");
  write(path, R"([
    {"agent": 0, "sequences": ["a0", "a0 o0 a0", "a0 o1 a0"]},
    {"agent": 1, "sequences": ["a0", "a0 o0 a0", "a0 o1 a0"]}])");
  const Result e = cli("evaluate " + inst + " -k 2 --policy " + path);
  ASSERT_EQ(e.code, 0) << e.out;
  const DecPomdp m = load_model(inst);
  double want = 0.0;
  for (const char* a : {"a0 o0 a0", "a0 o1 a0"}) {
    for (const char* b : {"a0 o0 a0", "a0 o1 a0"}) {
      const std::vector<Sequence> q{parse_sequence(a), parse_sequence(b)};
      want += joint_sequence_value(m, q).nu;
    }
  }
  EXPECT_NEAR(field(e.out, "tree_value"), want, 1e-9);
}

TEST(CliTest, ExitCodes) {
  const std::string inst = instance_path("mabc.dpomdp");
  const std::string path = temp("cli_bad.json");
  write(path, R"([{"agent": 0, "sequences": ["a0", "a0 o0 a1"]},
                  {"agent": 1, "sequences": ["a0", "a0 o0 a0", "a0 o1 a0"]}])");
  EXPECT_EQ(cli("evaluate " + inst + " -k 2 --policy " + path).code, 3);
  write(path, "{not json");
  EXPECT_EQ(cli("evaluate " + inst + " -k 2 --policy " + path).code, 3);
  EXPECT_EQ(cli("solve /nonexistent.dpomdp -k 2").code, 3);
  EXPECT_EQ(cli("brute " + instance_path("matiger.dpomdp") + " -k 4").code, 3);
  EXPECT_EQ(cli("solve " + inst + " -k 3 --node-limit 2").code, 2);
  EXPECT_NE(cli("solve " + inst + " -k 2 --variant nope").code, 0);
}

TEST(CliTest, SingleStepBrute) {
  const std::string inst = instance_path("mabc.dpomdp");
  const Result b = cli("brute " + inst + " -k 1");
  ASSERT_EQ(b.code, 0);
  const DecPomdp m = load_model(inst);
  const std::vector<double> b0(m.initial_belief().begin(), m.initial_belief().end());
  double best = -1e300;
  for (int a = 0; a < m.num_joint_actions(); ++a) {
    best = std::max(best, expected_reward(m, b0, a));
  }
  EXPECT_NEAR(field(b.out, "value"), best, 1e-9);
}

}  // namespace
}  // namespace decmilp
