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


#include "decmilp/oracle.hpp"

#include <gtest/gtest.h>

#include "decmilp/errors.hpp"
#include "decmilp/milp_problem.hpp"
#include "test_util.hpp"

namespace decmilp {
namespace {

// Independent check: every joint policy evaluated by the tree recursion.
double exhaustive_tree_search(const DecPomdp& m,
                              const std::vector<SequenceSpace>& spaces) {
  const std::uint64_t n0 = *count_policies(spaces[0]);
  const std::uint64_t n1 = *count_policies(spaces[1]);
  double best = -kInfinity;
  for (std::uint64_t c0 = 0; c0 < n0; ++c0) {
    for (std::uint64_t c1 = 0; c1 < n1; ++c1) {
      const std::vector<PolicyTree> t{tree_from_code(c0, spaces[0]),
                                      tree_from_code(c1, spaces[1])};
      best = std::max(best, tree_value(m, t));
    }
  }
  return best;
}

TEST(OracleTest, BroadcastThreeSteps) {
  const DecPomdp m = load_model(instance_path("mabc.dpomdp"));
  const auto spaces = enumerate_all_sequences(m, 3);
  EXPECT_EQ(*count_joint_policies(spaces), 16384u);
  const OracleResult r = brute_force_optimal(spaces, build_table(m, spaces));
  EXPECT_EQ(r.count, 16384u);
  EXPECT_NEAR(r.value, exhaustive_tree_search(m, spaces), 1e-9);
  EXPECT_NEAR(tree_value(m, r.trees), r.value, 1e-9);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(tree_from_code(r.codes[i], spaces[i]), r.trees[i]);
  }
}

TEST(OracleTest, TigerTwoStepsMatchesTreeSearch) {
  const DecPomdp m = load_model(instance_path("matiger.dpomdp"));
  const auto spaces = enumerate_all_sequences(m, 2);
  const OracleResult r = brute_force_optimal(spaces, build_table(m, spaces));
  EXPECT_EQ(r.count, 729u);
  EXPECT_NEAR(r.value, exhaustive_tree_search(m, spaces), 1e-9);
}

TEST(OracleTest, TigerThreeSteps) {
  const DecPomdp m = load_model(instance_path("matiger.dpomdp"));
  const auto spaces = enumerate_all_sequences(m, 3);
  const OracleResult r = brute_force_optimal(spaces, build_table(m, spaces));
  EXPECT_EQ(r.count, 2187u * 2187u);
  EXPECT_NEAR(r.value, 5.19, 0.01);
  EXPECT_NEAR(tree_value(m, r.trees), r.value, 1e-9);
}

TEST(OracleTest, SingleStep) {
  const DecPomdp m = load_model(instance_path("matiger.dpomdp"));
  const auto spaces = enumerate_all_sequences(m, 1);
  const OracleResult r = brute_force_optimal(spaces, build_table(m, spaces));
  EXPECT_EQ(r.count, 9u);
  const std::vector<double> b{0.5, 0.5};
  double best = -kInfinity;
  for (int a = 0; a < 9; ++a) best = std::max(best, expected_reward(m, b, a));
  EXPECT_DOUBLE_EQ(r.value, best);
}

TEST(OracleTest, CountFormula) {
  for (int k = 1; k <= 4; ++k) {
    const auto spaces = enumerate_all_sequences(
        load_model(instance_path("mabc.dpomdp")), k);
    const std::uint64_t per = 1ull << PolicyTree::node_count(2, k);
    EXPECT_EQ(*count_joint_policies(spaces), per * per);
  }
}

TEST(OracleTest, RefusesLargeSearch) {
  const DecPomdp m = load_model(instance_path("matiger.dpomdp"));
  const auto spaces = enumerate_all_sequences(m, 3);
  const JointSequenceTable table = build_table(m, spaces);
  EXPECT_THROW(brute_force_optimal(spaces, table, 1000), CapacityError);
}

}  // namespace
}  // namespace decmilp
