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


#include "decmilp/dominance.hpp"

#include <gtest/gtest.h>

#include "decmilp/errors.hpp"
#include "decmilp/formulation.hpp"
#include "decmilp/milp.hpp"
#include "test_util.hpp"

namespace decmilp {
namespace {

TEST(CoSequenceTest, ThreeActions) {
  SequenceSpace s(0, 3, 2, 2);
  for (std::size_t k = s.offset(2); k < s.size(); ++k) {
    const auto co = co_sequences(s, k);
    ASSERT_EQ(co.size(), 2u);
    for (std::size_t c : co) {
      EXPECT_NE(c, k);
      EXPECT_EQ(s.parent(c), s.parent(k));
    }
  }
}

TEST(CoSequenceTest, SingleActionHasNone) {
  SequenceSpace s(0, 1, 2, 3);
  EXPECT_TRUE(co_sequences(s, s.offset(3)).empty());
}

TEST(CoSequenceTest, BroadcastExample) {
  const DecPomdp m = load_model(instance_path("mabc.dpomdp"));
  const SequenceSpace s = enumerate_sequences(m, 0, 3);
  const auto co = co_sequences(s, s.index_of(parse_sequence("a0 o0 a0 o0 a0")));
  ASSERT_EQ(co.size(), 1u);
  EXPECT_EQ(to_string(s.at(co[0])), "a0 o0 a0 o0 a1");
  EXPECT_THROW(co_sequences(s, 0), Error);
}

// Agent 0 has two sequences, agent 1 has three contexts.
JointSequenceTable small_table(const double (&nu)[2][3]) {
  JointSequenceTable t(1, {2, 3});
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t q = 0; q < 3; ++q) {
      const std::vector<std::size_t> locals{p, q};
      t.set(t.index(locals), {1.0, nu[p][q], nu[p][q]});
    }
  }
  return t;
}

TEST(MarginTest, EqualValuesAreDominated) {
  const double nu[2][3] = {{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}};
  const JointSequenceTable t = small_table(nu);
  const std::vector<std::size_t> co{1}, ctx{0, 1, 2};
  EXPECT_GE(domination_margin(t, 0, 0, co, ctx), -1e-9);
}

TEST(MarginTest, StrictlyBetterSomewhereIsNotDominated) {
  const double nu[2][3] = {{1.0, 2.5, 3.0}, {1.0, 2.0, 3.0}};
  const JointSequenceTable t = small_table(nu);
  const std::vector<std::size_t> co{1}, ctx{0, 1, 2};
  EXPECT_NEAR(domination_margin(t, 0, 0, co, ctx), -0.5, 1e-9);
  EXPECT_NEAR(domination_margin(t, 0, 1, std::vector<std::size_t>{0}, ctx), 0.0,
              1e-9);
  EXPECT_EQ(domination_margin(t, 0, 0, std::vector<std::size_t>{}, ctx), -kInfinity);
}

void expect_closed_under_descendants(const SequenceSpace& s,
                                     const std::vector<bool>& d) {
  const int k = s.horizon();
  for (std::size_t idx = 0; idx < s.offset(k); ++idx) {
    bool all = true;
    for (int o = 0; o < s.num_observations() && all; ++o) {
      for (int a = 0; a < s.num_actions() && all; ++a) {
        all = d[s.child(idx, o, a)];
      }
    }
    EXPECT_EQ(d[idx], all) << to_string(s.at(idx));
  }
  // Some member of every co-sequence group survives.
  for (std::size_t idx = s.offset(k); idx < s.size(); idx += s.num_actions()) {
    bool any = false;
    for (int a = 0; a < s.num_actions(); ++a) any = any || !d[idx + a];
    EXPECT_TRUE(any);
  }
}

TEST(EliminateTest, TigerHasNoDominatedSequences) {
  const DecPomdp m = load_model(instance_path("matiger.dpomdp"));
  for (int k = 1; k <= 3; ++k) {
    const auto spaces = enumerate_all_sequences(m, k);
    const DominanceResult r = eliminate(spaces, build_table(m, spaces));
    for (int i = 0; i < 2; ++i) EXPECT_EQ(r.num_dominated(i), 0u) << k;
  }
}

TEST(EliminateTest, SingleActionModel) {
  DecPomdp m(1, {1, 1}, {2, 2});
  m.set_initial_belief({1.0});
  m.set_transition(0, 0, 0, 1.0);
  for (int o = 0; o < 4; ++o) m.set_observation(0, 0, o, 0.25);
  m.set_reward(0, 0, 1.0);
  const auto spaces = enumerate_all_sequences(m, 3);
  const DominanceResult r = eliminate(spaces, build_table(m, spaces));
  EXPECT_EQ(r.num_dominated(0), 0u);
  EXPECT_EQ(r.num_dominated(1), 0u);
}

TEST(EliminateTest, BroadcastStructure) {
  const DecPomdp m = load_model(instance_path("mabc.dpomdp"));
  for (int k = 2; k <= 4; ++k) {
    const auto spaces = enumerate_all_sequences(m, k);
    const DominanceResult r = eliminate(spaces, build_table(m, spaces));
    for (int i = 0; i < 2; ++i) {
      expect_closed_under_descendants(spaces[i], r.dominated[i]);
      std::size_t by_length = 0;
      for (std::size_t c : r.count_by_length[i]) by_length += c;
      EXPECT_EQ(by_length, r.num_dominated(i));
      EXPECT_GE(r.test_dominated[i], r.count_by_length[i][k - 1]);
    }
    EXPECT_GT(r.num_dominated(0), 0u);
  }
}

TEST(EliminateTest, SinglePassRemovesNoMore) {
  const DecPomdp m = load_model(instance_path("mabc.dpomdp"));
  const auto spaces = enumerate_all_sequences(m, 3);
  const JointSequenceTable table = build_table(m, spaces);
  DominanceOptions once;
  once.single_pass = true;
  const DominanceResult a = eliminate(spaces, table, once);
  const DominanceResult b = eliminate(spaces, table);
  for (int i = 0; i < 2; ++i) EXPECT_LE(a.num_dominated(i), b.num_dominated(i));
}

double solve_value(const DecPomdp& m, const std::vector<SequenceSpace>& spaces,
                   const JointSequenceTable& table, FormulationVariant v,
                   const DominatedSets* d) {
  const SequenceFormMilp f = build_formulation(m, spaces, table, v, d);
  const MilpSolution s = solve_milp(f.problem);
  EXPECT_EQ(s.status, MilpStatus::kOptimal);
  return s.objective;
}

TEST(EliminateTest, PrunedProblemKeepsOptimum) {
  const DecPomdp m = load_model(instance_path("mabc.dpomdp"));
  for (int k = 2; k <= 3; ++k) {
    const auto spaces = enumerate_all_sequences(m, k);
    const JointSequenceTable table = build_table(m, spaces);
    const DominanceResult r = eliminate(spaces, table);
    EXPECT_NEAR(
        solve_value(m, spaces, table, FormulationVariant::kMilpPrDec, &r.dominated),
        solve_value(m, spaces, table, FormulationVariant::kMilpDec, nullptr), 1e-6);
  }
}

}  // namespace
}  // namespace decmilp
