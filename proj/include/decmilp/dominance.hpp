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

#ifndef DECMILP_DOMINANCE_HPP_
#define DECMILP_DOMINANCE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "decmilp/formulation.hpp"
#include "decmilp/sequences.hpp"
#include "decmilp/simplex.hpp"
#include "decmilp/valuation.hpp"

namespace decmilp {

struct DominanceOptions {
  // Test against joint sequences of surviving sequences only (iterated
  // elimination). When false every test uses the full table.
  bool against_survivors = true;
  // Stop after one round over the agents.
  bool single_pass = false;
  // p is dominated when the best mixture beats it everywhere by at least
  // -margin.
  double margin = 1e-9;
  LpOptions lp;
};

struct DominanceRound {
  int round = 0;
  int agent = 0;
  std::vector<std::size_t> removed;  // sequence indices, canonical order
};

struct DominanceResult {
  DominatedSets dominated;
  std::vector<DominanceRound> rounds;
  // [agent][t - 1]: dominated sequences of length t.
  std::vector<std::vector<std::size_t>> count_by_length;
  // [agent]: full-length sequences that pass the domination test against
  // all their co-sequences on the surviving contexts. Ties count on both
  // sides, so this can exceed the pruned set.
  std::vector<std::size_t> test_dominated;
  std::size_t lp_solves = 0;

  std::size_t num_dominated(int agent) const;
  // Dominated share of the agent's full-length sequences.
  double leaf_fraction(int agent, const SequenceSpace& space) const;
  // Share of full-length sequences in test_dominated.
  double test_fraction(int agent, const SequenceSpace& space) const;
  // Dominated share of all of the agent's sequences.
  double total_fraction(int agent, const SequenceSpace& space) const;
};

// Full-length sequences that differ from `index` only in the last action,
// in canonical order. `index` must have full length.
std::vector<std::size_t> co_sequences(const SequenceSpace& space,
                                      std::size_t index);

// Largest delta such that some distribution theta over `co` satisfies
// nu(p, r) + delta <= sum_k theta_k nu(co_k, r) for every context r. A
// context is the flat table offset contributed by the other agents.
// Returns -infinity when `co` is empty.
double domination_margin(const JointSequenceTable& table, int agent,
                         std::size_t p_local, std::span<const std::size_t> co_local,
                         std::span<const std::size_t> contexts,
                         const LpOptions& options = {});

// Iterated elimination of dominated full-length sequences, round-robin over
// agents, then the descendant rule for shorter sequences.
DominanceResult eliminate(std::span<const SequenceSpace> spaces,
                          const JointSequenceTable& table,
                          const DominanceOptions& options = {});

}  // namespace decmilp

#endif  // DECMILP_DOMINANCE_HPP_
