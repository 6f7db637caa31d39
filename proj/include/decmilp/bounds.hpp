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

#ifndef DECMILP_BOUNDS_HPP_
#define DECMILP_BOUNDS_HPP_

#include <optional>
#include <span>
#include <string>

#include "decmilp/milp_problem.hpp"
#include "decmilp/model.hpp"
#include "decmilp/sequences.hpp"
#include "decmilp/simplex.hpp"
#include "decmilp/valuation.hpp"

namespace decmilp {

struct BoundPair {
  std::optional<double> lower;
  std::optional<double> upper;
  std::string lower_source;
  std::string upper_source;
};

// max over joint actions of the worst-state reward.
double max_min_reward(const DecPomdp& model);

// Value of a horizon-(t+1) joint policy that follows an optimal t-step
// policy and then plays the max-min joint action: V(t) + max_a min_s R.
double lower_bound(double value_t, const DecPomdp& model);

// LP over centralized joint sequences: the policy constraints of a single
// agent whose actions and observations are the joint ones, objective
// sum of nu over full-length joint sequences.
MilpProblem pomdp_bound_problem(const DecPomdp& model,
                                const JointSequenceTable& table,
                                std::span<const SequenceSpace> spaces);

// Optimal value of pomdp_bound_problem(). SolverError if it is not optimal.
double pomdp_upper_bound(const DecPomdp& model, const JointSequenceTable& table,
                         std::span<const SequenceSpace> spaces,
                         const LpOptions& options = {});

}  // namespace decmilp

#endif  // DECMILP_BOUNDS_HPP_
