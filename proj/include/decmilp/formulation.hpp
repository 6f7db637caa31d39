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

#ifndef DECMILP_FORMULATION_HPP_
#define DECMILP_FORMULATION_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "decmilp/milp.hpp"
#include "decmilp/milp_problem.hpp"
#include "decmilp/model.hpp"
#include "decmilp/sequences.hpp"
#include "decmilp/valuation.hpp"

namespace decmilp {

enum class FormulationVariant { kIlpDec, kMilpDec, kMilpPrDec };

// "ilp", "milp", "milp-pr"
const char* to_string(FormulationVariant variant);
FormulationVariant parse_variant(std::string_view text);

// Per agent, indexed by SequenceSpace index; true marks a dominated sequence.
using DominatedSets = std::vector<std::vector<bool>>;

struct FormulationOptions {
  // Upper bound 1 on the joint-sequence variables. Without it an integral x
  // does not force y to the product of the selections.
  bool cap_joint_vars = true;
  // Pruned variant only: sum of y equal to the product of the policy sizes,
  // which turns the <= joint-policy rows back into equalities at integral x.
  bool total_mass_row = true;
};

struct SequenceFormMilp {
  MilpProblem problem;
  FormulationVariant variant = FormulationVariant::kMilpDec;
  int horizon = 1;
  // Table index of each y variable; y variables come first.
  std::vector<std::size_t> joint_of_y;
  // Per agent and sequence index: variable number, or -1 when pruned.
  std::vector<std::vector<int>> x_var;
  // Row numbers of the appended bound rows, if any.
  std::optional<int> lower_bound_row;
  std::optional<int> upper_bound_row;

  std::size_t num_y() const { return joint_of_y.size(); }
};

SequenceFormMilp build_formulation(const DecPomdp& model,
                                   std::span<const SequenceSpace> spaces,
                                   const JointSequenceTable& table,
                                   FormulationVariant variant,
                                   const DominatedSets* dominated = nullptr,
                                   const FormulationOptions& options = {});

// Appends sum nu y >= lower and/or sum nu y <= upper.
void add_bounds(SequenceFormMilp& milp, std::optional<double> lower,
                std::optional<double> upper);

struct JointPolicy {
  std::vector<PolicyVector> vectors;
  std::vector<PolicyTree> trees;
  double value = 0.0;  // sequence-form value
};

// Rounds the full-length x entries, rebuilds shorter entries from them and
// checks the result against the policy constraints and `objective`.
// SolverError on any inconsistency.
JointPolicy extract_joint_policy(const SequenceFormMilp& milp,
                                 std::span<const SequenceSpace> spaces,
                                 const JointSequenceTable& table,
                                 std::span<const double> values,
                                 std::optional<double> objective = std::nullopt);

// Full variable assignment of a deterministic joint policy.
std::vector<double> policy_assignment(const SequenceFormMilp& milp,
                                      std::span<const SequenceSpace> spaces,
                                      std::span<const PolicyTree> trees);

// Rounds an LP point to a joint policy by picking, top down, the largest
// x entry among the continuations of each chosen history.
IncumbentHeuristic rounding_heuristic(const SequenceFormMilp& milp,
                                      std::span<const SequenceSpace> spaces);

}  // namespace decmilp

#endif  // DECMILP_FORMULATION_HPP_
