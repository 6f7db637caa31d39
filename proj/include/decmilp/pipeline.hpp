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

#ifndef DECMILP_PIPELINE_HPP_
#define DECMILP_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "decmilp/bounds.hpp"
#include "decmilp/dominance.hpp"
#include "decmilp/formulation.hpp"
#include "decmilp/milp.hpp"
#include "decmilp/model.hpp"
#include "json.hpp"

namespace decmilp {

struct SolveOptions {
  int horizon = 1;
  FormulationVariant variant = FormulationVariant::kMilpDec;
  // Solve horizon - 1 first and add sum nu y >= V(horizon - 1) + max-min R.
  bool lower_bound = false;
  // Add sum nu y <= value of the centralized upper-bound LP.
  bool upper_bound = false;
  std::optional<std::string> emit_lp;
  bool rounding_heuristic = true;
  MilpOptions milp;
  DominanceOptions dominance;
  FormulationOptions formulation;
};

struct RunReport {
  std::string instance;
  int horizon = 1;
  FormulationVariant variant = FormulationVariant::kMilpDec;
  BoundPair bounds;
  MilpStatus status = MilpStatus::kInfeasible;
  double value = 0.0;
  double best_bound = 0.0;
  double root_lp = 0.0;
  double tree_value = 0.0;
  std::size_t nodes = 0;
  std::size_t lp_iterations = 0;
  double wall_seconds = 0.0;
  std::size_t num_variables = 0;
  std::size_t num_binaries = 0;
  std::size_t num_rows = 0;
  std::vector<SequenceSpace> spaces;
  std::optional<JointPolicy> policy;
  std::optional<DominanceResult> dominance;
};

// Builds and solves one formulation. When a policy is found, its tree value
// is checked against the solver objective (SolverError beyond 1e-6).
RunReport solve_instance(const DecPomdp& model, const SolveOptions& options,
                         const std::string& instance = "");

nlohmann::json policy_to_json(const SequenceSpace& space, const PolicyVector& x,
                              const PolicyTree& tree);
nlohmann::json report_to_json(const RunReport& report);

// Accepts a report (its "policy" member), or an array of per-agent objects
// {"agent": i, "sequences": [...]}. StructureError names the violated row
// when a vector breaks the policy constraints.
std::vector<PolicyVector> policy_from_json(const nlohmann::json& doc,
                                           const std::vector<SequenceSpace>& spaces);

}  // namespace decmilp

#endif  // DECMILP_PIPELINE_HPP_
