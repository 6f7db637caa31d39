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

#include "decmilp/bounds.hpp"

#include <algorithm>
#include <limits>

#include "decmilp/errors.hpp"

namespace decmilp {

double max_min_reward(const DecPomdp& model) {
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < model.num_joint_actions(); ++a) {
    double worst = std::numeric_limits<double>::infinity();
    for (int s = 0; s < model.num_states(); ++s) {
      worst = std::min(worst, model.reward(a, s));
    }
    best = std::max(best, worst);
  }
  return best;
}

double lower_bound(double value_t, const DecPomdp& model) {
  return value_t + max_min_reward(model);
}

MilpProblem pomdp_bound_problem(const DecPomdp& model,
                                const JointSequenceTable& table,
                                std::span<const SequenceSpace> spaces) {
  const int horizon = table.horizon();
  const int n = model.num_agents();
  const int na = model.num_joint_actions();
  const int no = model.num_joint_observations();
  const SequenceSpace joint(-1, na, no, horizon, kDefaultJointSequenceLimit);
  const PolicyConstraintSystem sys = policy_constraints(joint);

  MilpProblem p;
  p.maximize = true;
  const std::size_t first = joint.offset(horizon);
  std::vector<std::size_t> locals(n);
  for (std::size_t idx = 0; idx < joint.size(); ++idx) {
    double objective = 0.0;
    if (idx >= first) {
      const Sequence q = joint.at(idx);
      // Split the joint digits into per-agent local indices.
      std::fill(locals.begin(), locals.end(), 0);
      for (int t = 0; t < horizon; ++t) {
        if (t > 0) {
          const std::vector<int> o =
              model.joint_observations().decode(q.observations[t - 1]);
          for (int i = 0; i < n; ++i) {
            locals[i] = locals[i] * spaces[i].num_observations() + o[i];
          }
        }
        const std::vector<int> a = model.joint_actions().decode(q.actions[t]);
        for (int i = 0; i < n; ++i) {
          locals[i] = locals[i] * spaces[i].num_actions() + a[i];
        }
      }
      objective = table.nu(table.index(locals));
    }
    p.add_variable({"z" + std::to_string(idx), 0.0, kInfinity,
                    VarKind::kContinuous, objective});
  }
  for (std::size_t r = 0; r < sys.num_rows(); ++r) {
    LinearRow row;
    row.name = "pc_" + std::to_string(r);
    row.sense = RowSense::kEqual;
    row.rhs = sys.rhs[r];
    for (std::size_t k = sys.row_start[r]; k < sys.row_start[r + 1]; ++k) {
      row.indices.push_back(static_cast<int>(sys.columns[k]));
      row.coefficients.push_back(sys.values[k]);
    }
    p.add_row(std::move(row));
  }
  return p;
}

double pomdp_upper_bound(const DecPomdp& model, const JointSequenceTable& table,
                         std::span<const SequenceSpace> spaces,
                         const LpOptions& options) {
  const MilpProblem p = pomdp_bound_problem(model, table, spaces);
  const LpSolution sol = solve_lp(p, options);
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("upper-bound LP is ") + to_string(sol.status));
  }
  return sol.objective;
}

}  // namespace decmilp
