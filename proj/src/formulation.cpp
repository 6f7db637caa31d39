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

#include "decmilp/formulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "decmilp/errors.hpp"

namespace decmilp {

const char* to_string(FormulationVariant variant) {
  switch (variant) {
    case FormulationVariant::kIlpDec:
      return "ilp";
    case FormulationVariant::kMilpDec:
      return "milp";
    case FormulationVariant::kMilpPrDec:
      return "milp-pr";
  }
  return "unknown";
}

FormulationVariant parse_variant(std::string_view text) {
  if (text == "ilp") return FormulationVariant::kIlpDec;
  if (text == "milp") return FormulationVariant::kMilpDec;
  if (text == "milp-pr") return FormulationVariant::kMilpPrDec;
  throw Error("unknown variant '" + std::string(text) +
              "' (expected ilp, milp or milp-pr)");
}

namespace {

void check_inputs(const DecPomdp& model, std::span<const SequenceSpace> spaces,
                  const JointSequenceTable& table) {
  if (static_cast<int>(spaces.size()) != model.num_agents() ||
      table.num_agents() != model.num_agents()) {
    throw Error("agent count differs between model, spaces and table");
  }
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    if (spaces[i].horizon() != table.horizon()) {
      throw Error("sequence space horizon " +
                  std::to_string(spaces[i].horizon()) +
                  " differs from table horizon " +
                  std::to_string(table.horizon()));
    }
    if (spaces[i].slice_size(table.horizon()) != table.radices()[i]) {
      throw Error("table does not match the sequence space of agent " +
                  std::to_string(i));
    }
  }
}

std::string y_name(const JointSequenceTable& table, std::size_t flat) {
  std::string name = "y";
  for (int i = 0; i < table.num_agents(); ++i) {
    name += '_';
    name += std::to_string(table.component(flat, i));
  }
  return name;
}

int y_of_flat(const SequenceFormMilp& milp, std::size_t flat) {
  auto it = std::lower_bound(milp.joint_of_y.begin(), milp.joint_of_y.end(),
                             flat);
  if (it == milp.joint_of_y.end() || *it != flat) return -1;
  return static_cast<int>(it - milp.joint_of_y.begin());
}

}  // namespace

SequenceFormMilp build_formulation(const DecPomdp& model,
                                   std::span<const SequenceSpace> spaces,
                                   const JointSequenceTable& table,
                                   FormulationVariant variant,
                                   const DominatedSets* dominated,
                                   const FormulationOptions& options) {
  check_inputs(model, spaces, table);
  const bool pruned = variant == FormulationVariant::kMilpPrDec;
  if (pruned && dominated == nullptr) {
    throw Error("the milp-pr variant needs dominance data");
  }
  const int n = model.num_agents();
  const int horizon = table.horizon();
  if (dominated != nullptr) {
    if (static_cast<int>(dominated->size()) != n) {
      throw Error("dominance data has the wrong agent count");
    }
    for (int i = 0; i < n; ++i) {
      if ((*dominated)[i].size() != spaces[i].size()) {
        throw Error("dominance data does not match the sequence space of agent " +
                    std::to_string(i));
      }
    }
  }
  auto alive = [&](int agent, std::size_t idx) {
    return !pruned || !(*dominated)[agent][idx];
  };

  SequenceFormMilp milp;
  milp.variant = variant;
  milp.horizon = horizon;
  milp.problem.maximize = true;
  MilpProblem& p = milp.problem;
  const bool ilp = variant == FormulationVariant::kIlpDec;
  const double y_upper = (ilp || options.cap_joint_vars) ? 1.0 : kInfinity;

  // y variables in canonical joint order.
  std::vector<std::size_t> leaf_offset(n);
  for (int i = 0; i < n; ++i) leaf_offset[i] = spaces[i].offset(horizon);
  for (std::size_t flat = 0; flat < table.size(); ++flat) {
    bool keep = true;
    for (int i = 0; i < n && keep; ++i) {
      keep = alive(i, leaf_offset[i] + table.component(flat, i));
    }
    if (!keep) continue;
    milp.joint_of_y.push_back(flat);
    p.add_variable({y_name(table, flat), 0.0, y_upper,
                    ilp ? VarKind::kBinary : VarKind::kContinuous,
                    table.nu(flat)});
  }

  // x variables per agent in canonical sequence order.
  milp.x_var.resize(n);
  for (int i = 0; i < n; ++i) {
    const SequenceSpace& space = spaces[i];
    milp.x_var[i].assign(space.size(), -1);
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
      if (!alive(i, idx)) continue;
      const bool full = space.length_of(idx) == horizon;
      milp.x_var[i][idx] = p.add_variable(
          {"x" + std::to_string(i) + "_" + std::to_string(idx), 0.0, 1.0,
           (ilp || full) ? VarKind::kBinary : VarKind::kContinuous, 0.0});
    }
  }

  // Policy constraints.
  for (int i = 0; i < n; ++i) {
    const PolicyConstraintSystem sys = policy_constraints(spaces[i]);
    for (std::size_t r = 0; r < sys.num_rows(); ++r) {
      LinearRow row;
      row.name = "pc" + std::to_string(i) + "_" + std::to_string(r);
      row.sense = RowSense::kEqual;
      row.rhs = sys.rhs[r];
      for (std::size_t k = sys.row_start[r]; k < sys.row_start[r + 1]; ++k) {
        const int var = milp.x_var[i][sys.columns[k]];
        if (var < 0) continue;
        row.indices.push_back(var);
        row.coefficients.push_back(sys.values[k]);
      }
      if (row.indices.empty() && row.rhs == 0.0) continue;
      p.add_row(std::move(row));
    }
  }

  // Joint-policy constraints.
  double tau = 1.0;
  for (int i = 0; i < n; ++i) {
    tau *= static_cast<double>(spaces[i].leaves_per_policy());
  }
  for (int i = 0; i < n; ++i) {
    const std::size_t leaves = table.radices()[i];
    std::vector<std::vector<int>> members(leaves);
    for (std::size_t v = 0; v < milp.joint_of_y.size(); ++v) {
      members[table.component(milp.joint_of_y[v], i)].push_back(
          static_cast<int>(v));
    }
    const double tau_others =
        tau / static_cast<double>(spaces[i].leaves_per_policy());
    for (std::size_t local = 0; local < leaves; ++local) {
      const int xv = milp.x_var[i][leaf_offset[i] + local];
      if (xv < 0) continue;
      LinearRow row;
      row.name = "jp" + std::to_string(i) + "_" + std::to_string(local);
      row.sense = pruned ? RowSense::kLessEqual : RowSense::kEqual;
      row.rhs = 0.0;
      row.indices = std::move(members[local]);
      row.coefficients.assign(row.indices.size(), 1.0);
      row.indices.push_back(xv);
      row.coefficients.push_back(-tau_others);
      p.add_row(std::move(row));
    }
  }

  if (pruned && options.total_mass_row) {
    LinearRow row;
    row.name = "mass";
    row.sense = RowSense::kEqual;
    row.rhs = tau;
    for (std::size_t v = 0; v < milp.joint_of_y.size(); ++v) {
      row.indices.push_back(static_cast<int>(v));
    }
    row.coefficients.assign(row.indices.size(), 1.0);
    p.add_row(std::move(row));
  }
  return milp;
}

void add_bounds(SequenceFormMilp& milp, std::optional<double> lower,
                std::optional<double> upper) {
  if (lower && upper && *lower > *upper) {
    throw Error("lower bound " + std::to_string(*lower) +
                " exceeds upper bound " + std::to_string(*upper));
  }
  auto objective_row = [&](const char* name, RowSense sense, double rhs) {
    LinearRow row;
    row.name = name;
    row.sense = sense;
    row.rhs = rhs;
    for (std::size_t v = 0; v < milp.num_y(); ++v) {
      row.indices.push_back(static_cast<int>(v));
      row.coefficients.push_back(milp.problem.variables[v].objective);
    }
    return milp.problem.add_row(std::move(row));
  };
  if (lower) {
    milp.lower_bound_row =
        objective_row("lower_bound", RowSense::kGreaterEqual, *lower);
  }
  if (upper) {
    milp.upper_bound_row =
        objective_row("upper_bound", RowSense::kLessEqual, *upper);
  }
}

JointPolicy extract_joint_policy(const SequenceFormMilp& milp,
                                 std::span<const SequenceSpace> spaces,
                                 const JointSequenceTable& table,
                                 std::span<const double> values,
                                 std::optional<double> objective) {
  const int horizon = milp.horizon;
  JointPolicy policy;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const SequenceSpace& space = spaces[i];
    PolicyVector x{static_cast<int>(i), std::vector<double>(space.size(), 0.0)};
    const std::size_t first = space.offset(horizon);
    for (std::size_t idx = first; idx < space.size(); ++idx) {
      const int var = milp.x_var[i][idx];
      if (var < 0) continue;
      const double v = values[var];
      const double r = std::round(v);
      if (std::abs(v - r) > 1e-6 || (r != 0.0 && r != 1.0)) {
        throw SolverError("x" + std::to_string(i) + "[" +
                          to_string(space.at(idx)) + "] = " +
                          std::to_string(v) + " is not binary");
      }
      x.values[idx] = r;
    }
    for (int t = horizon - 1; t >= 1; --t) {
      for (std::size_t local = 0; local < space.slice_size(t); ++local) {
        const std::size_t idx = space.global_index(t, local);
        double implied = -1.0;
        for (int o = 0; o < space.num_observations(); ++o) {
          double s = 0.0;
          for (int a = 0; a < space.num_actions(); ++a) {
            s += x.values[space.child(idx, o, a)];
          }
          if ((o > 0 && s != implied) || (s != 0.0 && s != 1.0)) {
            throw SolverError("inconsistent continuation of x" +
                              std::to_string(i) + "[" +
                              to_string(space.at(idx)) + "] under o" +
                              std::to_string(o));
          }
          implied = s;
        }
        const int var = milp.x_var[i][idx];
        if (var >= 0 && std::abs(values[var] - implied) > 1e-6) {
          throw SolverError("x" + std::to_string(i) + "[" +
                            to_string(space.at(idx)) + "] = " +
                            std::to_string(values[var]) +
                            " disagrees with its continuations");
        }
        x.values[idx] = implied;
      }
    }
    try {
      policy.trees.push_back(vector_to_tree(x, space));
    } catch (const StructureError& e) {
      throw SolverError(std::string("extracted policy is not valid: ") +
                        e.what());
    }
    policy.vectors.push_back(std::move(x));
  }
  policy.value = sequence_form_value(table, spaces, policy.vectors);
  if (objective && std::abs(policy.value - *objective) > 1e-6) {
    throw SolverError("extracted policy value " +
                      std::to_string(policy.value) +
                      " differs from the solver objective " +
                      std::to_string(*objective));
  }
  return policy;
}

std::vector<double> policy_assignment(const SequenceFormMilp& milp,
                                      std::span<const SequenceSpace> spaces,
                                      std::span<const PolicyTree> trees) {
  const int n = static_cast<int>(spaces.size());
  std::vector<double> values(milp.problem.num_variables(), 0.0);
  std::vector<std::vector<std::size_t>> leaves(n);
  for (int i = 0; i < n; ++i) {
    const PolicyVector x = tree_to_vector(trees[i], spaces[i]);
    for (std::size_t idx = 0; idx < x.values.size(); ++idx) {
      if (x.values[idx] == 0.0) continue;
      const int var = milp.x_var[i][idx];
      if (var < 0) {
        throw Error("policy of agent " + std::to_string(i) +
                    " uses pruned sequence " + to_string(spaces[i].at(idx)));
      }
      values[var] = 1.0;
    }
    leaves[i] = tree_leaf_sequences(trees[i], spaces[i]);
  }
  // Odometer over the product of the selected leaves.
  std::vector<std::size_t> pos(n, 0);
  std::vector<std::size_t> locals(n);
  const std::size_t total = [&] {
    std::size_t t = 1;
    for (const auto& l : leaves) t *= l.size();
    return t;
  }();
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i) {
      flat = flat * spaces[i].slice_size(milp.horizon) + leaves[i][pos[i]];
    }
    const int yv = y_of_flat(milp, flat);
    if (yv < 0) throw Error("policy uses a pruned joint sequence");
    values[yv] = 1.0;
    for (int i = n - 1; i >= 0; --i) {
      if (++pos[i] < leaves[i].size()) break;
      pos[i] = 0;
    }
  }
  return values;
}

IncumbentHeuristic rounding_heuristic(const SequenceFormMilp& milp,
                                      std::span<const SequenceSpace> spaces) {
  const SequenceFormMilp* m = &milp;
  std::vector<SequenceSpace> owned(spaces.begin(), spaces.end());
  return [m, owned = std::move(owned)](
             std::span<const double> x) -> std::optional<std::vector<double>> {
    auto score = [&](int agent, std::size_t idx) {
      const int var = m->x_var[agent][idx];
      return var < 0 ? -1.0 : x[var];
    };
    std::vector<PolicyTree> trees;
    for (std::size_t i = 0; i < owned.size(); ++i) {
      const SequenceSpace& space = owned[i];
      const int agent = static_cast<int>(i);
      PolicyTree tree;
      tree.horizon = space.horizon();
      tree.num_observations = space.num_observations();
      const std::size_t nodes =
          PolicyTree::node_count(space.num_observations(), space.horizon());
      tree.actions.assign(nodes, 0);
      std::vector<std::size_t> seq(nodes, 0);
      int best = -1;
      for (int a = 0; a < space.num_actions(); ++a) {
        if (m->x_var[i][a] < 0) continue;
        if (best < 0 || score(agent, a) > score(agent, best)) best = a;
      }
      if (best < 0) return std::nullopt;
      tree.actions[0] = best;
      seq[0] = static_cast<std::size_t>(best);
      for (std::size_t k = 0; k < nodes; ++k) {
        if (tree.child(k, 0) >= nodes) break;
        for (int o = 0; o < space.num_observations(); ++o) {
          const std::size_t c = tree.child(k, o);
          int pick = -1;
          for (int a = 0; a < space.num_actions(); ++a) {
            const std::size_t idx = space.child(seq[k], o, a);
            if (m->x_var[i][idx] < 0) continue;
            if (pick < 0 ||
                score(agent, idx) > score(agent, space.child(seq[k], o, pick))) {
              pick = a;
            }
          }
          if (pick < 0) return std::nullopt;
          tree.actions[c] = pick;
          seq[c] = space.child(seq[k], o, pick);
        }
      }
      trees.push_back(std::move(tree));
    }
    return policy_assignment(*m, owned, trees);
  };
}

}  // namespace decmilp
