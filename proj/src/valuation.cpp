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

#include "decmilp/valuation.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "decmilp/errors.hpp"

namespace decmilp {

JointSequenceValue joint_sequence_value(const DecPomdp& model,
                                        std::span<const Sequence> components) {
  const int n = model.num_agents();
  if (static_cast<int>(components.size()) != n) {
    throw StructureError("joint sequence needs one sequence per agent");
  }
  const int t = components[0].length();
  for (const auto& c : components) {
    if (c.length() != t) {
      throw StructureError("joint sequence components differ in length");
    }
  }
  std::vector<int> tuple(n);
  auto joint_action = [&](int j) {
    for (int i = 0; i < n; ++i) tuple[i] = components[i].actions[j];
    return model.joint_actions().encode(tuple);
  };
  auto joint_observation = [&](int j) {
    for (int i = 0; i < n; ++i) tuple[i] = components[i].observations[j];
    return model.joint_observations().encode(tuple);
  };

  BeliefState belief(model.initial_belief().begin(),
                     model.initial_belief().end());
  BeliefState next(belief.size());
  JointSequenceValue out;
  out.rho = 1.0;
  for (int j = 0; j < t; ++j) {
    const int a = joint_action(j);
    out.reward += expected_reward(model, belief, a);
    if (j + 1 == t) break;
    const double p =
        belief_update_into(model, belief, a, joint_observation(j), next);
    if (p == 0.0) return JointSequenceValue{};
    out.rho *= p;
    belief.swap(next);
  }
  out.nu = out.rho * out.reward;
  return out;
}

JointSequenceTable::JointSequenceTable(int horizon,
                                       std::vector<std::size_t> radices)
    : horizon_(horizon), radices_(std::move(radices)) {
  strides_.assign(radices_.size(), 1);
  std::size_t size = 1;
  for (int i = static_cast<int>(radices_.size()) - 1; i >= 0; --i) {
    strides_[i] = size;
    size *= radices_[i];
  }
  rho_.assign(size, 0.0);
  reward_.assign(size, 0.0);
  nu_.assign(size, 0.0);
}

std::size_t JointSequenceTable::index(std::span<const std::size_t> locals) const {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    flat = flat * radices_[i] + locals[i];
  }
  return flat;
}

std::vector<std::size_t> JointSequenceTable::decode(std::size_t flat) const {
  std::vector<std::size_t> out(radices_.size());
  for (int i = static_cast<int>(radices_.size()) - 1; i >= 0; --i) {
    out[i] = flat % radices_[i];
    flat /= radices_[i];
  }
  return out;
}

namespace {

class TableBuilder {
 public:
  TableBuilder(const DecPomdp& model, std::span<const SequenceSpace> spaces,
               JointSequenceTable& table)
      : model_(model), spaces_(spaces), table_(table) {
    const int n = model.num_agents();
    const int horizon = table.horizon();
    action_parts_.resize(model.num_joint_actions());
    for (int a = 0; a < model.num_joint_actions(); ++a) {
      action_parts_[a] = model.joint_actions().decode(a);
    }
    observation_parts_.resize(model.num_joint_observations());
    for (int o = 0; o < model.num_joint_observations(); ++o) {
      observation_parts_[o] = model.joint_observations().decode(o);
    }
    const std::size_t ns = model.num_states();
    beliefs_.assign(horizon + 1, BeliefState(ns));
    predicted_.assign(horizon + 1, BeliefState(ns));
    locals_.assign(horizon + 1, std::vector<std::size_t>(n, 0));
    std::copy(model.initial_belief().begin(), model.initial_belief().end(),
              beliefs_[0].begin());
  }

  void run() { expand(1, 1.0, 0.0, -1); }

 private:
  // Extends every joint history of length t-1 (belief in beliefs_[t-1],
  // reached through joint observation `jo`) by one joint action.
  void expand(int t, double rho, double reward_so_far, int jo) {
    const int n = model_.num_agents();
    const int ns = model_.num_states();
    const BeliefState& b = beliefs_[t - 1];
    std::vector<std::size_t>& locals = locals_[t];
    for (int a = 0; a < model_.num_joint_actions(); ++a) {
      for (int i = 0; i < n; ++i) {
        const auto& sp = spaces_[i];
        const std::size_t prefix =
            t == 1 ? 0
                   : locals_[t - 1][i] * sp.num_observations() +
                         observation_parts_[jo][i];
        locals[i] = prefix * sp.num_actions() + action_parts_[a][i];
      }
      const double reward = reward_so_far + expected_reward(model_, b, a);
      if (t == table_.horizon()) {
        table_.set(table_.index(locals), {rho, reward, rho * reward});
        continue;
      }
      BeliefState& pred = predicted_[t];
      for (int s2 = 0; s2 < ns; ++s2) {
        double mass = 0.0;
        for (int s = 0; s < ns; ++s) {
          mass += b[s] * model_.transition(a, s, s2);
        }
        pred[s2] = mass;
      }
      BeliefState& next = beliefs_[t];
      for (int o = 0; o < model_.num_joint_observations(); ++o) {
        double prob = 0.0;
        for (int s2 = 0; s2 < ns; ++s2) {
          next[s2] = pred[s2] * model_.observation(a, s2, o);
          prob += next[s2];
        }
        // Unreachable branch: its entries keep rho = R = nu = 0.
        if (prob == 0.0) continue;
        for (int s2 = 0; s2 < ns; ++s2) next[s2] /= prob;
        expand(t + 1, rho * prob, reward, o);
      }
    }
  }

  const DecPomdp& model_;
  std::span<const SequenceSpace> spaces_;
  JointSequenceTable& table_;
  std::vector<std::vector<int>> action_parts_;
  std::vector<std::vector<int>> observation_parts_;
  std::vector<BeliefState> beliefs_;
  std::vector<BeliefState> predicted_;
  std::vector<std::vector<std::size_t>> locals_;
};

}  // namespace

JointSequenceTable build_table(const DecPomdp& model,
                               std::span<const SequenceSpace> spaces,
                               std::uint64_t limit) {
  if (static_cast<int>(spaces.size()) != model.num_agents()) {
    throw Error("need one sequence space per agent");
  }
  const int horizon = spaces[0].horizon();
  std::vector<std::size_t> radices;
  std::uint64_t total = 1;
  for (const auto& sp : spaces) {
    if (sp.horizon() != horizon) {
      throw Error("sequence spaces built for different horizons");
    }
    const std::uint64_t r = sp.slice_size(horizon);
    if (r != 0 && total > limit / r) {
      throw CapacityError("joint sequence table",
                          std::numeric_limits<std::uint64_t>::max(), limit);
    }
    total *= r;
    radices.push_back(r);
  }
  if (total > limit) throw CapacityError("joint sequence table", total, limit);
  JointSequenceTable table(horizon, std::move(radices));
  TableBuilder(model, spaces, table).run();
  return table;
}

void write_table(const JointSequenceTable& table, std::ostream& out) {
  const auto old = out.precision(17);
  for (std::size_t q = 0; q < table.size(); ++q) {
    for (std::size_t local : table.decode(q)) out << local << ' ';
    out << table.rho(q) << ' ' << table.reward(q) << ' ' << table.nu(q)
        << '\n';
  }
  out.precision(old);
}

namespace {

class TreeEvaluator {
 public:
  TreeEvaluator(const DecPomdp& model, std::span<const PolicyTree> trees)
      : model_(model), trees_(trees) {}

  // V^t(., pi) for the joint sub-policy rooted at `nodes`, depth-to-go t.
  std::vector<double> value(const std::vector<std::size_t>& nodes, int t) {
    const int n = model_.num_agents();
    const int ns = model_.num_states();
    std::vector<int> acts(n);
    for (int i = 0; i < n; ++i) acts[i] = trees_[i].actions[nodes[i]];
    const int a = model_.joint_actions().encode(acts);
    std::vector<double> v(ns);
    for (int s = 0; s < ns; ++s) v[s] = model_.reward(a, s);
    if (t == 1) return v;
    std::vector<std::size_t> children(n);
    for (int o = 0; o < model_.num_joint_observations(); ++o) {
      for (int i = 0; i < n; ++i) {
        children[i] = trees_[i].child(nodes[i],
                                      model_.joint_observations().component(o, i));
      }
      const std::vector<double> sub = value(children, t - 1);
      for (int s = 0; s < ns; ++s) {
        double acc = 0.0;
        for (int s2 = 0; s2 < ns; ++s2) {
          acc += model_.transition(a, s, s2) * model_.observation(a, s2, o) *
                 sub[s2];
        }
        v[s] += acc;
      }
    }
    return v;
  }

 private:
  const DecPomdp& model_;
  std::span<const PolicyTree> trees_;
};

}  // namespace

double tree_value(const DecPomdp& model, std::span<const PolicyTree> trees) {
  const int n = model.num_agents();
  if (static_cast<int>(trees.size()) != n) {
    throw StructureError("need one policy tree per agent");
  }
  const int horizon = trees[0].horizon;
  for (int i = 0; i < n; ++i) {
    const auto& tr = trees[i];
    if (tr.horizon != horizon ||
        tr.num_observations != model.num_observations(i) ||
        tr.actions.size() !=
            PolicyTree::node_count(tr.num_observations, tr.horizon)) {
      throw StructureError("policy tree of agent " + std::to_string(i) +
                           " has the wrong shape");
    }
    for (int a : tr.actions) {
      if (a < 0 || a >= model.num_actions(i)) {
        throw StructureError("policy tree of agent " + std::to_string(i) +
                             " uses action label " + std::to_string(a));
      }
    }
  }
  TreeEvaluator eval(model, trees);
  const std::vector<double> v =
      eval.value(std::vector<std::size_t>(n, 0), horizon);
  double total = 0.0;
  for (int s = 0; s < model.num_states(); ++s) {
    total += model.initial_belief()[s] * v[s];
  }
  return total;
}

double joint_leaves_value(const JointSequenceTable& table,
                          std::span<const std::vector<std::size_t>> leaves) {
  const int n = table.num_agents();
  std::vector<std::size_t> pos(n, 0);
  for (const auto& l : leaves) {
    if (l.empty()) return 0.0;
  }
  double total = 0.0;
  while (true) {
    std::size_t flat = 0;
    for (int i = 0; i < n; ++i) flat += leaves[i][pos[i]] * table.stride(i);
    total += table.nu(flat);
    int i = n - 1;
    while (i >= 0 && ++pos[i] == leaves[i].size()) {
      pos[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return total;
}

std::vector<std::size_t> selected_leaves(const SequenceSpace& space,
                                         const PolicyVector& x) {
  if (x.values.size() != space.size()) {
    throw StructureError("policy vector of agent " +
                         std::to_string(space.agent()) + " has " +
                         std::to_string(x.values.size()) +
                         " entries, expected " + std::to_string(space.size()));
  }
  for (std::size_t j = 0; j < x.values.size(); ++j) {
    if (x.values[j] != 0.0 && x.values[j] != 1.0) {
      throw StructureError("policy vector of agent " +
                           std::to_string(space.agent()) + " is not binary at '" +
                           to_string(space.at(j)) + "'");
    }
  }
  const PolicyConstraintSystem sys = policy_constraints(space);
  if (auto row = violated_row(sys, x.values)) {
    throw StructureError("policy vector of agent " +
                         std::to_string(space.agent()) +
                         " violates policy constraint row " +
                         std::to_string(*row));
  }
  std::vector<std::size_t> leaves;
  const std::size_t base = space.offset(space.horizon());
  for (std::size_t k = 0; k < space.slice_size(space.horizon()); ++k) {
    if (x.values[base + k] == 1.0) leaves.push_back(k);
  }
  return leaves;
}

double sequence_form_value(const JointSequenceTable& table,
                           std::span<const SequenceSpace> spaces,
                           std::span<const PolicyVector> policies) {
  if (policies.size() != spaces.size() ||
      static_cast<int>(spaces.size()) != table.num_agents()) {
    throw StructureError("need one policy vector per agent");
  }
  std::vector<std::vector<std::size_t>> leaves;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    leaves.push_back(selected_leaves(spaces[i], policies[i]));
  }
  return joint_leaves_value(table, leaves);
}

}  // namespace decmilp
