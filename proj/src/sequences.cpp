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

#include "decmilp/sequences.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "decmilp/errors.hpp"

namespace decmilp {

namespace {

// a * b, or nullopt when the product does not fit in 64 bits.
std::optional<std::uint64_t> checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::nullopt;
  }
  return a * b;
}

}  // namespace

std::string to_string(const Sequence& seq) {
  std::string out;
  for (int j = 0; j < seq.length(); ++j) {
    if (j > 0) {
      out += " o" + std::to_string(seq.observations[j - 1]) + " ";
    }
    out += "a" + std::to_string(seq.actions[j]);
  }
  return out;
}

Sequence parse_sequence(std::string_view text) {
  Sequence seq;
  std::istringstream in{std::string(text)};
  std::string tok;
  bool expect_action = true;
  while (in >> tok) {
    const char tag = expect_action ? 'a' : 'o';
    if (tok.size() < 2 || tok[0] != tag) {
      throw StructureError("malformed sequence '" + std::string(text) +
                           "': expected '" + tag + "<n>', got '" + tok + "'");
    }
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(tok.substr(1), &used);
      if (used != tok.size() - 1 || v < 0) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw StructureError("malformed sequence '" + std::string(text) +
                           "': bad label '" + tok + "'");
    }
    (expect_action ? seq.actions : seq.observations).push_back(v);
    expect_action = !expect_action;
  }
  if (seq.actions.empty() || expect_action) {
    throw StructureError("malformed sequence '" + std::string(text) +
                         "': must start and end with an action");
  }
  return seq;
}

SequenceSpace::SequenceSpace(int agent, int num_actions, int num_observations,
                             int horizon, std::uint64_t limit)
    : agent_(agent),
      num_actions_(num_actions),
      num_observations_(num_observations),
      horizon_(horizon) {
  if (horizon < 1) throw Error("horizon must be at least 1");
  if (num_actions < 1 || num_observations < 1) {
    throw Error("agent needs at least one action and one observation");
  }
  offsets_.push_back(0);
  std::uint64_t slice = static_cast<std::uint64_t>(num_actions);
  std::uint64_t total = 0;
  for (int t = 1; t <= horizon; ++t) {
    if (t > 1) {
      auto grown =
          checked_mul(slice, static_cast<std::uint64_t>(num_actions) *
                                 static_cast<std::uint64_t>(num_observations));
      if (!grown) {
        throw CapacityError("sequence space of agent " + std::to_string(agent),
                            std::numeric_limits<std::uint64_t>::max(), limit);
      }
      slice = *grown;
    }
    total += slice;
    if (total > limit || total < slice) {
      throw CapacityError("sequence space of agent " + std::to_string(agent),
                          total, limit);
    }
    offsets_.push_back(total);
  }
  for (int t = 1; t < horizon; ++t) leaves_per_policy_ *= num_observations;
}

int SequenceSpace::length_of(std::size_t index) const {
  for (int t = 1; t <= horizon_; ++t) {
    if (index < offsets_[t]) return t;
  }
  throw Error("sequence index " + std::to_string(index) + " out of range");
}

std::size_t SequenceSpace::index_of(const Sequence& seq) const {
  const int t = seq.length();
  if (t < 1 || t > horizon_ ||
      static_cast<int>(seq.observations.size()) != t - 1) {
    throw StructureError("sequence '" + to_string(seq) +
                         "' does not fit horizon " + std::to_string(horizon_));
  }
  std::size_t local = 0;
  for (int j = 0; j < t; ++j) {
    if (j > 0) {
      const int o = seq.observations[j - 1];
      if (o < 0 || o >= num_observations_) {
        throw StructureError("observation label " + std::to_string(o) +
                             " out of range in '" + to_string(seq) + "'");
      }
      local = local * num_observations_ + o;
    }
    const int a = seq.actions[j];
    if (a < 0 || a >= num_actions_) {
      throw StructureError("action label " + std::to_string(a) +
                           " out of range in '" + to_string(seq) + "'");
    }
    local = local * num_actions_ + a;
  }
  return offset(t) + local;
}

Sequence SequenceSpace::at(std::size_t index) const {
  const int t = length_of(index);
  std::size_t local = index - offset(t);
  Sequence seq;
  seq.actions.assign(t, 0);
  seq.observations.assign(t - 1, 0);
  for (int j = t - 1; j >= 0; --j) {
    seq.actions[j] = static_cast<int>(local % num_actions_);
    local /= num_actions_;
    if (j > 0) {
      seq.observations[j - 1] = static_cast<int>(local % num_observations_);
      local /= num_observations_;
    }
  }
  return seq;
}

std::size_t SequenceSpace::child(std::size_t index, int observation,
                                 int action) const {
  const int t = length_of(index);
  const std::size_t local = index - offset(t);
  return offset(t + 1) +
         (local * num_observations_ + observation) * num_actions_ + action;
}

std::optional<std::size_t> SequenceSpace::parent(std::size_t index) const {
  const int t = length_of(index);
  if (t == 1) return std::nullopt;
  const std::size_t local = index - offset(t);
  return offset(t - 1) +
         local / (static_cast<std::size_t>(num_actions_) * num_observations_);
}

SequenceSpace enumerate_sequences(const DecPomdp& model, int agent, int horizon,
                                  std::uint64_t limit) {
  return SequenceSpace(agent, model.num_actions(agent),
                       model.num_observations(agent), horizon, limit);
}

std::vector<SequenceSpace> enumerate_all_sequences(const DecPomdp& model,
                                                   int horizon,
                                                   std::uint64_t limit) {
  std::vector<SequenceSpace> out;
  for (int i = 0; i < model.num_agents(); ++i) {
    out.push_back(enumerate_sequences(model, i, horizon, limit));
  }
  return out;
}

double PolicyConstraintSystem::row_activity(std::size_t row,
                                            std::span<const double> w) const {
  double sum = 0.0;
  for (std::size_t k = row_start[row]; k < row_start[row + 1]; ++k) {
    sum += values[k] * w[columns[k]];
  }
  return sum;
}

PolicyConstraintSystem policy_constraints(const SequenceSpace& space) {
  PolicyConstraintSystem sys;
  sys.num_columns = space.size();
  const int na = space.num_actions();
  sys.row_start.push_back(0);
  for (int a = 0; a < na; ++a) {
    sys.columns.push_back(static_cast<std::size_t>(a));
    sys.values.push_back(1.0);
  }
  sys.row_start.push_back(sys.columns.size());
  sys.rhs.push_back(1.0);
  for (int t = 1; t < space.horizon(); ++t) {
    const std::size_t begin = space.offset(t);
    const std::size_t end = begin + space.slice_size(t);
    for (std::size_t p = begin; p < end; ++p) {
      for (int o = 0; o < space.num_observations(); ++o) {
        sys.columns.push_back(p);
        sys.values.push_back(1.0);
        const std::size_t first = space.child(p, o, 0);
        for (int a = 0; a < na; ++a) {
          sys.columns.push_back(first + a);
          sys.values.push_back(-1.0);
        }
        sys.row_start.push_back(sys.columns.size());
        sys.rhs.push_back(0.0);
      }
    }
  }
  return sys;
}

std::optional<std::size_t> violated_row(const PolicyConstraintSystem& system,
                                        std::span<const double> x,
                                        double tolerance) {
  for (std::size_t r = 0; r < system.num_rows(); ++r) {
    if (std::abs(system.row_activity(r, x) - system.rhs[r]) > tolerance) {
      return r;
    }
  }
  return std::nullopt;
}

std::size_t PolicyTree::node_count(int num_observations, int horizon) {
  std::size_t count = 0;
  std::size_t level = 1;
  for (int d = 0; d < horizon; ++d) {
    count += level;
    level *= static_cast<std::size_t>(num_observations);
  }
  return count;
}

namespace {

void check_tree_shape(const PolicyTree& tree, const SequenceSpace& space) {
  if (tree.horizon != space.horizon() ||
      tree.num_observations != space.num_observations() ||
      tree.actions.size() !=
          PolicyTree::node_count(tree.num_observations, tree.horizon)) {
    throw StructureError("policy tree shape does not match agent " +
                         std::to_string(space.agent()) + " at horizon " +
                         std::to_string(space.horizon()));
  }
  for (std::size_t k = 0; k < tree.actions.size(); ++k) {
    if (tree.actions[k] < 0 || tree.actions[k] >= space.num_actions()) {
      throw StructureError("action label " + std::to_string(tree.actions[k]) +
                           " out of range at tree node " + std::to_string(k));
    }
  }
}

// Visits every node with its sequence index, in level order.
template <typename Visit>
void walk_tree(const PolicyTree& tree, const SequenceSpace& space,
               Visit&& visit) {
  std::vector<std::size_t> seq(tree.actions.size());
  seq[0] = static_cast<std::size_t>(tree.actions[0]);
  visit(std::size_t{0}, seq[0]);
  const std::size_t internal =
      PolicyTree::node_count(tree.num_observations, tree.horizon - 1);
  for (std::size_t k = 0; k < internal; ++k) {
    for (int o = 0; o < tree.num_observations; ++o) {
      const std::size_t c = tree.child(k, o);
      seq[c] = space.child(seq[k], o, tree.actions[c]);
      visit(c, seq[c]);
    }
  }
}

}  // namespace

PolicyVector tree_to_vector(const PolicyTree& tree, const SequenceSpace& space) {
  check_tree_shape(tree, space);
  PolicyVector x;
  x.agent = space.agent();
  x.values.assign(space.size(), 0.0);
  walk_tree(tree, space,
            [&](std::size_t, std::size_t index) { x.values[index] = 1.0; });
  return x;
}

std::vector<std::size_t> tree_leaf_sequences(const PolicyTree& tree,
                                             const SequenceSpace& space) {
  check_tree_shape(tree, space);
  std::vector<std::size_t> leaves;
  leaves.reserve(space.leaves_per_policy());
  const std::size_t first_leaf =
      PolicyTree::node_count(tree.num_observations, tree.horizon - 1);
  const std::size_t base = space.offset(space.horizon());
  walk_tree(tree, space, [&](std::size_t node, std::size_t index) {
    if (node >= first_leaf) leaves.push_back(index - base);
  });
  return leaves;
}

PolicyTree vector_to_tree(const PolicyVector& x, const SequenceSpace& space) {
  if (x.values.size() != space.size()) {
    throw StructureError("policy vector of agent " + std::to_string(x.agent) +
                         " has " + std::to_string(x.values.size()) +
                         " entries, expected " + std::to_string(space.size()));
  }
  for (std::size_t j = 0; j < x.values.size(); ++j) {
    const double v = x.values[j];
    if (v != 0.0 && v != 1.0) {
      throw StructureError("policy vector entry for '" +
                           to_string(space.at(j)) + "' is " +
                           std::to_string(v) + ", not 0 or 1");
    }
  }
  PolicyTree tree;
  tree.horizon = space.horizon();
  tree.num_observations = space.num_observations();
  tree.actions.assign(
      PolicyTree::node_count(tree.num_observations, tree.horizon), -1);
  // Unique selected action among the A sequences starting at `first`.
  auto pick = [&](std::size_t first, const std::string& where) {
    int chosen = -1;
    for (int a = 0; a < space.num_actions(); ++a) {
      if (x.values[first + a] == 1.0) {
        if (chosen >= 0) {
          throw StructureError("more than one continuation selected at " +
                               where);
        }
        chosen = a;
      }
    }
    if (chosen < 0) throw StructureError("no continuation selected at " + where);
    return chosen;
  };
  std::vector<std::size_t> seq(tree.actions.size());
  tree.actions[0] = pick(0, "the root");
  seq[0] = static_cast<std::size_t>(tree.actions[0]);
  const std::size_t internal =
      PolicyTree::node_count(tree.num_observations, tree.horizon - 1);
  for (std::size_t k = 0; k < internal; ++k) {
    for (int o = 0; o < tree.num_observations; ++o) {
      const std::size_t c = tree.child(k, o);
      const std::size_t first = space.child(seq[k], o, 0);
      tree.actions[c] = pick(first, "(p='" + to_string(space.at(seq[k])) +
                                        "', o=" + std::to_string(o) + ")");
      seq[c] = first + tree.actions[c];
    }
  }
  if (tree_to_vector(tree, space).values != x.values) {
    throw StructureError("policy vector of agent " + std::to_string(x.agent) +
                         " selects sequences outside its own policy tree");
  }
  return tree;
}

PolicyTree tree_from_code(std::uint64_t code, const SequenceSpace& space) {
  PolicyTree tree;
  tree.horizon = space.horizon();
  tree.num_observations = space.num_observations();
  const std::size_t nodes =
      PolicyTree::node_count(tree.num_observations, tree.horizon);
  tree.actions.assign(nodes, 0);
  for (std::size_t k = nodes; k-- > 0;) {
    tree.actions[k] = static_cast<int>(code % space.num_actions());
    code /= space.num_actions();
  }
  return tree;
}

std::optional<std::uint64_t> count_policies(const SequenceSpace& space) {
  const std::size_t nodes =
      PolicyTree::node_count(space.num_observations(), space.horizon());
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < nodes; ++k) {
    auto next = checked_mul(count, static_cast<std::uint64_t>(space.num_actions()));
    if (!next) return std::nullopt;
    count = *next;
  }
  return count;
}

}  // namespace decmilp
