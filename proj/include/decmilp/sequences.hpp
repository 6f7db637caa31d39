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

#ifndef DECMILP_SEQUENCES_HPP_
#define DECMILP_SEQUENCES_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "decmilp/model.hpp"

namespace decmilp {

// One agent's alternating history a_1 o_1 a_2 ... o_{t-1} a_t.
struct Sequence {
  std::vector<int> actions;       // length t >= 1
  std::vector<int> observations;  // length t - 1

  int length() const { return static_cast<int>(actions.size()); }
  bool operator==(const Sequence&) const = default;
};

// "a0 o1 a2"
std::string to_string(const Sequence& seq);
Sequence parse_sequence(std::string_view text);

inline constexpr std::uint64_t kDefaultSequenceLimit = 10'000'000;

// All sequences of one agent with lengths 1..horizon in canonical order:
// length-major, then lexicographic with the first action most significant.
// Indices are computed arithmetically, nothing is materialized.
//
// Within the slice of length t, the local index of a_1 o_1 ... a_t is the
// mixed-radix number with digits (a_1, o_1, a_2, ..., a_t) and radices
// (A, O, A, ..., A). The global index adds the slice offset.
class SequenceSpace {
 public:
  SequenceSpace(int agent, int num_actions, int num_observations, int horizon,
                std::uint64_t limit = kDefaultSequenceLimit);

  int agent() const { return agent_; }
  int horizon() const { return horizon_; }
  int num_actions() const { return num_actions_; }
  int num_observations() const { return num_observations_; }

  std::size_t size() const { return offsets_.back(); }
  // |S^t| = A^t O^(t-1)
  std::size_t slice_size(int length) const {
    return offsets_[length] - offsets_[length - 1];
  }
  std::size_t offset(int length) const { return offsets_[length - 1]; }
  // Policy size at full length, O^(horizon-1).
  std::size_t leaves_per_policy() const { return leaves_per_policy_; }

  int length_of(std::size_t index) const;
  std::size_t local_index(std::size_t index) const {
    return index - offset(length_of(index));
  }
  std::size_t global_index(int length, std::size_t local) const {
    return offset(length) + local;
  }

  std::size_t index_of(const Sequence& seq) const;
  Sequence at(std::size_t index) const;

  int last_action(std::size_t index) const {
    return static_cast<int>(local_index(index) % num_actions_);
  }
  // Index of p o a; p must be shorter than the horizon.
  std::size_t child(std::size_t index, int observation, int action) const;
  // Index of the prefix of p one step shorter; nullopt for length 1.
  std::optional<std::size_t> parent(std::size_t index) const;

 private:
  int agent_;
  int num_actions_;
  int num_observations_;
  int horizon_;
  std::size_t leaves_per_policy_ = 1;
  std::vector<std::size_t> offsets_;  // offsets_[t] = sum_{t' <= t} |S^t'|
};

SequenceSpace enumerate_sequences(const DecPomdp& model, int agent, int horizon,
                                  std::uint64_t limit = kDefaultSequenceLimit);
std::vector<SequenceSpace> enumerate_all_sequences(
    const DecPomdp& model, int horizon,
    std::uint64_t limit = kDefaultSequenceLimit);

// C w = b in compressed sparse row form. Row 0 is sum_a w[a] = 1; then one
// row w[p] - sum_a w[poa] = 0 for every p shorter than the horizon and every
// observation o, in canonical (p, o) order.
struct PolicyConstraintSystem {
  std::size_t num_columns = 0;
  std::vector<std::size_t> row_start;  // size rows + 1
  std::vector<std::size_t> columns;
  std::vector<double> values;
  std::vector<double> rhs;

  std::size_t num_rows() const { return rhs.size(); }
  std::size_t num_nonzeros() const { return columns.size(); }
  double row_activity(std::size_t row, std::span<const double> w) const;
};

PolicyConstraintSystem policy_constraints(const SequenceSpace& space);

struct PolicyVector {
  int agent = 0;
  std::vector<double> values;  // indexed by SequenceSpace index
};

// First row of C violated by x beyond `tolerance`, if any.
std::optional<std::size_t> violated_row(const PolicyConstraintSystem& system,
                                        std::span<const double> x,
                                        double tolerance = 1e-9);

// Complete O-ary tree of depth `horizon` stored in level order: the root is
// node 0 and the child of node k along observation o is k*O + 1 + o.
struct PolicyTree {
  int horizon = 1;
  int num_observations = 1;
  std::vector<int> actions;

  // (O^horizon - 1) / (O - 1), or horizon when O == 1.
  static std::size_t node_count(int num_observations, int horizon);
  std::size_t child(std::size_t node, int observation) const {
    return node * num_observations + 1 + observation;
  }
  bool operator==(const PolicyTree&) const = default;
};

PolicyVector tree_to_vector(const PolicyTree& tree, const SequenceSpace& space);
PolicyTree vector_to_tree(const PolicyVector& x, const SequenceSpace& space);

// Local indices (within the length-horizon slice) of the sequences a tree
// selects at full length, in observation-path order. Size O^(horizon-1).
std::vector<std::size_t> tree_leaf_sequences(const PolicyTree& tree,
                                             const SequenceSpace& space);

// Policy tree number `code` in the mixed-radix enumeration over node labels,
// root most significant. Used by exhaustive search.
PolicyTree tree_from_code(std::uint64_t code, const SequenceSpace& space);
// Number of deterministic policies A^(node count), nullopt on overflow.
std::optional<std::uint64_t> count_policies(const SequenceSpace& space);

}  // namespace decmilp

#endif  // DECMILP_SEQUENCES_HPP_
