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

#ifndef DECMILP_MODEL_HPP_
#define DECMILP_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace decmilp {

inline constexpr double kProbabilityTolerance = 1e-9;

// Mixed-radix codec for joint actions and joint observations. The first
// component (agent 0) is the most significant digit.
class JointIndexer {
 public:
  JointIndexer() = default;
  explicit JointIndexer(std::vector<int> radices);

  int size() const { return size_; }
  int num_components() const { return static_cast<int>(radices_.size()); }
  std::span<const int> radices() const { return radices_; }

  int encode(std::span<const int> components) const;
  std::vector<int> decode(int flat) const;
  // Component of one agent without materializing the whole tuple.
  int component(int flat, int agent) const {
    return (flat / strides_[agent]) % radices_[agent];
  }

 private:
  std::vector<int> radices_;
  std::vector<int> strides_;
  int size_ = 1;
};

// Finite-horizon Dec-POMDP with dense tables, indexed by joint action.
//   transition(a, s, s2)  = P(s2 | s, a)
//   observation(a, s2, o) = P(o | a, s2)
//   reward(a, s)
// Immutable after construction; use DecPomdp::Builder or parse_model().
class DecPomdp {
 public:
  DecPomdp(int num_states, std::vector<int> num_actions,
           std::vector<int> num_observations);

  int num_agents() const { return static_cast<int>(num_actions_.size()); }
  int num_states() const { return num_states_; }
  int num_actions(int agent) const { return num_actions_[agent]; }
  int num_observations(int agent) const { return num_observations_[agent]; }
  int num_joint_actions() const { return actions_.size(); }
  int num_joint_observations() const { return observations_.size(); }
  const JointIndexer& joint_actions() const { return actions_; }
  const JointIndexer& joint_observations() const { return observations_; }

  double transition(int a, int s, int s2) const {
    return transition_[(static_cast<std::size_t>(a) * num_states_ + s) *
                           num_states_ + s2];
  }
  double observation(int a, int s2, int o) const {
    return observation_[(static_cast<std::size_t>(a) * num_states_ + s2) *
                            num_joint_observations() + o];
  }
  double reward(int a, int s) const {
    return reward_[static_cast<std::size_t>(a) * num_states_ + s];
  }
  std::span<const double> initial_belief() const { return initial_belief_; }

  void set_transition(int a, int s, int s2, double p) {
    transition_[(static_cast<std::size_t>(a) * num_states_ + s) * num_states_ +
                s2] = p;
  }
  void set_observation(int a, int s2, int o, double p) {
    observation_[(static_cast<std::size_t>(a) * num_states_ + s2) *
                     num_joint_observations() + o] = p;
  }
  void set_reward(int a, int s, double r) {
    reward_[static_cast<std::size_t>(a) * num_states_ + s] = r;
  }
  void set_initial_belief(std::vector<double> b);

 private:
  int num_states_;
  std::vector<int> num_actions_;
  std::vector<int> num_observations_;
  JointIndexer actions_;
  JointIndexer observations_;
  std::vector<double> transition_;
  std::vector<double> observation_;
  std::vector<double> reward_;
  std::vector<double> initial_belief_;
};

struct Violation {
  std::string location;  // e.g. "T[a=2][s=0]"
  std::string message;
};

// Every violated probability invariant, in table order. Empty means valid.
std::vector<Violation> validate_model(const DecPomdp& model);

// Parses the instance text format and validates the result. Throws
// ParseError on malformed text and ModelError listing every violation.
DecPomdp parse_model(std::string_view text);
DecPomdp load_model(const std::string& path);

using BeliefState = std::vector<double>;

struct BeliefUpdate {
  double probability = 0.0;           // P(o | b, a)
  std::optional<BeliefState> next;    // empty when probability == 0
};

BeliefUpdate belief_update(const DecPomdp& model, std::span<const double> belief,
                           int joint_action, int joint_observation);

// Same as belief_update() but writes into a caller buffer; returns the
// observation probability and leaves `next` unspecified when it is zero.
double belief_update_into(const DecPomdp& model, std::span<const double> belief,
                          int joint_action, int joint_observation,
                          std::span<double> next);

double expected_reward(const DecPomdp& model, std::span<const double> belief,
                       int joint_action);

}  // namespace decmilp

#endif  // DECMILP_MODEL_HPP_
