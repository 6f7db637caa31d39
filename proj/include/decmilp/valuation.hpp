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

#ifndef DECMILP_VALUATION_HPP_
#define DECMILP_VALUATION_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "decmilp/model.hpp"
#include "decmilp/sequences.hpp"

namespace decmilp {

struct JointSequenceValue {
  double rho = 0.0;     // probability of the observation history
  double reward = 0.0;  // expected reward accumulated along it
  double nu = 0.0;      // rho * reward
};

// Values one joint sequence directly by chaining belief updates from b0.
// `components` holds one sequence per agent, all of the same length.
JointSequenceValue joint_sequence_value(const DecPomdp& model,
                                        std::span<const Sequence> components);

inline constexpr std::uint64_t kDefaultJointSequenceLimit = 100'000'000;

// rho, R and nu for every joint sequence of full length, addressed by the
// tuple of per-agent local indices into the length-horizon slices. The flat
// index is mixed radix with agent 0 most significant.
class JointSequenceTable {
 public:
  JointSequenceTable(int horizon, std::vector<std::size_t> radices);

  int horizon() const { return horizon_; }
  int num_agents() const { return static_cast<int>(radices_.size()); }
  std::size_t size() const { return rho_.size(); }
  std::span<const std::size_t> radices() const { return radices_; }
  std::size_t stride(int agent) const { return strides_[agent]; }

  std::size_t index(std::span<const std::size_t> locals) const;
  std::vector<std::size_t> decode(std::size_t flat) const;
  std::size_t component(std::size_t flat, int agent) const {
    return (flat / strides_[agent]) % radices_[agent];
  }

  double rho(std::size_t flat) const { return rho_[flat]; }
  double reward(std::size_t flat) const { return reward_[flat]; }
  double nu(std::size_t flat) const { return nu_[flat]; }
  std::span<const double> nu_values() const { return nu_; }

  void set(std::size_t flat, const JointSequenceValue& v) {
    rho_[flat] = v.rho;
    reward_[flat] = v.reward;
    nu_[flat] = v.nu;
  }

 private:
  int horizon_;
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::vector<double> rho_;
  std::vector<double> reward_;
  std::vector<double> nu_;
};

// Fills the table by walking the tree of joint histories once, so that each
// belief prefix is computed a single time.
JointSequenceTable build_table(const DecPomdp& model,
                               std::span<const SequenceSpace> spaces,
                               std::uint64_t limit = kDefaultJointSequenceLimit);

// "q_1 ... q_n rho R nu" per line, canonical order.
void write_table(const JointSequenceTable& table, std::ostream& out);

// Expected total reward of a joint policy by backward recursion over the
// trees, without reference to sequences.
double tree_value(const DecPomdp& model, std::span<const PolicyTree> trees);

// Sum of nu over the product of the per-agent full-length selections.
// Each entry of `leaves` lists local indices into one agent's last slice.
double joint_leaves_value(const JointSequenceTable& table,
                          std::span<const std::vector<std::size_t>> leaves);

// Value of a joint policy in sequence form. Each vector must be a binary
// solution of its agent's policy constraints; StructureError otherwise.
double sequence_form_value(const JointSequenceTable& table,
                           std::span<const SequenceSpace> spaces,
                           std::span<const PolicyVector> policies);

// Full-length local indices selected by a deterministic policy vector after
// checking it against the policy constraints.
std::vector<std::size_t> selected_leaves(const SequenceSpace& space,
                                         const PolicyVector& x);

}  // namespace decmilp

#endif  // DECMILP_VALUATION_HPP_
