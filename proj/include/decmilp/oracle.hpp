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

#ifndef DECMILP_ORACLE_HPP_
#define DECMILP_ORACLE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "decmilp/sequences.hpp"
#include "decmilp/valuation.hpp"

namespace decmilp {

inline constexpr std::uint64_t kDefaultOracleLimit = 100'000'000;

struct OracleResult {
  double value = 0.0;
  // Tree code per agent of the first optimal joint policy.
  std::vector<std::uint64_t> codes;
  std::vector<PolicyTree> trees;
  std::uint64_t count = 0;
};

// Number of deterministic joint policies, nullopt on overflow.
std::optional<std::uint64_t> count_joint_policies(
    std::span<const SequenceSpace> spaces);

// Scores every deterministic joint policy through the nu table and returns
// the maximum with the first maximizer in tree-code order (agent 0 most
// significant). CapacityError when the count exceeds `limit`.
OracleResult brute_force_optimal(std::span<const SequenceSpace> spaces,
                                 const JointSequenceTable& table,
                                 std::uint64_t limit = kDefaultOracleLimit);

}  // namespace decmilp

#endif  // DECMILP_ORACLE_HPP_
