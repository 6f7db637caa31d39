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

#include "decmilp/oracle.hpp"

#include <limits>

#include "decmilp/errors.hpp"

namespace decmilp {

std::optional<std::uint64_t> count_joint_policies(
    std::span<const SequenceSpace> spaces) {
  std::uint64_t total = 1;
  for (const SequenceSpace& s : spaces) {
    const auto c = count_policies(s);
    if (!c || (*c != 0 && total > std::numeric_limits<std::uint64_t>::max() / *c)) {
      return std::nullopt;
    }
    total *= *c;
  }
  return total;
}

namespace {

// Fixes agents one at a time; after fixing agent i the table is contracted
// over that agent's selected leaves, so each policy of the last agent costs
// only its own leaf count.
class Search {
 public:
  Search(std::span<const SequenceSpace> spaces, const JointSequenceTable& table)
      : spaces_(spaces), table_(table), n_(static_cast<int>(spaces.size())) {
    leaves_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      const std::uint64_t count = *count_policies(spaces[i]);
      leaves_[i].reserve(count);
      for (std::uint64_t c = 0; c < count; ++c) {
        leaves_[i].push_back(
            tree_leaf_sequences(tree_from_code(c, spaces[i]), spaces[i]));
      }
    }
    codes_.assign(n_, 0);
  }

  void run() {
    const auto nu = table_.nu_values();
    recurse(0, std::vector<double>(nu.begin(), nu.end()));
  }

  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> best_codes;

 private:
  // `tensor` is indexed by the local leaf indices of agents i..n-1.
  void recurse(int i, const std::vector<double>& tensor) {
    const std::size_t inner = tensor.size() / table_.radices()[i];
    std::vector<double> next(inner);
    for (std::uint64_t c = 0; c < leaves_[i].size(); ++c) {
      codes_[i] = c;
      if (i == n_ - 1) {
        double v = 0.0;
        for (std::size_t l : leaves_[i][c]) v += tensor[l];
        if (v > best) {
          best = v;
          best_codes = codes_;
        }
        continue;
      }
      std::fill(next.begin(), next.end(), 0.0);
      for (std::size_t l : leaves_[i][c]) {
        const double* row = tensor.data() + l * inner;
        for (std::size_t k = 0; k < inner; ++k) next[k] += row[k];
      }
      recurse(i + 1, next);
    }
  }

  std::span<const SequenceSpace> spaces_;
  const JointSequenceTable& table_;
  int n_;
  std::vector<std::vector<std::vector<std::size_t>>> leaves_;
  std::vector<std::uint64_t> codes_;
};

}  // namespace

OracleResult brute_force_optimal(std::span<const SequenceSpace> spaces,
                                 const JointSequenceTable& table,
                                 std::uint64_t limit) {
  const auto count = count_joint_policies(spaces);
  if (!count || *count > limit) {
    throw CapacityError("joint policies",
                        count ? *count : std::numeric_limits<std::uint64_t>::max(),
                        limit);
  }
  Search search(spaces, table);
  search.run();
  OracleResult result;
  result.value = search.best;
  result.codes = search.best_codes;
  result.count = *count;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    result.trees.push_back(tree_from_code(result.codes[i], spaces[i]));
  }
  return result;
}

}  // namespace decmilp
