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

#include "decmilp/dominance.hpp"

#include <limits>
#include <string>

#include "decmilp/errors.hpp"

namespace decmilp {

std::size_t DominanceResult::num_dominated(int agent) const {
  std::size_t n = 0;
  for (std::size_t c : count_by_length[agent]) n += c;
  return n;
}

double DominanceResult::leaf_fraction(int agent,
                                      const SequenceSpace& space) const {
  return static_cast<double>(count_by_length[agent][space.horizon() - 1]) /
         static_cast<double>(space.slice_size(space.horizon()));
}

double DominanceResult::test_fraction(int agent,
                                      const SequenceSpace& space) const {
  return static_cast<double>(test_dominated[agent]) /
         static_cast<double>(space.slice_size(space.horizon()));
}

double DominanceResult::total_fraction(int agent,
                                       const SequenceSpace& space) const {
  return static_cast<double>(num_dominated(agent)) /
         static_cast<double>(space.size());
}

std::vector<std::size_t> co_sequences(const SequenceSpace& space,
                                      std::size_t index) {
  if (space.length_of(index) != space.horizon()) {
    throw Error("co-sequences are defined for full-length sequences only");
  }
  const std::size_t a = static_cast<std::size_t>(space.num_actions());
  // Slice offsets are multiples of A, so the group is contiguous.
  std::vector<std::size_t> co;
  const std::size_t first = space.offset(space.horizon());
  const std::size_t group = (index - first) - (index - first) % a + first;
  for (std::size_t k = 0; k < a; ++k) {
    if (group + k != index) co.push_back(group + k);
  }
  return co;
}

double domination_margin(const JointSequenceTable& table, int agent,
                         std::size_t p_local,
                         std::span<const std::size_t> co_local,
                         std::span<const std::size_t> contexts,
                         const LpOptions& options) {
  if (co_local.empty()) return -std::numeric_limits<double>::infinity();
  const auto nu = table.nu_values();
  const std::size_t stride = table.stride(agent);
  MilpProblem lp;
  lp.maximize = true;
  const int k = static_cast<int>(co_local.size());
  for (int j = 0; j < k; ++j) {
    lp.add_variable({"theta" + std::to_string(j), 0.0, 1.0,
                     VarKind::kContinuous, 0.0});
  }
  const int delta = lp.add_variable(
      {"delta", -kInfinity, kInfinity, VarKind::kContinuous, 1.0});
  LinearRow sum{"simplex", {}, std::vector<double>(k, 1.0), RowSense::kEqual,
                1.0};
  for (int j = 0; j < k; ++j) sum.indices.push_back(j);
  lp.add_row(std::move(sum));
  for (std::size_t r = 0; r < contexts.size(); ++r) {
    LinearRow row;
    row.name = "q" + std::to_string(r);
    row.sense = RowSense::kGreaterEqual;
    row.rhs = nu[p_local * stride + contexts[r]];
    for (int j = 0; j < k; ++j) {
      row.indices.push_back(j);
      row.coefficients.push_back(nu[co_local[j] * stride + contexts[r]]);
    }
    row.indices.push_back(delta);
    row.coefficients.push_back(-1.0);
    lp.add_row(std::move(row));
  }
  const LpSolution sol = solve_lp(lp, options);
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("domination LP is ") + to_string(sol.status));
  }
  return sol.objective;
}

namespace {

// Flat offsets of all joint contexts of `agent` formed from the other
// agents' surviving full-length sequences.
std::vector<std::size_t> context_offsets(
    const JointSequenceTable& table, int agent,
    const std::vector<std::vector<bool>>& alive_leaves) {
  std::vector<std::size_t> offsets{0};
  for (int j = 0; j < table.num_agents(); ++j) {
    if (j == agent) continue;
    std::vector<std::size_t> next;
    for (std::size_t off : offsets) {
      for (std::size_t l = 0; l < table.radices()[j]; ++l) {
        if (alive_leaves[j][l]) next.push_back(off + l * table.stride(j));
      }
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

DominanceResult eliminate(std::span<const SequenceSpace> spaces,
                          const JointSequenceTable& table,
                          const DominanceOptions& options) {
  const int n = static_cast<int>(spaces.size());
  const int horizon = table.horizon();
  std::vector<std::vector<bool>> alive(n);
  for (int i = 0; i < n; ++i) alive[i].assign(table.radices()[i], true);
  const std::vector<std::vector<bool>> everything = alive;

  DominanceResult result;
  bool changed = true;
  for (int round = 0; changed; ++round) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      const std::vector<std::size_t> contexts = context_offsets(
          table, i, options.against_survivors ? alive : everything);
      const std::size_t first = spaces[i].offset(horizon);
      DominanceRound record{round, i, {}};
      for (std::size_t p = 0; p < table.radices()[i]; ++p) {
        if (!alive[i][p]) continue;
        std::vector<std::size_t> co;
        for (std::size_t c : co_sequences(spaces[i], first + p)) {
          if (alive[i][c - first]) co.push_back(c - first);
        }
        if (co.empty()) continue;
        ++result.lp_solves;
        const double m =
            domination_margin(table, i, p, co, contexts, options.lp);
        if (m >= -options.margin) {
          alive[i][p] = false;
          record.removed.push_back(first + p);
        }
      }
      if (!record.removed.empty()) {
        changed = true;
        result.rounds.push_back(std::move(record));
      }
    }
    if (options.single_pass) break;
  }

  result.test_dominated.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    const std::vector<std::size_t> contexts = context_offsets(
        table, i, options.against_survivors ? alive : everything);
    const std::size_t first = spaces[i].offset(horizon);
    for (std::size_t p = 0; p < table.radices()[i]; ++p) {
      std::vector<std::size_t> co;
      for (std::size_t c : co_sequences(spaces[i], first + p)) {
        co.push_back(c - first);
      }
      if (co.empty()) continue;
      ++result.lp_solves;
      if (domination_margin(table, i, p, co, contexts, options.lp) >=
          -options.margin) {
        ++result.test_dominated[i];
      }
    }
  }

  result.dominated.resize(n);
  result.count_by_length.assign(n, std::vector<std::size_t>(horizon, 0));
  for (int i = 0; i < n; ++i) {
    const SequenceSpace& space = spaces[i];
    std::vector<bool>& dom = result.dominated[i];
    dom.assign(space.size(), false);
    const std::size_t first = space.offset(horizon);
    for (std::size_t p = 0; p < table.radices()[i]; ++p) {
      dom[first + p] = !alive[i][p];
    }
    // A shorter sequence is dominated when every continuation is.
    for (int t = horizon - 1; t >= 1; --t) {
      for (std::size_t local = 0; local < space.slice_size(t); ++local) {
        const std::size_t idx = space.global_index(t, local);
        bool all = true;
        for (int o = 0; o < space.num_observations() && all; ++o) {
          for (int a = 0; a < space.num_actions() && all; ++a) {
            all = dom[space.child(idx, o, a)];
          }
        }
        dom[idx] = all;
      }
    }
    for (std::size_t idx = 0; idx < space.size(); ++idx) {
      if (dom[idx]) ++result.count_by_length[i][space.length_of(idx) - 1];
    }
  }
  return result;
}

}  // namespace decmilp
