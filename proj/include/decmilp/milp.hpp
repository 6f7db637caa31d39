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

#ifndef DECMILP_MILP_HPP_
#define DECMILP_MILP_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "decmilp/milp_problem.hpp"
#include "decmilp/simplex.hpp"

namespace decmilp {

enum class MilpStatus { kOptimal, kInfeasible, kUnbounded, kNodeLimit, kTimeLimit };

const char* to_string(MilpStatus status);

// Maps an LP solution to a candidate full assignment, or nothing.
using IncumbentHeuristic =
    std::function<std::optional<std::vector<double>>(std::span<const double>)>;

struct MilpOptions {
  std::size_t node_limit = 10'000'000;
  double time_limit_seconds = 1800.0;
  double absolute_gap = 1e-6;
  double integrality_tolerance = 1e-6;
  // Progress line every this many nodes; 0 disables.
  std::size_t log_every = 0;
  std::ostream* log = nullptr;
  LpOptions lp;
  IncumbentHeuristic heuristic;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  double objective = 0.0;   // incumbent, problem sense
  double best_bound = 0.0;  // proven bound, problem sense
  double root_bound = 0.0;  // LP relaxation at the root
  bool has_incumbent = false;
  std::vector<double> values;
  std::size_t nodes = 0;
  std::size_t lp_iterations = 0;
  double wall_seconds = 0.0;
};

// Branch and bound over the binary variables. Best-bound node selection
// with depth-first dives (up branch first), branching on the most fractional
// binary with ties to the lowest index. Child LPs start from the parent
// basis with the dual simplex method.
MilpSolution solve_milp(const MilpProblem& problem,
                        const MilpOptions& options = {});

}  // namespace decmilp

#endif  // DECMILP_MILP_HPP_
