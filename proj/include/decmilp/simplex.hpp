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

#ifndef DECMILP_SIMPLEX_HPP_
#define DECMILP_SIMPLEX_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "decmilp/milp_problem.hpp"

namespace decmilp {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpOptions {
  double feasibility_tolerance = 1e-6;
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 50;
  int refactor_interval = 100;
  // 0 selects a limit proportional to the problem size.
  std::size_t iteration_limit = 0;
};

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;
  std::size_t iterations = 0;
};

// Solves the continuous relaxation of `problem` (binary kinds ignored,
// bounds kept) from a slack basis with the primal simplex method.
LpSolution solve_lp(const MilpProblem& problem, const LpOptions& options = {});

// Bounded-variable revised simplex over
//   min c'z  s.t.  [A -I] z = 0,  l <= z <= u
// where the last m variables are the row activities. Holds a basis between
// calls so branch-and-bound can change bounds and re-optimize with the dual
// simplex method.
class SimplexEngine {
 public:
  SimplexEngine(const MilpProblem& problem, const LpOptions& options = {});
  ~SimplexEngine();
  SimplexEngine(const SimplexEngine&) = delete;
  SimplexEngine& operator=(const SimplexEngine&) = delete;

  std::size_t num_structurals() const;
  std::size_t num_rows() const;

  void set_bounds(int var, double lower, double upper);
  double lower(int var) const;
  double upper(int var) const;

  // Primal simplex from the current basis, two-phase.
  LpStatus solve_primal();
  // Dual simplex from the current basis when it is dual feasible, finished
  // by a primal pass; otherwise plain primal.
  LpStatus solve_dual();

  // Basic variable per row; restorable with load_basis().
  std::vector<int> basis() const;
  // Installs a basis and picks nonbasic bounds that keep it dual feasible.
  void load_basis(std::span<const int> head);

  // Objective in the problem's own sense.
  double objective() const;
  std::vector<double> values() const;
  std::size_t iterations() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace decmilp

#endif  // DECMILP_SIMPLEX_HPP_
