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

#ifndef DECMILP_MILP_PROBLEM_HPP_
#define DECMILP_MILP_PROBLEM_HPP_

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace decmilp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { kContinuous, kBinary };
enum class RowSense { kEqual, kLessEqual, kGreaterEqual };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  VarKind kind = VarKind::kContinuous;
  double objective = 0.0;
};

struct LinearRow {
  std::string name;
  std::vector<int> indices;
  std::vector<double> coefficients;
  RowSense sense = RowSense::kEqual;
  double rhs = 0.0;
};

// A mixed binary linear program. Binary variables must carry bounds [0,1].
struct MilpProblem {
  bool maximize = true;
  std::vector<Variable> variables;
  std::vector<LinearRow> rows;

  int add_variable(Variable v) {
    variables.push_back(std::move(v));
    return static_cast<int>(variables.size()) - 1;
  }
  int add_row(LinearRow r) {
    rows.push_back(std::move(r));
    return static_cast<int>(rows.size()) - 1;
  }

  std::size_t num_variables() const { return variables.size(); }
  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_binaries() const;
  std::size_t num_nonzeros() const;

  double objective_value(std::span<const double> values) const;
  // Largest violation of any row or variable bound.
  double max_violation(std::span<const double> values) const;
  // Largest distance of a binary variable from {0,1}.
  double max_integrality_violation(std::span<const double> values) const;

  // Throws Error on dangling indices, bad bounds, or mismatched row arrays.
  void check() const;
};

// CPLEX LP text format, rows and columns in problem order.
void write_lp_format(const MilpProblem& problem, std::ostream& out);

}  // namespace decmilp

#endif  // DECMILP_MILP_PROBLEM_HPP_
