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

#include "decmilp/milp_problem.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "decmilp/errors.hpp"

namespace decmilp {

std::size_t MilpProblem::num_binaries() const {
  return static_cast<std::size_t>(
      std::count_if(variables.begin(), variables.end(), [](const Variable& v) {
        return v.kind == VarKind::kBinary;
      }));
}

std::size_t MilpProblem::num_nonzeros() const {
  std::size_t nnz = 0;
  for (const auto& r : rows) nnz += r.indices.size();
  return nnz;
}

double MilpProblem::objective_value(std::span<const double> values) const {
  double obj = 0.0;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    obj += variables[j].objective * values[j];
  }
  return obj;
}

double MilpProblem::max_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    worst = std::max(worst, variables[j].lower - values[j]);
    worst = std::max(worst, values[j] - variables[j].upper);
  }
  for (const auto& r : rows) {
    double act = 0.0;
    for (std::size_t k = 0; k < r.indices.size(); ++k) {
      act += r.coefficients[k] * values[r.indices[k]];
    }
    switch (r.sense) {
      case RowSense::kEqual:
        worst = std::max(worst, std::abs(act - r.rhs));
        break;
      case RowSense::kLessEqual:
        worst = std::max(worst, act - r.rhs);
        break;
      case RowSense::kGreaterEqual:
        worst = std::max(worst, r.rhs - act);
        break;
    }
  }
  return worst;
}

double MilpProblem::max_integrality_violation(
    std::span<const double> values) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < variables.size(); ++j) {
    if (variables[j].kind != VarKind::kBinary) continue;
    worst = std::max(worst, std::min(std::abs(values[j]),
                                     std::abs(values[j] - 1.0)));
  }
  return worst;
}

void MilpProblem::check() const {
  for (const auto& v : variables) {
    if (!(v.lower <= v.upper) || std::isnan(v.objective)) {
      throw Error("variable '" + v.name + "' has invalid bounds or cost");
    }
    if (v.kind == VarKind::kBinary && (v.lower < 0.0 || v.upper > 1.0)) {
      throw Error("binary variable '" + v.name + "' has bounds outside [0,1]");
    }
  }
  for (const auto& r : rows) {
    if (r.indices.size() != r.coefficients.size()) {
      throw Error("row '" + r.name + "' has mismatched index/coefficient arrays");
    }
    for (int j : r.indices) {
      if (j < 0 || static_cast<std::size_t>(j) >= variables.size()) {
        throw Error("row '" + r.name + "' references unknown variable " +
                    std::to_string(j));
      }
    }
  }
}

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Writes "+ 3 x1 - x2 ..." wrapping long lines.
void write_terms(std::ostream& out, const MilpProblem& p,
                 std::span<const int> idx, std::span<const double> coef) {
  std::size_t width = 0;
  bool first = true;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double c = coef[k];
    if (c == 0.0) continue;
    std::string term = c < 0 ? "- " : (first ? "" : "+ ");
    if (std::abs(c) != 1.0) term += num(std::abs(c)) + " ";
    term += p.variables[idx[k]].name;
    if (width + term.size() > 240) {
      out << "\n   ";
      width = 0;
    }
    out << ' ' << term;
    width += term.size() + 1;
    first = false;
  }
  if (first) out << " 0 " << (p.variables.empty() ? "" : p.variables[0].name);
}

}  // namespace

void write_lp_format(const MilpProblem& problem, std::ostream& out) {
  out << (problem.maximize ? "Maximize\n" : "Minimize\n") << " obj:";
  std::vector<int> idx;
  std::vector<double> coef;
  for (std::size_t j = 0; j < problem.variables.size(); ++j) {
    if (problem.variables[j].objective != 0.0) {
      idx.push_back(static_cast<int>(j));
      coef.push_back(problem.variables[j].objective);
    }
  }
  write_terms(out, problem, idx, coef);
  out << "\nSubject To\n";
  for (const auto& r : problem.rows) {
    out << ' ' << r.name << ':';
    write_terms(out, problem, r.indices, r.coefficients);
    switch (r.sense) {
      case RowSense::kEqual:
        out << " = ";
        break;
      case RowSense::kLessEqual:
        out << " <= ";
        break;
      case RowSense::kGreaterEqual:
        out << " >= ";
        break;
    }
    out << num(r.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : problem.variables) {
    if (v.kind == VarKind::kBinary) continue;
    if (v.lower == 0.0 && v.upper == kInfinity) continue;
    if (v.lower == -kInfinity && v.upper == kInfinity) {
      out << ' ' << v.name << " free\n";
      continue;
    }
    out << ' ' << (v.lower == -kInfinity ? "-inf" : num(v.lower)) << " <= "
        << v.name << " <= " << (v.upper == kInfinity ? "+inf" : num(v.upper))
        << '\n';
  }
  bool any_binary = false;
  for (const auto& v : problem.variables) {
    if (v.kind != VarKind::kBinary) continue;
    if (!any_binary) out << "Binary\n";
    any_binary = true;
    out << ' ' << v.name << '\n';
  }
  out << "End\n";
}

}  // namespace decmilp
