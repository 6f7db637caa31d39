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

#include "decmilp/simplex.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "decmilp/errors.hpp"

namespace decmilp {
namespace {

TEST(SimplexTest, SingleBoundedVariable) {
  MilpProblem p;
  p.maximize = true;
  p.add_variable({"x", 0.0, 3.0, VarKind::kContinuous, 1.0});
  const LpSolution s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 3.0, 1e-12);
}

TEST(SimplexTest, ConflictingRowsAreInfeasible) {
  MilpProblem p;
  p.add_variable({"x", -kInfinity, kInfinity, VarKind::kContinuous, 1.0});
  p.add_row({"a", {0}, {1.0}, RowSense::kGreaterEqual, 2.0});
  p.add_row({"b", {0}, {1.0}, RowSense::kLessEqual, 1.0});
  EXPECT_EQ(solve_lp(p).status, LpStatus::kInfeasible);
}

TEST(SimplexTest, DetectsUnboundedRay) {
  MilpProblem p;
  p.maximize = true;
  p.add_variable({"x", 0.0, kInfinity, VarKind::kContinuous, 1.0});
  p.add_variable({"y", 0.0, kInfinity, VarKind::kContinuous, 0.0});
  p.add_row({"r", {0, 1}, {1.0, -1.0}, RowSense::kLessEqual, 1.0});
  EXPECT_EQ(solve_lp(p).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, TextbookProblem) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
  MilpProblem p;
  p.maximize = true;
  p.add_variable({"x", 0.0, kInfinity, VarKind::kContinuous, 3.0});
  p.add_variable({"y", 0.0, kInfinity, VarKind::kContinuous, 5.0});
  p.add_row({"a", {0}, {1.0}, RowSense::kLessEqual, 4.0});
  p.add_row({"b", {1}, {2.0}, RowSense::kLessEqual, 12.0});
  p.add_row({"c", {0, 1}, {3.0, 2.0}, RowSense::kLessEqual, 18.0});
  const LpSolution s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, 36.0, 1e-9);
  EXPECT_NEAR(s.values[0], 2.0, 1e-9);
  EXPECT_NEAR(s.values[1], 6.0, 1e-9);
}

// Best vertex of {0 <= x <= u, A x <= b} by enumerating active sets.
double vertex_oracle(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& u, const Eigen::VectorXd& c,
                     bool& feasible) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(b.size());
  Eigen::MatrixXd g(m + 2 * n, n);
  Eigen::VectorXd h(m + 2 * n);
  g.topRows(m) = a;
  h.head(m) = b;
  g.block(m, 0, n, n) = Eigen::MatrixXd::Identity(n, n);
  h.segment(m, n) = u;
  g.block(m + n, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
  h.tail(n).setZero();
  const int k = m + 2 * n;
  double best = -kInfinity;
  feasible = false;
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    Eigen::MatrixXd ga(n, n);
    Eigen::VectorXd ha(n);
    for (int i = 0; i < n; ++i) {
      ga.row(i) = g.row(pick[i]);
      ha(i) = h(pick[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(ga);
    if (lu.rank() == n) {
      const Eigen::VectorXd x = lu.solve(ha);
      if (((g * x - h).array() <= 1e-9).all()) {
        feasible = true;
        best = std::max(best, c.dot(x));
      }
    }
    int i = n - 1;
    while (i >= 0 && pick[i] == k - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

TEST(SimplexTest, RandomBoxedProblemsMatchVertexEnumeration) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_int_distribution<int> small(-2, 2);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 3;
    const int m = 2 + trial % 4;
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd b(m), u(n), c(n);
    // Integer data half the time to provoke degeneracy.
    const bool degenerate = trial % 2 == 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = degenerate ? small(rng) : coef(rng);
      b(i) = degenerate ? small(rng) : coef(rng);
    }
    for (int j = 0; j < n; ++j) {
      u(j) = degenerate ? 1.0 + (trial + j) % 2 : 1.0 + std::abs(coef(rng));
      c(j) = degenerate ? small(rng) : coef(rng);
    }
    MilpProblem p;
    p.maximize = true;
    for (int j = 0; j < n; ++j) {
      p.add_variable({"x" + std::to_string(j), 0.0, u(j), VarKind::kContinuous,
                      c(j)});
    }
    for (int i = 0; i < m; ++i) {
      LinearRow r{"r" + std::to_string(i), {}, {}, RowSense::kLessEqual, b(i)};
      for (int j = 0; j < n; ++j) {
        r.indices.push_back(j);
        r.coefficients.push_back(a(i, j));
      }
      p.add_row(std::move(r));
    }
    bool feasible = false;
    const double expected = vertex_oracle(a, b, u, c, feasible);
    const LpSolution s = solve_lp(p);
    if (!feasible) {
      EXPECT_EQ(s.status, LpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(s.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective, expected, 1e-6) << "trial " << trial;
    EXPECT_LE(p.max_violation(s.values), 1e-6);
  }
}

TEST(SimplexTest, DualReoptimizesAfterBoundChange) {
  // max x + y, x + y <= 1.5, 0 <= x, y <= 1; then x <= 0 -> 1.
  MilpProblem p;
  p.maximize = true;
  p.add_variable({"x", 0.0, 1.0, VarKind::kContinuous, 1.0});
  p.add_variable({"y", 0.0, 1.0, VarKind::kContinuous, 1.0});
  p.add_row({"r", {0, 1}, {1.0, 1.0}, RowSense::kLessEqual, 1.5});
  SimplexEngine e(p);
  ASSERT_EQ(e.solve_primal(), LpStatus::kOptimal);
  EXPECT_NEAR(e.objective(), 1.5, 1e-9);
  const std::vector<int> head = e.basis();
  e.set_bounds(0, 0.0, 0.0);
  ASSERT_EQ(e.solve_dual(), LpStatus::kOptimal);
  EXPECT_NEAR(e.objective(), 1.0, 1e-9);
  e.set_bounds(0, 1.0, 1.0);
  e.load_basis(head);
  ASSERT_EQ(e.solve_dual(), LpStatus::kOptimal);
  EXPECT_NEAR(e.objective(), 1.5, 1e-9);
  e.set_bounds(1, 1.0, 1.0);
  EXPECT_EQ(e.solve_dual(), LpStatus::kInfeasible);
}

TEST(SimplexTest, IterationLimitThrows) {
  MilpProblem p;
  p.maximize = true;
  for (int j = 0; j < 5; ++j) {
    p.add_variable({"x" + std::to_string(j), 0.0, kInfinity,
                    VarKind::kContinuous, 1.0});
  }
  for (int j = 0; j < 5; ++j) {
    p.add_row({"r" + std::to_string(j), {j}, {1.0}, RowSense::kLessEqual, 1.0});
  }
  LpOptions opt;
  opt.iteration_limit = 2;
  EXPECT_THROW(solve_lp(p, opt), SolverError);
}

}  // namespace
}  // namespace decmilp
