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

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdint>

#include "decmilp/errors.hpp"

namespace decmilp {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

enum class VarStatus : std::uint8_t { kBasic, kLower, kUpper, kFree };

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

// LU of the basis matrix plus a product-form file of column updates.
class BasisFactor {
 public:
  bool factor(const SparseMatrix& basis) {
    etas_.clear();
    lu_.analyzePattern(basis);
    lu_.factorize(basis);
    return lu_.info() == Eigen::Success;
  }

  // v <- B^{-1} v
  void ftran(std::vector<double>& v) const {
    if (v.empty()) return;
    Eigen::Map<Eigen::VectorXd> in(v.data(), static_cast<Eigen::Index>(v.size()));
    Eigen::VectorXd out = lu_.solve(in);
    in = out;
    for (const Eta& e : etas_) {
      const double vr = v[e.row] / e.pivot;
      if (vr != 0.0) {
        for (std::size_t k = 0; k < e.index.size(); ++k) {
          v[e.index[k]] -= e.value[k] * vr;
        }
      }
      v[e.row] = vr;
    }
  }

  // v <- B^{-T} v
  void btran(std::vector<double>& v) const {
    if (v.empty()) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double acc = v[it->row];
      for (std::size_t k = 0; k < it->index.size(); ++k) {
        acc -= it->value[k] * v[it->index[k]];
      }
      v[it->row] = acc / it->pivot;
    }
    Eigen::Map<Eigen::VectorXd> in(v.data(), static_cast<Eigen::Index>(v.size()));
    Eigen::VectorXd out = lu_.transpose().solve(in);
    in = out;
  }

  // Column `row` of the basis replaced; alpha = B^{-1} a_entering.
  void update(int row, const std::vector<double>& alpha) {
    Eta e;
    e.row = row;
    e.pivot = alpha[row];
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (static_cast<int>(i) != row && alpha[i] != 0.0) {
        e.index.push_back(static_cast<int>(i));
        e.value.push_back(alpha[i]);
      }
    }
    etas_.push_back(std::move(e));
  }

  std::size_t num_updates() const { return etas_.size(); }

 private:
  struct Eta {
    int row = 0;
    double pivot = 1.0;
    std::vector<int> index;
    std::vector<double> value;
  };
  mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

}  // namespace

class SimplexEngine::Impl {
 public:
  Impl(const MilpProblem& problem, const LpOptions& options)
      : opt_(options), maximize_(problem.maximize) {
    problem.check();
    n_ = static_cast<int>(problem.num_variables());
    m_ = static_cast<int>(problem.num_rows());
    const int total = n_ + m_;
    lo_.resize(total);
    up_.resize(total);
    cost_.assign(total, 0.0);
    // Column-major copy of the structural part, duplicates summed.
    std::vector<std::vector<std::pair<int, double>>> cols(n_);
    for (int i = 0; i < m_; ++i) {
      const auto& r = problem.rows[i];
      for (std::size_t k = 0; k < r.indices.size(); ++k) {
        cols[r.indices[k]].push_back({i, r.coefficients[k]});
      }
      switch (r.sense) {
        case RowSense::kEqual:
          lo_[n_ + i] = r.rhs;
          up_[n_ + i] = r.rhs;
          break;
        case RowSense::kLessEqual:
          lo_[n_ + i] = -kInfinity;
          up_[n_ + i] = r.rhs;
          break;
        case RowSense::kGreaterEqual:
          lo_[n_ + i] = r.rhs;
          up_[n_ + i] = kInfinity;
          break;
      }
    }
    col_start_.push_back(0);
    for (int j = 0; j < n_; ++j) {
      auto& c = cols[j];
      std::sort(c.begin(), c.end());
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k > 0 && c[k].first == c[k - 1].first) {
          col_val_.back() += c[k].second;
          continue;
        }
        col_row_.push_back(c[k].first);
        col_val_.push_back(c[k].second);
      }
      col_start_.push_back(static_cast<int>(col_row_.size()));
      const auto& v = problem.variables[j];
      lo_[j] = v.lower;
      up_[j] = v.upper;
      cost_[j] = maximize_ ? -v.objective : v.objective;
    }
    row_start_.assign(m_ + 1, 0);
    for (int r : col_row_) ++row_start_[r + 1];
    for (int i = 0; i < m_; ++i) row_start_[i + 1] += row_start_[i];
    row_col_.resize(col_row_.size());
    row_val_.resize(col_row_.size());
    {
      std::vector<int> fill(row_start_.begin(), row_start_.end() - 1);
      for (int j = 0; j < n_; ++j) {
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
          const int at = fill[col_row_[k]]++;
          row_col_[at] = j;
          row_val_[at] = col_val_[k];
        }
      }
    }
    limit_ = opt_.iteration_limit != 0
                 ? opt_.iteration_limit
                 : 100000 + 50 * static_cast<std::size_t>(total);
    slack_basis();
  }

  int n_ = 0;
  int m_ = 0;

  void set_bounds(int j, double lo, double up) {
    lo_[j] = lo;
    up_[j] = up;
    if (status_[j] != VarStatus::kBasic) {
      place_nonbasic(j, status_[j]);
      xb_stale_ = true;
    }
  }
  double lower(int j) const { return lo_[j]; }
  double upper(int j) const { return up_[j]; }

  std::vector<int> basis() const { return head_; }

  void load_basis(std::span<const int> head) {
    const int total = n_ + m_;
    head_.assign(head.begin(), head.end());
    std::fill(status_.begin(), status_.end(), VarStatus::kLower);
    std::fill(pos_.begin(), pos_.end(), -1);
    for (int r = 0; r < m_; ++r) {
      status_[head_[r]] = VarStatus::kBasic;
      pos_[head_[r]] = r;
    }
    if (!refactor()) {
      slack_basis();
      return;
    }
    std::vector<double> pi = basic_costs();
    factor_.btran(pi);
    for (int j = 0; j < total; ++j) {
      if (status_[j] == VarStatus::kBasic) continue;
      const double d = cost_[j] - dot_column(pi, j);
      VarStatus s;
      if (d > 0.0) {
        s = std::isfinite(lo_[j]) ? VarStatus::kLower
                                  : (std::isfinite(up_[j]) ? VarStatus::kUpper
                                                           : VarStatus::kFree);
      } else if (d < 0.0) {
        s = std::isfinite(up_[j]) ? VarStatus::kUpper
                                  : (std::isfinite(lo_[j]) ? VarStatus::kLower
                                                           : VarStatus::kFree);
      } else {
        s = std::isfinite(lo_[j]) ? VarStatus::kLower
                                  : (std::isfinite(up_[j]) ? VarStatus::kUpper
                                                           : VarStatus::kFree);
      }
      place_nonbasic(j, s);
    }
    xb_stale_ = true;
  }

  double objective() const {
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
    return maximize_ ? -obj : obj;
  }

  std::vector<double> values() const {
    return std::vector<double>(x_.begin(), x_.begin() + n_);
  }

  std::size_t iterations() const { return iterations_; }

  LpStatus primal() {
    ensure_fresh();
    int clean_checks = 0;
    while (true) {
      tick();
      if (factor_.num_updates() >=
          static_cast<std::size_t>(opt_.refactor_interval)) {
        refresh();
      }
      bool phase1 = false;
      std::vector<double> cb(m_, 0.0);
      for (int r = 0; r < m_; ++r) {
        const int k = head_[r];
        if (x_[k] < lo_[k] - opt_.feasibility_tolerance) {
          cb[r] = -1.0;
          phase1 = true;
        } else if (x_[k] > up_[k] + opt_.feasibility_tolerance) {
          cb[r] = 1.0;
          phase1 = true;
        }
      }
      if (!phase1) {
        for (int r = 0; r < m_; ++r) cb[r] = cost_[head_[r]];
      }
      factor_.btran(cb);
      const std::vector<double>& pi = cb;

      int entering = -1;
      double best = 0.0;
      double entering_d = 0.0;
      for (int j = 0; j < n_ + m_; ++j) {
        const VarStatus s = status_[j];
        if (s == VarStatus::kBasic || lo_[j] == up_[j]) continue;
        const double d = (phase1 ? 0.0 : cost_[j]) - dot_column(pi, j);
        double score = 0.0;
        if (s == VarStatus::kLower) {
          score = -d;
        } else if (s == VarStatus::kUpper) {
          score = d;
        } else {
          score = std::abs(d);
        }
        if (score <= opt_.optimality_tolerance) continue;
        if (bland_) {
          entering = j;
          entering_d = d;
          break;
        }
        if (score > best) {
          best = score;
          entering = j;
          entering_d = d;
        }
      }
      if (entering < 0) {
        // Confirm against freshly computed basic values before stopping.
        if (clean_checks++ < 2 && factor_.num_updates() > 0) {
          refresh();
          continue;
        }
        return phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;
      }
      clean_checks = 0;
      const int dir = (status_[entering] == VarStatus::kLower ||
                       (status_[entering] == VarStatus::kFree && entering_d < 0))
                          ? 1
                          : -1;
      std::vector<double> alpha = column(entering);
      factor_.ftran(alpha);

      const RatioResult rr = primal_ratio(alpha, dir, phase1, entering);
      if (rr.row < 0 && !std::isfinite(rr.step)) {
        if (phase1) {
          throw SolverError("simplex phase 1 found an unbounded direction");
        }
        return LpStatus::kUnbounded;
      }
      apply_primal_step(entering, dir, rr, alpha);
    }
  }

  LpStatus dual() {
    ensure_fresh();
    const int total = n_ + m_;
    std::vector<double> d(total, 0.0);
    std::vector<double> row_alpha(total, 0.0);
    std::vector<double> rho(m_, 0.0);
    bool fresh_duals = false;
    int retries = 0;
    while (true) {
      tick();
      if (factor_.num_updates() >=
          static_cast<std::size_t>(opt_.refactor_interval)) {
        refresh();
        fresh_duals = false;
      }
      if (!fresh_duals) {
        std::vector<double> pi = basic_costs();
        factor_.btran(pi);
        bool flipped = false;
        for (int j = 0; j < total; ++j) {
          const VarStatus s = status_[j];
          if (s == VarStatus::kBasic) {
            d[j] = 0.0;
            continue;
          }
          d[j] = cost_[j] - dot_column(pi, j);
          if (lo_[j] == up_[j]) continue;
          const double tol = opt_.optimality_tolerance;
          const bool bad = (s == VarStatus::kLower && d[j] < -tol) ||
                           (s == VarStatus::kUpper && d[j] > tol) ||
                           (s == VarStatus::kFree && std::abs(d[j]) > tol);
          if (!bad) continue;
          if (std::isfinite(lo_[j]) && std::isfinite(up_[j])) {
            place_nonbasic(j, s == VarStatus::kLower ? VarStatus::kUpper
                                                     : VarStatus::kLower);
            flipped = true;
          } else {
            return primal();
          }
        }
        if (flipped) compute_basic_values();
        fresh_duals = true;
      }

      int leave = -1;
      double worst = opt_.feasibility_tolerance;
      for (int r = 0; r < m_; ++r) {
        const int k = head_[r];
        const double viol = std::max(lo_[k] - x_[k], x_[k] - up_[k]);
        if (viol > worst) {
          worst = viol;
          leave = r;
        }
      }
      if (leave < 0) return primal();

      const int k_leave = head_[leave];
      const double sign = x_[k_leave] < lo_[k_leave] ? 1.0 : -1.0;
      std::fill(rho.begin(), rho.end(), 0.0);
      rho[leave] = 1.0;
      factor_.btran(rho);
      pivot_row(rho, row_alpha);

      // Harris two-pass dual ratio test.
      double theta_max = kInfinity;
      for (int j = 0; j < total; ++j) {
        const VarStatus s = status_[j];
        if (s == VarStatus::kBasic || lo_[j] == up_[j]) continue;
        const double slack = eligible_dual(s, row_alpha[j], sign, d[j]);
        if (slack < 0.0) continue;
        theta_max = std::min(theta_max, (slack + opt_.optimality_tolerance) /
                                            std::abs(row_alpha[j]));
      }
      if (!std::isfinite(theta_max)) return LpStatus::kInfeasible;
      int entering = -1;
      double best_alpha = 0.0;
      for (int j = 0; j < total; ++j) {
        const VarStatus s = status_[j];
        if (s == VarStatus::kBasic || lo_[j] == up_[j]) continue;
        const double a = row_alpha[j];
        const double slack = eligible_dual(s, a, sign, d[j]);
        if (slack < 0.0) continue;
        if (slack / std::abs(a) <= theta_max && std::abs(a) > best_alpha) {
          best_alpha = std::abs(a);
          entering = j;
        }
      }
      if (entering < 0) return LpStatus::kInfeasible;

      std::vector<double> alpha = column(entering);
      factor_.ftran(alpha);
      const double arq = row_alpha[entering];
      if (std::abs(alpha[leave] - arq) > 1e-7 * (1.0 + std::abs(arq)) ||
          std::abs(alpha[leave]) < opt_.pivot_tolerance) {
        if (retries++ > 3) return primal();
        refresh();
        fresh_duals = false;
        continue;
      }
      retries = 0;
      const double theta_d = d[entering] / arq;
      for (int j = 0; j < total; ++j) {
        if (status_[j] != VarStatus::kBasic && row_alpha[j] != 0.0) {
          d[j] -= theta_d * row_alpha[j];
        }
      }
      d[entering] = 0.0;
      d[k_leave] = -theta_d;

      const double target = sign > 0 ? lo_[k_leave] : up_[k_leave];
      const double dx = (x_[k_leave] - target) / alpha[leave];
      x_[entering] += dx;
      for (int r = 0; r < m_; ++r) {
        if (alpha[r] != 0.0) x_[head_[r]] -= alpha[r] * dx;
      }
      x_[k_leave] = target;
      status_[k_leave] = sign > 0 ? VarStatus::kLower : VarStatus::kUpper;
      pos_[k_leave] = -1;
      head_[leave] = entering;
      status_[entering] = VarStatus::kBasic;
      pos_[entering] = leave;
      factor_.update(leave, alpha);
    }
  }

 private:
  struct RatioResult {
    int row = -1;         // -1: bound flip of the entering variable
    double step = 0.0;
    bool to_lower = true;  // bound the leaving variable lands on
  };

  void tick() {
    if (++iterations_ > limit_ + base_iterations_) {
      throw SolverError("simplex iteration limit exceeded (cycling or "
                        "numerical breakdown)");
    }
  }

  // Dual-feasible slack of entering candidate j, or -1 when ineligible.
  double eligible_dual(VarStatus s, double a, double sign, double dj) const {
    const double tol = opt_.pivot_tolerance;
    if (s == VarStatus::kLower) {
      if (-sign * a <= tol) return -1.0;
      return std::max(dj, 0.0);
    }
    if (s == VarStatus::kUpper) {
      if (sign * a <= tol) return -1.0;
      return std::max(-dj, 0.0);
    }
    if (std::abs(a) <= tol) return -1.0;
    return std::abs(dj);
  }

  RatioResult primal_ratio(const std::vector<double>& alpha, int dir,
                           bool phase1, int entering) const {
    const double ftol = opt_.feasibility_tolerance;
    RatioResult best;
    best.row = -1;
    best.step = (std::isfinite(lo_[entering]) && std::isfinite(up_[entering]))
                    ? up_[entering] - lo_[entering]
                    : kInfinity;
    // Limit of row r and the bound it hits; negative limit means none.
    auto limit = [&](int r, double tol, bool& to_lower) -> double {
      const double a = alpha[r];
      if (std::abs(a) < opt_.pivot_tolerance) return -1.0;
      const double rate = -dir * a;
      const int k = head_[r];
      const double x = x_[k];
      if (rate < 0.0) {
        if (phase1 && x > up_[k] + ftol) {
          to_lower = false;
          return (x - up_[k] + tol) / -rate;
        }
        if (x >= lo_[k] - ftol && std::isfinite(lo_[k])) {
          to_lower = true;
          return std::max(0.0, x - lo_[k] + tol) / -rate;
        }
        return -1.0;
      }
      if (phase1 && x < lo_[k] - ftol) {
        to_lower = true;
        return (lo_[k] - x + tol) / rate;
      }
      if (x <= up_[k] + ftol && std::isfinite(up_[k])) {
        to_lower = false;
        return std::max(0.0, up_[k] - x + tol) / rate;
      }
      return -1.0;
    };
    if (bland_) {
      int best_var = -1;
      for (int r = 0; r < m_; ++r) {
        bool to_lower = true;
        const double lim = limit(r, 0.0, to_lower);
        if (lim < 0.0) continue;
        if (lim < best.step - 1e-12 ||
            (lim <= best.step + 1e-12 && best.row >= 0 && head_[r] < best_var)) {
          best = {r, lim, to_lower};
          best_var = head_[r];
        }
      }
      return best;
    }
    // Harris: bound the step with relaxed limits, then take the largest pivot.
    double relaxed = best.step;
    for (int r = 0; r < m_; ++r) {
      bool to_lower = true;
      const double lim = limit(r, ftol, to_lower);
      if (lim >= 0.0) relaxed = std::min(relaxed, lim);
    }
    double best_pivot = 0.0;
    for (int r = 0; r < m_; ++r) {
      bool to_lower = true;
      const double lim = limit(r, 0.0, to_lower);
      if (lim < 0.0 || lim > relaxed) continue;
      if (std::abs(alpha[r]) > best_pivot) {
        best_pivot = std::abs(alpha[r]);
        best = {r, lim, to_lower};
      }
    }
    return best;
  }

  void apply_primal_step(int entering, int dir, const RatioResult& rr,
                         const std::vector<double>& alpha) {
    const double step = rr.step;
    if (step <= 1e-12) {
      if (++degenerate_run_ > opt_.bland_after) bland_ = true;
    } else {
      degenerate_run_ = 0;
      bland_ = false;
    }
    x_[entering] += dir * step;
    for (int r = 0; r < m_; ++r) {
      if (alpha[r] != 0.0) x_[head_[r]] -= dir * alpha[r] * step;
    }
    if (rr.row < 0) {
      place_nonbasic(entering, status_[entering] == VarStatus::kLower
                                   ? VarStatus::kUpper
                                   : VarStatus::kLower);
      return;
    }
    const int k = head_[rr.row];
    x_[k] = rr.to_lower ? lo_[k] : up_[k];
    status_[k] = rr.to_lower ? VarStatus::kLower : VarStatus::kUpper;
    pos_[k] = -1;
    head_[rr.row] = entering;
    status_[entering] = VarStatus::kBasic;
    pos_[entering] = rr.row;
    factor_.update(rr.row, alpha);
  }

  void slack_basis() {
    const int total = n_ + m_;
    status_.assign(total, VarStatus::kLower);
    pos_.assign(total, -1);
    x_.assign(total, 0.0);
    head_.resize(m_);
    for (int j = 0; j < n_; ++j) {
      place_nonbasic(j, std::isfinite(lo_[j])   ? VarStatus::kLower
                        : std::isfinite(up_[j]) ? VarStatus::kUpper
                                                : VarStatus::kFree);
    }
    for (int r = 0; r < m_; ++r) {
      head_[r] = n_ + r;
      status_[n_ + r] = VarStatus::kBasic;
      pos_[n_ + r] = r;
    }
    factored_ = false;
    xb_stale_ = true;
  }

  void place_nonbasic(int j, VarStatus s) {
    if (s == VarStatus::kLower && !std::isfinite(lo_[j])) {
      s = std::isfinite(up_[j]) ? VarStatus::kUpper : VarStatus::kFree;
    }
    if (s == VarStatus::kUpper && !std::isfinite(up_[j])) {
      s = std::isfinite(lo_[j]) ? VarStatus::kLower : VarStatus::kFree;
    }
    status_[j] = s;
    pos_[j] = -1;
    x_[j] = s == VarStatus::kLower ? lo_[j]
            : s == VarStatus::kUpper ? up_[j]
                                     : 0.0;
  }

  std::vector<double> basic_costs() const {
    std::vector<double> cb(m_);
    for (int r = 0; r < m_; ++r) cb[r] = cost_[head_[r]];
    return cb;
  }

  // out[j] = rho' a_j for every column, through the row-wise copy.
  void pivot_row(const std::vector<double>& rho, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    for (int i = 0; i < m_; ++i) {
      const double r = rho[i];
      if (r == 0.0) continue;
      for (int k = row_start_[i]; k < row_start_[i + 1]; ++k) {
        out[row_col_[k]] += r * row_val_[k];
      }
      out[n_ + i] = -r;
    }
  }

  double dot_column(const std::vector<double>& v, int j) const {
    if (j >= n_) return -v[j - n_];
    double s = 0.0;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      s += col_val_[k] * v[col_row_[k]];
    }
    return s;
  }

  std::vector<double> column(int j) const {
    std::vector<double> c(m_, 0.0);
    if (j >= n_) {
      c[j - n_] = -1.0;
    } else {
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        c[col_row_[k]] = col_val_[k];
      }
    }
    return c;
  }

  bool refactor() {
    std::vector<Eigen::Triplet<double>> trip;
    for (int r = 0; r < m_; ++r) {
      const int j = head_[r];
      if (j >= n_) {
        trip.emplace_back(j - n_, r, -1.0);
      } else {
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
          trip.emplace_back(col_row_[k], r, col_val_[k]);
        }
      }
    }
    SparseMatrix b(m_, m_);
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    factored_ = m_ == 0 || factor_.factor(b);
    return factored_;
  }

  void compute_basic_values() {
    std::vector<double> rhs(m_, 0.0);
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
      if (j >= n_) {
        rhs[j - n_] += x_[j];
      } else {
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
          rhs[col_row_[k]] -= col_val_[k] * x_[j];
        }
      }
    }
    factor_.ftran(rhs);
    for (int r = 0; r < m_; ++r) x_[head_[r]] = rhs[r];
    xb_stale_ = false;
  }

  void refresh() {
    if (!refactor()) {
      slack_basis();
      refactor();
    }
    compute_basic_values();
  }

  void ensure_fresh() {
    base_iterations_ = iterations_;
    if (!factored_) {
      refresh();
    } else if (xb_stale_) {
      compute_basic_values();
    }
  }

  LpOptions opt_;
  bool maximize_;
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_val_;
  std::vector<int> row_start_;
  std::vector<int> row_col_;
  std::vector<double> row_val_;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<double> cost_;
  std::vector<int> head_;
  std::vector<VarStatus> status_;
  std::vector<int> pos_;
  std::vector<double> x_;
  BasisFactor factor_;
  bool factored_ = false;
  bool xb_stale_ = true;
  bool bland_ = false;
  int degenerate_run_ = 0;
  std::size_t iterations_ = 0;
  std::size_t base_iterations_ = 0;
  std::size_t limit_ = 0;
};

SimplexEngine::SimplexEngine(const MilpProblem& problem,
                             const LpOptions& options)
    : impl_(std::make_unique<Impl>(problem, options)) {}

SimplexEngine::~SimplexEngine() = default;

std::size_t SimplexEngine::num_structurals() const { return impl_->n_; }
std::size_t SimplexEngine::num_rows() const { return impl_->m_; }
void SimplexEngine::set_bounds(int var, double lower, double upper) {
  impl_->set_bounds(var, lower, upper);
}
double SimplexEngine::lower(int var) const { return impl_->lower(var); }
double SimplexEngine::upper(int var) const { return impl_->upper(var); }
LpStatus SimplexEngine::solve_primal() { return impl_->primal(); }
LpStatus SimplexEngine::solve_dual() { return impl_->dual(); }
std::vector<int> SimplexEngine::basis() const { return impl_->basis(); }
void SimplexEngine::load_basis(std::span<const int> head) {
  impl_->load_basis(head);
}
double SimplexEngine::objective() const { return impl_->objective(); }
std::vector<double> SimplexEngine::values() const { return impl_->values(); }
std::size_t SimplexEngine::iterations() const { return impl_->iterations(); }

LpSolution solve_lp(const MilpProblem& problem, const LpOptions& options) {
  if (problem.num_variables() == 0) throw Error("LP has no variables");
  SimplexEngine engine(problem, options);
  LpSolution sol;
  sol.status = engine.solve_primal();
  sol.iterations = engine.iterations();
  if (sol.status == LpStatus::kOptimal) {
    sol.values = engine.values();
    sol.objective = problem.objective_value(sol.values);
  }
  return sol;
}

}  // namespace decmilp
