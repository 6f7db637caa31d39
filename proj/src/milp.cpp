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

#include "decmilp/milp.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <ostream>
#include <queue>

#include "decmilp/errors.hpp"

namespace decmilp {

const char* to_string(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal:
      return "optimal";
    case MilpStatus::kInfeasible:
      return "infeasible";
    case MilpStatus::kUnbounded:
      return "unbounded";
    case MilpStatus::kNodeLimit:
      return "node_limit";
    case MilpStatus::kTimeLimit:
      return "time_limit";
  }
  return "unknown";
}

namespace {

struct BoundChange {
  int var;
  double lower;
  double upper;
};

struct Node {
  std::size_t id = 0;
  double bound = 0.0;  // parent LP value, maximization sense
  std::vector<BoundChange> changes;
  std::shared_ptr<const std::vector<int>> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpProblem& problem, const MilpOptions& options)
      : problem_(problem),
        opt_(options),
        engine_(problem, options.lp),
        sign_(problem.maximize ? 1.0 : -1.0),
        start_(std::chrono::steady_clock::now()) {
    for (std::size_t j = 0; j < problem.num_variables(); ++j) {
      if (problem.variables[j].kind == VarKind::kBinary) {
        binaries_.push_back(static_cast<int>(j));
      }
    }
  }

  MilpSolution run() {
    Node root;
    root.id = next_id_++;
    root.bound = kInfinity;
    bool first = true;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    std::optional<Node> dive = std::move(root);
    MilpStatus stop = MilpStatus::kOptimal;
    double stop_bound = -kInfinity;
    while (true) {
      if (!dive) {
        while (!open.empty() && open.top().bound <= incumbent_ + opt_.absolute_gap) {
          open.pop();
        }
        if (open.empty()) break;
        dive = open.top();
        open.pop();
        load_node(*dive, true);
      } else {
        load_node(*dive, first);
      }
      if (sol_.nodes >= opt_.node_limit) {
        stop = MilpStatus::kNodeLimit;
      } else if (elapsed() > opt_.time_limit_seconds) {
        stop = MilpStatus::kTimeLimit;
      }
      if (stop != MilpStatus::kOptimal) {
        stop_bound = dive->bound;
        break;
      }
      ++sol_.nodes;
      const LpStatus st = engine_.solve_dual();
      if (first) {
        first = false;
        if (st == LpStatus::kUnbounded) {
          sol_.status = MilpStatus::kUnbounded;
          return finish();
        }
        if (st == LpStatus::kOptimal) sol_.root_bound = engine_.objective();
      }
      maybe_log(open);
      const Node current = std::move(*dive);
      dive.reset();
      if (st != LpStatus::kOptimal) continue;
      const double z = sign_ * engine_.objective();
      if (z <= incumbent_ + opt_.absolute_gap) continue;
      const std::vector<double> x = engine_.values();
      const int branch = most_fractional(x);
      if (branch < 0) {
        accept(x);
        continue;
      }
      if (opt_.heuristic) {
        if (auto cand = opt_.heuristic(x)) try_candidate(std::move(*cand));
        if (z <= incumbent_ + opt_.absolute_gap) continue;
      }
      auto basis = std::make_shared<const std::vector<int>>(engine_.basis());
      const Variable& v = problem_.variables[branch];
      Node down{next_id_++, z, current.changes, basis};
      down.changes.push_back({branch, v.lower, 0.0});
      Node up{next_id_++, z, current.changes, basis};
      up.changes.push_back({branch, 1.0, v.upper});
      open.push(std::move(down));
      dive = std::move(up);
    }
    if (stop != MilpStatus::kOptimal) {
      double bound = stop_bound;
      while (!open.empty()) {
        bound = std::max(bound, open.top().bound);
        open.pop();
      }
      sol_.status = stop;
      sol_.best_bound = sign_ * std::max(bound, incumbent_);
      return finish();
    }
    sol_.status = sol_.has_incumbent ? MilpStatus::kOptimal : MilpStatus::kInfeasible;
    sol_.best_bound = sol_.has_incumbent ? sol_.objective : 0.0;
    return finish();
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

  // Applies the node's bound changes. A dive child only adds one change to
  // the engine's current state and keeps its basis.
  void load_node(const Node& node, bool reload) {
    for (const BoundChange& c : applied_) {
      const Variable& v = problem_.variables[c.var];
      engine_.set_bounds(c.var, v.lower, v.upper);
    }
    for (const BoundChange& c : node.changes) {
      engine_.set_bounds(c.var, c.lower, c.upper);
    }
    applied_ = node.changes;
    if (reload && node.basis) engine_.load_basis(*node.basis);
  }

  int most_fractional(const std::vector<double>& x) const {
    int best = -1;
    double best_frac = opt_.integrality_tolerance;
    for (int j : binaries_) {
      const double f = std::abs(x[j] - std::round(x[j]));
      if (f > best_frac) {
        best_frac = f;
        best = j;
      }
    }
    return best;
  }

  void accept(std::vector<double> x) {
    for (int j : binaries_) x[j] = std::round(x[j]);
    const double value = problem_.objective_value(x);
    if (!sol_.has_incumbent || sign_ * value > incumbent_) {
      incumbent_ = sign_ * value;
      sol_.objective = value;
      sol_.values = std::move(x);
      sol_.has_incumbent = true;
    }
  }

  void try_candidate(std::vector<double> x) {
    if (x.size() != problem_.num_variables()) return;
    if (problem_.max_integrality_violation(x) > opt_.integrality_tolerance) return;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const Variable& v = problem_.variables[j];
      if (x[j] < v.lower - 1e-9 || x[j] > v.upper + 1e-9) return;
    }
    if (problem_.max_violation(x) > 1e-6) return;
    accept(std::move(x));
  }

  void maybe_log(const std::priority_queue<Node, std::vector<Node>, NodeOrder>& open) {
    if (opt_.log == nullptr || opt_.log_every == 0 ||
        sol_.nodes % opt_.log_every != 0) {
      return;
    }
    const double bound = open.empty() ? incumbent_ : open.top().bound;
    *opt_.log << "nodes " << sol_.nodes << " open " << open.size()
              << " bound " << sign_ * bound << " incumbent "
              << (sol_.has_incumbent ? sign_ * incumbent_ : -sign_ * kInfinity)
              << " gap " << (sol_.has_incumbent ? bound - incumbent_ : kInfinity)
              << '\n';
  }

  MilpSolution finish() {
    sol_.lp_iterations = engine_.iterations();
    sol_.wall_seconds = elapsed();
    return std::move(sol_);
  }

  const MilpProblem& problem_;
  const MilpOptions& opt_;
  SimplexEngine engine_;
  double sign_;
  std::chrono::steady_clock::time_point start_;
  std::vector<int> binaries_;
  std::vector<BoundChange> applied_;
  std::size_t next_id_ = 0;
  double incumbent_ = -kInfinity;
  MilpSolution sol_;
};

}  // namespace

MilpSolution solve_milp(const MilpProblem& problem, const MilpOptions& options) {
  if (problem.num_variables() == 0) throw Error("MILP has no variables");
  BranchAndBound bb(problem, options);
  return bb.run();
}

}  // namespace decmilp
