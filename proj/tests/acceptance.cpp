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


// Acceptance suite. Each criterion prints one PASS or FAIL line.
//
//   acceptance            run every criterion
//   acceptance 3 7        run the listed criteria

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "decmilp/bounds.hpp"
#include "decmilp/dominance.hpp"
#include "decmilp/errors.hpp"
#include "decmilp/formulation.hpp"
#include "decmilp/oracle.hpp"
#include "decmilp/pipeline.hpp"

namespace {

using namespace decmilp;

std::string path(const char* name) {
  return std::string(DECMILP_INSTANCE_DIR) + "/" + name;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Collects failed checks; the first few are printed with the verdict.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& what) { notes_.push_back(what); }
  bool report(int id, const std::string& title) const {
    const bool ok = failures_.empty();
    std::printf("criterion %d %s: %s", id, ok ? "PASS" : "FAIL", title.c_str());
    for (const auto& n : notes_) std::printf("; %s", n.c_str());
    for (std::size_t k = 0; k < failures_.size() && k < 5; ++k) {
      std::printf("; failed: %s", failures_[k].c_str());
    }
    std::printf("\n");
    std::fflush(stdout);
    return ok;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

RunReport solve(const DecPomdp& m, int k, FormulationVariant v, bool bounds = false,
                double time_limit = 1800.0) {
  SolveOptions o;
  o.horizon = k;
  o.variant = v;
  o.lower_bound = bounds;
  o.upper_bound = bounds;
  o.milp.time_limit_seconds = time_limit;
  return solve_instance(m, o);
}

double oracle(const DecPomdp& m, int k) {
  const auto spaces = enumerate_all_sequences(m, k);
  return brute_force_optimal(spaces, build_table(m, spaces)).value;
}

bool criterion1() {
  Verdict v;
  Timer t;
  const DecPomdp m = load_model(path("matiger.dpomdp"));
  const RunReport r = solve(m, 2, FormulationVariant::kMilpDec);
  const double o = oracle(m, 2);
  v.note("solver " + num(r.value) + ", oracle " + num(o));
  v.check(r.status == MilpStatus::kOptimal, "solver status");
  v.check(std::abs(r.value - (-2.0)) <= 1e-6, "solver value -2 +/- 1e-6");
  v.check(std::abs(o - (-2.0)) <= 1e-6, "oracle value -2 +/- 1e-6");
  v.check(t.seconds() < 5.0, "runtime " + num(t.seconds()) + " s < 5 s");
  return v.report(1, "tiger horizon 2 value -2");
}

bool criterion2() {
  Verdict v;
  Timer t;
  const DecPomdp m = load_model(path("matiger.dpomdp"));
  const RunReport r = solve(m, 3, FormulationVariant::kMilpDec);
  const double o = oracle(m, 3);
  v.note("solver " + num(r.value) + ", oracle " + num(o) + ", " +
         num(t.seconds()) + " s");
  v.check(r.status == MilpStatus::kOptimal, "solver status");
  v.check(std::abs(r.value - 5.19) <= 0.01, "value 5.19 +/- 0.01");
  v.check(std::abs(r.value - o) <= 1e-6, "oracle within 1e-6");
  v.check(t.seconds() < 1800.0, "runtime < 30 min");
  return v.report(2, "tiger horizon 3 value 5.19");
}

bool criterion3() {
  Verdict v;
  Timer t;
  const DecPomdp m = load_model(path("mabc.dpomdp"));
  for (int k = 1; k <= 3; ++k) {
    const double o = oracle(m, k);
    std::string line = "k=" + std::to_string(k) + " oracle " + num(o);
    for (auto var : {FormulationVariant::kMilpDec, FormulationVariant::kIlpDec,
                     FormulationVariant::kMilpPrDec}) {
      const RunReport r = solve(m, k, var);
      line += std::string(" ") + to_string(var) + " " + num(r.value);
      v.check(r.status == MilpStatus::kOptimal,
              std::string(to_string(var)) + " k=" + std::to_string(k) + " status");
      v.check(std::abs(r.value - o) <= 1e-6,
              std::string(to_string(var)) + " k=" + std::to_string(k) + " value");
    }
    v.note(line);
  }
  v.note(num(t.seconds()) + " s");
  v.check(t.seconds() < 300.0, "runtime < 5 min");
  return v.report(3, "broadcast horizons 1-3, all variants equal the oracle");
}

bool criterion4() {
  Verdict v;
  Timer t;
  const DecPomdp m = load_model(path("mabc.dpomdp"));
  // Two solves share the 30 minute budget.
  const RunReport dec = solve(m, 4, FormulationVariant::kMilpDec, true, 900.0);
  const RunReport pr = solve(m, 4, FormulationVariant::kMilpPrDec, true, 900.0);
  for (const RunReport* r : {&dec, &pr}) {
    v.note(std::string(to_string(r->variant)) + " " + to_string(r->status) +
           " value " + num(r->value) + " bound " + num(r->best_bound) + " nodes " +
           std::to_string(r->nodes));
    v.check(r->status == MilpStatus::kOptimal,
            std::string(to_string(r->variant)) + " optimal");
  }
  v.check(std::abs(dec.value - pr.value) <= 1e-6, "variants agree within 1e-6");
  const double lower = *dec.bounds.lower;
  const double upper = *dec.bounds.upper;
  v.note("l " + num(lower) + " u " + num(upper));
  v.check(lower <= dec.value + 1e-9 && dec.value <= upper + 1e-9, "l <= V <= u");
  v.check(t.seconds() < 1800.0, "runtime " + num(t.seconds()) + " s < 30 min");
  return v.report(4, "broadcast horizon 4");
}

bool criterion5() {
  Verdict v;
  std::mt19937_64 rng(2026);
  double worst = 0.0;
  int draws = 0;
  const struct { const char* file; int k; int n; } plan[] = {
      {"mabc.dpomdp", 1, 166},    {"mabc.dpomdp", 2, 167},
      {"mabc.dpomdp", 3, 167},    {"matiger.dpomdp", 1, 166},
      {"matiger.dpomdp", 2, 167}, {"matiger.dpomdp", 3, 167}};
  for (const auto& p : plan) {
    const DecPomdp m = load_model(path(p.file));
    const auto spaces = enumerate_all_sequences(m, p.k);
    const JointSequenceTable table = build_table(m, spaces);
    for (int d = 0; d < p.n; ++d, ++draws) {
      std::vector<PolicyTree> trees;
      std::vector<PolicyVector> vectors;
      for (const auto& s : spaces) {
        const auto count = *count_policies(s);
        std::uniform_int_distribution<std::uint64_t> pick(0, count - 1);
        trees.push_back(tree_from_code(pick(rng), s));
        vectors.push_back(tree_to_vector(trees.back(), s));
      }
      const double diff = std::abs(tree_value(m, trees) -
                                   sequence_form_value(table, spaces, vectors));
      worst = std::max(worst, diff);
      v.check(diff <= 1e-9, std::string(p.file) + " draw " + std::to_string(d));
    }
  }
  v.note(std::to_string(draws) + " policies, max difference " + num(worst));
  return v.report(5, "tree and sequence-form values agree within 1e-9");
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool criterion6() {
  Verdict v;
  std::size_t checked = 0;
  for (const char* file : {"mabc.dpomdp", "matiger.dpomdp"}) {
    const DecPomdp m = load_model(path(file));
    for (int k = 1; k <= 5; ++k) {
      const auto spaces = enumerate_all_sequences(m, k);
      const std::string at = std::string(file) + " k=" + std::to_string(k);
      for (const auto& s : spaces) {
        const int i = s.agent();
        const std::size_t a = m.num_actions(i), o = m.num_observations(i);
        for (int t = 1; t <= k; ++t) {
          v.check(s.slice_size(t) == ipow(a, t) * ipow(o, t - 1), at + " |S^t|");
          ++checked;
        }
        const PolicyConstraintSystem c = policy_constraints(s);
        std::size_t rows = 1;
        for (int t = 1; t < k; ++t) rows += ipow(a, t) * ipow(o, t);
        v.check(c.num_rows() == rows, at + " row count");
        // The root row has no parent entry.
        v.check(c.row_start[1] - c.row_start[0] == a, at + " root row nonzeros");
        for (std::size_t r = 1; r < c.num_rows(); ++r) {
          v.check(c.row_start[r + 1] - c.row_start[r] == 1 + a,
                  at + " row " + std::to_string(r) + " nonzeros");
        }
        checked += c.num_rows() + 1;
      }
      // Joint-policy coefficients against the product of the other agents'
      // policy sizes, on problems small enough to build.
      if (k > 3) continue;
      const JointSequenceTable table = build_table(m, spaces);
      const SequenceFormMilp f =
          build_formulation(m, spaces, table, FormulationVariant::kMilpDec);
      for (const auto& row : f.problem.rows) {
        if (row.name.rfind("jp", 0) != 0) continue;
        const int i = row.name[2] - '0';
        const std::size_t other = ipow(m.num_observations(1 - i), k - 1);
        v.check(row.coefficients.back() == -static_cast<double>(other),
                at + " " + row.name + " tau");
        v.check(row.indices.size() == 1 + spaces[1 - i].slice_size(k),
                at + " " + row.name + " width");
        ++checked;
      }
    }
  }
  v.note(std::to_string(checked) + " counts checked");
  return v.report(6, "structural counts for both instances up to horizon 5");
}

bool criterion7() {
  Verdict v;
  const DecPomdp tiger = load_model(path("matiger.dpomdp"));
  for (int k = 1; k <= 4; ++k) {
    const auto spaces = enumerate_all_sequences(tiger, k);
    const DominanceResult r = eliminate(spaces, build_table(tiger, spaces));
    for (int i = 0; i < 2; ++i) {
      v.check(r.num_dominated(i) == 0 && r.test_dominated[i] == 0,
              "tiger k=" + std::to_string(k) + " agent " + std::to_string(i));
    }
  }
  const DecPomdp bc = load_model(path("mabc.dpomdp"));
  {
    const auto spaces = enumerate_all_sequences(bc, 5);
    const DominanceResult r = eliminate(spaces, build_table(bc, spaces));
    for (int i = 0; i < 2; ++i) {
      const double f = r.test_fraction(i, spaces[i]);
      v.note("broadcast k=5 agent " + std::to_string(i) + " dominated " +
             num(100.0 * f) + "% (pruned " +
             num(100.0 * r.leaf_fraction(i, spaces[i])) + "%)");
      v.check(f >= 0.70 && f <= 0.80, "broadcast k=5 agent " + std::to_string(i) +
                                           " in 70-80%");
    }
  }
  for (int k = 1; k <= 3; ++k) {
    const RunReport dec = solve(bc, k, FormulationVariant::kMilpDec);
    const RunReport pr = solve(bc, k, FormulationVariant::kMilpPrDec);
    v.check(std::abs(dec.value - pr.value) <= 1e-6,
            "pruned optimum k=" + std::to_string(k));
  }
  return v.report(7, "dominance counts and pruned optimum");
}

bool criterion8() {
  Verdict v;
  int configs = 0;
  for (const char* file : {"mabc.dpomdp", "matiger.dpomdp"}) {
    const DecPomdp m = load_model(path(file));
    for (int k = 2; k <= 3; ++k) {
      for (auto var : {FormulationVariant::kMilpDec, FormulationVariant::kMilpPrDec}) {
        const std::string at = std::string(file) + " k=" + std::to_string(k) +
                               " " + to_string(var);
        const RunReport plain = solve(m, k, var);
        const RunReport bounded = solve(m, k, var, true);
        v.check(plain.status == MilpStatus::kOptimal &&
                    bounded.status == MilpStatus::kOptimal,
                at + " status");
        v.check(plain.root_lp >= plain.value - 1e-9, at + " LP relaxation");
        v.check(*bounded.bounds.upper >= plain.value - 1e-9, at + " u");
        v.check(*bounded.bounds.lower <= plain.value + 1e-9, at + " l");
        v.check(std::abs(bounded.value - plain.value) <= 1e-6, at + " injected");
        ++configs;
      }
    }
  }
  v.note(std::to_string(configs) + " configurations");
  return v.report(8, "bounds are valid and leave the optimum unchanged");
}

bool criterion9() {
  Verdict v;
  const DecPomdp m = load_model(path("matiger.dpomdp"));
  const RunReport a = solve(m, 3, FormulationVariant::kMilpDec);
  const RunReport b = solve(m, 3, FormulationVariant::kMilpDec);
  v.note("nodes " + std::to_string(a.nodes) + " and " + std::to_string(b.nodes));
  v.check(a.value == b.value, "values");
  v.check(a.nodes == b.nodes, "node counts");
  v.check(a.lp_iterations == b.lp_iterations, "LP iterations");
  v.check(a.policy && b.policy && a.policy->trees == b.policy->trees, "policies");
  return v.report(9, "repeated tiger horizon 3 solves are identical");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<bool()>> all{
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9};
  std::vector<int> chosen;
  for (int k = 1; k < argc; ++k) chosen.push_back(std::atoi(argv[k]));
  if (chosen.empty()) {
    for (int k = 1; k <= static_cast<int>(all.size()); ++k) chosen.push_back(k);
  }
  bool ok = true;
  for (int id : chosen) {
    if (id < 1 || id > static_cast<int>(all.size())) {
      std::fprintf(stderr, "no criterion %d\n", id);
      return 2;
    }
    try {
      ok = all[id - 1]() && ok;
    } catch (const decmilp::Error& e) {
      std::printf("criterion %d FAIL: %s\n", id, e.what());
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
