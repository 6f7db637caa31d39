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

// decmilp: exact finite-horizon Dec-POMDP planning through a sequence-form
// mixed integer program.
//
//   decmilp solve INSTANCE --horizon K [--variant milp] [--json PATH] ...
//   decmilp evaluate INSTANCE --horizon K --policy PATH
//   decmilp brute INSTANCE --horizon K
//
// Exit codes: 0 optimal, 2 limit reached, 3 input error, 4 internal error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "decmilp/errors.hpp"
#include "decmilp/oracle.hpp"
#include "decmilp/pipeline.hpp"
#include "json.hpp"

namespace {

using namespace decmilp;

constexpr int kExitLimit = 2;
constexpr int kExitInput = 3;
constexpr int kExitInternal = 4;

void print_tree(std::ostream& out, const PolicyTree& tree) {
  out << "[";
  for (std::size_t k = 0; k < tree.actions.size(); ++k) {
    out << (k ? " " : "") << tree.actions[k];
  }
  out << "]";
}

int run_solve(const std::string& path, const SolveOptions& options,
              const std::string& json_path, bool quiet) {
  const DecPomdp model = load_model(path);
  const RunReport report = solve_instance(model, options, path);
  std::printf("status %s\n", to_string(report.status));
  std::printf("value %.10g\n", report.value);
  if (report.bounds.lower) std::printf("lower_bound %.10g\n", *report.bounds.lower);
  if (report.bounds.upper) std::printf("upper_bound %.10g\n", *report.bounds.upper);
  std::printf("nodes %zu lp_iterations %zu seconds %.3f\n", report.nodes,
              report.lp_iterations, report.wall_seconds);
  if (report.dominance) {
    for (std::size_t i = 0; i < report.spaces.size(); ++i) {
      std::printf("agent %zu dominated %zu of %zu sequences\n", i,
                  report.dominance->num_dominated(static_cast<int>(i)),
                  report.spaces[i].size());
    }
  }
  if (report.policy && !quiet) {
    for (std::size_t i = 0; i < report.policy->trees.size(); ++i) {
      std::cout << "agent " << i << " tree ";
      print_tree(std::cout, report.policy->trees[i]);
      std::cout << '\n';
    }
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw Error("cannot write " + json_path);
    out << report_to_json(report).dump(2) << '\n';
  }
  return report.status == MilpStatus::kOptimal ? 0 : kExitLimit;
}

int run_evaluate(const std::string& path, int horizon,
                 const std::string& policy_path) {
  const DecPomdp model = load_model(path);
  const auto spaces = enumerate_all_sequences(model, horizon);
  std::ifstream in(policy_path);
  if (!in) throw Error("cannot read " + policy_path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("policy file: ") + e.what());
  }
  const std::vector<PolicyVector> vectors = policy_from_json(doc, spaces);
  std::vector<PolicyTree> trees;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    trees.push_back(vector_to_tree(vectors[i], spaces[i]));
  }
  const JointSequenceTable table = build_table(model, spaces);
  const double seq_value = sequence_form_value(table, spaces, vectors);
  const double rec_value = tree_value(model, trees);
  std::printf("tree_value %.12g\nsequence_form_value %.12g\n", rec_value,
              seq_value);
  if (std::abs(seq_value - rec_value) > 1e-9) {
    throw SolverError("tree and sequence-form values disagree");
  }
  return 0;
}

int run_brute(const std::string& path, int horizon, std::uint64_t limit) {
  const DecPomdp model = load_model(path);
  const auto spaces = enumerate_all_sequences(model, horizon);
  const auto count = count_joint_policies(spaces);
  if (!count || *count > limit) {
    throw CapacityError("joint policies", count ? *count : UINT64_MAX, limit);
  }
  const JointSequenceTable table = build_table(model, spaces);
  const OracleResult r = brute_force_optimal(spaces, table, limit);
  std::printf("value %.10g\njoint_policies %llu\n", r.value,
              static_cast<unsigned long long>(r.count));
  for (std::size_t i = 0; i < r.trees.size(); ++i) {
    std::cout << "agent " << i << " tree ";
    print_tree(std::cout, r.trees[i]);
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite-horizon Dec-POMDP planner (sequence-form MILP)"};
  app.require_subcommand(1);

  std::string instance;
  int horizon = 1;
  std::string variant = "milp";
  bool use_lower = false;
  bool use_upper = false;
  std::string emit_lp;
  std::string json_path;
  double time_limit = 1800.0;
  std::size_t node_limit = 10'000'000;
  std::size_t log_every = 0;
  bool quiet = false;
  bool single_pass = false;
  bool against_all = false;

  auto* solve = app.add_subcommand("solve", "solve one horizon optimally");
  solve->add_option("instance", instance, "instance file")->required();
  solve->add_option("--horizon,-k", horizon, "planning horizon")->required();
  solve->add_option("--variant", variant, "ilp, milp or milp-pr")
      ->check(CLI::IsMember({"ilp", "milp", "milp-pr"}));
  solve->add_flag("--lower-bound", use_lower,
                  "solve horizon K-1 first and bound the objective below");
  solve->add_flag("--upper-bound", use_upper,
                  "bound the objective by the centralized LP value");
  solve->add_option("--emit-lp", emit_lp, "write the problem in LP format");
  solve->add_option("--json", json_path, "write the run report as JSON");
  solve->add_option("--time-limit", time_limit, "seconds");
  solve->add_option("--node-limit", node_limit, "branch-and-bound nodes");
  solve->add_option("--log-every", log_every, "progress line every N nodes");
  solve->add_flag("--quiet", quiet, "omit the policy trees");
  solve->add_flag("--single-pass", single_pass, "one dominance round only");
  solve->add_flag("--dominance-against-all", against_all,
                  "test dominance on every joint sequence, not survivors");

  std::string policy_path;
  auto* evaluate = app.add_subcommand("evaluate", "value a policy file");
  evaluate->add_option("instance", instance, "instance file")->required();
  evaluate->add_option("--horizon,-k", horizon, "planning horizon")->required();
  evaluate->add_option("--policy", policy_path, "policy JSON")->required();

  std::uint64_t limit = kDefaultOracleLimit;
  auto* brute = app.add_subcommand("brute", "exhaustive search");
  brute->add_option("instance", instance, "instance file")->required();
  brute->add_option("--horizon,-k", horizon, "planning horizon")->required();
  brute->add_option("--limit", limit, "maximum joint policies");

  CLI11_PARSE(app, argc, argv);
  if (horizon < 1) {
    std::cerr << "error: horizon must be at least 1\n";
    return kExitInput;
  }
  try {
    if (*solve) {
      SolveOptions options;
      options.horizon = horizon;
      options.variant = parse_variant(variant);
      options.lower_bound = use_lower;
      options.upper_bound = use_upper;
      if (!emit_lp.empty()) options.emit_lp = emit_lp;
      options.milp.time_limit_seconds = time_limit;
      options.milp.node_limit = node_limit;
      options.milp.log_every = log_every;
      options.milp.log = &std::cerr;
      options.dominance.single_pass = single_pass;
      options.dominance.against_survivors = !against_all;
      return run_solve(instance, options, json_path, quiet);
    }
    if (*evaluate) return run_evaluate(instance, horizon, policy_path);
    return run_brute(instance, horizon, limit);
  } catch (const SolverError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: policy file: " << e.what() << '\n';
    return kExitInput;
  }
}
