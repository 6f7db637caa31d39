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

#include "decmilp/pipeline.hpp"

#include <cmath>
#include <fstream>

#include "decmilp/errors.hpp"

namespace decmilp {

RunReport solve_instance(const DecPomdp& model, const SolveOptions& options,
                         const std::string& instance) {
  if (options.horizon < 1) throw Error("horizon must be at least 1");
  RunReport report;
  report.instance = instance;
  report.horizon = options.horizon;
  report.variant = options.variant;

  if (options.lower_bound && options.horizon > 1) {
    SolveOptions shorter = options;
    shorter.horizon = options.horizon - 1;
    shorter.lower_bound = false;
    shorter.upper_bound = false;
    shorter.emit_lp.reset();
    const RunReport previous = solve_instance(model, shorter, instance);
    if (previous.status != MilpStatus::kOptimal) {
      throw Error("horizon " + std::to_string(shorter.horizon) +
                  " solve for the lower bound did not reach optimality");
    }
    report.bounds.lower = lower_bound(previous.value, model);
    report.bounds.lower_source =
        "V(" + std::to_string(shorter.horizon) + ") + max-min reward";
  }

  report.spaces = enumerate_all_sequences(model, options.horizon);
  const auto& spaces = report.spaces;
  const JointSequenceTable table = build_table(model, spaces);

  if (options.upper_bound) {
    report.bounds.upper =
        pomdp_upper_bound(model, table, spaces, options.milp.lp);
    report.bounds.upper_source = "centralized LP, horizon " +
                                 std::to_string(options.horizon);
  }

  const DominatedSets* dominated = nullptr;
  if (options.variant == FormulationVariant::kMilpPrDec) {
    report.dominance = eliminate(spaces, table, options.dominance);
    dominated = &report.dominance->dominated;
  }
  SequenceFormMilp milp = build_formulation(model, spaces, table,
                                            options.variant, dominated,
                                            options.formulation);
  add_bounds(milp, report.bounds.lower, report.bounds.upper);
  report.num_variables = milp.problem.num_variables();
  report.num_binaries = milp.problem.num_binaries();
  report.num_rows = milp.problem.num_rows();
  if (options.emit_lp) {
    std::ofstream out(*options.emit_lp);
    if (!out) throw Error("cannot write " + *options.emit_lp);
    write_lp_format(milp.problem, out);
  }

  MilpOptions mopt = options.milp;
  if (options.rounding_heuristic && !mopt.heuristic) {
    mopt.heuristic = rounding_heuristic(milp, spaces);
  }
  const MilpSolution sol = solve_milp(milp.problem, mopt);
  report.status = sol.status;
  report.value = sol.objective;
  report.best_bound = sol.best_bound;
  report.root_lp = sol.root_bound;
  report.nodes = sol.nodes;
  report.lp_iterations = sol.lp_iterations;
  report.wall_seconds = sol.wall_seconds;
  if (sol.has_incumbent) {
    report.policy =
        extract_joint_policy(milp, spaces, table, sol.values, sol.objective);
    report.tree_value = tree_value(model, report.policy->trees);
    if (std::abs(report.tree_value - report.value) > 1e-6) {
      throw SolverError("reported value " + std::to_string(report.value) +
                        " differs from the policy's tree value " +
                        std::to_string(report.tree_value));
    }
  }
  return report;
}

nlohmann::json policy_to_json(const SequenceSpace& space, const PolicyVector& x,
                              const PolicyTree& tree) {
  nlohmann::json seqs = nlohmann::json::array();
  for (std::size_t idx = 0; idx < x.values.size(); ++idx) {
    if (x.values[idx] != 0.0) seqs.push_back(to_string(space.at(idx)));
  }
  return {{"agent", x.agent}, {"sequences", seqs}, {"tree", tree.actions}};
}

nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json j;
  j["instance"] = r.instance;
  j["horizon"] = r.horizon;
  j["variant"] = to_string(r.variant);
  j["status"] = to_string(r.status);
  j["value"] = r.value;
  j["tree_value"] = r.tree_value;
  j["best_bound"] = r.best_bound;
  nlohmann::json b = nlohmann::json::object();
  if (r.bounds.lower) {
    b["lower"] = *r.bounds.lower;
    b["lower_source"] = r.bounds.lower_source;
  }
  if (r.bounds.upper) {
    b["upper"] = *r.bounds.upper;
    b["upper_source"] = r.bounds.upper_source;
  }
  j["bounds"] = b;
  j["problem"] = {{"variables", r.num_variables},
                  {"binaries", r.num_binaries},
                  {"rows", r.num_rows}};
  j["solver"] = {{"nodes", r.nodes},
                 {"lp_iterations", r.lp_iterations},
                 {"root_lp", r.root_lp},
                 {"wall_seconds", r.wall_seconds}};
  if (r.policy) {
    nlohmann::json agents = nlohmann::json::array();
    for (std::size_t i = 0; i < r.policy->vectors.size(); ++i) {
      agents.push_back(
          policy_to_json(r.spaces[i], r.policy->vectors[i], r.policy->trees[i]));
    }
    j["policy"] = agents;
  }
  if (r.dominance) {
    nlohmann::json d = nlohmann::json::array();
    for (std::size_t i = 0; i < r.spaces.size(); ++i) {
      const int agent = static_cast<int>(i);
      nlohmann::json rounds = nlohmann::json::array();
      for (const DominanceRound& round : r.dominance->rounds) {
        if (round.agent == agent) {
          rounds.push_back(
              {{"round", round.round}, {"removed", round.removed.size()}});
        }
      }
      d.push_back({{"agent", agent},
                   {"removed_by_length", r.dominance->count_by_length[i]},
                   {"test_dominated", r.dominance->test_dominated[i]},
                   {"full_length", r.spaces[i].slice_size(r.horizon)},
                   {"rounds", rounds}});
    }
    j["dominance"] = d;
  }
  return j;
}

std::vector<PolicyVector> policy_from_json(
    const nlohmann::json& doc, const std::vector<SequenceSpace>& spaces) {
  const nlohmann::json& list =
      doc.is_object() && doc.contains("policy") ? doc["policy"] : doc;
  if (!list.is_array() || list.size() != spaces.size()) {
    throw Error("policy must list one entry per agent (" +
                std::to_string(spaces.size()) + ")");
  }
  std::vector<PolicyVector> out(spaces.size());
  std::vector<bool> seen(spaces.size(), false);
  for (const auto& entry : list) {
    const int agent = entry.at("agent").get<int>();
    if (agent < 0 || agent >= static_cast<int>(spaces.size()) || seen[agent]) {
      throw Error("bad or repeated agent " + std::to_string(agent));
    }
    seen[agent] = true;
    const SequenceSpace& space = spaces[agent];
    PolicyVector x{agent, std::vector<double>(space.size(), 0.0)};
    for (const auto& s : entry.at("sequences")) {
      const Sequence seq = parse_sequence(s.get<std::string>());
      if (seq.length() > space.horizon()) {
        throw Error("sequence '" + s.get<std::string>() +
                    "' is longer than the horizon");
      }
      x.values[space.index_of(seq)] = 1.0;
    }
    const auto row = violated_row(policy_constraints(space), x.values);
    if (row) {
      throw StructureError("policy of agent " + std::to_string(agent) +
                           " violates policy constraint row " +
                           std::to_string(*row));
    }
    out[agent] = std::move(x);
  }
  return out;
}

}  // namespace decmilp
