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

#include "decmilp/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "decmilp/errors.hpp"

namespace decmilp {

JointIndexer::JointIndexer(std::vector<int> radices)
    : radices_(std::move(radices)), strides_(radices_.size(), 1) {
  size_ = 1;
  for (int i = static_cast<int>(radices_.size()) - 1; i >= 0; --i) {
    strides_[i] = size_;
    size_ *= radices_[i];
  }
}

int JointIndexer::encode(std::span<const int> components) const {
  int flat = 0;
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    flat = flat * radices_[i] + components[i];
  }
  return flat;
}

std::vector<int> JointIndexer::decode(int flat) const {
  std::vector<int> out(radices_.size());
  for (int i = static_cast<int>(radices_.size()) - 1; i >= 0; --i) {
    out[i] = flat % radices_[i];
    flat /= radices_[i];
  }
  return out;
}

DecPomdp::DecPomdp(int num_states, std::vector<int> num_actions,
                   std::vector<int> num_observations)
    : num_states_(num_states),
      num_actions_(std::move(num_actions)),
      num_observations_(std::move(num_observations)),
      actions_(num_actions_),
      observations_(num_observations_) {
  if (num_states_ < 1 || num_actions_.empty() ||
      num_actions_.size() != num_observations_.size()) {
    throw ModelError("model needs at least one state and one agent, with an "
                     "action and observation count per agent");
  }
  for (std::size_t i = 0; i < num_actions_.size(); ++i) {
    if (num_actions_[i] < 1 || num_observations_[i] < 1) {
      throw ModelError("agent " + std::to_string(i) +
                       " needs at least one action and one observation");
    }
  }
  const std::size_t na = actions_.size();
  const std::size_t ns = num_states_;
  transition_.assign(na * ns * ns, 0.0);
  observation_.assign(na * ns * observations_.size(), 0.0);
  reward_.assign(na * ns, 0.0);
  initial_belief_.assign(ns, 0.0);
}

void DecPomdp::set_initial_belief(std::vector<double> b) {
  if (static_cast<int>(b.size()) != num_states_) {
    throw ModelError("initial belief has " + std::to_string(b.size()) +
                     " entries, expected " + std::to_string(num_states_));
  }
  initial_belief_ = std::move(b);
}

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::vector<Violation> validate_model(const DecPomdp& model) {
  std::vector<Violation> out;
  const int ns = model.num_states();
  const int no = model.num_joint_observations();
  for (int a = 0; a < model.num_joint_actions(); ++a) {
    for (int s = 0; s < ns; ++s) {
      double sum = 0.0;
      for (int s2 = 0; s2 < ns; ++s2) {
        const double p = model.transition(a, s, s2);
        if (!(p >= 0.0 && p <= 1.0)) {
          out.push_back({"T[a=" + std::to_string(a) + "][s=" +
                             std::to_string(s) + "][s'=" + std::to_string(s2) +
                             "]",
                         "probability " + fmt_double(p) + " outside [0,1]"});
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kProbabilityTolerance) {
        out.push_back(
            {"T[a=" + std::to_string(a) + "][s=" + std::to_string(s) + "]",
             "row sum " + fmt_double(sum) + " != 1"});
      }
    }
  }
  for (int a = 0; a < model.num_joint_actions(); ++a) {
    for (int s2 = 0; s2 < ns; ++s2) {
      double sum = 0.0;
      for (int o = 0; o < no; ++o) {
        const double p = model.observation(a, s2, o);
        if (!(p >= 0.0 && p <= 1.0)) {
          out.push_back({"Z[a=" + std::to_string(a) + "][s'=" +
                             std::to_string(s2) + "][o=" + std::to_string(o) +
                             "]",
                         "probability " + fmt_double(p) + " outside [0,1]"});
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kProbabilityTolerance) {
        out.push_back(
            {"Z[a=" + std::to_string(a) + "][s'=" + std::to_string(s2) + "]",
             "row sum " + fmt_double(sum) + " != 1"});
      }
    }
  }
  for (int a = 0; a < model.num_joint_actions(); ++a) {
    for (int s = 0; s < ns; ++s) {
      if (!std::isfinite(model.reward(a, s))) {
        out.push_back(
            {"R[a=" + std::to_string(a) + "][s=" + std::to_string(s) + "]",
             "reward is not finite"});
      }
    }
  }
  double sum = 0.0;
  for (int s = 0; s < ns; ++s) {
    const double p = model.initial_belief()[s];
    if (!(p >= 0.0 && p <= 1.0)) {
      out.push_back({"b0[s=" + std::to_string(s) + "]",
                     "probability " + fmt_double(p) + " outside [0,1]"});
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbabilityTolerance) {
    out.push_back({"b0", "belief sum " + fmt_double(sum) + " != 1"});
  }
  return out;
}

namespace {

struct Token {
  std::string_view text;
  int column;
};

class InstanceParser {
 public:
  explicit InstanceParser(std::string_view text) : text_(text) {}

  DecPomdp run() {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      ++line_no;
      line_ = line_no;
      handle_line(text_.substr(pos, end - pos));
      if (end == text_.size()) break;
      pos = end + 1;
    }
    ++line_;
    require_header(1);
    if (!have_start_) fail("missing 'start:' line", 1);
    auto violations = validate_model(*model_);
    if (!violations.empty()) {
      std::string msg = "invalid model:";
      for (const auto& v : violations) {
        msg += "\n  " + v.location + ": " + v.message;
      }
      throw ModelError(msg);
    }
    return std::move(*model_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg, int column) const {
    throw ParseError(msg, line_, column);
  }

  static std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                                 line[i] == '\r')) {
        ++i;
      }
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
             line[j] != '\r') {
        ++j;
      }
      out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    return out;
  }

  long parse_int(const Token& t) const {
    long v = 0;
    auto [ptr, ec] =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail("expected an integer, got '" + std::string(t.text) + "'", t.column);
    }
    return v;
  }

  double parse_real(const Token& t) const {
    double v = 0;
    auto [ptr, ec] =
        std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() ||
        !std::isfinite(v)) {
      fail("expected a real number, got '" + std::string(t.text) + "'",
           t.column);
    }
    return v;
  }

  int parse_index(const Token& t, int bound, const char* what) const {
    const long v = parse_int(t);
    if (v < 0 || v >= bound) {
      fail(std::string(what) + " index " + std::to_string(v) +
               " out of range [0, " + std::to_string(bound) + ")",
           t.column);
    }
    return static_cast<int>(v);
  }

  std::vector<int> parse_counts(const std::vector<Token>& toks) const {
    std::vector<int> out;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      const long v = parse_int(toks[i]);
      if (v < 1) fail("count must be positive", toks[i].column);
      out.push_back(static_cast<int>(v));
    }
    return out;
  }

  void expect_arity(const std::vector<Token>& toks, std::size_t n) const {
    if (toks.size() != n + 1) {
      const int col = toks.size() > n + 1 ? toks[n + 1].column
                                          : toks.back().column +
                                                static_cast<int>(
                                                    toks.back().text.size());
      fail("'" + std::string(toks[0].text) + "' expects " + std::to_string(n) +
               " values, got " + std::to_string(toks.size() - 1),
           col);
    }
  }

  void require_header(int column) {
    if (model_) return;
    if (agents_ < 0) fail("missing 'agents:' line", column);
    if (states_ < 0) fail("missing 'states:' line", column);
    if (actions_.empty()) fail("missing 'actions:' line", column);
    if (observations_.empty()) fail("missing 'observations:' line", column);
    model_.emplace(states_, actions_, observations_);
    seen_t_.assign(static_cast<std::size_t>(model_->num_joint_actions()) *
                       states_ * states_,
                   false);
    seen_o_.assign(static_cast<std::size_t>(model_->num_joint_actions()) *
                       states_ * model_->num_joint_observations(),
                   false);
    seen_r_.assign(static_cast<std::size_t>(model_->num_joint_actions()) *
                       states_,
                   false);
    if (have_start_) model_->set_initial_belief(start_);
  }

  void handle_line(std::string_view raw) {
    const std::size_t hash = raw.find('#');
    const std::string_view line = raw.substr(0, hash);
    const std::vector<Token> toks = tokenize(line);
    if (toks.empty()) return;
    const std::string_view key = toks[0].text;
    if (key == "agents:") {
      if (agents_ >= 0) fail("duplicate 'agents:' line", toks[0].column);
      expect_arity(toks, 1);
      const long n = parse_int(toks[1]);
      if (n < 1) fail("agent count must be positive", toks[1].column);
      agents_ = static_cast<int>(n);
    } else if (key == "states:") {
      if (states_ >= 0) fail("duplicate 'states:' line", toks[0].column);
      expect_arity(toks, 1);
      const long n = parse_int(toks[1]);
      if (n < 1) fail("state count must be positive", toks[1].column);
      states_ = static_cast<int>(n);
    } else if (key == "actions:" || key == "observations:") {
      if (agents_ < 0) fail("'agents:' must precede '" + std::string(key) + "'",
                            toks[0].column);
      auto& target = key == "actions:" ? actions_ : observations_;
      if (!target.empty()) {
        fail("duplicate '" + std::string(key) + "' line", toks[0].column);
      }
      expect_arity(toks, static_cast<std::size_t>(agents_));
      target = parse_counts(toks);
    } else if (key == "start:") {
      if (states_ < 0) fail("'states:' must precede 'start:'", toks[0].column);
      if (have_start_) fail("duplicate 'start:' line", toks[0].column);
      expect_arity(toks, static_cast<std::size_t>(states_));
      for (std::size_t i = 1; i < toks.size(); ++i) {
        start_.push_back(parse_real(toks[i]));
      }
      have_start_ = true;
      if (model_) model_->set_initial_belief(start_);
    } else if (key == "T:") {
      require_header(toks[0].column);
      expect_arity(toks, 4);
      const int a = parse_index(toks[1], model_->num_joint_actions(),
                                "joint action");
      const int s = parse_index(toks[2], states_, "state");
      const int s2 = parse_index(toks[3], states_, "state");
      const double p = parse_real(toks[4]);
      auto seen = seen_t_.begin() +
                  (static_cast<std::ptrdiff_t>(a) * states_ + s) * states_ + s2;
      if (*seen) {
        fail("duplicate T entry for (a=" + std::to_string(a) + ", s=" +
                 std::to_string(s) + ", s'=" + std::to_string(s2) + ")",
             toks[0].column);
      }
      *seen = true;
      model_->set_transition(a, s, s2, p);
    } else if (key == "O:") {
      require_header(toks[0].column);
      expect_arity(toks, 4);
      const int a = parse_index(toks[1], model_->num_joint_actions(),
                                "joint action");
      const int s2 = parse_index(toks[2], states_, "state");
      const int o = parse_index(toks[3], model_->num_joint_observations(),
                                "joint observation");
      const double p = parse_real(toks[4]);
      auto seen = seen_o_.begin() +
                  (static_cast<std::ptrdiff_t>(a) * states_ + s2) *
                      model_->num_joint_observations() +
                  o;
      if (*seen) {
        fail("duplicate O entry for (a=" + std::to_string(a) + ", s'=" +
                 std::to_string(s2) + ", o=" + std::to_string(o) + ")",
             toks[0].column);
      }
      *seen = true;
      model_->set_observation(a, s2, o, p);
    } else if (key == "R:") {
      require_header(toks[0].column);
      expect_arity(toks, 3);
      const int a = parse_index(toks[1], model_->num_joint_actions(),
                                "joint action");
      const int s = parse_index(toks[2], states_, "state");
      const double r = parse_real(toks[3]);
      auto seen = seen_r_.begin() + static_cast<std::ptrdiff_t>(a) * states_ + s;
      if (*seen) {
        fail("duplicate R entry for (a=" + std::to_string(a) + ", s=" +
                 std::to_string(s) + ")",
             toks[0].column);
      }
      *seen = true;
      model_->set_reward(a, s, r);
    } else {
      fail("unknown keyword '" + std::string(key) + "'", toks[0].column);
    }
  }

  std::string_view text_;
  int line_ = 0;
  int agents_ = -1;
  int states_ = -1;
  std::vector<int> actions_;
  std::vector<int> observations_;
  std::vector<double> start_;
  bool have_start_ = false;
  std::optional<DecPomdp> model_;
  std::vector<bool> seen_t_;
  std::vector<bool> seen_o_;
  std::vector<bool> seen_r_;
};

}  // namespace

DecPomdp parse_model(std::string_view text) {
  return InstanceParser(text).run();
}

DecPomdp load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  } catch (const ModelError& e) {
    throw ModelError(path + ": " + e.what());
  }
}

double belief_update_into(const DecPomdp& model, std::span<const double> belief,
                          int joint_action, int joint_observation,
                          std::span<double> next) {
  const int ns = model.num_states();
  double prob = 0.0;
  for (int s2 = 0; s2 < ns; ++s2) {
    const double z = model.observation(joint_action, s2, joint_observation);
    double mass = 0.0;
    if (z != 0.0) {
      for (int s = 0; s < ns; ++s) {
        mass += belief[s] * model.transition(joint_action, s, s2);
      }
      mass *= z;
    }
    next[s2] = mass;
    prob += mass;
  }
  if (prob > 0.0) {
    for (int s2 = 0; s2 < ns; ++s2) next[s2] /= prob;
  }
  return prob;
}

BeliefUpdate belief_update(const DecPomdp& model, std::span<const double> belief,
                           int joint_action, int joint_observation) {
  BeliefState next(model.num_states());
  BeliefUpdate out;
  out.probability =
      belief_update_into(model, belief, joint_action, joint_observation, next);
  if (out.probability > 0.0) out.next = std::move(next);
  return out;
}

double expected_reward(const DecPomdp& model, std::span<const double> belief,
                       int joint_action) {
  double r = 0.0;
  for (int s = 0; s < model.num_states(); ++s) {
    r += belief[s] * model.reward(joint_action, s);
  }
  return r;
}

}  // namespace decmilp
