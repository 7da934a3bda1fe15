/*
 * Copyright 2026 The synclock Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SYNCLOCK_CONVERGENCE_HPP_
#define SYNCLOCK_CONVERGENCE_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "synclock/trace.hpp"

namespace synclock {

inline constexpr std::size_t kDefaultStateBudget = 5'000'000;

enum class ConvergenceKind { MustConvergent, MayOnly, MustDivergent };

/// May/must convergence of a state. The combination (may=false, must=true)
/// cannot be constructed.
class ConvergenceClass {
 public:
  constexpr ConvergenceClass() = default;

  static ConvergenceClass from_flags(bool may, bool must) {
    if (must && !may) {
      throw std::logic_error("must-convergence without may-convergence");
    }
    return ConvergenceClass(may, must);
  }
  static constexpr ConvergenceClass must_convergent() { return {true, true}; }
  static constexpr ConvergenceClass may_only() { return {true, false}; }
  static constexpr ConvergenceClass must_divergent() { return {false, false}; }

  constexpr bool may() const { return may_; }
  constexpr bool must() const { return must_; }
  constexpr ConvergenceKind kind() const {
    return must_ ? ConvergenceKind::MustConvergent
                 : (may_ ? ConvergenceKind::MayOnly
                         : ConvergenceKind::MustDivergent);
  }

  friend constexpr bool operator==(ConvergenceClass,
                                   ConvergenceClass) = default;

 private:
  constexpr ConvergenceClass(bool may, bool must) : may_(may), must_(must) {}

  bool may_ = false;
  bool must_ = false;
};

std::string to_string(ConvergenceKind k);
/// e.g. "may-convergent, not must-convergent (MayOnly)".
std::string describe(ConvergenceClass c);

struct ExplorationStats {
  std::size_t states_visited = 0;
  std::size_t max_depth = 0;
  /// Only counted when invariant checking is enabled.
  std::size_t invariant_violations = 0;
};

class StateBudgetExceeded : public std::runtime_error {
 public:
  explicit StateBudgetExceeded(std::size_t budget)
      : std::runtime_error("state budget of " + std::to_string(budget) +
                           " exceeded"),
        budget_(budget) {}
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

struct GraphNode {
  std::string label;
  ConvergenceClass cls;
  bool successful = false;
};

struct GraphEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string label;
};

struct ReductionGraph {
  std::vector<GraphNode> nodes;  // nodes[0] is the initial state
  std::vector<GraphEdge> edges;
};

std::string to_dot(const ReductionGraph& g);

/// Memoised may/must classification over the finite acyclic reduction graph
/// of a transition system.
///
/// `System` provides `State`, `StateHash`, `successors(s, out)`,
/// `transitions(s)`, `is_successful(s)`, `depth_bound(s)` and `render(s)`.
/// Memo entries persist across calls on the same explorer, so witnesses
/// and graphs reuse the classification work.
template <typename System>
class Explorer {
 public:
  using State = typename System::State;

  explicit Explorer(const System& system,
                    std::size_t budget = kDefaultStateBudget,
                    bool check_invariants = false)
      : system_(system), budget_(budget), check_(check_invariants) {}

  ConvergenceClass classify(const State& initial) {
    if (check_) root_bound_ = system_.depth_bound(initial);
    const std::uint8_t f = visit(initial, 0);
    return ConvergenceClass::from_flags(f & kMay, f & kMust);
  }

  const ExplorationStats& stats() const { return stats_; }

  std::optional<Trace> success_witness(const State& initial) {
    if (!classify(initial).may()) return std::nullopt;
    Trace t;
    State s = initial;
    t.states.push_back(system_.render(s));
    while (!system_.is_successful(s)) {
      bool moved = false;
      for (auto& [step, next] : system_.transitions(s)) {
        if (visit(next, 0) & kMay) {
          t.steps.push_back(std::move(step));
          s = std::move(next);
          moved = true;
          break;
        }
      }
      if (!moved) throw std::logic_error("may-convergent state is stuck");
      t.states.push_back(system_.render(s));
    }
    t.terminal = TraceEnd::Successful;
    return t;
  }

  /// Follows non-must-convergent successors down to a deadlocked fail.
  std::optional<Trace> failure_witness(const State& initial) {
    if (classify(initial).must()) return std::nullopt;
    Trace t;
    State s = initial;
    t.states.push_back(system_.render(s));
    for (;;) {
      auto ts = system_.transitions(s);
      if (ts.empty()) break;
      bool moved = false;
      for (auto& [step, next] : ts) {
        if (!(visit(next, 0) & kMust)) {
          t.steps.push_back(std::move(step));
          s = std::move(next);
          moved = true;
          break;
        }
      }
      if (!moved) throw std::logic_error("non-must state has no fail path");
      t.states.push_back(system_.render(s));
    }
    if (system_.is_successful(s)) {
      throw std::logic_error("failure witness ended in a successful state");
    }
    t.terminal = TraceEnd::Deadlocked;
    return t;
  }

  /// The full reachable graph in breadth-first discovery order.
  ReductionGraph graph(const State& initial) {
    classify(initial);
    ReductionGraph g;
    std::unordered_map<State, std::size_t, typename System::StateHash> ids;
    std::deque<State> queue;
    auto node_id = [&](const State& s) {
      auto [it, inserted] = ids.emplace(s, g.nodes.size());
      if (inserted) {
        const std::uint8_t f = visit(s, 0);
        g.nodes.push_back({system_.render(s),
                           ConvergenceClass::from_flags(f & kMay, f & kMust),
                           system_.is_successful(s)});
        queue.push_back(s);
      }
      return it->second;
    };
    node_id(initial);
    while (!queue.empty()) {
      State s = std::move(queue.front());
      queue.pop_front();
      const std::size_t from = ids.at(s);
      std::vector<std::size_t> seen;
      for (auto& [step, next] : system_.transitions(s)) {
        const std::size_t to = node_id(next);
        bool dup = false;
        for (auto x : seen) dup = dup || x == to;
        if (dup) continue;
        seen.push_back(to);
        std::string label = step.action;
        if (step.store != "-") label += " " + step.store;
        g.edges.push_back({from, to, std::move(label)});
      }
    }
    return g;
  }

  /// True if some state satisfying `pred` is reachable from `initial`.
  template <typename Pred>
  bool reachable(const State& initial, Pred&& pred) {
    std::unordered_map<State, bool, typename System::StateHash> seen;
    std::vector<State> stack{initial};
    std::vector<State> succ;
    seen.emplace(initial, true);
    while (!stack.empty()) {
      State s = std::move(stack.back());
      stack.pop_back();
      if (pred(s)) return true;
      system_.successors(s, succ);
      for (auto& n : succ) {
        if (seen.emplace(n, true).second) {
          if (seen.size() > budget_) throw StateBudgetExceeded(budget_);
          stack.push_back(std::move(n));
        }
      }
    }
    stats_.states_visited += seen.size();
    return false;
  }

 private:
  static constexpr std::uint8_t kDone = 1;
  static constexpr std::uint8_t kMay = 2;
  static constexpr std::uint8_t kMust = 4;
  static constexpr std::uint8_t kOnStack = 8;

  std::uint8_t visit(const State& s, std::size_t depth) {
    auto [it, inserted] = memo_.try_emplace(s, kOnStack);
    if (!inserted) {
      if (it->second & kOnStack) throw std::logic_error("cycle in reduction");
      return it->second;
    }
    if (memo_.size() > budget_) throw StateBudgetExceeded(budget_);
    ++stats_.states_visited;
    if (depth > stats_.max_depth) stats_.max_depth = depth;
    if (check_ && depth > root_bound_) ++stats_.invariant_violations;

    std::uint8_t result;
    if (system_.is_successful(s)) {
      result = kDone | kMay | kMust;
      if (check_) check_absorbing(s);
    } else {
      std::vector<State> succ;
      system_.successors(s, succ);
      if (succ.empty()) {
        result = kDone;
      } else {
        bool may = false;
        bool must = true;
        for (const auto& n : succ) {
          const std::uint8_t f = visit(n, depth + 1);
          may = may || (f & kMay);
          must = must && (f & kMust);
        }
        result = static_cast<std::uint8_t>(kDone | (may ? kMay : 0) |
                                           (must ? kMust : 0));
      }
    }
    if (check_ && (result & kMust) && !(result & kMay)) {
      ++stats_.invariant_violations;
    }
    // The map may have rehashed during recursion.
    memo_[s] = result;
    return result;
  }

  void check_absorbing(const State& s) {
    std::vector<State> succ;
    system_.successors(s, succ);
    for (const auto& n : succ) {
      if (!system_.is_successful(n)) ++stats_.invariant_violations;
    }
  }

  const System& system_;
  std::size_t budget_;
  bool check_;
  std::size_t root_bound_ = 0;
  ExplorationStats stats_;
  std::unordered_map<State, std::uint8_t, typename System::StateHash> memo_;
};

template <typename System>
ConvergenceClass classify(const System& system,
                          const typename System::State& initial,
                          std::size_t budget = kDefaultStateBudget,
                          ExplorationStats* stats = nullptr) {
  Explorer<System> ex(system, budget);
  auto c = ex.classify(initial);
  if (stats) *stats = ex.stats();
  return c;
}

/// Replays `trace` from `initial` through `system` and reports whether it
/// reaches a state matching the claimed terminal (successful, or a
/// deadlocked non-successful state).
template <typename System>
bool replay_trace(const System& system, const typename System::State& initial,
                  const Trace& trace) {
  typename System::State s = initial;
  try {
    for (const auto& step : trace.steps) s = system.replay(s, step);
  } catch (const std::exception&) {
    return false;
  }
  if (trace.terminal == TraceEnd::Successful) return system.is_successful(s);
  std::vector<typename System::State> succ;
  system.successors(s, succ);
  return succ.empty() && !system.is_successful(s);
}

}  // namespace synclock

#endif  // SYNCLOCK_CONVERGENCE_HPP_
