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

#ifndef SYNCLOCK_LOCK_SEMANTICS_HPP_
#define SYNCLOCK_LOCK_SEMANTICS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "synclock/syntax.hpp"
#include "synclock/trace.hpp"

namespace synclock {

struct LockState {
  LockProcess process;
  Store store;

  friend bool operator==(const LockState&, const LockState&) = default;
  friend auto operator<=>(const LockState&, const LockState&) = default;
};

/// Result of running one subprocess alone from an initial store. Solo runs
/// are deterministic: each head is either enabled or blocked.
struct SoloRunResult {
  enum class Outcome { Completed, Blocked };

  std::size_t consumed = 0;
  Outcome outcome = Outcome::Completed;
  /// Set when blocked; `consumed` is then the blocking position.
  std::optional<LockAction> blocked_action;
  Store final_store;

  bool completed() const { return outcome == Outcome::Completed; }
};

/// Whether `a` can fire on `store` under `pattern`.
inline bool lock_enabled(LockAction a, const Store& store,
                         const BlockingPattern& pattern) {
  return !(is_blocking_side(a, pattern) &&
           store[a.index] == blocking_value(pattern, a.index));
}

/// Put always leaves the cell Full and Take always leaves it Empty; the
/// pattern only decides which of the two may wait.
inline Store lock_effect(LockAction a, Store store) {
  store.set(a.index, a.op == LockOp::Put ? Cell::Full : Cell::Empty);
  return store;
}

std::vector<LockState> lock_successors(const LockState& s,
                                       const BlockingPattern& pattern);

bool lock_is_successful(const LockState& s);

/// One entry per enabled subprocess position (identical subprocesses
/// included), in position order.
std::vector<std::pair<TraceStep, LockState>> lock_transitions(
    const LockState& s, const BlockingPattern& pattern);

/// Executes the head of the subprocess at `position`; nullopt if blocked.
std::optional<LockState> apply_lock_step(const LockState& s,
                                         const BlockingPattern& pattern,
                                         std::size_t position);

SoloRunResult lock_solo_run(const LockSubprocess& u, const LockConfig& config);

std::size_t hash_value(const LockState& s);

std::string render(const LockState& s);

/// Reference transition system over value-level lock states.
struct LockSystem {
  using State = LockState;
  struct StateHash {
    std::size_t operator()(const LockState& s) const { return hash_value(s); }
  };

  BlockingPattern pattern;

  void successors(const State& s, std::vector<State>& out) const {
    out = lock_successors(s, pattern);
  }
  std::vector<std::pair<TraceStep, State>> transitions(const State& s) const {
    return lock_transitions(s, pattern);
  }
  bool is_successful(const State& s) const { return lock_is_successful(s); }
  std::size_t depth_bound(const State& s) const {
    return s.process.action_count();
  }
  std::string render(const State& s) const { return synclock::render(s); }
  State replay(const State& s, const TraceStep& step) const;
};

}  // namespace synclock

#endif  // SYNCLOCK_LOCK_SEMANTICS_HPP_
