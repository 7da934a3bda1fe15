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

#include "synclock/lock_semantics.hpp"

#include <algorithm>
#include <stdexcept>

namespace synclock {

std::optional<LockState> apply_lock_step(const LockState& s,
                                         const BlockingPattern& pattern,
                                         std::size_t position) {
  if (position >= s.process.size()) {
    throw std::out_of_range("no subprocess at position " +
                            std::to_string(position));
  }
  const auto& sub = s.process[position];
  if (sub.actions.empty()) return std::nullopt;
  const LockAction head = sub.actions.front();
  if (!lock_enabled(head, s.store, pattern)) return std::nullopt;
  std::vector<LockSubprocess> subs = s.process.subprocesses();
  subs[position].actions.erase(subs[position].actions.begin());
  return LockState{LockProcess(std::move(subs)), lock_effect(head, s.store)};
}

std::vector<std::pair<TraceStep, LockState>> lock_transitions(
    const LockState& s, const BlockingPattern& pattern) {
  std::vector<std::pair<TraceStep, LockState>> out;
  for (std::size_t i = 0; i < s.process.size(); ++i) {
    if (auto next = apply_lock_step(s, pattern, i)) {
      TraceStep step{i, std::nullopt, render(s.process[i].actions.front()),
                     render(next->store)};
      out.emplace_back(std::move(step), std::move(*next));
    }
  }
  return out;
}

std::vector<LockState> lock_successors(const LockState& s,
                                       const BlockingPattern& pattern) {
  std::vector<LockState> out;
  for (auto& [step, next] : lock_transitions(s, pattern)) {
    if (std::find(out.begin(), out.end(), next) == out.end()) {
      out.push_back(std::move(next));
    }
  }
  return out;
}

bool lock_is_successful(const LockState& s) {
  return s.process.is_successful();
}

SoloRunResult lock_solo_run(const LockSubprocess& u, const LockConfig& config) {
  SoloRunResult r;
  Store store = config.initial_store;
  for (const LockAction a : u.actions) {
    if (!lock_enabled(a, store, config.pattern)) {
      r.outcome = SoloRunResult::Outcome::Blocked;
      r.blocked_action = a;
      r.final_store = store;
      return r;
    }
    store = lock_effect(a, store);
    ++r.consumed;
  }
  r.final_store = store;
  return r;
}

std::size_t hash_value(const LockState& s) {
  std::size_t h = 1469598103934665603ull ^ s.store.bits();
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  for (const auto& sub : s.process.subprocesses()) {
    for (auto a : sub.actions) {
      mix((static_cast<std::size_t>(a.op) << 4) + a.index + 1);
    }
    mix(sub.terminator == Terminator::Success ? 97 : 89);
  }
  return h;
}

std::string render(const LockState& s) {
  return render(s.process) + " @ " + render(s.store);
}

LockSystem::State LockSystem::replay(const State& s,
                                     const TraceStep& step) const {
  auto next = apply_lock_step(s, pattern, step.position);
  if (!next) {
    throw std::invalid_argument("trace step at position " +
                                std::to_string(step.position) +
                                " is not enabled");
  }
  return std::move(*next);
}

}  // namespace synclock
