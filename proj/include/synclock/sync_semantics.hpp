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

#ifndef SYNCLOCK_SYNC_SEMANTICS_HPP_
#define SYNCLOCK_SYNC_SEMANTICS_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "synclock/syntax.hpp"
#include "synclock/trace.hpp"

namespace synclock {

/// All processes reachable in one synchronisation step, deduplicated by
/// canonical form, in (sender position, receiver position) order.
std::vector<SyncProcess> sync_successors(const SyncProcess& p);

bool sync_is_successful(const SyncProcess& p);

/// Every (sender, receiver) pairing without deduplication; used to build
/// witness traces with stable positions.
std::vector<std::pair<TraceStep, SyncProcess>> sync_transitions(
    const SyncProcess& p);

/// Fires the pairing of the sender at `sender` with the receiver at
/// `receiver`. Throws std::invalid_argument if the heads do not match.
SyncProcess apply_sync_step(const SyncProcess& p, std::size_t sender,
                            std::size_t receiver);

std::size_t hash_value(const SyncProcess& p);

/// Transition-system view of the synchronous calculus for the explorer.
struct SyncSystem {
  using State = SyncProcess;
  struct StateHash {
    std::size_t operator()(const SyncProcess& p) const { return hash_value(p); }
  };

  void successors(const State& s, std::vector<State>& out) const {
    out = sync_successors(s);
  }
  std::vector<std::pair<TraceStep, State>> transitions(const State& s) const {
    return sync_transitions(s);
  }
  bool is_successful(const State& s) const { return sync_is_successful(s); }
  /// Upper bound on the remaining path length.
  std::size_t depth_bound(const State& s) const { return s.action_count() / 2; }
  std::string render(const State& s) const { return synclock::render(s); }
  State replay(const State& s, const TraceStep& step) const {
    return apply_sync_step(s, step.position, step.partner.value());
  }
};

}  // namespace synclock

#endif  // SYNCLOCK_SYNC_SEMANTICS_HPP_
