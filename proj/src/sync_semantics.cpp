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

#include "synclock/sync_semantics.hpp"

#include <algorithm>
#include <stdexcept>

namespace synclock {

namespace {

bool head_is(const SyncSubprocess& s, SyncAction a) {
  return !s.actions.empty() && s.actions.front() == a;
}

}  // namespace

SyncProcess apply_sync_step(const SyncProcess& p, std::size_t sender,
                            std::size_t receiver) {
  if (sender >= p.size() || receiver >= p.size() || sender == receiver ||
      !head_is(p[sender], SyncAction::Send) ||
      !head_is(p[receiver], SyncAction::Recv)) {
    throw std::invalid_argument("no synchronisation between positions " +
                                std::to_string(sender) + " and " +
                                std::to_string(receiver));
  }
  std::vector<SyncSubprocess> subs = p.subprocesses();
  subs[sender].actions.erase(subs[sender].actions.begin());
  subs[receiver].actions.erase(subs[receiver].actions.begin());
  return SyncProcess(std::move(subs));
}

std::vector<std::pair<TraceStep, SyncProcess>> sync_transitions(
    const SyncProcess& p) {
  std::vector<std::pair<TraceStep, SyncProcess>> out;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (!head_is(p[s], SyncAction::Send)) continue;
    for (std::size_t r = 0; r < p.size(); ++r) {
      if (r == s || !head_is(p[r], SyncAction::Recv)) continue;
      out.emplace_back(TraceStep{s, r, "!?", "-"}, apply_sync_step(p, s, r));
    }
  }
  return out;
}

std::vector<SyncProcess> sync_successors(const SyncProcess& p) {
  std::vector<SyncProcess> out;
  for (auto& [step, next] : sync_transitions(p)) {
    if (std::find(out.begin(), out.end(), next) == out.end()) {
      out.push_back(std::move(next));
    }
  }
  return out;
}

bool sync_is_successful(const SyncProcess& p) { return p.is_successful(); }

std::size_t hash_value(const SyncProcess& p) {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  for (const auto& s : p.subprocesses()) {
    for (auto a : s.actions) mix(static_cast<std::size_t>(a) + 1);
    mix(s.terminator == Terminator::Success ? 7 : 5);
  }
  return h;
}

}  // namespace synclock
