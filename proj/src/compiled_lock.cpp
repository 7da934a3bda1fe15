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

#include "synclock/compiled_lock.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace synclock {

CompiledLockSystem::CompiledLockSystem(const LockProcess& process,
                                       const LockConfig& config)
    : config_(config) {
  if (process.size() > kMaxSubprocesses) {
    throw std::length_error("compiled lock system supports at most " +
                            std::to_string(kMaxSubprocesses) +
                            " subprocesses");
  }
  // Collect suffixes in canonical order; std::map orders them for us.
  std::map<LockSubprocess, std::uint16_t> index;
  for (const auto& sub : process.subprocesses()) {
    LockSubprocess suffix = sub;
    for (;;) {
      index.emplace(suffix, 0);
      if (suffix.actions.empty()) break;
      suffix.actions.erase(suffix.actions.begin());
    }
  }
  if (index.size() > 0xFFFF) throw std::length_error("too many suffixes");
  suffixes_.reserve(index.size());
  for (auto& [sub, id] : index) {
    id = static_cast<std::uint16_t>(suffixes_.size());
    Suffix s;
    s.value = sub;
    suffixes_.push_back(std::move(s));
  }
  for (auto& s : suffixes_) {
    if (s.value.actions.empty()) continue;
    s.has_head = true;
    s.head = s.value.actions.front();
    LockSubprocess tail = s.value;
    tail.actions.erase(tail.actions.begin());
    s.next = index.at(tail);
  }
  initial_.count = static_cast<std::uint8_t>(process.size());
  initial_.store = config.initial_store.bits();
  for (std::size_t i = 0; i < process.size(); ++i) {
    initial_.ids[i] = index.at(process[i]);
  }
}

bool CompiledLockSystem::step(const State& s, std::size_t pos,
                              State& out) const {
  const Suffix& suf = suffixes_[s.ids[pos]];
  if (!suf.has_head) return false;
  const LockAction a = suf.head;
  const auto mask = static_cast<std::uint16_t>(1u << (a.index - 1));
  const bool full = s.store & mask;
  const bool put = a.op == LockOp::Put;
  const bool take_blocks = config_.pattern.bits() & mask;
  // Put waits on Full under PutBlocks; Take waits on Empty under TakeBlocks.
  if (put && !take_blocks && full) return false;
  if (!put && take_blocks && !full) return false;
  out = s;
  out.store = put ? (s.store | mask) : (s.store & ~mask);
  // The tail sorts before its parent (it is shorter), so bubble it left.
  std::size_t i = pos;
  const std::uint16_t next = suf.next;
  while (i > 0 && out.ids[i - 1] > next) {
    out.ids[i] = out.ids[i - 1];
    --i;
  }
  out.ids[i] = next;
  return true;
}

void CompiledLockSystem::successors(const State& s,
                                    std::vector<State>& out) const {
  out.clear();
  State next;
  for (std::size_t i = 0; i < s.count; ++i) {
    // Identical subprocesses give identical successors.
    if (i > 0 && s.ids[i] == s.ids[i - 1]) continue;
    if (step(s, i, next)) out.push_back(next);
  }
}

std::vector<std::pair<TraceStep, CompiledLockSystem::State>>
CompiledLockSystem::transitions(const State& s) const {
  std::vector<std::pair<TraceStep, State>> out;
  State next;
  for (std::size_t i = 0; i < s.count; ++i) {
    if (step(s, i, next)) {
      TraceStep st{i, std::nullopt,
                   synclock::render(suffixes_[s.ids[i]].head),
                   synclock::render(Store(config_.k, next.store))};
      out.emplace_back(std::move(st), next);
    }
  }
  return out;
}

bool CompiledLockSystem::is_successful(const State& s) const {
  for (std::size_t i = 0; i < s.count; ++i) {
    const Suffix& suf = suffixes_[s.ids[i]];
    // Ids are in canonical order: once past length 0 nothing can match.
    if (suf.has_head) return false;
    if (suf.value.terminator == Terminator::Success) return true;
  }
  return false;
}

bool CompiledLockSystem::all_terminated(const State& s) const {
  for (std::size_t i = 0; i < s.count; ++i) {
    if (suffixes_[s.ids[i]].has_head) return false;
  }
  return true;
}

std::size_t CompiledLockSystem::depth_bound(const State& s) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < s.count; ++i) {
    n += suffixes_[s.ids[i]].value.actions.size();
  }
  return n;
}

LockState CompiledLockSystem::decode(const State& s) const {
  std::vector<LockSubprocess> subs;
  subs.reserve(s.count);
  for (std::size_t i = 0; i < s.count; ++i) {
    subs.push_back(suffixes_[s.ids[i]].value);
  }
  return LockState{LockProcess(std::move(subs)), Store(config_.k, s.store)};
}

std::string CompiledLockSystem::render(const State& s) const {
  return synclock::render(decode(s));
}

CompiledLockSystem::State CompiledLockSystem::replay(
    const State& s, const TraceStep& step_) const {
  State next;
  if (step_.position >= s.count || !step(s, step_.position, next)) {
    throw std::invalid_argument("trace step at position " +
                                std::to_string(step_.position) +
                                " is not enabled");
  }
  return next;
}

}  // namespace synclock
