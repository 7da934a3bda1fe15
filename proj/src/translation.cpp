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

#include "synclock/translation.hpp"

#include <stdexcept>

#include "synclock/compiled_lock.hpp"
#include "synclock/lock_semantics.hpp"

namespace synclock {

Translation make_translation(std::string_view send, std::string_view recv,
                             int k, std::string_view store,
                             std::string_view pattern) {
  Translation t;
  t.tau_send = parse_lock_sequence(send, k);
  t.tau_recv = parse_lock_sequence(recv, k);
  if (t.tau_send.empty() || t.tau_recv.empty()) {
    throw ParseError("translation images must be non-empty", 0);
  }
  t.config = LockConfig(k, parse_store(store, k),
                        pattern.empty() ? BlockingPattern::all_put(k)
                                        : parse_pattern(pattern, k));
  return t;
}

std::string render(const Translation& t) {
  return "(" + render(t.tau_send) + ", " + render(t.tau_recv) +
         ") k=" + std::to_string(t.config.k) +
         " store=" + render(t.config.initial_store) +
         " pattern=" + render(t.config.pattern);
}

LockProcess apply_translation(const Translation& t, const SyncProcess& p) {
  std::vector<LockSubprocess> subs;
  subs.reserve(p.size());
  for (const auto& s : p.subprocesses()) {
    LockSubprocess out;
    out.terminator = s.terminator;
    for (SyncAction a : s.actions) {
      const auto& image = a == SyncAction::Send ? t.tau_send : t.tau_recv;
      out.actions.insert(out.actions.end(), image.begin(), image.end());
    }
    subs.push_back(std::move(out));
  }
  return LockProcess(std::move(subs));
}

std::string render(const BlockingType& b) {
  switch (b.kind) {
    case BlockingType::Kind::NonBlocking: return "N";
    case BlockingType::Kind::Single: return "S" + std::to_string(b.index);
    case BlockingType::Kind::Double: return "D" + std::to_string(b.index);
  }
  return "?";
}

BlockingType classify_blocking(std::span<const LockAction> seq,
                               const LockConfig& config) {
  LockSubprocess u{{seq.begin(), seq.end()}, Terminator::Nil};
  const SoloRunResult run = lock_solo_run(u, config);
  if (run.completed()) return {};
  const std::size_t at = run.consumed;
  const int i = run.blocked_action->index;
  for (std::size_t j = at; j-- > 0;) {
    if (seq[j].index != i) continue;
    // The nearest earlier i-symbol must be on the blocking side: the other
    // side would have left the cell in the enabling state.
    if (!is_blocking_side(seq[j], config.pattern)) {
      throw std::logic_error("solo run blocked after a non-blocking " +
                             render(seq[j]));
    }
    return {BlockingType::Kind::Double, i};
  }
  return {BlockingType::Kind::Single, i};
}

std::pair<BlockingType, BlockingType> translation_blocking_type(
    const Translation& t) {
  return {classify_blocking(t.tau_send, t.config),
          classify_blocking(t.tau_recv, t.config)};
}

namespace {

LockAction flip_action(LockAction a, std::uint16_t flips) {
  if (flips & (1u << (a.index - 1))) {
    a.op = a.op == LockOp::Put ? LockOp::Take : LockOp::Put;
  }
  return a;
}

LockConfig flip_config(const LockConfig& c, std::uint16_t flips) {
  const std::uint16_t mask = static_cast<std::uint16_t>((1u << c.k) - 1);
  flips &= mask;
  return LockConfig(
      c.k, Store(c.k, static_cast<std::uint16_t>(c.initial_store.bits() ^ flips)),
      BlockingPattern(c.k, static_cast<std::uint16_t>(c.pattern.bits() ^ flips)));
}

}  // namespace

std::pair<LockProcess, LockConfig> sigma_flip(const LockProcess& p,
                                              const LockConfig& config,
                                              std::uint16_t flips) {
  std::vector<LockSubprocess> subs = p.subprocesses();
  for (auto& s : subs) {
    for (auto& a : s.actions) a = flip_action(a, flips);
  }
  return {LockProcess(std::move(subs)), flip_config(config, flips)};
}

Translation sigma_flip(const Translation& t, std::uint16_t flips) {
  Translation out = t;
  for (auto& a : out.tau_send) a = flip_action(a, flips);
  for (auto& a : out.tau_recv) a = flip_action(a, flips);
  out.config = flip_config(t.config, flips);
  return out;
}

bool filter_count_inequality(const Translation& t) {
  std::vector<int> blocking(t.config.k + 1, 0);
  std::vector<int> free(t.config.k + 1, 0);
  auto count = [&](const std::vector<LockAction>& seq) {
    for (auto a : seq) {
      (is_blocking_side(a, t.config.pattern) ? blocking : free)[a.index]++;
    }
  };
  count(t.tau_send);
  count(t.tau_recv);
  for (int i = 1; i <= t.config.k; ++i) {
    if (blocking[i] > free[i]) return false;
  }
  return true;
}

bool filter_joint_consumption(const Translation& t, std::size_t budget) {
  const LockProcess both{LockSubprocess{t.tau_send, Terminator::Nil},
                         LockSubprocess{t.tau_recv, Terminator::Nil}};
  CompiledLockSystem sys(both, t.config);
  Explorer<CompiledLockSystem> ex(sys, budget);
  return ex.reachable(sys.initial(), [&sys](const auto& s) {
    return sys.all_terminated(s);
  });
}

bool filter_solo_blocking(const Translation& t) {
  const auto [send, recv] = translation_blocking_type(t);
  return send.kind != BlockingType::Kind::NonBlocking &&
         recv.kind != BlockingType::Kind::NonBlocking;
}

bool check_store_consistency(std::span<const LockAction> seq,
                             const LockConfig& config) {
  const BlockingType b = classify_blocking(seq, config);
  if (b.kind == BlockingType::Kind::NonBlocking) return true;
  const int i = b.index;
  const Cell initial = config.initial_store[i];
  const Cell waits_on = blocking_value(config.pattern, i);
  if (b.kind == BlockingType::Kind::Single) return initial == waits_on;
  for (auto a : seq) {
    if (a.index != i) continue;
    return !is_blocking_side(a, config.pattern) || initial != waits_on;
  }
  return false;
}

bool FilterReport::all_passed() const {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

std::string FilterReport::first_failure() const {
  for (const auto& r : results) {
    if (!r.passed) return r.name;
  }
  return {};
}

FilterReport run_filters(const Translation& t, std::size_t budget,
                         bool run_all) {
  FilterReport rep;
  {
    const auto [s, r] = translation_blocking_type(t);
    const bool ok = filter_solo_blocking(t);
    rep.results.push_back(
        {"solo-blocking", ok,
         ok ? "both images block when run alone"
            : "blocking types (" + render(s) + ", " + render(r) +
                  "): a solo run completes"});
    if (!ok && !run_all) return rep;
  }
  {
    const bool ok = filter_count_inequality(t);
    rep.results.push_back(
        {"count-inequality", ok,
         ok ? "blocking-side counts do not exceed the other side"
            : "some lock has more blocking-side than non-blocking-side "
              "symbols"});
    if (!ok && !run_all) return rep;
  }
  {
    const bool ok = filter_joint_consumption(t, budget);
    rep.results.push_back(
        {"joint-consumption", ok,
         ok ? "send|recv can be executed completely"
            : "no execution of send|recv consumes every symbol"});
  }
  return rep;
}

}  // namespace synclock
