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

#ifndef SYNCLOCK_COMPILED_LOCK_HPP_
#define SYNCLOCK_COMPILED_LOCK_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "synclock/lock_semantics.hpp"
#include "synclock/syntax.hpp"
#include "synclock/trace.hpp"

namespace synclock {

/// Lock-calculus transition system specialised to one initial process.
///
/// Every suffix of every subprocess is interned once and numbered in
/// canonical subprocess order, so a state is a sorted array of suffix ids
/// plus the store bits, and position i in a state is position i of the
/// canonical value-level process. Behaviour is identical to LockSystem;
/// the two are equivalence-tested.
class CompiledLockSystem {
 public:
  static constexpr std::size_t kMaxSubprocesses = 16;

  struct State {
    std::array<std::uint16_t, kMaxSubprocesses> ids{};
    std::uint8_t count = 0;
    std::uint16_t store = 0;

    friend bool operator==(const State& a, const State& b) {
      if (a.count != b.count || a.store != b.store) return false;
      for (std::size_t i = 0; i < a.count; ++i) {
        if (a.ids[i] != b.ids[i]) return false;
      }
      return true;
    }
  };

  struct StateHash {
    std::size_t operator()(const State& s) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (std::uint64_t{s.store} << 8) ^
                        s.count;
      for (std::size_t i = 0; i < s.count; ++i) {
        h ^= s.ids[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      }
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
      return static_cast<std::size_t>(h);
    }
  };

  /// Throws std::length_error for more than kMaxSubprocesses subprocesses.
  CompiledLockSystem(const LockProcess& process, const LockConfig& config);

  State initial() const { return initial_; }
  const LockConfig& config() const { return config_; }

  void successors(const State& s, std::vector<State>& out) const;
  std::vector<std::pair<TraceStep, State>> transitions(const State& s) const;
  bool is_successful(const State& s) const;
  std::size_t depth_bound(const State& s) const;
  std::string render(const State& s) const;
  State replay(const State& s, const TraceStep& step) const;

  LockState decode(const State& s) const;
  /// Number of distinct interned suffixes.
  std::size_t suffix_count() const { return suffixes_.size(); }

  /// Predicate for "every subprocess is terminated" (only 0 or ✓ left).
  bool all_terminated(const State& s) const;

 private:
  struct Suffix {
    LockSubprocess value;
    LockAction head{};
    std::uint16_t next = 0;
    bool has_head = false;
  };

  /// Fires the head at `pos`; returns false if blocked or terminated.
  bool step(const State& s, std::size_t pos, State& out) const;

  LockConfig config_;
  std::vector<Suffix> suffixes_;
  State initial_;
};

}  // namespace synclock

#endif  // SYNCLOCK_COMPILED_LOCK_HPP_
