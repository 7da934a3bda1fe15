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

#ifndef SYNCLOCK_SYNTAX_HPP_
#define SYNCLOCK_SYNTAX_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace synclock {

/// Largest lock count supported by the compact `P<d>`/`T<d>` token syntax.
inline constexpr int kMaxLocks = 9;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class InvalidProcess : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Terminator : std::uint8_t { Nil, Success };

// ---------------------------------------------------------------------------
// Actions

enum class SyncAction : std::uint8_t { Send, Recv };

enum class LockOp : std::uint8_t { Put, Take };

/// A put or take on lock `index` (1-based).
struct LockAction {
  LockOp op = LockOp::Put;
  std::uint8_t index = 1;

  friend constexpr auto operator<=>(const LockAction&,
                                    const LockAction&) = default;
};

constexpr LockAction Put(int i) {
  return {LockOp::Put, static_cast<std::uint8_t>(i)};
}
constexpr LockAction Take(int i) {
  return {LockOp::Take, static_cast<std::uint8_t>(i)};
}

std::string render(SyncAction a);
std::string render(LockAction a);

// ---------------------------------------------------------------------------
// Subprocesses and processes

/// A sequential subprocess: a finite action sequence followed by 0 or the
/// success marker.
///
/// The ordering is the canonical one used for process multisets: shorter
/// sequences first, then token-lexicographic, then Nil before Success.
template <typename Action>
struct Subprocess {
  std::vector<Action> actions;
  Terminator terminator = Terminator::Nil;

  bool is_success() const {
    return actions.empty() && terminator == Terminator::Success;
  }

  friend bool operator==(const Subprocess&, const Subprocess&) = default;

  friend std::strong_ordering operator<=>(const Subprocess& a,
                                          const Subprocess& b) {
    if (auto c = a.actions.size() <=> b.actions.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.actions.size(); ++i) {
      if (auto c = a.actions[i] <=> b.actions[i]; c != 0) return c;
    }
    return a.terminator <=> b.terminator;
  }
};

/// A non-empty multiset of subprocesses, stored sorted.
///
/// Every constructor canonicalizes, so two processes compare equal exactly
/// when they are equal as multisets. `0` subprocesses are kept so that
/// positions stay meaningful in witness traces.
template <typename Action>
class Process {
 public:
  using Sub = Subprocess<Action>;

  explicit Process(std::vector<Sub> subs) : subs_(std::move(subs)) {
    if (subs_.empty()) {
      throw InvalidProcess("a process needs at least one subprocess");
    }
    std::sort(subs_.begin(), subs_.end());
  }
  Process(std::initializer_list<Sub> subs)
      : Process(std::vector<Sub>(subs)) {}

  const std::vector<Sub>& subprocesses() const { return subs_; }
  std::size_t size() const { return subs_.size(); }
  const Sub& operator[](std::size_t i) const { return subs_[i]; }

  bool is_successful() const {
    return std::any_of(subs_.begin(), subs_.end(),
                       [](const Sub& s) { return s.is_success(); });
  }

  std::size_t action_count() const {
    std::size_t n = 0;
    for (const auto& s : subs_) n += s.actions.size();
    return n;
  }

  friend bool operator==(const Process&, const Process&) = default;
  friend auto operator<=>(const Process& a, const Process& b) {
    return a.subs_ <=> b.subs_;
  }

 private:
  std::vector<Sub> subs_;
};

using SyncSubprocess = Subprocess<SyncAction>;
using SyncProcess = Process<SyncAction>;
using LockSubprocess = Subprocess<LockAction>;
using LockProcess = Process<LockAction>;

/// Sorts a raw multiset into its canonical representative.
template <typename Action>
Process<Action> canonicalize(std::vector<Subprocess<Action>> raw) {
  return Process<Action>(std::move(raw));
}

// ---------------------------------------------------------------------------
// Store, blocking pattern, configuration

enum class Cell : std::uint8_t { Empty, Full };
enum class BlockSide : std::uint8_t { PutBlocks, TakeBlocks };

/// k lock cells packed into a bit set (bit i-1 set means cell i is Full).
class Store {
 public:
  Store() = default;
  explicit Store(int k, std::uint16_t full_bits = 0);
  Store(std::initializer_list<Cell> cells);

  int k() const { return k_; }
  std::uint16_t bits() const { return bits_; }

  Cell operator[](int index) const {
    return (bits_ >> (index - 1)) & 1u ? Cell::Full : Cell::Empty;
  }
  void set(int index, Cell c) {
    const auto mask = static_cast<std::uint16_t>(1u << (index - 1));
    bits_ = c == Cell::Full ? (bits_ | mask) : (bits_ & ~mask);
  }

  friend auto operator<=>(const Store&, const Store&) = default;

 private:
  std::uint8_t k_ = 0;
  std::uint16_t bits_ = 0;
};

/// Per-lock blocking side; bit i-1 set means Take blocks on lock i.
class BlockingPattern {
 public:
  BlockingPattern() = default;
  explicit BlockingPattern(int k, std::uint16_t take_bits = 0);
  BlockingPattern(std::initializer_list<BlockSide> sides);

  static BlockingPattern all_put(int k) { return BlockingPattern(k); }

  int k() const { return k_; }
  std::uint16_t bits() const { return bits_; }

  BlockSide operator[](int index) const {
    return (bits_ >> (index - 1)) & 1u ? BlockSide::TakeBlocks
                                       : BlockSide::PutBlocks;
  }
  void set(int index, BlockSide s) {
    const auto mask = static_cast<std::uint16_t>(1u << (index - 1));
    bits_ = s == BlockSide::TakeBlocks ? (bits_ | mask) : (bits_ & ~mask);
  }

  friend auto operator<=>(const BlockingPattern&,
                          const BlockingPattern&) = default;

 private:
  std::uint8_t k_ = 0;
  std::uint16_t bits_ = 0;
};

struct LockConfig {
  int k = 1;
  Store initial_store;
  BlockingPattern pattern;

  LockConfig() = default;
  LockConfig(int k_, Store store, BlockingPattern pat);
  /// All-PutBlocks configuration.
  LockConfig(int k_, Store store)
      : LockConfig(k_, store, BlockingPattern::all_put(k_)) {}

  friend bool operator==(const LockConfig&, const LockConfig&) = default;
};

/// True when `a` is the side of lock a.index that can block.
inline bool is_blocking_side(LockAction a, const BlockingPattern& p) {
  return (a.op == LockOp::Put) == (p[a.index] == BlockSide::PutBlocks);
}

/// The cell value on which the blocking-side action of lock i waits.
inline Cell blocking_value(const BlockingPattern& p, int i) {
  return p[i] == BlockSide::PutBlocks ? Cell::Full : Cell::Empty;
}

// ---------------------------------------------------------------------------
// Parsing and rendering

SyncProcess parse_sync_process(std::string_view text);
LockProcess parse_lock_process(std::string_view text, int k);
/// Parses a bare action sequence such as `P1T3P2T1` (no terminator, no `|`).
std::vector<LockAction> parse_lock_sequence(std::string_view text, int k);
Store parse_store(std::string_view text, int k);
BlockingPattern parse_pattern(std::string_view text, int k);

/// Renders with `" | "` between subprocesses; `compact` drops the spaces.
std::string render(const SyncSubprocess& s);
std::string render(const LockSubprocess& s);
std::string render(const SyncProcess& p, bool compact = false);
std::string render(const LockProcess& p, bool compact = false);
std::string render(std::vector<LockAction> const& seq);
std::string render(const Store& s);
std::string render(const BlockingPattern& p);

}  // namespace synclock

#endif  // SYNCLOCK_SYNTAX_HPP_
