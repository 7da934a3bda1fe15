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

// Independent reference implementations for tests. Everything here works on
// plain strings and shares no code with the library's semantics.

#ifndef SYNCLOCK_TESTS_ORACLE_HPP_
#define SYNCLOCK_TESTS_ORACLE_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

/// A sync subprocess as text: actions from "!?" followed by '0' or '#'.
using SyncState = std::vector<std::string>;

struct MayMust {
  bool may = false;
  bool must = false;
};

inline bool successful(const SyncState& s) {
  return std::find(s.begin(), s.end(), "#") != s.end();
}

/// Splits "a | b | c" (spaces optional, ✓ not supported) into subprocess
/// strings with an explicit terminator.
inline SyncState split(const std::string& text) {
  SyncState out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty() || (cur.back() != '0' && cur.back() != '#')) cur += '0';
    out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (c == ' ') continue;
    if (c == '|') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

/// Walks every maximal reduction sequence without memoisation. `may` holds
/// if some sequence passes a successful process; `must` if every maximal
/// sequence ends in one.
inline void sync_paths(const SyncState& s, bool seen_success, MayMust& acc,
                       std::size_t& paths) {
  const bool succ_here = seen_success || successful(s);
  bool stepped = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i][0] != '!') continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i || s[j][0] != '?') continue;
      SyncState n = s;
      n[i].erase(0, 1);
      n[j].erase(0, 1);
      stepped = true;
      sync_paths(n, succ_here, acc, paths);
    }
  }
  if (!stepped) {
    ++paths;
    acc.may = acc.may || succ_here;
    acc.must = acc.must && successful(s);
  }
}

inline MayMust sync_classify(const SyncState& s) {
  MayMust acc{false, true};
  std::size_t paths = 0;
  sync_paths(s, false, acc, paths);
  return acc;
}

inline SyncState sorted(SyncState s) {
  std::sort(s.begin(), s.end());
  return s;
}

/// Number of distinct multisets reachable from `s` (including `s`).
inline std::size_t sync_reachable_count(const SyncState& s) {
  std::set<SyncState> seen{sorted(s)};
  std::vector<SyncState> todo{s};
  while (!todo.empty()) {
    SyncState cur = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i][0] != '!') continue;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        if (j == i || cur[j][0] != '?') continue;
        SyncState n = cur;
        n[i].erase(0, 1);
        n[j].erase(0, 1);
        if (seen.insert(sorted(n)).second) todo.push_back(n);
      }
    }
  }
  return seen.size();
}

/// Lock subprocess as a token list ("P1", "T3", ...) plus terminator.
struct LockSub {
  std::vector<std::string> tokens;
  char term = '0';
  bool operator<(const LockSub& o) const {
    return std::tie(tokens, term) < std::tie(o.tokens, o.term);
  }
  bool operator==(const LockSub& o) const {
    return tokens == o.tokens && term == o.term;
  }
};

/// Parses "P1T2 # | T1 0" style text (terminator optional).
inline std::vector<LockSub> lock_split(const std::string& text) {
  std::vector<LockSub> out;
  LockSub cur;
  bool open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ' ') continue;
    if (c == '|') {
      out.push_back(cur);
      cur = LockSub{};
      open = false;
    } else if (c == 'P' || c == 'T') {
      cur.tokens.push_back(text.substr(i, 2));
      ++i;
      open = true;
    } else {
      cur.term = c;
      open = true;
    }
  }
  if (open || out.empty()) out.push_back(cur);
  return out;
}

struct LockOracleState {
  std::vector<LockSub> subs;
  std::string store;  // 'e'/'f' per lock
  bool operator<(const LockOracleState& o) const {
    return std::tie(subs, store) < std::tie(o.subs, o.store);
  }
};

/// Memoised may/must over string states. `pattern` holds 'p' or 't' per
/// lock: 'p' means a put waits on a full cell, 't' that a take waits on
/// an empty one. Put always leaves 'f', take always leaves 'e'.
class LockOracle {
 public:
  explicit LockOracle(std::string pattern) : pattern_(std::move(pattern)) {}

  MayMust classify(LockOracleState s) {
    std::sort(s.subs.begin(), s.subs.end());
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    MayMust r;
    bool success = false;
    for (const auto& u : s.subs) {
      success = success || (u.tokens.empty() && u.term == '#');
    }
    if (success) {
      r = {true, true};
    } else {
      bool any = false;
      r = {false, true};
      for (std::size_t i = 0; i < s.subs.size(); ++i) {
        if (s.subs[i].tokens.empty()) continue;
        const std::string tok = s.subs[i].tokens.front();
        const std::size_t lock = static_cast<std::size_t>(tok[1] - '1');
        const bool put = tok[0] == 'P';
        const char cell = s.store[lock];
        const bool waits = pattern_[lock] == 'p' ? (put && cell == 'f')
                                                 : (!put && cell == 'e');
        if (waits) continue;
        LockOracleState n = s;
        n.subs[i].tokens.erase(n.subs[i].tokens.begin());
        n.store[lock] = put ? 'f' : 'e';
        const MayMust c = classify(n);
        any = true;
        r.may = r.may || c.may;
        r.must = r.must && c.must;
      }
      if (!any) r = {false, false};
    }
    memo_[s] = r;
    return r;
  }

  std::size_t states() const { return memo_.size(); }

  /// Every state reachable from `s`, successful ones expanded too.
  std::size_t reachable_count(LockOracleState s) const {
    std::sort(s.subs.begin(), s.subs.end());
    std::set<LockOracleState> seen{s};
    std::vector<LockOracleState> todo{s};
    while (!todo.empty()) {
      const LockOracleState cur = todo.back();
      todo.pop_back();
      for (std::size_t i = 0; i < cur.subs.size(); ++i) {
        if (cur.subs[i].tokens.empty()) continue;
        const std::string tok = cur.subs[i].tokens.front();
        const std::size_t lock = static_cast<std::size_t>(tok[1] - '1');
        const bool put = tok[0] == 'P';
        const char cell = cur.store[lock];
        const bool waits = pattern_[lock] == 'p' ? (put && cell == 'f')
                                                 : (!put && cell == 'e');
        if (waits) continue;
        LockOracleState n = cur;
        n.subs[i].tokens.erase(n.subs[i].tokens.begin());
        n.store[lock] = put ? 'f' : 'e';
        std::sort(n.subs.begin(), n.subs.end());
        if (seen.insert(n).second) todo.push_back(n);
      }
    }
    return seen.size();
  }

 private:
  std::string pattern_;
  std::map<LockOracleState, MayMust> memo_;
};

}  // namespace oracle

#endif  // SYNCLOCK_TESTS_ORACLE_HPP_
