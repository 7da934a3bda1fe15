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

#ifndef SYNCLOCK_TRANSLATION_HPP_
#define SYNCLOCK_TRANSLATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "synclock/convergence.hpp"
#include "synclock/syntax.hpp"

namespace synclock {

/// A compositional translation, fixed by the images of `!` and `?` and the
/// target configuration.
struct Translation {
  std::vector<LockAction> tau_send;
  std::vector<LockAction> tau_recv;
  LockConfig config;

  std::size_t length() const { return tau_send.size() + tau_recv.size(); }

  friend bool operator==(const Translation&, const Translation&) = default;
};

/// Builds a translation from the CLI literal syntax. An empty `pattern`
/// means all-PutBlocks.
Translation make_translation(std::string_view send, std::string_view recv,
                             int k, std::string_view store,
                             std::string_view pattern = {});

std::string render(const Translation& t);

LockProcess apply_translation(const Translation& t, const SyncProcess& p);

struct BlockingType {
  enum class Kind : std::uint8_t { NonBlocking, Single, Double };

  Kind kind = Kind::NonBlocking;
  int index = 0;

  friend bool operator==(const BlockingType&, const BlockingType&) = default;
};

/// "N", "S<i>" or "D<i>".
std::string render(const BlockingType& b);

/// Where the solo run of `seq` from the initial store deadlocks: at the
/// first i-symbol (Single), at a blocking i-symbol whose nearest earlier
/// i-symbol is also on the blocking side (Double), or nowhere.
BlockingType classify_blocking(std::span<const LockAction> seq,
                               const LockConfig& config);

std::pair<BlockingType, BlockingType> translation_blocking_type(
    const Translation& t);

/// Swaps Put(i)/Take(i), the initial cell i and the blocking side of lock i
/// for every bit i-1 set in `flips`.
std::pair<LockProcess, LockConfig> sigma_flip(const LockProcess& p,
                                              const LockConfig& config,
                                              std::uint16_t flips);
Translation sigma_flip(const Translation& t, std::uint16_t flips);

bool filter_count_inequality(const Translation& t);
bool filter_joint_consumption(const Translation& t,
                              std::size_t budget = kDefaultStateBudget);
bool filter_solo_blocking(const Translation& t);

/// Diagnostic: the blocking type of `seq` is consistent with the initial
/// store. A false result means the classifier is wrong.
bool check_store_consistency(std::span<const LockAction> seq,
                             const LockConfig& config);

struct FilterResult {
  std::string name;
  bool passed = true;
  std::string reason;
};

struct FilterReport {
  std::vector<FilterResult> results;

  bool all_passed() const;
  /// Name of the first failing filter, or empty.
  std::string first_failure() const;
};

/// Runs solo-blocking, count-inequality, then joint-consumption, stopping at
/// the first failure unless `run_all`.
FilterReport run_filters(const Translation& t,
                         std::size_t budget = kDefaultStateBudget,
                         bool run_all = false);

}  // namespace synclock

#endif  // SYNCLOCK_TRANSLATION_HPP_
