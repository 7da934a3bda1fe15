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

#ifndef SYNCLOCK_REFUTER_HPP_
#define SYNCLOCK_REFUTER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "synclock/convergence.hpp"
#include "synclock/corpus.hpp"
#include "synclock/translation.hpp"

namespace synclock {

enum class MismatchKind { MayGained, MayLost, MustGained, MustLost };

std::string to_string(MismatchKind k);

struct Counterexample {
  std::string entry_name;
  SyncProcess process;
  LockProcess translated;
  ConvergenceClass expected;
  ConvergenceClass observed;
  MismatchKind kind = MismatchKind::MayGained;
  /// Success trace for MayGained, failure trace for MustLost.
  std::optional<Trace> witness;
};

enum class VerdictStatus { Survived, Refuted, Inconclusive };

std::string to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::Survived;
  /// First counterexample; all of them in exhaustive mode.
  std::vector<Counterexample> counterexamples;
  std::size_t checked = 0;
  std::size_t states_total = 0;
  /// Entry whose exploration ran out of budget.
  std::string inconclusive_entry;
};

struct RefuteOptions {
  std::size_t budget = kDefaultStateBudget;
  bool exhaustive = false;
  bool with_witness = true;
};

/// Mismatch between source and target classes, if any. May mismatches take
/// precedence over must mismatches.
std::optional<MismatchKind> mismatch(ConvergenceClass expected,
                                     ConvergenceClass observed);

/// Checks `t` against every corpus entry in order and stops at the first
/// mismatch unless `opts.exhaustive`.
Verdict check_translation(const Translation& t,
                          const std::vector<CorpusEntry>& corpus,
                          const RefuteOptions& opts = {});

/// Classifies the translated process from the translation's initial store.
ConvergenceClass classify_translated(const Translation& t,
                                     const SyncProcess& p,
                                     std::size_t budget = kDefaultStateBudget,
                                     std::size_t* states = nullptr);

/// Human-readable report with a replayable witness trace.
std::string explain(const Counterexample& c, const Translation& t);

}  // namespace synclock

#endif  // SYNCLOCK_REFUTER_HPP_
