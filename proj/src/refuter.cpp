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

#include "synclock/refuter.hpp"

#include <sstream>

#include "synclock/compiled_lock.hpp"

namespace synclock {

std::string to_string(MismatchKind k) {
  switch (k) {
    case MismatchKind::MayGained: return "MayGained";
    case MismatchKind::MayLost: return "MayLost";
    case MismatchKind::MustGained: return "MustGained";
    case MismatchKind::MustLost: return "MustLost";
  }
  return "?";
}

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Survived: return "survived";
    case VerdictStatus::Refuted: return "refuted";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<MismatchKind> mismatch(ConvergenceClass expected,
                                     ConvergenceClass observed) {
  if (expected.may() != observed.may()) {
    return observed.may() ? MismatchKind::MayGained : MismatchKind::MayLost;
  }
  if (expected.must() != observed.must()) {
    return observed.must() ? MismatchKind::MustGained : MismatchKind::MustLost;
  }
  return std::nullopt;
}

ConvergenceClass classify_translated(const Translation& t,
                                     const SyncProcess& p, std::size_t budget,
                                     std::size_t* states) {
  CompiledLockSystem sys(apply_translation(t, p), t.config);
  Explorer<CompiledLockSystem> ex(sys, budget);
  const auto c = ex.classify(sys.initial());
  if (states) *states = ex.stats().states_visited;
  return c;
}

Verdict check_translation(const Translation& t,
                          const std::vector<CorpusEntry>& corpus,
                          const RefuteOptions& opts) {
  Verdict v;
  for (const auto& entry : corpus) {
    LockProcess translated = apply_translation(t, entry.process);
    CompiledLockSystem sys(translated, t.config);
    Explorer<CompiledLockSystem> ex(sys, opts.budget);
    ConvergenceClass observed;
    try {
      observed = ex.classify(sys.initial());
    } catch (const StateBudgetExceeded&) {
      v.states_total += opts.budget;
      if (v.inconclusive_entry.empty()) v.inconclusive_entry = entry.name;
      // A counterexample already found stays a certificate.
      if (v.status == VerdictStatus::Refuted) continue;
      v.status = VerdictStatus::Inconclusive;
      if (!opts.exhaustive) return v;
      continue;
    }
    v.states_total += ex.stats().states_visited;
    ++v.checked;
    const auto kind = mismatch(entry.expected, observed);
    if (!kind) continue;

    Counterexample c{entry.name, entry.process, std::move(translated),
                     entry.expected, observed, *kind, std::nullopt};
    if (opts.with_witness) {
      if (*kind == MismatchKind::MayGained) {
        c.witness = ex.success_witness(sys.initial());
      } else if (*kind == MismatchKind::MustLost) {
        c.witness = ex.failure_witness(sys.initial());
      }
    }
    v.status = VerdictStatus::Refuted;
    v.counterexamples.push_back(std::move(c));
    if (!opts.exhaustive) return v;
  }
  return v;
}

std::string explain(const Counterexample& c, const Translation& t) {
  std::ostringstream os;
  os << "translation " << render(t) << "\n";
  os << "counterexample '" << c.entry_name << "': " << to_string(c.kind)
     << "\n";
  os << "  source:     " << render(c.process) << "\n";
  os << "              " << describe(c.expected) << "\n";
  os << "  translated: " << render(c.translated) << " @ "
     << render(t.config.initial_store) << "\n";
  os << "              " << describe(c.observed) << "\n";
  if (c.witness) {
    os << "  witness ("
       << (c.witness->terminal == TraceEnd::Successful ? "success" : "failure")
       << " trace of the translated process):\n"
       << render(*c.witness);
  }
  return os.str();
}

}  // namespace synclock
