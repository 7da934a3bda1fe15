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

#ifndef SYNCLOCK_TRACE_HPP_
#define SYNCLOCK_TRACE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace synclock {

/// One reduction step, anchored at positions of the canonical state it was
/// taken from. Synchronous steps name the sender in `position` and the
/// receiver in `partner`; lock steps carry the store after the step.
struct TraceStep {
  std::size_t position = 0;
  std::optional<std::size_t> partner;
  std::string action;
  std::string store = "-";

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

enum class TraceEnd { Successful, Deadlocked };

struct Trace {
  std::vector<TraceStep> steps;
  TraceEnd terminal = TraceEnd::Deadlocked;
  /// Rendered states, `states.size() == steps.size() + 1`.
  std::vector<std::string> states;
};

std::string render(const Trace& t);

}  // namespace synclock

#endif  // SYNCLOCK_TRACE_HPP_
