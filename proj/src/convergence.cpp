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

#include "synclock/convergence.hpp"

#include <sstream>

namespace synclock {

std::string to_string(ConvergenceKind k) {
  switch (k) {
    case ConvergenceKind::MustConvergent: return "MustConvergent";
    case ConvergenceKind::MayOnly: return "MayOnly";
    case ConvergenceKind::MustDivergent: return "MustDivergent";
  }
  return "?";
}

std::string describe(ConvergenceClass c) {
  std::string out = c.may() ? "may-convergent" : "not may-convergent";
  out += c.must() ? ", must-convergent" : ", not must-convergent";
  return out + " (" + to_string(c.kind()) + ")";
}

std::string render(const Trace& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& st = t.steps[i];
    os << "  " << (i + 1) << ". [" << st.position;
    if (st.partner) os << "," << *st.partner;
    os << "] " << st.action;
    if (st.store != "-") os << " -> " << st.store;
    if (i + 1 < t.states.size()) os << "   " << t.states[i + 1];
    os << '\n';
  }
  os << "  end: "
     << (t.terminal == TraceEnd::Successful ? "successful" : "deadlocked")
     << '\n';
  return os.str();
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const ReductionGraph& g) {
  std::ostringstream os;
  os << "digraph reduction {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    os << "  n" << i << " [label=\"" << dot_escape(n.label) << "\\n"
       << to_string(n.cls.kind()) << "\"";
    if (n.successful) os << ", peripheries=2";
    if (n.cls.kind() == ConvergenceKind::MustDivergent) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : g.edges) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\""
       << dot_escape(e.label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace synclock
