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

#include "doctest.h"
#include "oracle.hpp"
#include "synclock/compiled_lock.hpp"
#include "synclock/convergence.hpp"
#include "synclock/lock_semantics.hpp"
#include "synclock/sync_semantics.hpp"

using namespace synclock;

namespace {

ConvergenceKind sync_kind(const char* text) {
  return classify(SyncSystem{}, parse_sync_process(text)).kind();
}

}  // namespace

TEST_SUITE("convergence") {
  TEST_CASE("ConvergenceClass forbids must without may") {
    CHECK_THROWS_AS(ConvergenceClass::from_flags(false, true),
                    std::logic_error);
    CHECK(ConvergenceClass::from_flags(true, false).kind() ==
          ConvergenceKind::MayOnly);
    CHECK(describe(ConvergenceClass::may_only()) ==
          "may-convergent, not must-convergent (MayOnly)");
  }

  TEST_CASE("classify: sync examples") {
    CHECK(sync_kind("?!0 | !!# | ?0") == ConvergenceKind::MayOnly);
    CHECK(sync_kind("!?0 | ?#") == ConvergenceKind::MustConvergent);
    CHECK(sync_kind("! | ? | !?0 | ?#") == ConvergenceKind::MayOnly);
    CHECK(sync_kind("#") == ConvergenceKind::MustConvergent);
    CHECK(sync_kind("0") == ConvergenceKind::MustDivergent);
  }

  TEST_CASE("classify: lock example") {
    const LockConfig cfg(2, parse_store("ee", 2));
    CompiledLockSystem sys(parse_lock_process("P2 0 | T2 #", 2), cfg);
    CHECK(classify(sys, sys.initial()) == ConvergenceClass::must_convergent());
  }

  TEST_CASE("classify: state budget is enforced") {
    const auto p = parse_sync_process("!!!0 | ???0 | !!!0 | ???#");
    CHECK_THROWS_AS(classify(SyncSystem{}, p, 3), StateBudgetExceeded);
  }

  TEST_CASE("success_witness") {
    SyncSystem sys;
    Explorer<SyncSystem> ex(sys);
    const auto p = parse_sync_process("!# | ?0");
    const auto w = ex.success_witness(p);
    REQUIRE(w);
    CHECK(w->steps.size() == 1);
    CHECK(w->terminal == TraceEnd::Successful);
    CHECK(replay_trace(sys, p, *w));
    CHECK_FALSE(ex.success_witness(parse_sync_process("!#")));

    const LockConfig cfg(2, parse_store("ee", 2));
    CompiledLockSystem ls(parse_lock_process("P2 0 | T2 #", 2), cfg);
    Explorer<CompiledLockSystem> el(ls);
    const auto lw = el.success_witness(ls.initial());
    REQUIRE(lw);
    CHECK(lw->steps.size() == 2);
    CHECK(lw->steps[0].action == "P2");
    CHECK(lw->steps[0].store == "ef");
    CHECK(replay_trace(ls, ls.initial(), *lw));
  }

  TEST_CASE("failure_witness") {
    SyncSystem sys;
    Explorer<SyncSystem> ex(sys);
    const auto p = parse_sync_process("?!0 | !!# | ?0");
    const auto w = ex.failure_witness(p);
    REQUIRE(w);
    CHECK(w->terminal == TraceEnd::Deadlocked);
    CHECK(w->states.back() == render(parse_sync_process("0 | !# | 0")));
    CHECK(replay_trace(sys, p, *w));
    CHECK_FALSE(ex.failure_witness(parse_sync_process("!?0 | ?#")));

    const auto z = ex.failure_witness(parse_sync_process("0"));
    REQUIRE(z);
    CHECK(z->steps.empty());
    CHECK(z->terminal == TraceEnd::Deadlocked);
  }

  TEST_CASE("replay_trace rejects a tampered trace") {
    SyncSystem sys;
    const auto p = parse_sync_process("?!0 | !!# | ?0");
    auto w = Explorer<SyncSystem>(sys).success_witness(p).value();
    w.terminal = TraceEnd::Deadlocked;
    CHECK_FALSE(replay_trace(sys, p, w));
    w.steps[0].position = 0;
    CHECK_FALSE(replay_trace(sys, p, w));
  }

  TEST_CASE("reduction_graph: node counts") {
    SyncSystem sys;
    const auto g = Explorer<SyncSystem>(sys).graph(parse_sync_process("!# | ?0"));
    CHECK(g.nodes.size() == 2);
    CHECK(g.edges.size() == 1);

    const char* text = "?!0 | !!# | ?0";
    const auto g2 = Explorer<SyncSystem>(sys).graph(parse_sync_process(text));
    CHECK(g2.nodes.size() == oracle::sync_reachable_count(oracle::split(text)));

    // A single lock subprocess is a path.
    const LockConfig cfg(2, parse_store("ef", 2));
    CompiledLockSystem ls(parse_lock_process("P1T2T1P2#", 2), cfg);
    const auto g3 = Explorer<CompiledLockSystem>(ls).graph(ls.initial());
    CHECK(g3.nodes.size() == 5);
    CHECK(g3.edges.size() == 4);
  }

  TEST_CASE("reduction_graph: two interleavings of P2 0 | T2 #") {
    // Initial state, P2 first (2 states), T2 first (2 states).
    const LockConfig cfg(2, parse_store("ee", 2));
    CompiledLockSystem ls(parse_lock_process("P2 0 | T2 #", 2), cfg);
    const auto g = Explorer<CompiledLockSystem>(ls).graph(ls.initial());
    const oracle::LockOracle o("pp");
    CHECK(g.nodes.size() ==
          o.reachable_count({oracle::lock_split("P2 0 | T2 #"), "ee"}));
    CHECK(g.nodes.size() == 5);
    CHECK(g.edges.size() == 4);
  }

  TEST_CASE("to_dot marks successful and divergent nodes") {
    SyncSystem sys;
    const auto g = Explorer<SyncSystem>(sys).graph(
        parse_sync_process("?!0 | !!# | ?0"));
    const std::string dot = to_dot(g);
    CHECK(dot.find("digraph") == 0);
    CHECK(dot.find("peripheries=2") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
  }

  TEST_CASE("invariant checking reports no violations on examples") {
    SyncSystem sys;
    for (const char* text : {"?!0 | !!# | ?0", "! | ? | !?0 | ?#", "#|!?#"}) {
      Explorer<SyncSystem> ex(sys, kDefaultStateBudget, true);
      ex.classify(parse_sync_process(text));
      CHECK(ex.stats().invariant_violations == 0);
      CHECK(ex.stats().max_depth <=
            parse_sync_process(text).action_count() / 2);
    }
  }
}
