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

#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "synclock/compiled_lock.hpp"
#include "synclock/corpus.hpp"
#include "synclock/refuter.hpp"
#include "synclock/translation.hpp"

using namespace synclock;

namespace {

const Translation kLen6 = make_translation("P1T3P2T1", "P3T2", 3, "eff");

BlockingType S(int i) { return {BlockingType::Kind::Single, i}; }
BlockingType D(int i) { return {BlockingType::Kind::Double, i}; }
const BlockingType N{};

std::vector<LockAction> random_seq(std::mt19937& rng, int k, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), bit(0, 1), idx(1, k);
  std::vector<LockAction> seq;
  for (int j = len(rng); j > 0; --j) {
    seq.push_back(bit(rng) ? Take(idx(rng)) : Put(idx(rng)));
  }
  return seq;
}

LockConfig random_config(std::mt19937& rng, int k) {
  std::uniform_int_distribution<int> bits(0, (1 << k) - 1);
  return LockConfig(k, Store(k, static_cast<std::uint16_t>(bits(rng))),
                    BlockingPattern(k, static_cast<std::uint16_t>(bits(rng))));
}

}  // namespace

TEST_SUITE("translation") {
  TEST_CASE("apply_translation") {
    CHECK(render(apply_translation(kLen6, parse_sync_process("!# | ?0"))) ==
          render(parse_lock_process("P1T3P2T1# | P3T2 0", 3)));
    CHECK(apply_translation(kLen6, parse_sync_process("0 | #")) ==
          parse_lock_process("0 | #", 3));
    CHECK(apply_translation(kLen6, parse_sync_process("!!0")) ==
          parse_lock_process("P1T3P2T1P1T3P2T1 0", 3));
  }

  TEST_CASE("property: apply_translation is a multiset homomorphism") {
    std::mt19937 rng(23);
    for (int n = 0; n < 200; ++n) {
      const auto a = parse_sync_process(n % 2 ? "!?# | ?0" : "?!!0");
      const auto b = parse_sync_process(n % 3 ? "!0 | ??#" : "#");
      auto joint = a.subprocesses();
      joint.insert(joint.end(), b.subprocesses().begin(),
                   b.subprocesses().end());
      Translation t = kLen6;
      t.tau_send = random_seq(rng, 3, 4);
      t.tau_recv = random_seq(rng, 3, 4);
      auto ta = apply_translation(t, a).subprocesses();
      const auto tb = apply_translation(t, b).subprocesses();
      ta.insert(ta.end(), tb.begin(), tb.end());
      CHECK(apply_translation(t, SyncProcess(joint)) == LockProcess(ta));
    }
  }

  TEST_CASE("classify_blocking: examples") {
    const LockConfig cfg(3, parse_store("eff", 3), parse_pattern("ppp", 3));
    CHECK(classify_blocking(parse_lock_sequence("P1T3P2T1", 3), cfg) == S(2));
    CHECK(classify_blocking(parse_lock_sequence("P3T2", 3), cfg) == S(3));
    const LockConfig one(1, parse_store("e", 1));
    CHECK(classify_blocking(parse_lock_sequence("P1P1", 1), one) == D(1));
    CHECK(classify_blocking(parse_lock_sequence("T1P1P1", 1), one) == D(1));
    CHECK(classify_blocking(parse_lock_sequence("T1", 1), one) == N);
    // Take-blocking lock: waits at a take on an empty cell.
    const LockConfig tb(1, parse_store("e", 1), parse_pattern("t", 1));
    CHECK(classify_blocking(parse_lock_sequence("T1", 1), tb) == S(1));
    CHECK(classify_blocking(parse_lock_sequence("P1T1T1", 1), tb) == D(1));
    CHECK(render(S(2)) == "S2");
    CHECK(render(D(1)) == "D1");
    CHECK(render(N) == "N");
  }

  TEST_CASE("translation_blocking_type") {
    CHECK(translation_blocking_type(kLen6) == std::pair{S(2), S(3)});
    CHECK(translation_blocking_type(make_translation("P1", "T1", 1, "e")) ==
          std::pair{N, N});
    CHECK(translation_blocking_type(make_translation("P1P1", "P1P1", 1, "e")) ==
          std::pair{D(1), D(1)});
  }

  TEST_CASE("property: classify_blocking is total and store-consistent") {
    std::mt19937 rng(29);
    for (int n = 0; n < 2000; ++n) {
      const int k = 1 + n % 3;
      const auto cfg = random_config(rng, k);
      const auto seq = random_seq(rng, k, 8);
      CHECK_NOTHROW(classify_blocking(seq, cfg));
      CHECK(check_store_consistency(seq, cfg));
    }
  }

  TEST_CASE("check_store_consistency: examples") {
    const LockConfig cfg(3, parse_store("eff", 3));
    CHECK(check_store_consistency(parse_lock_sequence("P1T3P2T1", 3), cfg));
    CHECK(check_store_consistency(parse_lock_sequence("P1P1", 1),
                                  LockConfig(1, parse_store("e", 1))));
  }

  TEST_CASE("sigma_flip") {
    const LockConfig cfg(1, parse_store("e", 1), parse_pattern("p", 1));
    const auto p = parse_lock_process("P1 0", 1);
    const auto same = sigma_flip(p, cfg, 0);
    CHECK(same.first == p);
    CHECK(same.second == cfg);

    const auto [fp, fc] = sigma_flip(p, cfg, 1);
    CHECK(fp == parse_lock_process("T1 0", 1));
    CHECK(render(fc.initial_store) == "f");
    CHECK(render(fc.pattern) == "t");
    const auto back = sigma_flip(fp, fc, 1);
    CHECK(back.first == p);
    CHECK(back.second == cfg);

    CompiledLockSystem a(p, cfg), b(fp, fc);
    CHECK(classify(a, a.initial()) == classify(b, b.initial()));

    const Translation ft = sigma_flip(kLen6, 0b101);
    CHECK(render(ft.tau_send) == "T1P3P2P1");
    CHECK(render(ft.config.initial_store) == "ffe");
    CHECK(render(ft.config.pattern) == "tpt");
  }

  TEST_CASE("property: sigma_flip preserves convergence (oracle checked)") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> nsub(1, 3), bit(0, 1);
    for (int n = 0; n < 300; ++n) {
      const int k = 1 + n % 3;
      const auto cfg = random_config(rng, k);
      std::vector<LockSubprocess> subs;
      for (int i = nsub(rng); i > 0; --i) {
        subs.push_back({random_seq(rng, k, 4),
                        bit(rng) ? Terminator::Success : Terminator::Nil});
      }
      const LockProcess p(subs);
      const auto flips = static_cast<std::uint16_t>(
          std::uniform_int_distribution<int>(0, (1 << k) - 1)(rng));
      const auto [fp, fc] = sigma_flip(p, cfg, flips);
      oracle::LockOracle before(render(cfg.pattern)), after(render(fc.pattern));
      const auto x = before.classify(
          {oracle::lock_split(render(p)), render(cfg.initial_store)});
      const auto y = after.classify(
          {oracle::lock_split(render(fp)), render(fc.initial_store)});
      CHECK(x.may == y.may);
      CHECK(x.must == y.must);
    }
  }

  TEST_CASE("filter_count_inequality") {
    CHECK(filter_count_inequality(kLen6));
    CHECK_FALSE(filter_count_inequality(make_translation("P1P1", "T1", 1, "e")));
    CHECK(filter_count_inequality(make_translation("T1", "T1", 1, "e")));
  }

  TEST_CASE("filter_joint_consumption") {
    CHECK(filter_joint_consumption(kLen6));
    CHECK_FALSE(filter_joint_consumption(make_translation("P1", "P1", 1, "e")));
    CHECK(filter_joint_consumption(make_translation("T1", "T1", 1, "e")));
  }

  TEST_CASE("filter_solo_blocking") {
    CHECK(filter_solo_blocking(kLen6));
    CHECK_FALSE(filter_solo_blocking(make_translation("T1", "P1", 1, "e")));
    CHECK(filter_solo_blocking(make_translation("P1", "P1P1", 1, "f")));
  }

  TEST_CASE("run_filters stops at the first failure") {
    const auto rep = run_filters(make_translation("T1", "P1", 1, "e"));
    REQUIRE(rep.results.size() == 1);
    CHECK(rep.first_failure() == "solo-blocking");
    CHECK(run_filters(make_translation("T1", "P1", 1, "e"), kDefaultStateBudget,
                      true)
              .results.size() == 3);
    CHECK(run_filters(kLen6).all_passed());
  }

  TEST_CASE("property: filter failures are refuted by the default corpus") {
    const auto corpus = assemble(CorpusSpec{});
    std::mt19937 rng(37);
    int sampled = 0;
    for (int n = 0; n < 4000 && sampled < 150; ++n) {
      const int k = 1 + n % 2;
      Translation t;
      t.tau_send = random_seq(rng, k, 3);
      t.tau_recv = random_seq(rng, k, 3);
      if (t.tau_send.empty() || t.tau_recv.empty()) continue;
      t.config = LockConfig(
          k, Store(k, static_cast<std::uint16_t>(rng() % (1u << k))));
      if (run_filters(t).all_passed()) continue;
      ++sampled;
      RefuteOptions ro;
      ro.with_witness = false;
      CHECK_MESSAGE(check_translation(t, corpus, ro).status ==
                        VerdictStatus::Refuted,
                    render(t));
    }
    CHECK(sampled == 150);
  }
}
