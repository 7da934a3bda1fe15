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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd =
      std::string(SYNCLOCK_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), f)) {
    r.out.append(buf.data(), n);
  }
  const int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool has(const std::string& s, const std::string& what) {
  return s.find(what) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classify-sync") {
    const auto r = run("classify-sync '?!0 | !!# | ?0'");
    CHECK(r.code == 0);
    CHECK(has(r.out, "MayOnly"));
    const auto w = run("classify-sync --witness '?!0 | !!# | ?0'");
    CHECK(has(w.out, "success witness"));
    CHECK(has(w.out, "failure witness"));
    const auto j = nlohmann::json::parse(run("--json classify-sync '!#|?0'").out);
    CHECK(j.at("may") == true);
    CHECK(j.at("must") == true);
  }

  TEST_CASE("classify-lock") {
    const auto r = run("classify-lock 'P2 0 | T2 #' --k 2 --store ee");
    CHECK(r.code == 0);
    CHECK(has(r.out, "MustConvergent"));
  }

  TEST_CASE("translate and blocking-type") {
    const auto t = run(
        "translate '!# | ?0' --send P1T3P2T1 --recv P3T2 --k 3 --store eff");
    CHECK(t.code == 0);
    CHECK(has(t.out, "P3T2 0 | P1T3P2T1 #"));
    const auto b =
        run("blocking-type --send P1T3P2T1 --recv P3T2 --k 3 --store eff");
    CHECK(b.code == 0);
    CHECK(has(b.out, "(S2, S3)"));
  }

  TEST_CASE("refute exit codes") {
    const auto ok = run("refute --send P1T3P2T1 --recv P3T2 --k 3 --store eff");
    CHECK(ok.code == 0);
    CHECK(has(ok.out, "survived"));
    const auto bad = run("refute --send P1 --recv T1 --k 1 --store e");
    CHECK(bad.code == 3);
    CHECK(has(bad.out, "MayGained"));
    const auto inc = run(
        "--budget 2 refute --send P1T3P2T1 --recv P3T2 --k 3 --store eff");
    CHECK(inc.code == 4);
  }

  TEST_CASE("search") {
    const auto r = run("search --k 1 --max-len 4");
    CHECK(r.code == 0);
    CHECK(has(r.out, "0 survivors"));
    const auto j = run("--json search --k 1 --max-len 3");
    CHECK(has(j.out, "\"survivors\""));
  }

  TEST_CASE("corpus list, graph, sigma") {
    const auto c = run("corpus list");
    CHECK(c.code == 0);
    CHECK(has(c.out, "; 5496 processes"));
    const auto g = run("graph --lock 'P2 0 | T2 #' --k 2 --store ee");
    CHECK(g.code == 0);
    CHECK(has(g.out, "digraph"));
    std::size_t arrows = 0;
    for (auto at = g.out.find("->"); at != std::string::npos;
         at = g.out.find("->", at + 2)) {
      ++arrows;
    }
    CHECK(arrows == 4);
    const std::string file = "synclock_cli_test.dot";
    const auto d = run("graph --sync '!# | ?0' --dot " + file);
    CHECK(has(d.out, "2 nodes, 1 edges"));
    std::remove(file.c_str());
    const auto s = run("sigma --lock 'P1 0' --k 1 --store e --flips 1");
    CHECK(s.code == 0);
    CHECK(has(s.out, "T1 0"));
    CHECK(has(s.out, "--store f"));
  }

  TEST_CASE("usage and parse errors exit with 2") {
    CHECK(run("classify-sync '!x'").code == 2);
    CHECK(run("classify-lock 'P3' --k 2 --store ee").code == 2);
    CHECK(run("no-such-command").code == 2);
    CHECK(run("refute --send P1").code == 2);
  }
}
