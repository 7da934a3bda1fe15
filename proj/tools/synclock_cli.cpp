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

// Command-line front end: classification, translation checks and the
// exhaustive translation search.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "synclock/compiled_lock.hpp"
#include "synclock/convergence.hpp"
#include "synclock/corpus.hpp"
#include "synclock/lock_semantics.hpp"
#include "synclock/refuter.hpp"
#include "synclock/search.hpp"
#include "synclock/sync_semantics.hpp"
#include "synclock/translation.hpp"

namespace {

using namespace synclock;
using nlohmann::json;

constexpr int kExitSurvived = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRefuted = 3;
constexpr int kExitInconclusive = 4;

struct LockFlags {
  int k = 0;
  std::string store;
  std::string pattern;

  void add(CLI::App* app, bool store_required = true) {
    app->add_option("--k", k, "number of locks (1..9)")->required();
    auto* s = app->add_option("--store", store, "initial store, e.g. eff");
    if (store_required) s->required();
    app->add_option("--pattern", pattern,
                    "blocking side per lock, e.g. ppt (default all p)");
  }
  LockConfig config() const {
    return LockConfig(k, parse_store(store, k),
                      pattern.empty() ? BlockingPattern::all_put(k)
                                      : parse_pattern(pattern, k));
  }
};

struct CorpusFlags {
  std::string file;
  CorpusSpec spec;
  bool no_named = false;

  void add(CLI::App* app) {
    app->add_option("--corpus", file, "corpus file (default: generated)");
    app->add_flag("--no-named", no_named, "omit the named processes");
    app->add_option("--flat-max", spec.flat_max_subprocesses,
                    "flat processes with up to N subprocesses");
    app->add_option("--enum-subprocs", spec.enum_max_subprocesses,
                    "enumerated processes: max subprocesses");
    app->add_option("--enum-depth", spec.enum_max_depth,
                    "enumerated processes: max actions per subprocess");
    app->add_option("--senders", spec.sender_family_max,
                    "largest sender family");
  }
  std::vector<CorpusEntry> load() {
    if (!file.empty()) return load_corpus_file(file);
    spec.include_named = !no_named;
    return assemble(spec);
  }
};

json class_json(ConvergenceClass c) {
  return {{"may", c.may()},
          {"must", c.must()},
          {"class", to_string(c.kind())}};
}

json trace_json(const Trace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json j = {{"position", s.position}, {"action", s.action},
              {"store", s.store}};
    if (s.partner) j["partner"] = *s.partner;
    steps.push_back(std::move(j));
  }
  return {{"steps", std::move(steps)},
          {"states", t.states},
          {"terminal",
           t.terminal == TraceEnd::Successful ? "successful" : "deadlocked"}};
}

template <typename System>
int print_classification(const System& sys, const typename System::State& s,
                         const std::string& rendered, std::size_t budget,
                         bool as_json, bool witness) {
  Explorer<System> ex(sys, budget);
  const auto c = ex.classify(s);
  const auto success = witness ? ex.success_witness(s) : std::nullopt;
  const auto failure = witness ? ex.failure_witness(s) : std::nullopt;
  if (as_json) {
    json j = class_json(c);
    j["process"] = rendered;
    j["states"] = ex.stats().states_visited;
    j["max_depth"] = ex.stats().max_depth;
    if (success) j["success_witness"] = trace_json(*success);
    if (failure) j["failure_witness"] = trace_json(*failure);
    std::cout << j.dump() << '\n';
    return 0;
  }
  std::cout << describe(c) << '\n';
  if (success) std::cout << "success witness:\n" << render(*success);
  if (failure) std::cout << "failure witness:\n" << render(*failure);
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"synclock: may/must convergence and translation search"};
  app.require_subcommand(1);
  bool as_json = false;
  std::size_t budget = kDefaultStateBudget;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--budget", budget, "state budget per exploration");

  // classify-sync
  auto* cs = app.add_subcommand("classify-sync", "classify a sync process");
  std::string cs_proc;
  bool cs_witness = false;
  cs->add_option("process", cs_proc)->required();
  cs->add_flag("--witness", cs_witness, "print success/failure traces");

  // classify-lock
  auto* cl = app.add_subcommand("classify-lock", "classify a lock process");
  std::string cl_proc;
  bool cl_witness = false;
  LockFlags cl_lock;
  cl->add_option("process", cl_proc)->required();
  cl->add_flag("--witness", cl_witness, "print success/failure traces");
  cl_lock.add(cl);

  // translate
  auto* tr = app.add_subcommand("translate", "apply a translation");
  std::string tr_proc, tr_send, tr_recv;
  LockFlags tr_lock;
  tr->add_option("process", tr_proc)->required();
  tr->add_option("--send", tr_send)->required();
  tr->add_option("--recv", tr_recv)->required();
  tr_lock.add(tr);

  // blocking-type
  auto* bt = app.add_subcommand("blocking-type",
                                "blocking types and filter results");
  std::string bt_send, bt_recv;
  LockFlags bt_lock;
  bt->add_option("--send", bt_send)->required();
  bt->add_option("--recv", bt_recv)->required();
  bt_lock.add(bt);

  // refute
  auto* rf = app.add_subcommand("refute", "check a translation on a corpus");
  std::string rf_send, rf_recv;
  bool rf_exhaustive = false;
  LockFlags rf_lock;
  CorpusFlags rf_corpus;
  rf->add_option("--send", rf_send)->required();
  rf->add_option("--recv", rf_recv)->required();
  rf->add_flag("--exhaustive", rf_exhaustive, "collect all counterexamples");
  rf_lock.add(rf);
  rf_corpus.add(rf);

  // search
  auto* se = app.add_subcommand("search", "exhaustive translation search");
  int se_k = 0;
  std::size_t se_max = 0, se_min = 2, se_workers = 1;
  std::string se_stores = "all", se_pattern, se_checkpoint;
  bool se_verify = false, se_no_filters = false, se_no_sym = false,
       se_emit_refuted = false;
  CorpusFlags se_corpus;
  se->add_option("--k", se_k)->required();
  se->add_option("--max-len", se_max)->required();
  se->add_option("--min-len", se_min);
  se->add_option("--stores", se_stores, "all or comma-separated list");
  se->add_option("--pattern", se_pattern);
  se->add_option("--workers", se_workers);
  se->add_option("--checkpoint", se_checkpoint);
  se->add_flag("--verify-filters", se_verify);
  se->add_flag("--no-filters", se_no_filters);
  se->add_flag("--no-symmetry", se_no_sym);
  se->add_flag("--emit-refuted", se_emit_refuted,
               "stream refuted candidates too (with --json)");
  se_corpus.add(se);

  // corpus
  auto* co = app.add_subcommand("corpus", "corpus tools");
  auto* co_list = co->add_subcommand("list", "print the corpus");
  co->require_subcommand(1);
  CorpusFlags co_corpus;
  co_corpus.add(co_list);

  // graph
  auto* gr = app.add_subcommand("graph", "export the reduction graph");
  std::string gr_sync, gr_lock_proc, gr_dot;
  int gr_k = 0;
  std::string gr_store, gr_pattern;
  auto* gr_sync_opt = gr->add_option("--sync", gr_sync, "sync process");
  auto* gr_lock_opt = gr->add_option("--lock", gr_lock_proc, "lock process");
  gr_sync_opt->excludes(gr_lock_opt);
  gr->add_option("--k", gr_k);
  gr->add_option("--store", gr_store);
  gr->add_option("--pattern", gr_pattern);
  gr->add_option("--dot", gr_dot, "output file (default stdout)");

  // sigma
  auto* sg = app.add_subcommand("sigma", "apply the blocking-side flip");
  std::string sg_proc;
  std::vector<int> sg_flips;
  LockFlags sg_lock;
  sg->add_option("--lock", sg_proc)->required();
  sg->add_option("--flips", sg_flips, "lock indices to flip")->delimiter(',');
  sg_lock.add(sg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cs) {
      const auto p = parse_sync_process(cs_proc);
      return print_classification(SyncSystem{}, p, render(p), budget, as_json,
                                  cs_witness);
    }
    if (*cl) {
      const auto cfg = cl_lock.config();
      const auto p = parse_lock_process(cl_proc, cfg.k);
      CompiledLockSystem sys(p, cfg);
      return print_classification(sys, sys.initial(),
                                  render(LockState{p, cfg.initial_store}),
                                  budget, as_json, cl_witness);
    }
    if (*tr) {
      const auto t = make_translation(tr_send, tr_recv, tr_lock.k,
                                      tr_lock.store, tr_lock.pattern);
      const auto p = parse_sync_process(tr_proc);
      const auto lp = apply_translation(t, p);
      const auto src = classify(SyncSystem{}, p, budget);
      const auto dst = classify_translated(t, p, budget);
      if (as_json) {
        std::cout << json{{"source", render(p, true)},
                          {"translated", render(lp, true)},
                          {"source_class", class_json(src)},
                          {"translated_class", class_json(dst)}}
                         .dump()
                  << '\n';
      } else {
        std::cout << render(lp) << '\n'
                  << "source:     " << describe(src) << '\n'
                  << "translated: " << describe(dst) << '\n';
      }
      return 0;
    }
    if (*bt) {
      const auto t = make_translation(bt_send, bt_recv, bt_lock.k,
                                      bt_lock.store, bt_lock.pattern);
      const auto [s, r] = translation_blocking_type(t);
      const auto rep = run_filters(t, budget, true);
      if (as_json) {
        json filters = json::array();
        for (const auto& f : rep.results) {
          filters.push_back(
              {{"name", f.name}, {"passed", f.passed}, {"reason", f.reason}});
        }
        std::cout << json{{"blocking_type", {render(s), render(r)}},
                          {"filters", filters}}
                         .dump()
                  << '\n';
      } else {
        std::cout << "blocking type: (" << render(s) << ", " << render(r)
                  << ")\n";
        for (const auto& f : rep.results) {
          std::cout << "  " << f.name << ": " << (f.passed ? "pass" : "FAIL")
                    << " (" << f.reason << ")\n";
        }
      }
      return 0;
    }
    if (*rf) {
      const auto t = make_translation(rf_send, rf_recv, rf_lock.k,
                                      rf_lock.store, rf_lock.pattern);
      const auto corpus = rf_corpus.load();
      RefuteOptions ro;
      ro.budget = budget;
      ro.exhaustive = rf_exhaustive;
      const Verdict v = check_translation(t, corpus, ro);
      if (as_json) {
        CandidateOutcome o;
        o.translation = t;
        o.blocking = translation_blocking_type(t);
        o.states = v.states_total;
        o.inconclusive_entry = v.inconclusive_entry;
        o.status = v.status == VerdictStatus::Survived ? CandidateStatus::Survived
                   : v.status == VerdictStatus::Refuted
                       ? CandidateStatus::Refuted
                       : CandidateStatus::Inconclusive;
        if (!v.counterexamples.empty()) o.counterexample = v.counterexamples[0];
        std::cout << candidate_json(o) << '\n';
      } else {
        switch (v.status) {
          case VerdictStatus::Survived:
            std::cout << "survived (corpus: " << corpus.size()
                      << " processes, " << v.states_total << " states)\n";
            break;
          case VerdictStatus::Refuted:
            for (const auto& c : v.counterexamples) {
              std::cout << explain(c, t) << '\n';
            }
            std::cout << "refuted (" << v.counterexamples.size()
                      << " counterexample(s), " << v.checked << " of "
                      << corpus.size() << " processes checked)\n";
            break;
          case VerdictStatus::Inconclusive:
            std::cout << "inconclusive: state budget exceeded on '"
                      << v.inconclusive_entry << "'\n";
            break;
        }
      }
      switch (v.status) {
        case VerdictStatus::Survived: return kExitSurvived;
        case VerdictStatus::Refuted: return kExitRefuted;
        case VerdictStatus::Inconclusive: return kExitInconclusive;
      }
    }
    if (*se) {
      SearchSpace space;
      space.k = se_k;
      space.min_length = se_min;
      space.max_length = se_max;
      if (se_stores == "all") {
        space.stores = SearchSpace::all_stores(se_k);
      } else {
        std::stringstream ss(se_stores);
        std::string item;
        while (std::getline(ss, item, ',')) {
          space.stores.push_back(parse_store(item, se_k));
        }
      }
      space.pattern = se_pattern.empty() ? BlockingPattern::all_put(se_k)
                                         : parse_pattern(se_pattern, se_k);
      space.filters_enabled = !se_no_filters;
      space.verify_filters = se_verify;
      space.symmetry_reduction = !se_no_sym;
      space.budget = budget;
      const auto corpus = se_corpus.load();
      SearchOptions opts;
      opts.workers = se_workers;
      opts.checkpoint_path = se_checkpoint;
      if (as_json) {
        opts.on_candidate = [&](const CandidateOutcome& o) {
          if (o.status == CandidateStatus::Refuted ||
              o.status == CandidateStatus::RefutedByFilter) {
            if (!se_emit_refuted) return;
          }
          std::cout << candidate_json(o) << '\n';
        };
      }
      const SearchReport r = run_search(space, corpus, opts);
      if (as_json) {
        std::cout << report_json(r) << '\n';
      } else {
        std::cout << "candidates: " << r.candidates_total
                  << " (symmetric skipped: " << r.symmetric_skipped << ")\n"
                  << "refuted: " << r.refuted
                  << " (by filter: " << r.refuted_by_filter << ")\n"
                  << "inconclusive: " << r.inconclusive << '\n';
        for (const auto& s : r.survivors) {
          std::cout << "survivor: " << render(s.translation) << " blocking ("
                    << render(s.blocking.first) << ", "
                    << render(s.blocking.second) << ")"
                    << (s.notes.empty() ? "" : " [" + s.notes + "]") << '\n';
        }
        std::cout << r.survivors.size() << " survivors\n";
      }
      return r.filter_violations.empty() ? 0 : 1;
    }
    if (*co_list) {
      const auto corpus = co_corpus.load();
      if (as_json) {
        for (const auto& e : corpus) {
          std::cout << json{{"name", e.name},
                            {"process", render(e.process, true)},
                            {"expected", class_json(e.expected)},
                            {"cost", e.cost}}
                           .dump()
                    << '\n';
        }
      } else {
        write_corpus(std::cout, corpus);
        std::cout << "; " << corpus.size() << " processes\n";
      }
      return 0;
    }
    if (*gr) {
      ReductionGraph g;
      if (!gr_sync.empty()) {
        SyncSystem sys;
        g = Explorer<SyncSystem>(sys, budget).graph(parse_sync_process(gr_sync));
      } else if (!gr_lock_proc.empty()) {
        if (gr_k == 0 || gr_store.empty()) {
          throw CLI::ValidationError("graph --lock needs --k and --store");
        }
        const LockConfig cfg(gr_k, parse_store(gr_store, gr_k),
                             gr_pattern.empty()
                                 ? BlockingPattern::all_put(gr_k)
                                 : parse_pattern(gr_pattern, gr_k));
        CompiledLockSystem sys(parse_lock_process(gr_lock_proc, gr_k), cfg);
        g = Explorer<CompiledLockSystem>(sys, budget).graph(sys.initial());
      } else {
        throw CLI::ValidationError("graph needs --sync or --lock");
      }
      const std::string dot = to_dot(g);
      if (gr_dot.empty()) {
        std::cout << dot;
      } else {
        std::ofstream out(gr_dot);
        if (!out) throw std::runtime_error("cannot write " + gr_dot);
        out << dot;
        std::cout << g.nodes.size() << " nodes, " << g.edges.size()
                  << " edges written to " << gr_dot << '\n';
      }
      return 0;
    }
    if (*sg) {
      const auto cfg = sg_lock.config();
      const auto p = parse_lock_process(sg_proc, cfg.k);
      std::uint16_t flips = 0;
      for (int i : sg_flips) {
        if (i < 1 || i > cfg.k) throw ParseError("flip index out of range", 0);
        flips |= static_cast<std::uint16_t>(1u << (i - 1));
      }
      const auto [fp, fc] = sigma_flip(p, cfg, flips);
      const auto before = classify(CompiledLockSystem(p, cfg),
                                   CompiledLockSystem(p, cfg).initial(), budget);
      CompiledLockSystem after_sys(fp, fc);
      const auto after = classify(after_sys, after_sys.initial(), budget);
      if (as_json) {
        std::cout << json{{"process", render(fp, true)},
                          {"k", fc.k},
                          {"store", render(fc.initial_store)},
                          {"pattern", render(fc.pattern)},
                          {"before", class_json(before)},
                          {"after", class_json(after)}}
                         .dump()
                  << '\n';
      } else {
        std::cout << render(fp) << " --store " << render(fc.initial_store)
                  << " --pattern " << render(fc.pattern) << '\n'
                  << "before: " << describe(before) << '\n'
                  << "after:  " << describe(after) << '\n';
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidProcess& e) {
    std::cerr << "invalid process: " << e.what() << '\n';
    return kExitUsage;
  } catch (const StateBudgetExceeded& e) {
    std::cerr << e.what() << '\n';
    return kExitInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
