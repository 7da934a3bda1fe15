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

#include "synclock/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace synclock {

using nlohmann::json;

std::vector<Store> SearchSpace::all_stores(int k) {
  std::vector<Store> out;
  for (std::uint32_t code = 0; code < (1u << k); ++code) {
    // Cell 1 is the most significant position of the rendered string.
    Store s(k);
    for (int i = 1; i <= k; ++i) {
      if ((code >> (k - i)) & 1u) s.set(i, Cell::Full);
    }
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

CandidateSpace::CandidateSpace(const SearchSpace& space) : space_(space) {
  if (space.k < 1 || space.k > kMaxLocks) {
    throw std::invalid_argument("lock count out of range");
  }
  if (space.stores.empty()) throw std::invalid_argument("no stores given");
  if (space.max_length < 2 || space.min_length > space.max_length) {
    throw std::invalid_argument("length bounds must satisfy 2 <= max");
  }
  for (int i = 1; i <= space.k; ++i) alphabet_.push_back(Put(i));
  for (int i = 1; i <= space.k; ++i) alphabet_.push_back(Take(i));
  const std::uint64_t a = alphabet_.size();
  const std::uint64_t stores = space.stores.size();
  for (std::size_t n = std::max<std::size_t>(2, space.min_length);
       n <= space.max_length; ++n) {
    for (std::size_t s = 1; s < n; ++s) {
      std::uint64_t count = stores;
      for (std::size_t i = 0; i < n; ++i) count *= a;
      blocks_.push_back({total_, s, n - s});
      total_ += count;
    }
  }
}

std::vector<LockAction> CandidateSpace::decode(std::uint64_t code,
                                               std::size_t len) const {
  std::vector<LockAction> seq(len);
  const std::uint64_t a = alphabet_.size();
  for (std::size_t i = len; i-- > 0;) {
    seq[i] = alphabet_[code % a];
    code /= a;
  }
  return seq;
}

Translation CandidateSpace::at(std::uint64_t index) const {
  if (index >= total_) throw std::out_of_range("candidate index");
  auto it = std::upper_bound(
      blocks_.begin(), blocks_.end(), index,
      [](std::uint64_t v, const Block& b) { return v < b.first; });
  const Block& b = *std::prev(it);
  std::uint64_t off = index - b.first;
  const std::uint64_t stores = space_.stores.size();
  const std::size_t store_idx = off % stores;
  off /= stores;
  std::uint64_t recv_count = 1;
  for (std::size_t i = 0; i < b.recv_len; ++i) recv_count *= alphabet_.size();
  Translation t;
  t.tau_recv = decode(off % recv_count, b.recv_len);
  t.tau_send = decode(off / recv_count, b.send_len);
  t.config = LockConfig(space_.k, space_.stores[store_idx], space_.pattern);
  return t;
}

std::vector<Translation> enumerate_candidates(const SearchSpace& space) {
  CandidateSpace cs(space);
  std::vector<Translation> out;
  out.reserve(cs.size());
  for (std::uint64_t i = 0; i < cs.size(); ++i) out.push_back(cs.at(i));
  return out;
}

// ---------------------------------------------------------------------------
// Index symmetry

namespace {

/// `perm[old] = new`, 1-based, perm[0] unused.
Translation relabel(const Translation& t, const std::vector<int>& perm) {
  Translation out = t;
  for (auto& a : out.tau_send) a.index = static_cast<std::uint8_t>(perm[a.index]);
  for (auto& a : out.tau_recv) a.index = static_cast<std::uint8_t>(perm[a.index]);
  const int k = t.config.k;
  Store store(k);
  BlockingPattern pattern(k);
  for (int i = 1; i <= k; ++i) {
    store.set(perm[i], t.config.initial_store[i]);
    pattern.set(perm[i], t.config.pattern[i]);
  }
  out.config = LockConfig(k, store, pattern);
  return out;
}

}  // namespace

Translation canonical_under_index_permutation(const Translation& t) {
  const int k = t.config.k;
  std::vector<int> perm(k + 1, 0);
  int next = 1;
  auto see = [&](const std::vector<LockAction>& seq) {
    for (auto a : seq) {
      if (perm[a.index] == 0) perm[a.index] = next++;
    }
  };
  see(t.tau_send);
  see(t.tau_recv);
  for (int i = 1; i <= k; ++i) {
    if (perm[i] == 0) perm[i] = next++;
  }
  return relabel(t, perm);
}

std::vector<Translation> index_permutations(const Translation& t) {
  const int k = t.config.k;
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 1);
  std::vector<Translation> out;
  do {
    std::vector<int> perm(k + 1, 0);
    for (int i = 0; i < k; ++i) perm[i + 1] = order[i];
    Translation r = relabel(t, perm);
    if (std::find(out.begin(), out.end(), r) == out.end()) {
      out.push_back(std::move(r));
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

bool symmetry_applicable(const SearchSpace& space) {
  const auto bits = space.pattern.bits();
  const bool uniform =
      bits == 0 || bits == static_cast<std::uint16_t>((1u << space.k) - 1);
  std::set<std::uint16_t> have;
  for (const auto& s : space.stores) have.insert(s.bits());
  return uniform && have.size() == (std::size_t{1} << space.k);
}

// ---------------------------------------------------------------------------
// Evaluation

CandidateOutcome evaluate_candidate(const SearchSpace& space,
                                    const std::vector<CorpusEntry>& corpus,
                                    std::uint64_t index, const Translation& t,
                                    bool symmetry) {
  CandidateOutcome o;
  o.index = index;
  o.translation = t;
  if (symmetry && !(canonical_under_index_permutation(t) == t)) {
    o.status = CandidateStatus::SkippedSymmetric;
    return o;
  }
  o.blocking = translation_blocking_type(t);
  if (space.filters_enabled) {
    try {
      o.failed_filter = run_filters(t, space.budget).first_failure();
    } catch (const StateBudgetExceeded&) {
      o.status = CandidateStatus::Inconclusive;
      o.inconclusive_entry = "filter:joint-consumption";
      return o;
    }
    if (!o.failed_filter.empty() && !space.verify_filters) {
      o.status = CandidateStatus::RefutedByFilter;
      return o;
    }
  }
  RefuteOptions ro;
  ro.budget = space.budget;
  ro.with_witness = false;
  Verdict v = check_translation(t, corpus, ro);
  o.states = v.states_total;
  switch (v.status) {
    case VerdictStatus::Survived:
      o.status = CandidateStatus::Survived;
      break;
    case VerdictStatus::Refuted:
      o.status = CandidateStatus::Refuted;
      o.counterexample = std::move(v.counterexamples.front());
      break;
    case VerdictStatus::Inconclusive:
      o.status = CandidateStatus::Inconclusive;
      o.inconclusive_entry = v.inconclusive_entry;
      break;
  }
  return o;
}

namespace {

void merge(SearchReport& r, const CandidateOutcome& o) {
  ++r.candidates_total;
  r.states_total += o.states;
  switch (o.status) {
    case CandidateStatus::SkippedSymmetric:
      ++r.symmetric_skipped;
      break;
    case CandidateStatus::RefutedByFilter:
      ++r.refuted;
      ++r.refuted_by_filter;
      ++r.histogram["filter:" + o.failed_filter];
      break;
    case CandidateStatus::Refuted:
      ++r.refuted;
      ++r.histogram[o.counterexample->entry_name];
      break;
    case CandidateStatus::Inconclusive:
      ++r.inconclusive;
      r.inconclusive_candidates.push_back(o.translation);
      break;
    case CandidateStatus::Survived: {
      std::string notes;
      if (!o.failed_filter.empty()) {
        notes = "fails filter " + o.failed_filter;
        r.filter_violations.push_back(o.translation);
      }
      r.survivors.push_back({o.translation, o.blocking, std::move(notes)});
      break;
    }
  }
}

}  // namespace

SearchReport run_search(const SearchSpace& space,
                        const std::vector<CorpusEntry>& corpus,
                        const SearchOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  CandidateSpace cs(space);
  const bool symmetry = space.symmetry_reduction && symmetry_applicable(space);
  const std::string fingerprint = space_fingerprint(space, corpus);

  SearchReport report;
  std::uint64_t next = 0;
  if (!opts.checkpoint_path.empty()) {
    if (auto cp = checkpoint_read(opts.checkpoint_path, fingerprint)) {
      report = std::move(cp->partial);
      next = cp->next_index;
    }
  }
  report.symmetry_applied = symmetry;
  const double prior_seconds = report.wall_seconds;

  const std::size_t workers = std::max<std::size_t>(1, opts.workers);
  constexpr std::uint64_t kChunk = 64;
  const std::uint64_t batch = kChunk * workers * 16;
  std::uint64_t end = cs.size();
  if (opts.stop_after) end = std::min(end, next + *opts.stop_after);

  auto last_save = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return prior_seconds + std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start)
                               .count();
  };
  auto save = [&] {
    if (opts.checkpoint_path.empty()) return;
    report.wall_seconds = elapsed();
    checkpoint_write(opts.checkpoint_path, fingerprint, {next, report});
    last_save = std::chrono::steady_clock::now();
  };

  std::vector<CandidateOutcome> outcomes;
  while (next < end) {
    const std::uint64_t lo = next;
    const std::uint64_t hi = std::min(end, lo + batch);
    outcomes.assign(hi - lo, CandidateOutcome{});
    auto work = [&](std::uint64_t i) {
      outcomes[i - lo] =
          evaluate_candidate(space, corpus, i, cs.at(i), symmetry);
    };
    if (workers == 1) {
      for (std::uint64_t i = lo; i < hi; ++i) work(i);
    } else {
      std::atomic<std::uint64_t> cursor{lo};
      std::exception_ptr failure;
      std::mutex failure_mu;
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          try {
            for (;;) {
              const std::uint64_t c = cursor.fetch_add(kChunk);
              if (c >= hi) break;
              for (std::uint64_t i = c; i < std::min(hi, c + kChunk); ++i) {
                work(i);
              }
            }
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      if (failure) std::rethrow_exception(failure);
    }
    for (const auto& o : outcomes) {
      merge(report, o);
      if (opts.on_candidate && o.status != CandidateStatus::SkippedSymmetric) {
        opts.on_candidate(o);
      }
    }
    next = hi;
    if (std::chrono::steady_clock::now() - last_save > std::chrono::seconds(10)) {
      save();
    }
  }
  save();
  report.wall_seconds = elapsed();
  return report;
}

// ---------------------------------------------------------------------------
// Fingerprint, checkpoints and JSON

std::string space_fingerprint(const SearchSpace& space,
                              const std::vector<CorpusEntry>& corpus) {
  std::ostringstream os;
  os << "k=" << space.k << " min_len=" << space.min_length
     << " max_len=" << space.max_length << " stores=";
  for (std::size_t i = 0; i < space.stores.size(); ++i) {
    if (i > 0) os << ',';
    os << render(space.stores[i]);
  }
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(corpus_digest(corpus)));
  os << " pattern=" << render(space.pattern)
     << " filters=" << space.filters_enabled
     << " verify=" << space.verify_filters
     << " symmetry=" << space.symmetry_reduction
     << " budget=" << space.budget << " corpus=" << digest;
  return os.str();
}

namespace {

constexpr std::string_view kCheckpointMagic = "synclock-checkpoint-v1 ";

json translation_json(const Translation& t) {
  return {{"send", render(t.tau_send)},
          {"recv", render(t.tau_recv)},
          {"k", t.config.k},
          {"store", render(t.config.initial_store)},
          {"pattern", render(t.config.pattern)}};
}

Translation translation_from_json(const json& j) {
  return make_translation(j.at("send").get<std::string>(),
                          j.at("recv").get<std::string>(), j.at("k").get<int>(),
                          j.at("store").get<std::string>(),
                          j.at("pattern").get<std::string>());
}

json class_json(ConvergenceClass c) {
  return {{"may", c.may()}, {"must", c.must()}};
}

BlockingType blocking_from_string(const std::string& s) {
  if (s == "N") return {};
  if (s.size() == 2 && (s[0] == 'S' || s[0] == 'D')) {
    return {s[0] == 'S' ? BlockingType::Kind::Single
                        : BlockingType::Kind::Double,
            s[1] - '0'};
  }
  throw std::invalid_argument("bad blocking type " + s);
}

json report_to_json(const SearchReport& r, bool include_time) {
  json survivors = json::array();
  for (const auto& s : r.survivors) {
    json j = translation_json(s.translation);
    j["blocking_type"] = {render(s.blocking.first), render(s.blocking.second)};
    j["notes"] = s.notes;
    survivors.push_back(std::move(j));
  }
  json inconclusive = json::array();
  for (const auto& t : r.inconclusive_candidates) {
    inconclusive.push_back(translation_json(t));
  }
  json violations = json::array();
  for (const auto& t : r.filter_violations) {
    violations.push_back(translation_json(t));
  }
  json j = {{"report", true},
            {"candidates_total", r.candidates_total},
            {"symmetric_skipped", r.symmetric_skipped},
            {"refuted", r.refuted},
            {"refuted_by_filter", r.refuted_by_filter},
            {"inconclusive", r.inconclusive},
            {"survivor_count", r.survivors.size()},
            {"survivors", std::move(survivors)},
            {"inconclusive_candidates", std::move(inconclusive)},
            {"filter_violations", std::move(violations)},
            {"histogram", r.histogram},
            {"states_total", r.states_total},
            {"symmetry_applied", r.symmetry_applied}};
  if (include_time) j["wall_seconds"] = r.wall_seconds;
  return j;
}

SearchReport report_from_json(const json& j) {
  SearchReport r;
  r.candidates_total = j.at("candidates_total").get<std::uint64_t>();
  r.symmetric_skipped = j.at("symmetric_skipped").get<std::uint64_t>();
  r.refuted = j.at("refuted").get<std::uint64_t>();
  r.refuted_by_filter = j.at("refuted_by_filter").get<std::uint64_t>();
  r.inconclusive = j.at("inconclusive").get<std::uint64_t>();
  for (const auto& s : j.at("survivors")) {
    const auto& bt = s.at("blocking_type");
    r.survivors.push_back({translation_from_json(s),
                           {blocking_from_string(bt.at(0).get<std::string>()),
                            blocking_from_string(bt.at(1).get<std::string>())},
                           s.at("notes").get<std::string>()});
  }
  for (const auto& t : j.at("inconclusive_candidates")) {
    r.inconclusive_candidates.push_back(translation_from_json(t));
  }
  for (const auto& t : j.at("filter_violations")) {
    r.filter_violations.push_back(translation_from_json(t));
  }
  r.histogram = j.at("histogram").get<std::map<std::string, std::uint64_t>>();
  r.states_total = j.at("states_total").get<std::uint64_t>();
  r.symmetry_applied = j.at("symmetry_applied").get<bool>();
  r.wall_seconds = j.value("wall_seconds", 0.0);
  return r;
}

}  // namespace

void checkpoint_write(const std::string& path, const std::string& fingerprint,
                      const Checkpoint& cp) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp);
    out << kCheckpointMagic << fingerprint << '\n'
        << cp.next_index << '\n'
        << report_to_json(cp.partial, true).dump() << '\n';
    if (!out) throw CheckpointError("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> checkpoint_read(const std::string& path,
                                          const std::string& fingerprint) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header) || header.empty()) return std::nullopt;
  if (header.rfind(kCheckpointMagic, 0) != 0) {
    throw CheckpointError("not a synclock checkpoint: " + path);
  }
  if (header.substr(kCheckpointMagic.size()) != fingerprint) {
    throw CheckpointError("checkpoint " + path +
                          " belongs to a different search space");
  }
  std::string index_line;
  std::string body;
  if (!std::getline(in, index_line) || !std::getline(in, body)) {
    throw CheckpointError("truncated checkpoint " + path);
  }
  Checkpoint cp;
  try {
    std::size_t used = 0;
    cp.next_index = std::stoull(index_line, &used);
    if (used != index_line.size()) throw std::invalid_argument("index");
    cp.partial = report_from_json(json::parse(body));
  } catch (const std::exception& e) {
    throw CheckpointError("corrupt checkpoint " + path + ": " + e.what());
  }
  return cp;
}

std::string candidate_json(const CandidateOutcome& o) {
  json j = translation_json(o.translation);
  switch (o.status) {
    case CandidateStatus::Survived: j["verdict"] = "survived"; break;
    case CandidateStatus::Refuted:
    case CandidateStatus::RefutedByFilter: j["verdict"] = "refuted"; break;
    case CandidateStatus::Inconclusive: j["verdict"] = "inconclusive"; break;
    case CandidateStatus::SkippedSymmetric: j["verdict"] = "skipped"; break;
  }
  j["blocking_type"] = {render(o.blocking.first), render(o.blocking.second)};
  if (o.counterexample) {
    const auto& c = *o.counterexample;
    j["counterexample"] = {{"name", c.entry_name},
                           {"process", render(c.process, true)},
                           {"expected", class_json(c.expected)},
                           {"observed", class_json(c.observed)},
                           {"kind", to_string(c.kind)}};
  }
  if (!o.failed_filter.empty()) j["filter"] = o.failed_filter;
  if (!o.inconclusive_entry.empty()) j["inconclusive_entry"] = o.inconclusive_entry;
  j["states"] = o.states;
  return j.dump();
}

std::string report_json(const SearchReport& r, bool include_time) {
  return report_to_json(r, include_time).dump();
}

}  // namespace synclock
