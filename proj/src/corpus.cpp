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

#include "synclock/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

#include "synclock/sync_semantics.hpp"

namespace synclock {

namespace {

SyncSubprocess sub(std::string_view text) {
  return parse_sync_process(text)[0];
}

/// Multisets of size n over `alphabet` (indices non-decreasing).
template <typename F>
void for_each_multiset(std::size_t alphabet, std::size_t n, F&& emit) {
  std::vector<std::size_t> idx(n, 0);
  if (n == 0) return;
  for (;;) {
    emit(idx);
    std::size_t i = n;
    while (i > 0 && idx[i - 1] + 1 == alphabet) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[i - 1];
  }
}

std::vector<CorpusEntry> multisets_over(const std::vector<SyncSubprocess>& alph,
                                        std::size_t max_n) {
  std::vector<CorpusEntry> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for_each_multiset(alph.size(), n, [&](const std::vector<std::size_t>& ix) {
      std::vector<SyncSubprocess> subs;
      for (auto i : ix) subs.push_back(alph[i]);
      SyncProcess p(std::move(subs));
      std::string name = render(p, true);
      out.push_back(make_entry(std::move(name), std::move(p)));
    });
  }
  return out;
}

}  // namespace

CorpusEntry make_entry(std::string name, SyncProcess p) {
  const auto cls = classify(SyncSystem{}, p);
  const std::size_t cost = p.action_count();
  return CorpusEntry{std::move(name), std::move(p), cls, cost};
}

std::vector<CorpusEntry> build_named_corpus(std::size_t sender_family_max) {
  std::vector<CorpusEntry> out;
  auto add = [&out](std::string name, std::string_view text) {
    out.push_back(make_entry(std::move(name), parse_sync_process(text)));
  };
  add("send-success", "!#");
  add("recv-success", "?#");
  add("send-success|recv", "!# | ?0");
  add("send|recv-success", "!0 | ?#");
  add("send-success|recv-success", "!# | ?#");
  add("double-both-success", "!!# | ??#");
  add("double-recv-success", "!!0 | ??#");
  add("double-send-success", "!!# | ??0");
  for (std::size_t n = 1; n <= sender_family_max; ++n) {
    std::vector<SyncSubprocess> senders(n, sub("!#"));
    std::vector<SyncSubprocess> with_recv = senders;
    with_recv.push_back(sub("?0"));
    out.push_back(make_entry("senders-" + std::to_string(n) + "|recv",
                             SyncProcess(std::move(with_recv))));
    out.push_back(make_entry("senders-" + std::to_string(n),
                             SyncProcess(std::move(senders))));
  }
  add("send-recv-success|recv", "!?# | ?0");
  add("recv-send-success|send", "?!# | !0");
  const char* blocks[] = {"!", "!", "?", "?"};
  for (int marked = 0; marked < 4; ++marked) {
    std::string text;
    for (int i = 0; i < 4; ++i) {
      if (i > 0) text += " | ";
      text += blocks[i];
      text += i == marked ? "#" : "0";
    }
    add("building-blocks-" + std::to_string(marked + 1), text);
  }
  add("send-recv|recv-success", "!?0 | ?#");
  add("extended-send-recv|recv-success", "!0 | ?0 | !?0 | ?#");
  add("mixed-example", "?!0 | !!# | ?0");
  return out;
}

std::vector<CorpusEntry> enumerate_flat(std::size_t max_n) {
  return multisets_over({sub("!0"), sub("?0"), sub("!#"), sub("?#")}, max_n);
}

std::vector<CorpusEntry> enumerate_bounded(std::size_t max_subprocs,
                                           std::size_t max_depth) {
  std::vector<SyncSubprocess> alph;
  for (std::size_t len = 0; len <= max_depth; ++len) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      SyncSubprocess s;
      for (std::size_t i = 0; i < len; ++i) {
        s.actions.push_back((bits >> (len - 1 - i)) & 1 ? SyncAction::Recv
                                                        : SyncAction::Send);
      }
      for (auto t : {Terminator::Nil, Terminator::Success}) {
        s.terminator = t;
        alph.push_back(s);
      }
    }
  }
  std::sort(alph.begin(), alph.end());
  return multisets_over(alph, max_subprocs);
}

std::vector<CorpusEntry> normalize(std::vector<CorpusEntry> entries) {
  std::vector<CorpusEntry> out;
  std::set<SyncProcess> seen;
  for (auto& e : entries) {
    if (seen.insert(e.process).second) out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const CorpusEntry& a, const CorpusEntry& b) {
                     if (a.cost != b.cost) return a.cost < b.cost;
                     if (a.process.size() != b.process.size()) {
                       return a.process.size() < b.process.size();
                     }
                     return a.process < b.process;
                   });
  return out;
}

std::vector<CorpusEntry> assemble(const CorpusSpec& spec) {
  std::vector<CorpusEntry> all;
  auto append = [&all](std::vector<CorpusEntry> v) {
    for (auto& e : v) all.push_back(std::move(e));
  };
  if (spec.include_named) append(build_named_corpus(spec.sender_family_max));
  if (spec.flat_max_subprocesses > 0) {
    append(enumerate_flat(spec.flat_max_subprocesses));
  }
  if (spec.enum_max_subprocesses > 0 && spec.enum_max_depth > 0) {
    append(enumerate_bounded(spec.enum_max_subprocesses, spec.enum_max_depth));
  }
  return normalize(std::move(all));
}

std::vector<CorpusEntry> read_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find(';'); c != std::string::npos) line.erase(c);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string name;
    std::string body = line;
    if (auto colon = line.find(':'); colon != std::string::npos) {
      name = line.substr(0, colon);
      body = line.substr(colon + 1);
      const auto b = name.find_first_not_of(" \t");
      const auto e = name.find_last_not_of(" \t");
      name = b == std::string::npos ? "" : name.substr(b, e - b + 1);
    }
    try {
      SyncProcess p = parse_sync_process(body);
      if (name.empty()) name = render(p, true);
      out.push_back(make_entry(std::move(name), std::move(p)));
    } catch (const ParseError& err) {
      throw ParseError("corpus line " + std::to_string(lineno) + ": " +
                           err.what(),
                       err.offset());
    }
  }
  return normalize(std::move(out));
}

std::vector<CorpusEntry> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open corpus file " + path);
  return read_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<CorpusEntry>& corpus) {
  for (const auto& e : corpus) {
    out << e.name << ": " << render(e.process, true) << " ; "
        << to_string(e.expected.kind()) << " cost=" << e.cost << '\n';
  }
}

std::uint64_t corpus_digest(const std::vector<CorpusEntry>& corpus) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& e : corpus) {
    for (char c : render(e.process, true)) {
      h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    }
    h = (h ^ '\n') * 1099511628211ull;
  }
  return h;
}

}  // namespace synclock
