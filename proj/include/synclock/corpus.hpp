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

#ifndef SYNCLOCK_CORPUS_HPP_
#define SYNCLOCK_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "synclock/convergence.hpp"
#include "synclock/syntax.hpp"

namespace synclock {

struct CorpusEntry {
  std::string name;
  SyncProcess process;
  /// Source-side class, computed when the entry is built.
  ConvergenceClass expected;
  /// Total number of action symbols.
  std::size_t cost = 0;
};

struct CorpusSpec {
  bool include_named = true;
  std::size_t flat_max_subprocesses = 4;
  std::size_t enum_max_subprocesses = 3;
  std::size_t enum_max_depth = 3;
  std::size_t sender_family_max = 6;
};

/// Classifies `p` in the synchronous calculus and wraps it as an entry.
CorpusEntry make_entry(std::string name, SyncProcess p);

/// Counterexample processes used in the impossibility arguments.
std::vector<CorpusEntry> build_named_corpus(std::size_t sender_family_max = 6);

/// All multisets of 1..max_n subprocesses over {!0, ?0, !#, ?#}.
std::vector<CorpusEntry> enumerate_flat(std::size_t max_n);

/// All processes of 1..max_subprocs subprocesses with at most max_depth
/// actions each, both terminators.
std::vector<CorpusEntry> enumerate_bounded(std::size_t max_subprocs,
                                           std::size_t max_depth);

/// Union of the selected families, deduplicated by process (first name
/// wins, named entries first), ordered by cost, then subprocess count.
std::vector<CorpusEntry> assemble(const CorpusSpec& spec);

/// Deduplicates and orders an arbitrary entry list like `assemble`.
std::vector<CorpusEntry> normalize(std::vector<CorpusEntry> entries);

/// Corpus file: one process per line with an optional `name:` prefix;
/// `;` starts a comment. Throws ParseError with the line number folded
/// into the message.
std::vector<CorpusEntry> read_corpus(std::istream& in);
std::vector<CorpusEntry> load_corpus_file(const std::string& path);
void write_corpus(std::ostream& out, const std::vector<CorpusEntry>& corpus);

/// FNV-1a digest of the rendered corpus, used to fingerprint checkpoints.
std::uint64_t corpus_digest(const std::vector<CorpusEntry>& corpus);

}  // namespace synclock

#endif  // SYNCLOCK_CORPUS_HPP_
