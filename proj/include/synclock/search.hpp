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

#ifndef SYNCLOCK_SEARCH_HPP_
#define SYNCLOCK_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "synclock/corpus.hpp"
#include "synclock/refuter.hpp"
#include "synclock/translation.hpp"

namespace synclock {

struct SearchSpace {
  int k = 1;
  std::size_t min_length = 2;
  std::size_t max_length = 2;
  std::vector<Store> stores;
  BlockingPattern pattern;
  bool filters_enabled = true;
  /// Corpus-check filter-failed candidates instead of counting them as
  /// refuted, so a wrong filter shows up as a survivor.
  bool verify_filters = false;
  bool symmetry_reduction = true;
  std::size_t budget = kDefaultStateBudget;

  /// All 2^k stores in e<f lexicographic order.
  static std::vector<Store> all_stores(int k);
};

/// Random-access view of the candidate order: total length ascending, then
/// send length, then send and recv token-lexicographic (P1 < .. < Pk < T1 <
/// .. < Tk), then store in the order given.
class CandidateSpace {
 public:
  explicit CandidateSpace(const SearchSpace& space);

  std::uint64_t size() const { return total_; }
  Translation at(std::uint64_t index) const;

 private:
  struct Block {
    std::uint64_t first;
    std::size_t send_len;
    std::size_t recv_len;
  };

  std::vector<LockAction> decode(std::uint64_t code, std::size_t len) const;

  const SearchSpace& space_;
  std::vector<LockAction> alphabet_;
  std::vector<Block> blocks_;
  std::uint64_t total_ = 0;
};

/// Every candidate of `space` in enumeration order.
std::vector<Translation> enumerate_candidates(const SearchSpace& space);

/// Relabels lock indices by first occurrence in send·recv (unused indices
/// follow in ascending order) and permutes store and pattern alike.
Translation canonical_under_index_permutation(const Translation& t);

/// All distinct translations obtained by permuting lock indices.
std::vector<Translation> index_permutations(const Translation& t);

/// Whether symmetry reduction is sound for `space`: all stores are present
/// and the pattern treats every lock alike.
bool symmetry_applicable(const SearchSpace& space);

enum class CandidateStatus {
  SkippedSymmetric,
  Survived,
  Refuted,
  RefutedByFilter,
  Inconclusive
};

struct CandidateOutcome {
  std::uint64_t index = 0;
  Translation translation;
  CandidateStatus status = CandidateStatus::Survived;
  std::pair<BlockingType, BlockingType> blocking;
  /// Name of the first failing filter, if any.
  std::string failed_filter;
  std::optional<Counterexample> counterexample;
  std::string inconclusive_entry;
  std::size_t states = 0;
};

struct SurvivorRecord {
  Translation translation;
  std::pair<BlockingType, BlockingType> blocking;
  std::string notes;
};

struct SearchReport {
  std::uint64_t candidates_total = 0;
  std::uint64_t symmetric_skipped = 0;
  /// Includes refuted_by_filter.
  std::uint64_t refuted = 0;
  std::uint64_t refuted_by_filter = 0;
  std::uint64_t inconclusive = 0;
  std::vector<SurvivorRecord> survivors;
  std::vector<Translation> inconclusive_candidates;
  /// Candidates that fail a filter yet survive the corpus; only populated
  /// with verify_filters.
  std::vector<Translation> filter_violations;
  std::map<std::string, std::uint64_t> histogram;
  std::uint64_t states_total = 0;
  bool symmetry_applied = false;
  double wall_seconds = 0;
};

struct SearchOptions {
  std::size_t workers = 1;
  std::string checkpoint_path;
  /// Called in enumeration order for every non-skipped candidate.
  std::function<void(const CandidateOutcome&)> on_candidate;
  /// Stop after this many candidates (for interrupt/resume testing).
  std::optional<std::uint64_t> stop_after;
};

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluates one candidate: symmetry check, filters, then the corpus.
CandidateOutcome evaluate_candidate(const SearchSpace& space,
                                    const std::vector<CorpusEntry>& corpus,
                                    std::uint64_t index, const Translation& t,
                                    bool symmetry);

SearchReport run_search(const SearchSpace& space,
                        const std::vector<CorpusEntry>& corpus,
                        const SearchOptions& opts = {});

/// Identifies the space and corpus a checkpoint belongs to.
std::string space_fingerprint(const SearchSpace& space,
                              const std::vector<CorpusEntry>& corpus);

struct Checkpoint {
  std::uint64_t next_index = 0;
  SearchReport partial;
};

void checkpoint_write(const std::string& path, const std::string& fingerprint,
                      const Checkpoint& cp);
/// Returns nullopt for a missing or empty file. Throws CheckpointError on a
/// fingerprint mismatch or malformed contents.
std::optional<Checkpoint> checkpoint_read(const std::string& path,
                                          const std::string& fingerprint);

/// JSON Lines record for one candidate.
std::string candidate_json(const CandidateOutcome& o);
std::string report_json(const SearchReport& r, bool include_time = true);

}  // namespace synclock

#endif  // SYNCLOCK_SEARCH_HPP_
