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

#include "synclock/syntax.hpp"

#include <cctype>
#include <optional>

namespace synclock {

namespace {

constexpr std::string_view kCheckMark = "\xE2\x9C\x93";  // U+2713

void check_k(int k) {
  if (k < 1 || k > kMaxLocks) {
    throw ParseError("lock count must be in 1.." + std::to_string(kMaxLocks),
                     0);
  }
}

/// Cursor over the input that skips ASCII whitespace.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what, pos_);
  }

  std::optional<Terminator> terminator() {
    if (accept("0")) return Terminator::Nil;
    if (accept("#") || accept(kCheckMark)) return Terminator::Success;
    return std::nullopt;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Shared driver for both grammars: `subproc ("|" subproc)*`, where each
/// subprocess is a run of actions and an optional terminator.
template <typename Action, typename ActionParser>
Process<Action> parse_process(std::string_view text,
                              ActionParser&& parse_action) {
  Scanner sc(text);
  if (sc.done()) sc.fail("empty process");
  std::vector<Subprocess<Action>> subs;
  for (;;) {
    Subprocess<Action> sub;
    while (auto a = parse_action(sc)) sub.actions.push_back(*a);
    sub.terminator = sc.terminator().value_or(Terminator::Nil);
    subs.push_back(std::move(sub));
    if (sc.done()) break;
    if (!sc.accept("|")) sc.fail("unexpected character");
  }
  return Process<Action>(std::move(subs));
}

std::optional<LockAction> parse_lock_token(Scanner& sc, int k) {
  const char c = sc.peek();
  if (c != 'P' && c != 'T') return std::nullopt;
  const std::size_t at = sc.pos();
  sc.advance();
  // The digit must follow the letter directly.
  const char d = sc.done() ? '\0' : sc.peek();
  if (sc.pos() != at + 1 || d < '0' || d > '9') {
    throw ParseError("expected lock index after P/T", at + 1);
  }
  const int index = d - '0';
  if (index < 1 || index > k) {
    throw ParseError("lock index " + std::to_string(index) +
                         " out of range 1.." + std::to_string(k),
                     at + 1);
  }
  sc.advance();
  return LockAction{c == 'P' ? LockOp::Put : LockOp::Take,
                    static_cast<std::uint8_t>(index)};
}

template <typename Action>
std::string render_sub(const Subprocess<Action>& s, bool space_before_term) {
  std::string out;
  for (const auto& a : s.actions) out += render(a);
  if (space_before_term && !s.actions.empty()) out += ' ';
  out += s.terminator == Terminator::Success ? "#" : "0";
  return out;
}

template <typename Action>
std::string render_proc(const Process<Action>& p, bool compact,
                        bool space_before_term) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += compact ? "|" : " | ";
    out += render_sub(p[i], space_before_term);
  }
  return out;
}

}  // namespace

Store::Store(int k, std::uint16_t full_bits)
    : k_(static_cast<std::uint8_t>(k)),
      bits_(static_cast<std::uint16_t>(full_bits & ((1u << k) - 1))) {
  if (k < 1 || k > kMaxLocks) throw std::invalid_argument("bad lock count");
}

Store::Store(std::initializer_list<Cell> cells)
    : Store(static_cast<int>(cells.size())) {
  int i = 1;
  for (Cell c : cells) set(i++, c);
}

BlockingPattern::BlockingPattern(int k, std::uint16_t take_bits)
    : k_(static_cast<std::uint8_t>(k)),
      bits_(static_cast<std::uint16_t>(take_bits & ((1u << k) - 1))) {
  if (k < 1 || k > kMaxLocks) throw std::invalid_argument("bad lock count");
}

BlockingPattern::BlockingPattern(std::initializer_list<BlockSide> sides)
    : BlockingPattern(static_cast<int>(sides.size())) {
  int i = 1;
  for (BlockSide s : sides) set(i++, s);
}

LockConfig::LockConfig(int k_, Store store, BlockingPattern pat)
    : k(k_), initial_store(store), pattern(pat) {
  if (store.k() != k || pat.k() != k) {
    throw std::invalid_argument("store and pattern must have length k");
  }
}

std::string render(SyncAction a) { return a == SyncAction::Send ? "!" : "?"; }

std::string render(LockAction a) {
  std::string out(1, a.op == LockOp::Put ? 'P' : 'T');
  out += static_cast<char>('0' + a.index);
  return out;
}

SyncProcess parse_sync_process(std::string_view text) {
  return parse_process<SyncAction>(
      text, [](Scanner& sc) -> std::optional<SyncAction> {
        if (sc.accept("!")) return SyncAction::Send;
        if (sc.accept("?")) return SyncAction::Recv;
        return std::nullopt;
      });
}

LockProcess parse_lock_process(std::string_view text, int k) {
  check_k(k);
  return parse_process<LockAction>(
      text, [k](Scanner& sc) { return parse_lock_token(sc, k); });
}

std::vector<LockAction> parse_lock_sequence(std::string_view text, int k) {
  check_k(k);
  Scanner sc(text);
  std::vector<LockAction> seq;
  while (auto a = parse_lock_token(sc, k)) seq.push_back(*a);
  if (!sc.done()) sc.fail("unexpected character in lock sequence");
  return seq;
}

Store parse_store(std::string_view text, int k) {
  check_k(k);
  if (text.size() != static_cast<std::size_t>(k)) {
    throw ParseError("store must have exactly " + std::to_string(k) +
                         " cells",
                     text.size());
  }
  Store s(k);
  for (int i = 0; i < k; ++i) {
    switch (text[i]) {
      case 'e': s.set(i + 1, Cell::Empty); break;
      case 'f': s.set(i + 1, Cell::Full); break;
      default: throw ParseError("store cells are 'e' or 'f'", i);
    }
  }
  return s;
}

BlockingPattern parse_pattern(std::string_view text, int k) {
  check_k(k);
  if (text.size() != static_cast<std::size_t>(k)) {
    throw ParseError("pattern must have exactly " + std::to_string(k) +
                         " entries",
                     text.size());
  }
  BlockingPattern p(k);
  for (int i = 0; i < k; ++i) {
    switch (text[i]) {
      case 'p': p.set(i + 1, BlockSide::PutBlocks); break;
      case 't': p.set(i + 1, BlockSide::TakeBlocks); break;
      default: throw ParseError("pattern entries are 'p' or 't'", i);
    }
  }
  return p;
}

std::string render(const SyncSubprocess& s) { return render_sub(s, false); }
std::string render(const LockSubprocess& s) { return render_sub(s, true); }

std::string render(const SyncProcess& p, bool compact) {
  return render_proc(p, compact, false);
}

std::string render(const LockProcess& p, bool compact) {
  return render_proc(p, compact, true);
}

std::string render(std::vector<LockAction> const& seq) {
  std::string out;
  for (auto a : seq) out += render(a);
  return out;
}

std::string render(const Store& s) {
  std::string out;
  for (int i = 1; i <= s.k(); ++i) out += s[i] == Cell::Full ? 'f' : 'e';
  return out;
}

std::string render(const BlockingPattern& p) {
  std::string out;
  for (int i = 1; i <= p.k(); ++i) {
    out += p[i] == BlockSide::TakeBlocks ? 't' : 'p';
  }
  return out;
}

}  // namespace synclock
