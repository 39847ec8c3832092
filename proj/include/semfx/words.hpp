#pragma once

// Action words and finitely supported word-indexed maps. WordMap<Natural> is
// the free I/O semiring (a multiset of words); WordMap<C> for a commutative
// coefficient ring C is C (x) R^io, e.g. WordMap<Rational> for probability
// with I/O.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semfx/coefficient.hpp"
#include "semfx/error.hpp"

namespace semfx {

enum class LetterKind { Input, Output, Read, Write };

constexpr std::string_view letter_prefix(LetterKind kind) {
  switch (kind) {
    case LetterKind::Input: return "in_";
    case LetterKind::Output: return "out_";
    case LetterKind::Read: return "rd_";
    case LetterKind::Write: return "wr_";
  }
  return "";
}

struct Letter {
  LetterKind kind;
  std::string index;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline Letter in_letter(std::string i) { return {LetterKind::Input, std::move(i)}; }
inline Letter out_letter(std::string i) { return {LetterKind::Output, std::move(i)}; }
inline Letter rd_letter(std::string i) { return {LetterKind::Read, std::move(i)}; }
inline Letter wr_letter(std::string i) { return {LetterKind::Write, std::move(i)}; }

inline std::string to_text(const Letter& l) { return std::string(letter_prefix(l.kind)) + l.index; }

inline Letter parse_letter(std::string_view text) {
  for (auto kind : {LetterKind::Input, LetterKind::Output, LetterKind::Read, LetterKind::Write}) {
    auto prefix = letter_prefix(kind);
    if (text.size() > prefix.size() && text.substr(0, prefix.size()) == prefix) {
      return {kind, std::string(text.substr(prefix.size()))};
    }
  }
  throw Error(ErrorCode::InvalidValue, "not an action letter: '" + std::string(text) + "'");
}

using Word = std::vector<Letter>;

inline constexpr std::string_view kEmptyWordText = "ε";

/// Length-lexicographic order on words.
struct LengthLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

inline std::string to_text(const Word& w) {
  if (w.empty()) return std::string(kEmptyWordText);
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += '.';
    out += to_text(l);
  }
  return out;
}

/// Inverse of to_text; "" and "ε" both denote the empty word.
inline Word parse_word(std::string_view text) {
  Word w;
  if (text.empty() || text == kEmptyWordText) return w;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto dot = text.find('.', start);
    auto piece = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    w.push_back(parse_letter(piece));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return w;
}

inline Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

template <Coefficient C>
class WordMap {
 public:
  using coefficient_type = C;
  using Entries = std::map<Word, C, LengthLex>;

  WordMap() = default;

  static WordMap zero() { return WordMap(); }
  static WordMap one() { return single(Word{}, C::one()); }
  static WordMap constant(C c) { return single(Word{}, std::move(c)); }
  static WordMap single(Word w, C c) {
    WordMap out;
    out.add_entry(std::move(w), std::move(c));
    return out;
  }
  static WordMap letter(Letter l) { return single(Word{std::move(l)}, C::one()); }

  /// Drops zero coefficients and merges repeated words.
  static WordMap from_entries(const std::vector<std::pair<Word, C>>& entries) {
    WordMap out;
    for (const auto& [w, c] : entries) out.add_entry(w, c);
    return out;
  }

  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  C coefficient(const Word& w) const {
    auto it = entries_.find(w);
    return it == entries_.end() ? C::zero() : it->second;
  }

  void add_entry(Word w, C c) {
    if (c.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(std::move(w), c);
    if (!inserted) it->second = it->second + c;
  }

  /// Scales every coefficient; the scalar commutes with every word.
  WordMap scaled(const C& s) const {
    WordMap out;
    for (const auto& [w, c] : entries_) out.add_entry(w, s * c);
    return out;
  }

  /// Words beginning with `l`, with that letter removed.
  WordMap strip_prefix(const Letter& l) const {
    WordMap out;
    for (const auto& [w, c] : entries_) {
      if (!w.empty() && w.front() == l) out.add_entry(Word(w.begin() + 1, w.end()), c);
    }
    return out;
  }

  WordMap prefixed(const Letter& l) const {
    WordMap out;
    for (const auto& [w, c] : entries_) {
      Word nw;
      nw.reserve(w.size() + 1);
      nw.push_back(l);
      nw.insert(nw.end(), w.begin(), w.end());
      out.entries_.emplace(std::move(nw), c);
    }
    return out;
  }

  friend WordMap operator+(const WordMap& a, const WordMap& b) {
    WordMap out = a;
    for (const auto& [w, c] : b.entries_) out.add_entry(w, c);
    return out;
  }

  /// Concatenation product, a on the left.
  friend WordMap operator*(const WordMap& a, const WordMap& b) {
    WordMap out;
    for (const auto& [wa, ca] : a.entries_) {
      for (const auto& [wb, cb] : b.entries_) out.add_entry(concat(wa, wb), ca * cb);
    }
    return out;
  }

  friend bool operator==(const WordMap& a, const WordMap& b) { return a.entries_ == b.entries_; }

  /// e.g. `{out_a.in_1: 1/2, in_2: 1}` in length-lexicographic word order.
  friend std::string to_text(const WordMap& m) {
    std::string out = "{";
    bool first = true;
    for (const auto& [w, c] : m.entries_) {
      if (!first) out += ", ";
      first = false;
      out += to_text(w) + ": " + to_text(c);
    }
    return out + "}";
  }

 private:
  Entries entries_;
};

using WordMultiset = WordMap<Natural>;
using WordWeightFn = WordMap<Rational>;

}  // namespace semfx
