#pragma once

// The theory of a coin with unknown bias: one binary operation c with
//   c(x,x) = x   and   c(c(w,x),c(y,z)) = c(c(w,y),c(x,z)).
// A term denotes the distribution sum_i P_i x_i over N[X,Xb] obtained from
// c(l,r) |-> X*l + Xb*r, and two terms are equal in the theory exactly when
// their denotations agree.

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semfx/dist.hpp"
#include "semfx/error.hpp"

namespace semfx {

struct CoinTerm {
  std::string var;               // set for variables
  std::vector<CoinTerm> branches;  // empty, or {heads, tails}

  static CoinTerm variable(std::string name) { return {std::move(name), {}}; }
  static CoinTerm flip(CoinTerm heads, CoinTerm tails) { return {{}, {std::move(heads), std::move(tails)}}; }

  bool is_var() const { return branches.empty(); }
  const CoinTerm& heads() const { return branches.at(0); }
  const CoinTerm& tails() const { return branches.at(1); }
  std::size_t size() const { return is_var() ? 1 : 1 + heads().size() + tails().size(); }

  friend bool operator==(const CoinTerm&, const CoinTerm&) = default;
  friend auto operator<=>(const CoinTerm& a, const CoinTerm& b) {
    if (auto c = a.var <=> b.var; c != 0) return c;
    return a.branches <=> b.branches;
  }
};

inline std::string to_text(const CoinTerm& t) {
  if (t.is_var()) return t.var;
  return "c(" + to_text(t.heads()) + "," + to_text(t.tails()) + ")";
}

/// Compact syntax `c(c(w,x),c(y,z))`; any other identifier is a variable.
inline CoinTerm parse_coin_term(std::string_view text) {
  struct Parser {
    std::string_view s;
    std::size_t pos = 0;
    [[noreturn]] void fail(const std::string& msg) const {
      throw Error(ErrorCode::SyntaxError, msg + " in coin term '" + std::string(s) + "'", 1, pos + 1);
    }
    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    void expect(char c) {
      skip();
      if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
      ++pos;
    }
    CoinTerm term() {
      skip();
      const std::size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
      if (start == pos) fail("expected a variable or c(...)");
      std::string name(s.substr(start, pos - start));
      skip();
      if (name == "c" && pos < s.size() && s[pos] == '(') {
        ++pos;
        CoinTerm l = term();
        expect(',');
        CoinTerm r = term();
        expect(')');
        return CoinTerm::flip(std::move(l), std::move(r));
      }
      return CoinTerm::variable(std::move(name));
    }
  };
  Parser p{text};
  CoinTerm t = p.term();
  p.skip();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  return t;
}

inline Dist coin_denote(const CoinTerm& t) {
  const SemiringTag tag = tags::bern();
  if (t.is_var()) return dist_unit(t.var, tag);
  const Dist l = coin_denote(t.heads());
  const Dist r = coin_denote(t.tails());
  Dist out = l.scaled_left(coin_generator(tag, PolyVar::X, false));
  for (const auto& [o, w] : r.weights()) out.add(o, coin_generator(tag, PolyVar::X, true) * w);
  return out;
}

inline bool coin_eq(const CoinTerm& a, const CoinTerm& b) { return coin_denote(a) == coin_denote(b); }

inline TheoryTag coin_theory() { return TheoryTag(tags::bern(), ClassKind::SingletonOne); }

}  // namespace semfx
