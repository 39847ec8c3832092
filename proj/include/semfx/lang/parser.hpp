#pragma once

// Reader and static checker for .sfx programs.
//
//   program  ::= header* stmt* "return" expr
//   header   ::= "#io" "{" ident ("," ident)* "}" | "#state" "{" ident ("," ident)* "}"
//   stmt     ::= ident "<-" eff ";" | eff ";" | "case" ident "of" "{" branch (";" branch)* "}"
//   branch   ::= ident "->" "{" stmt* "}"
//   eff      ::= "flip" | "flipY" | "sample" "[" rat ":" ident ("," rat ":" ident)* "]"
//              | "input" | "output" ident | "read" | "write" ident | "score" rat
//
// `--` starts a comment. A `;` after the closing brace of a case is accepted.

#include <algorithm>
#include <cctype>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semfx/error.hpp"
#include "semfx/lang/ast.hpp"

namespace semfx::lang {

namespace parser_detail {

enum class Tok { Ident, Number, Header, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePos pos;
};

inline const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> k{"return", "case",   "of",   "flip",  "flipY", "sample",
                                                    "input",  "output", "read", "write", "score"};
  return k;
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.pos = {line, col};
    std::size_t len = 1;
    auto ident_char = [&](std::size_t k) {
      return k < src.size() && (std::isalnum(static_cast<unsigned char>(src[k])) || src[k] == '_');
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (ident_char(i + len)) ++len;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Number;
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
    } else if (c == '#') {
      t.kind = Tok::Header;
      while (ident_char(i + len)) ++len;
    } else if (src.substr(i, 2) == "<-" || src.substr(i, 2) == "->") {
      t.kind = Tok::Symbol;
      len = 2;
    } else if (std::string_view("{}[](),;:/").find(c) != std::string_view::npos) {
      t.kind = Tok::Symbol;
    } else {
      throw Error(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", line, col);
    }
    t.text = std::string(src.substr(i, len));
    out.push_back(std::move(t));
    advance(len);
  }
  Token end;
  end.pos = {line, col};
  out.push_back(end);
  return out;
}

class Reader {
 public:
  explicit Reader(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    while (peek().kind == Tok::Header) header(p);
    while (!is_ident("return")) {
      if (peek().kind == Tok::End) fail("expected 'return'");
      p.statements.push_back(statement());
    }
    next();
    p.result = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "' after the result");
    return p;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool is_ident(std::string_view s) const { return peek().kind == Tok::Ident && peek().text == s; }
  bool is_symbol(std::string_view s) const { return peek().kind == Tok::Symbol && peek().text == s; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg, peek().pos.line, peek().pos.column);
  }

  void expect(std::string_view sym) {
    if (!is_symbol(sym)) {
      fail("expected '" + std::string(sym) + "'" +
           (peek().kind == Tok::End ? " before end of input" : " but found '" + peek().text + "'"));
    }
    next();
  }

  std::string name(const char* what) {
    if (peek().kind != Tok::Ident) fail(std::string("expected ") + what);
    if (keywords().contains(peek().text)) fail("'" + peek().text + "' is a keyword, expected " + what);
    return next().text;
  }

  void header(Program& p) {
    const Token h = next();
    std::vector<std::string>* ids = nullptr;
    if (h.text == "#io") {
      if (p.has_io_header) throw Error(ErrorCode::SyntaxError, "duplicate #io header", h.pos.line, h.pos.column);
      p.has_io_header = true;
      ids = &p.io;
    } else if (h.text == "#state") {
      if (p.has_state_header) throw Error(ErrorCode::SyntaxError, "duplicate #state header", h.pos.line, h.pos.column);
      p.has_state_header = true;
      ids = &p.state;
    } else {
      throw Error(ErrorCode::SyntaxError, "unknown header '" + h.text + "'", h.pos.line, h.pos.column);
    }
    expect("{");
    while (true) {
      const Token at = peek();
      std::string id = name("an identifier");
      if (std::find(ids->begin(), ids->end(), id) != ids->end()) {
        throw Error(ErrorCode::SyntaxError, "'" + id + "' declared twice", at.pos.line, at.pos.column);
      }
      ids->push_back(std::move(id));
      if (is_symbol("}")) break;
      expect(",");
    }
    next();
  }

  Rational rational() {
    if (peek().kind != Tok::Number) fail("expected a number");
    const Token num = next();
    Natural n = Natural::parse(num.text);
    Natural d = Natural::one();
    if (is_symbol("/")) {
      next();
      if (peek().kind != Tok::Number) fail("expected a denominator");
      const Token den = next();
      d = Natural::parse(den.text);
      if (d.is_zero()) throw Error(ErrorCode::SyntaxError, "zero denominator", den.pos.line, den.pos.column);
    }
    return Rational(n, d);
  }

  bool at_effect() const {
    if (peek().kind != Tok::Ident) return false;
    static const std::set<std::string, std::less<>> e{"flip", "flipY", "sample", "input", "output", "read", "write", "score"};
    return e.contains(peek().text);
  }

  Effect effect() {
    Effect e;
    e.pos = peek().pos;
    if (!at_effect()) fail("expected an effect");
    const std::string kw = next().text;
    if (kw == "flip") {
      e.kind = EffectKind::Flip;
    } else if (kw == "flipY") {
      e.kind = EffectKind::FlipY;
    } else if (kw == "input") {
      e.kind = EffectKind::Input;
    } else if (kw == "read") {
      e.kind = EffectKind::Read;
    } else if (kw == "output" || kw == "write") {
      e.kind = kw == "output" ? EffectKind::Output : EffectKind::Write;
      e.target = name("a message or variable");
    } else if (kw == "score") {
      e.kind = EffectKind::Score;
      e.factor = rational();
    } else {
      e.kind = EffectKind::Sample;
      expect("[");
      while (true) {
        Rational w = rational();
        expect(":");
        e.choices.emplace_back(std::move(w), name("an atom"));
        if (is_symbol("]")) break;
        expect(",");
      }
      next();
    }
    return e;
  }

  Statement statement() {
    Statement s;
    s.pos = peek().pos;
    if (is_ident("case")) {
      next();
      s.kind = Statement::Kind::Case;
      s.var = name("a variable");
      if (!is_ident("of")) fail("expected 'of'");
      next();
      expect("{");
      while (true) {
        Branch b;
        b.atom = name("an atom");
        expect("->");
        expect("{");
        while (!is_symbol("}")) {
          if (peek().kind == Tok::End) fail("unterminated branch");
          b.body.push_back(statement());
        }
        next();
        s.branches.push_back(std::move(b));
        if (is_symbol("}")) break;
        expect(";");
      }
      next();
      if (is_symbol(";")) next();
      return s;
    }
    if (at_effect()) {
      s.kind = Statement::Kind::Do;
      s.effect = effect();
    } else {
      s.kind = Statement::Kind::Bind;
      s.var = name("a statement");
      expect("<-");
      s.effect = effect();
    }
    expect(";");
    return s;
  }

  Expr expr() {
    Expr e;
    if (is_symbol("(")) {
      next();
      e.tuple = true;
      if (is_symbol(")")) {
        next();
        return e;
      }
      while (true) {
        e.items.push_back(expr());
        if (is_symbol(")")) break;
        expect(",");
      }
      next();
      return e;
    }
    e.name = name("a variable or tuple");
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ", ") + x;
  return out;
}

}  // namespace parser_detail

/// Possible atoms of every visible variable.
using Scope = std::map<std::string, std::set<std::string>>;

inline const std::string kUnitAtom = "()";

/// Atoms an effect can return; input/read range over the declared indices.
inline std::set<std::string> effect_atoms(const Effect& e, const Program& p) {
  switch (e.kind) {
    case EffectKind::Flip:
    case EffectKind::FlipY: return {"H", "T"};
    case EffectKind::Sample: {
      std::set<std::string> s;
      for (const auto& [w, a] : e.choices) s.insert(a);
      return s;
    }
    case EffectKind::Input: return {p.io.begin(), p.io.end()};
    case EffectKind::Read: return {p.state.begin(), p.state.end()};
    default: return {kUnitAtom};
  }
}

namespace parser_detail {

inline void check_target(const Effect& e, const Scope& scope, const std::vector<std::string>& declared,
                         const char* header) {
  const std::set<std::string> decl(declared.begin(), declared.end());
  auto it = scope.find(e.target);
  if (it == scope.end()) {
    if (!decl.contains(e.target)) {
      throw Error(ErrorCode::ScopeError, "'" + e.target + "' is neither a bound variable nor declared in #" + header,
                  e.pos.line, e.pos.column);
    }
    return;
  }
  for (const auto& a : it->second) {
    if (!decl.contains(a)) {
      throw Error(ErrorCode::ScopeError,
                  "variable '" + e.target + "' may hold '" + a + "', which is not declared in #" + header, e.pos.line,
                  e.pos.column);
    }
  }
}

inline void check_effect(const Effect& e, const Scope& scope, const Program& p) {
  switch (e.kind) {
    case EffectKind::Input:
      if (p.io.empty()) throw Error(ErrorCode::ScopeError, "input needs an #io header", e.pos.line, e.pos.column);
      return;
    case EffectKind::Read:
      if (p.state.empty()) throw Error(ErrorCode::ScopeError, "read needs a #state header", e.pos.line, e.pos.column);
      return;
    case EffectKind::Output: check_target(e, scope, p.io, "io"); return;
    case EffectKind::Write: check_target(e, scope, p.state, "state"); return;
    case EffectKind::Sample: {
      Rational total;
      for (const auto& [w, a] : e.choices) {
        if (w.is_zero()) {
          throw Error(ErrorCode::NormalizationError, "sample weight for '" + a + "' must be positive", e.pos.line,
                      e.pos.column);
        }
        total = total + w;
      }
      if (!total.is_one()) {
        throw Error(ErrorCode::NormalizationError, "sample weights sum to " + total.str() + ", not 1", e.pos.line,
                    e.pos.column);
      }
      return;
    }
    default: return;
  }
}

inline void check_block(const std::vector<Statement>& stmts, Scope& scope, const Program& p) {
  for (const auto& s : stmts) {
    switch (s.kind) {
      case Statement::Kind::Do: check_effect(s.effect, scope, p); break;
      case Statement::Kind::Bind:
        check_effect(s.effect, scope, p);
        if (scope.contains(s.var)) {
          throw Error(ErrorCode::ScopeError, "variable '" + s.var + "' is already bound", s.pos.line, s.pos.column);
        }
        scope[s.var] = effect_atoms(s.effect, p);
        break;
      case Statement::Kind::Case: {
        auto it = scope.find(s.var);
        if (it == scope.end()) {
          throw Error(ErrorCode::ScopeError, "case on unbound variable '" + s.var + "'", s.pos.line, s.pos.column);
        }
        const std::set<std::string> atoms = it->second;
        std::set<std::string> covered;
        for (const auto& b : s.branches) {
          if (!covered.insert(b.atom).second) {
            throw Error(ErrorCode::ScopeError, "duplicate branch '" + b.atom + "'", s.pos.line, s.pos.column);
          }
        }
        if (covered != atoms) {
          std::set<std::string> missing, extra;
          std::set_difference(atoms.begin(), atoms.end(), covered.begin(), covered.end(),
                              std::inserter(missing, missing.end()));
          std::set_difference(covered.begin(), covered.end(), atoms.begin(), atoms.end(),
                              std::inserter(extra, extra.end()));
          std::string msg = "branches of case '" + s.var + "' must cover exactly {" + join(atoms) + "}";
          if (!missing.empty()) msg += "; missing " + join(missing);
          if (!extra.empty()) msg += "; unreachable " + join(extra);
          throw Error(ErrorCode::ScopeError, msg, s.pos.line, s.pos.column);
        }
        std::optional<Scope> common;
        for (const auto& b : s.branches) {
          Scope inner = scope;
          inner[s.var] = {b.atom};
          check_block(b.body, inner, p);
          Scope fresh;
          for (auto& [v, a] : inner) {
            if (!scope.contains(v)) fresh.emplace(v, std::move(a));
          }
          if (!common) {
            common = std::move(fresh);
            continue;
          }
          Scope merged;
          for (auto& [v, a] : *common) {
            auto f = fresh.find(v);
            if (f == fresh.end()) continue;
            a.insert(f->second.begin(), f->second.end());
            merged.emplace(v, std::move(a));
          }
          common = std::move(merged);
        }
        for (auto& [v, a] : *common) scope.emplace(v, std::move(a));
        break;
      }
    }
  }
}

inline void check_expr(const Expr& e, const Scope& scope) {
  if (e.tuple) {
    for (const auto& i : e.items) check_expr(i, scope);
    return;
  }
  if (!scope.contains(e.name)) throw Error(ErrorCode::ScopeError, "unbound variable '" + e.name + "' in the result");
}

}  // namespace parser_detail

/// Scope and normalization checks; returns the variables visible at `return`.
inline Scope check_program(const Program& p) {
  Scope scope;
  parser_detail::check_block(p.statements, scope, p);
  parser_detail::check_expr(p.result, scope);
  return scope;
}

inline Program parse(std::string_view source) {
  Program p = parser_detail::Reader(parser_detail::lex(source)).program();
  check_program(p);
  return p;
}

}  // namespace semfx::lang
