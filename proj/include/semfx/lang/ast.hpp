#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "semfx/numbers.hpp"

namespace semfx::lang {

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class EffectKind { Flip, FlipY, Sample, Input, Output, Read, Write, Score };

struct Effect {
  EffectKind kind = EffectKind::Flip;
  std::vector<std::pair<Rational, std::string>> choices;  // Sample
  std::string target;                                     // Output / Write
  Rational factor;                                        // Score
  SourcePos pos;

  friend bool operator==(const Effect& a, const Effect& b) {
    return a.kind == b.kind && a.choices == b.choices && a.target == b.target && a.factor == b.factor;
  }
};

struct Statement;

struct Branch {
  std::string atom;
  std::vector<Statement> body;
  friend bool operator==(const Branch&, const Branch&) = default;
};

struct Statement {
  enum class Kind { Bind, Do, Case };
  Kind kind = Kind::Do;
  std::string var;  // Bind: bound variable; Case: scrutinee
  Effect effect;
  std::vector<Branch> branches;
  SourcePos pos;

  friend bool operator==(const Statement& a, const Statement& b) {
    return a.kind == b.kind && a.var == b.var && a.effect == b.effect && a.branches == b.branches;
  }
};

/// A variable, or a tuple of expressions (the empty tuple is `()`).
struct Expr {
  bool tuple = false;
  std::string name;
  std::vector<Expr> items;
  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Program {
  std::vector<std::string> io;
  std::vector<std::string> state;
  bool has_io_header = false;
  bool has_state_header = false;
  std::vector<Statement> statements;
  Expr result;

  friend bool operator==(const Program&, const Program&) = default;
};

/// Number of components of the result: 1 for a variable, n for an n-tuple.
inline std::size_t result_arity(const Program& p) { return p.result.tuple ? p.result.items.size() : 1; }

inline std::string effect_keyword(EffectKind k) {
  switch (k) {
    case EffectKind::Flip: return "flip";
    case EffectKind::FlipY: return "flipY";
    case EffectKind::Sample: return "sample";
    case EffectKind::Input: return "input";
    case EffectKind::Output: return "output";
    case EffectKind::Read: return "read";
    case EffectKind::Write: return "write";
    case EffectKind::Score: return "score";
  }
  return "";
}

inline std::string to_source(const Effect& e) {
  switch (e.kind) {
    case EffectKind::Sample: {
      std::string s = "sample [";
      for (std::size_t i = 0; i < e.choices.size(); ++i) {
        if (i) s += ", ";
        s += e.choices[i].first.str() + ": " + e.choices[i].second;
      }
      return s + "]";
    }
    case EffectKind::Output:
    case EffectKind::Write: return effect_keyword(e.kind) + " " + e.target;
    case EffectKind::Score: return "score " + e.factor.str();
    default: return effect_keyword(e.kind);
  }
}

inline std::string to_source(const Expr& e) {
  if (!e.tuple) return e.name;
  std::string s = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) s += ", ";
    s += to_source(e.items[i]);
  }
  return s + ")";
}

inline void append_source(std::string& out, const Statement& s, std::size_t indent) {
  const std::string pad(indent, ' ');
  switch (s.kind) {
    case Statement::Kind::Bind: out += pad + s.var + " <- " + to_source(s.effect) + ";\n"; return;
    case Statement::Kind::Do: out += pad + to_source(s.effect) + ";\n"; return;
    case Statement::Kind::Case:
      out += pad + "case " + s.var + " of {\n";
      for (std::size_t i = 0; i < s.branches.size(); ++i) {
        out += pad + "  " + s.branches[i].atom + " -> {\n";
        for (const auto& b : s.branches[i].body) append_source(out, b, indent + 4);
        out += pad + "  }" + (i + 1 < s.branches.size() ? ";" : "") + "\n";
      }
      out += pad + "}\n";
      return;
  }
}

inline std::string header_source(const std::string& name, const std::vector<std::string>& ids) {
  std::string s = "#" + name + " {";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + ids[i];
  return s + "}\n";
}

/// Source text that parses back to the same program.
inline std::string to_source(const Program& p) {
  std::string out;
  if (p.has_io_header) out += header_source("io", p.io);
  if (p.has_state_header) out += header_source("state", p.state);
  for (const auto& s : p.statements) append_source(out, s, 0);
  out += "return " + to_source(p.result) + "\n";
  return out;
}

}  // namespace semfx::lang
