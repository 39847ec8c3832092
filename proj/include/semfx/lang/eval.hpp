#pragma once

// Effect inference, theory selection, and the denotational evaluator. A
// program denotes a Dist over its result tuples; weights are products of the
// effect coefficients along each execution path, in the order they happen.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "semfx/dist.hpp"
#include "semfx/error.hpp"
#include "semfx/lang/ast.hpp"
#include "semfx/lang/parser.hpp"
#include "semfx/semiring.hpp"
#include "semfx/state.hpp"

namespace semfx::lang {

enum class EffectFamily { Prob, Coin, CoinY, IO, State, Score };
using EffectSignature = std::set<EffectFamily>;

inline std::string family_name(EffectFamily f) {
  switch (f) {
    case EffectFamily::Prob: return "prob";
    case EffectFamily::Coin: return "coin";
    case EffectFamily::CoinY: return "coinY";
    case EffectFamily::IO: return "io";
    case EffectFamily::State: return "state";
    case EffectFamily::Score: return "score";
  }
  return "";
}

inline EffectFamily effect_family(EffectKind k) {
  switch (k) {
    case EffectKind::Flip: return EffectFamily::Coin;
    case EffectKind::FlipY: return EffectFamily::CoinY;
    case EffectKind::Sample: return EffectFamily::Prob;
    case EffectKind::Input:
    case EffectKind::Output: return EffectFamily::IO;
    case EffectKind::Read:
    case EffectKind::Write: return EffectFamily::State;
    case EffectKind::Score: return EffectFamily::Score;
  }
  return EffectFamily::Prob;
}

inline void collect_effects(const std::vector<Statement>& stmts, EffectSignature& sig) {
  for (const auto& s : stmts) {
    if (s.kind == Statement::Kind::Case) {
      for (const auto& b : s.branches) collect_effects(b.body, sig);
    } else {
      sig.insert(effect_family(s.effect.kind));
    }
  }
}

inline EffectSignature statement_effects(const Statement& s) {
  EffectSignature sig;
  collect_effects({s}, sig);
  return sig;
}

inline EffectSignature infer_effects(const Program& p) {
  EffectSignature sig;
  collect_effects(p.statements, sig);
  return sig;
}

inline nlohmann::json to_json(const EffectSignature& sig) {
  nlohmann::json j = nlohmann::json::array();
  for (auto f : sig) j.push_back(family_name(f));
  return j;
}

/// The theory a signature is interpreted in. Coin-like effects pick the
/// polynomial coefficients, sample and score make them rational, and io or
/// state choose the word or matrix shape; score drops normalization.
inline TheoryTag select_theory(const EffectSignature& sig, const std::vector<std::string>& io_index = {},
                               const std::vector<std::string>& state_index = {}) {
  const bool io = sig.contains(EffectFamily::IO);
  const bool state = sig.contains(EffectFamily::State);
  if (io && state) {
    throw Error(ErrorCode::UnsupportedCombination, "unsupported effect combination: io with state");
  }
  const bool rational = sig.contains(EffectFamily::Prob) || sig.contains(EffectFamily::Score);
  CoeffKind coeff = rational ? CoeffKind::Rat : CoeffKind::Nat;
  if (sig.contains(EffectFamily::CoinY)) {
    coeff = rational ? CoeffKind::RatBiBern : CoeffKind::BiBern;
  } else if (sig.contains(EffectFamily::Coin)) {
    coeff = rational ? CoeffKind::RatBern : CoeffKind::Bern;
  }
  SemiringTag tag{coeff, Shape::Scalar, 0, {}};
  ClassKind kind = ClassKind::SingletonOne;
  if (io) {
    tag = tags::words(coeff, io_index);
    kind = coeff == CoeffKind::Nat ? ClassKind::IOTreeClass : ClassKind::ProbIOTensorClass;
  } else if (state) {
    tag = tags::matrix(coeff, state_index);
    kind = coeff == CoeffKind::Nat ? ClassKind::FunctionMatrices : ClassKind::RowStochastic;
  }
  if (sig.contains(EffectFamily::Score)) kind = ClassKind::WholeSemiring;
  return TheoryTag(tag, kind);
}

namespace eval_detail {

/// First statement, in source order, at which io and state are both in use.
inline const Statement* first_conflict(const std::vector<Statement>& stmts, EffectSignature& seen) {
  for (const auto& s : stmts) {
    if (s.kind == Statement::Kind::Case) {
      for (const auto& b : s.branches) {
        if (const Statement* hit = first_conflict(b.body, seen)) return hit;
      }
      continue;
    }
    seen.insert(effect_family(s.effect.kind));
    if (seen.contains(EffectFamily::IO) && seen.contains(EffectFamily::State)) return &s;
  }
  return nullptr;
}

}  // namespace eval_detail

/// select_theory for a whole program; an unsupported mix is reported at the
/// statement that completes it.
inline TheoryTag program_theory(const Program& p) {
  EffectSignature seen;
  if (const Statement* s = eval_detail::first_conflict(p.statements, seen)) {
    throw Error(ErrorCode::UnsupportedCombination, "unsupported effect combination: io with state", s->pos.line,
                s->pos.column);
  }
  return select_theory(infer_effects(p), p.io, p.state);
}

/// Values of bound variables on one execution path.
using Env = std::map<std::string, std::string>;

inline std::string render_result(const Expr& e, const Env& env) {
  if (!e.tuple) {
    auto it = env.find(e.name);
    if (it == env.end()) throw Error(ErrorCode::ScopeError, "unbound variable '" + e.name + "' in the result");
    return it->second;
  }
  std::string s = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) s += (i ? "," : "") + render_result(e.items[i], env);
  return s + ")";
}

inline std::string resolve_target(const Effect& e, const Env& env) {
  auto it = env.find(e.target);
  return it == env.end() ? e.target : it->second;
}

/// One effect on its own: the Dist over the atoms it can return.
inline Dist denote_effect(const Effect& e, const Env& env, const TheoryTag& theory) {
  const SemiringTag& tag = theory.semiring;
  Dist d(tag);
  switch (e.kind) {
    case EffectKind::Flip:
    case EffectKind::FlipY: {
      const PolyVar v = e.kind == EffectKind::Flip ? PolyVar::X : PolyVar::Y;
      d.add("H", coin_generator(tag, v, false));
      d.add("T", coin_generator(tag, v, true));
      break;
    }
    case EffectKind::Sample:
      for (const auto& [w, a] : e.choices) d.add(a, constant_in(tag, w));
      break;
    case EffectKind::Input:
      for (const auto& i : tag.index) d.add(i, io_letter(tag, in_letter(i)));
      break;
    case EffectKind::Output: d.add(kUnitAtom, io_letter(tag, out_letter(resolve_target(e, env)))); break;
    case EffectKind::Read:
      for (const auto& i : tag.index) d.add(i, state_letter(tag, rd_letter(i)));
      break;
    case EffectKind::Write: d.add(kUnitAtom, state_letter(tag, wr_letter(resolve_target(e, env)))); break;
    case EffectKind::Score: d.add(kUnitAtom, constant_in(tag, e.factor)); break;
  }
  return d;
}

namespace eval_detail {

struct Frame {
  const std::vector<Statement>* block;
  std::size_t next;
};

/// Walks the rest of the program from the innermost frame outwards. When
/// `tree` is set, also builds the execution tree as a certificate: choices
/// for flip/sample, nodes for input/output.
class Evaluator {
 public:
  Evaluator(const Program& p, const TheoryTag& theory, bool build_tree)
      : program_(p), theory_(theory), coeff_(coefficient_tag(theory.semiring)), build_tree_(build_tree), out_(theory.semiring) {}

  ProbIOTree run(std::vector<Frame> stack, Env env, const SemiringValue& weight) {
    while (!stack.empty() && stack.back().next >= stack.back().block->size()) stack.pop_back();
    if (stack.empty()) {
      out_.add(render_result(program_.result, env), weight);
      return ProbIOTree::leaf();
    }
    const Statement& s = (*stack.back().block)[stack.back().next++];
    if (s.kind == Statement::Kind::Case) {
      const std::string& atom = env.at(s.var);
      auto b = std::find_if(s.branches.begin(), s.branches.end(), [&](const Branch& br) { return br.atom == atom; });
      if (b == s.branches.end()) throw Error(ErrorCode::MissingContinuation, "no branch for '" + atom + "'");
      stack.push_back({&b->body, 0});
      return run(std::move(stack), std::move(env), weight);
    }
    const Effect& e = s.effect;
    const Dist d = denote_effect(e, env, theory_);
    std::vector<std::pair<std::string, ProbIOTree>> children;
    for (const auto& [atom, w] : d.weights()) {
      Env next_env = env;
      if (s.kind == Statement::Kind::Bind) next_env[s.var] = atom;
      children.emplace_back(atom, run(stack, std::move(next_env), weight * w));
    }
    if (!build_tree_) return ProbIOTree::leaf();
    switch (e.kind) {
      case EffectKind::Output: return ProbIOTree::output(resolve_target(e, env), std::move(children.front().second));
      case EffectKind::Input: {
        std::vector<ProbIOTree> kids;
        for (const auto& i : theory_.semiring.index) {
          auto it = std::find_if(children.begin(), children.end(), [&](const auto& c) { return c.first == i; });
          kids.push_back(std::move(it->second));
        }
        return ProbIOTree::input(std::move(kids));
      }
      case EffectKind::Flip:
      case EffectKind::FlipY:
      case EffectKind::Sample: {
        std::vector<std::pair<SemiringValue, ProbIOTree>> branches;
        for (auto& [atom, t] : children) branches.emplace_back(choice_weight(e, atom), std::move(t));
        return ProbIOTree::choice(std::move(branches));
      }
      default: return children.empty() ? ProbIOTree::leaf() : std::move(children.front().second);
    }
  }

  Dist take() { return std::move(out_); }

 private:
  SemiringValue choice_weight(const Effect& e, const std::string& atom) const {
    if (e.kind == EffectKind::Sample) {
      Rational w;
      for (const auto& [r, a] : e.choices) {
        if (a == atom) w = w + r;
      }
      return constant_in(coeff_, w);
    }
    return coin_generator(coeff_, e.kind == EffectKind::Flip ? PolyVar::X : PolyVar::Y, atom == "T");
  }

  const Program& program_;
  const TheoryTag& theory_;
  SemiringTag coeff_;
  bool build_tree_;
  Dist out_;
};

}  // namespace eval_detail

struct Denotation {
  EffectSignature signature;
  TheoryTag theory;
  Dist dist;
  /// Execution tree, for theories whose class is presented by such trees.
  std::optional<ProbIOTree> certificate;
};

/// Denotation of statements[start..] with `env` already bound, in `theory`.
inline Dist denote_suffix(const Program& p, std::size_t start, const Env& env, const TheoryTag& theory) {
  eval_detail::Evaluator ev(p, theory, false);
  std::vector<eval_detail::Frame> stack{{&p.statements, start}};
  ev.run(std::move(stack), env, SemiringValue::one(theory.semiring));
  return ev.take();
}

inline Denotation denote(const Program& p) {
  const EffectSignature sig = infer_effects(p);
  TheoryTag theory = program_theory(p);
  const bool tree = theory.convexity.kind() == ClassKind::ProbIOTensorClass;
  eval_detail::Evaluator ev(p, theory, tree);
  ProbIOTree t = ev.run({{&p.statements, 0}}, {}, SemiringValue::one(theory.semiring));
  Denotation d{sig, theory, ev.take(), std::nullopt};
  if (tree) d.certificate = std::move(t);
  return d;
}

inline Dist denote_program(const Program& p) { return denote(p).dist; }

/// Membership of the total weight in the theory's class, using the
/// evaluator's certificate when there is one.
inline MembershipResult denotation_membership(const Denotation& d) {
  Certificate c;
  if (d.certificate) c = *d.certificate;
  return in_subtheory(d.dist, d.theory, c);
}

inline nlohmann::json to_json(const Denotation& d) {
  nlohmann::json j = to_json(d.dist, d.theory);
  j["effects"] = to_json(d.signature);
  j["total"] = to_text(total_weight(d.dist));
  const MembershipResult m = denotation_membership(d);
  j["membership"] = std::string(membership_name(m.verdict));
  if (d.certificate) j["certificate"] = to_json(*d.certificate);
  return j;
}

inline std::string to_text(const Denotation& d) {
  std::string s = "theory: " + tag_name(d.theory.semiring);
  if (!d.theory.semiring.index.empty()) {
    s += " {";
    for (std::size_t i = 0; i < d.theory.semiring.index.size(); ++i) s += (i ? "," : "") + d.theory.semiring.index[i];
    s += "}";
  }
  s += " / " + std::string(class_name(d.theory.convexity.kind())) + "\n";
  for (const auto& [o, w] : d.dist.weights()) s += "  " + o + " -> " + to_text(w) + "\n";
  if (d.dist.empty()) s += "  (no outcomes)\n";
  return s;
}

// ---------------------------------------------------------------------------
// Reordering.

namespace eval_detail {

inline void collect_vars(const Statement& s, std::set<std::string>& bound, std::set<std::string>& used) {
  switch (s.kind) {
    case Statement::Kind::Bind:
      bound.insert(s.var);
      [[fallthrough]];
    case Statement::Kind::Do:
      if (s.effect.kind == EffectKind::Output || s.effect.kind == EffectKind::Write) used.insert(s.effect.target);
      return;
    case Statement::Kind::Case:
      used.insert(s.var);
      for (const auto& b : s.branches) {
        for (const auto& inner : b.body) collect_vars(inner, bound, used);
      }
      return;
  }
}

inline bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& x) { return b.contains(x); });
}

}  // namespace eval_detail

/// True when neither statement binds a name the other binds or mentions.
inline bool independent(const Statement& a, const Statement& b) {
  std::set<std::string> bound_a, used_a, bound_b, used_b;
  eval_detail::collect_vars(a, bound_a, used_a);
  eval_detail::collect_vars(b, bound_b, used_b);
  return !eval_detail::intersects(bound_a, used_b) && !eval_detail::intersects(bound_b, used_a) &&
         !eval_detail::intersects(bound_a, bound_b);
}

/// Exchanges top-level statements k and k+1 (0-based).
inline Program swap_adjacent(const Program& p, std::size_t k) {
  if (k + 1 >= p.statements.size()) {
    throw Error(ErrorCode::OutOfRange, "cannot swap statement " + std::to_string(k) + " with its successor: the program has " +
                                           std::to_string(p.statements.size()) + " statements");
  }
  const Statement& a = p.statements[k];
  const Statement& b = p.statements[k + 1];
  if (!independent(a, b)) {
    throw Error(ErrorCode::DataDependence, "statements " + std::to_string(k) + " and " + std::to_string(k + 1) +
                                               " share a variable", b.pos.line, b.pos.column);
  }
  Program q = p;
  std::swap(q.statements[k], q.statements[k + 1]);
  return q;
}

// ---------------------------------------------------------------------------
// Equivalence.

struct EquivResult {
  bool equal = false;
  TheoryTag theory;
  /// First outcome (in outcome order) where the weights differ.
  std::optional<std::string> outcome;
  std::string left;
  std::string right;
};

inline EquivResult equiv(const Program& p1, const Program& p2) {
  const EffectSignature s1 = infer_effects(p1);
  const EffectSignature s2 = infer_effects(p2);
  auto sig_text = [](const EffectSignature& s) { return to_json(s).dump(); };
  if (s1 != s2) {
    throw Error(ErrorCode::SignatureMismatch, "effect signatures differ: " + sig_text(s1) + " vs " + sig_text(s2));
  }
  if (result_arity(p1) != result_arity(p2)) {
    throw Error(ErrorCode::SignatureMismatch, "result arities differ: " + std::to_string(result_arity(p1)) + " vs " +
                                                  std::to_string(result_arity(p2)));
  }
  const TheoryTag t1 = program_theory(p1);
  const TheoryTag t2 = program_theory(p2);
  if (!(t1 == t2)) {
    throw Error(ErrorCode::SignatureMismatch, "declared indices differ: " + to_json(t1).dump() + " vs " + to_json(t2).dump());
  }
  const Dist d1 = denote_program(p1);
  const Dist d2 = denote_program(p2);
  EquivResult r{d1 == d2, t1, std::nullopt, {}, {}};
  if (r.equal) return r;
  std::set<std::string> outcomes;
  for (const auto& [o, w] : d1.weights()) outcomes.insert(o);
  for (const auto& [o, w] : d2.weights()) outcomes.insert(o);
  for (const auto& o : outcomes) {
    const SemiringValue a = d1.weight(o);
    const SemiringValue b = d2.weight(o);
    if (!(a == b)) {
      r.outcome = o;
      r.left = to_text(a);
      r.right = to_text(b);
      break;
    }
  }
  return r;
}

inline nlohmann::json to_json(const EquivResult& r) {
  nlohmann::json j{{"equivalent", r.equal}, {"theory", to_json(r.theory)}};
  if (r.outcome) j["witness"] = {{"outcome", *r.outcome}, {"left", r.left}, {"right", r.right}};
  return j;
}

}  // namespace semfx::lang
