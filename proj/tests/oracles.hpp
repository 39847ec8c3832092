#pragma once

// Reference implementations used only by the tests. None of them share code
// with the library's canonical forms.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "semfx/semfx.hpp"

namespace oracle {

using semfx::Natural;
using semfx::Rational;

// ---------------------------------------------------------------------------
// Expression trees over N[X,Xb], evaluated numerically at X = p, Xb = 1 - p.

struct Expr {
  enum class Op { Const, X, Xb, Add, Mul } op = Op::Const;
  std::uint64_t value = 0;
  std::shared_ptr<Expr> l, r;
};
using ExprPtr = std::shared_ptr<Expr>;

inline ExprPtr constant(std::uint64_t v) { return std::make_shared<Expr>(Expr{Expr::Op::Const, v, nullptr, nullptr}); }
inline ExprPtr var_x() { return std::make_shared<Expr>(Expr{Expr::Op::X, 0, nullptr, nullptr}); }
inline ExprPtr var_xb() { return std::make_shared<Expr>(Expr{Expr::Op::Xb, 0, nullptr, nullptr}); }
inline ExprPtr add(ExprPtr a, ExprPtr b) { return std::make_shared<Expr>(Expr{Expr::Op::Add, 0, std::move(a), std::move(b)}); }
inline ExprPtr mul(ExprPtr a, ExprPtr b) { return std::make_shared<Expr>(Expr{Expr::Op::Mul, 0, std::move(a), std::move(b)}); }

inline ExprPtr random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 4);
  switch (pick(rng)) {
    case 0: return constant(std::uniform_int_distribution<std::uint64_t>(0, 3)(rng));
    case 1: return var_x();
    case 2: return var_xb();
    case 3: return add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    default: return mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
  }
}

/// A tree denoting the same element, built with X + Xb = 1 and the semiring
/// laws: multiplies leaves by (X + Xb), swaps operands, distributes.
inline ExprPtr equivalent_expr(const ExprPtr& e, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  const int k = pick(rng);
  switch (e->op) {
    case Expr::Op::Const:
    case Expr::Op::X:
    case Expr::Op::Xb:
      if (k == 0) return mul(e, add(var_x(), var_xb()));
      if (k == 1 && e->op == Expr::Op::Const && e->value == 1) return add(var_xb(), var_x());
      return e;
    case Expr::Op::Add:
      if (k == 0) return add(equivalent_expr(e->r, rng), equivalent_expr(e->l, rng));
      return add(equivalent_expr(e->l, rng), equivalent_expr(e->r, rng));
    case Expr::Op::Mul:
      if (k == 0 && e->r->op == Expr::Op::Add) {
        return add(mul(e->l, e->r->l), mul(e->l, e->r->r));
      }
      if (k == 1) return mul(equivalent_expr(e->r, rng), equivalent_expr(e->l, rng));
      return mul(equivalent_expr(e->l, rng), equivalent_expr(e->r, rng));
  }
  return e;
}

inline Rational eval(const ExprPtr& e, const Rational& p) {
  switch (e->op) {
    case Expr::Op::Const: return Rational(e->value);
    case Expr::Op::X: return p;
    case Expr::Op::Xb: return semfx::complement(p);
    case Expr::Op::Add: return eval(e->l, p) + eval(e->r, p);
    case Expr::Op::Mul: return eval(e->l, p) * eval(e->r, p);
  }
  return {};
}

inline std::size_t degree_bound(const ExprPtr& e) {
  switch (e->op) {
    case Expr::Op::Const: return 0;
    case Expr::Op::X:
    case Expr::Op::Xb: return 1;
    case Expr::Op::Add: return std::max(degree_bound(e->l), degree_bound(e->r));
    case Expr::Op::Mul: return degree_bound(e->l) + degree_bound(e->r);
  }
  return 0;
}

/// Library evaluation of the same tree into N[X,Xb].
inline semfx::NatBernstein to_bernstein(const ExprPtr& e) {
  using B = semfx::NatBernstein;
  switch (e->op) {
    case Expr::Op::Const: return B::constant(Natural(e->value));
    case Expr::Op::X: return B::x();
    case Expr::Op::Xb: return B::xbar();
    case Expr::Op::Add: return to_bernstein(e->l) + to_bernstein(e->r);
    case Expr::Op::Mul: return to_bernstein(e->l) * to_bernstein(e->r);
  }
  return B::zero();
}

/// Two polynomials of degree <= d agree iff they agree at d + 1 points.
inline bool numerically_equal(const ExprPtr& a, const ExprPtr& b) {
  const std::size_t d = std::max(degree_bound(a), degree_bound(b));
  for (std::size_t k = 0; k <= d; ++k) {
    const Rational p(k, d + 1);
    if (!(eval(a, p) == eval(b, p))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Brute force over I/O trees.

using PathMultiset = std::map<std::vector<std::string>, std::size_t>;

/// All trees over `index` with total path length at most `budget`, as path
/// multisets (words are lists of letter strings like "in_a", "out_b").
inline std::vector<PathMultiset> enumerate_trees(const std::vector<std::string>& index, std::size_t budget) {
  // A tree's total path length T satisfies T(out c) = T(c) + L(c) and
  // T(in c_1..c_n) = sum T(c_i) + L(c_i), where L counts leaves. Every child
  // has at least one leaf, so budgets shrink strictly.
  std::map<std::size_t, std::vector<PathMultiset>> memo;
  std::function<std::vector<PathMultiset>(std::size_t)> exactly_upto = [&](std::size_t b) -> std::vector<PathMultiset> {
    if (auto it = memo.find(b); it != memo.end()) return it->second;
    std::vector<PathMultiset> out;
    out.push_back({{{}, 1}});  // leaf
    auto total = [](const PathMultiset& m) {
      std::size_t t = 0;
      for (const auto& [w, c] : m) t += w.size() * c;
      return t;
    };
    auto leaves = [](const PathMultiset& m) {
      std::size_t l = 0;
      for (const auto& [w, c] : m) l += c;
      return l;
    };
    if (b >= 1) {
      const auto smaller = exactly_upto(b - 1);
      for (const auto& i : index) {
        for (const auto& c : smaller) {
          if (total(c) + leaves(c) > b) continue;
          PathMultiset m;
          for (const auto& [w, k] : c) {
            std::vector<std::string> nw{"out_" + i};
            nw.insert(nw.end(), w.begin(), w.end());
            m[nw] += k;
          }
          out.push_back(std::move(m));
        }
      }
      if (b >= index.size()) {
        // Choose one child per message with the combined cost within b.
        std::vector<PathMultiset> partial{PathMultiset{}};
        std::vector<std::size_t> cost{0};
        for (const auto& i : index) {
          std::vector<PathMultiset> next;
          std::vector<std::size_t> next_cost;
          for (std::size_t k = 0; k < partial.size(); ++k) {
            for (const auto& c : smaller) {
              const std::size_t cc = total(c) + leaves(c);
              if (cost[k] + cc > b) continue;
              PathMultiset m = partial[k];
              for (const auto& [w, mult] : c) {
                std::vector<std::string> nw{"in_" + i};
                nw.insert(nw.end(), w.begin(), w.end());
                m[nw] += mult;
              }
              next.push_back(std::move(m));
              next_cost.push_back(cost[k] + cc);
            }
          }
          partial = std::move(next);
          cost = std::move(next_cost);
        }
        for (auto& m : partial) out.push_back(std::move(m));
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    memo[b] = out;
    return out;
  };
  return exactly_upto(budget);
}

inline PathMultiset to_paths(const semfx::WordMultiset& m) {
  PathMultiset out;
  for (const auto& [w, c] : m.entries()) {
    std::vector<std::string> letters;
    for (const auto& l : w) letters.push_back(semfx::to_text(l));
    out[letters] += c.to_u64();
  }
  return out;
}

inline std::size_t total_path_length(const semfx::WordMultiset& m) {
  std::size_t t = 0;
  for (const auto& [w, c] : m.entries()) t += w.size() * c.to_u64();
  return t;
}

// ---------------------------------------------------------------------------
// Bounded equational rewriting for the coin theory.

using semfx::CoinTerm;

inline std::string leftmost(const CoinTerm& t) { return t.is_var() ? t.var : leftmost(t.heads()); }
inline std::string rightmost(const CoinTerm& t) { return t.is_var() ? t.var : rightmost(t.tails()); }
inline void variables(const CoinTerm& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.var);
    return;
  }
  variables(t.heads(), out);
  variables(t.tails(), out);
}

/// One-step rewrites: c(x,x) -> x, and mediality in both directions (it is
/// its own inverse), at every position.
inline std::vector<CoinTerm> coin_steps(const CoinTerm& t) {
  std::vector<CoinTerm> out;
  if (t.is_var()) return out;
  if (t.heads() == t.tails()) out.push_back(t.heads());
  if (!t.heads().is_var() && !t.tails().is_var()) {
    const auto& l = t.heads();
    const auto& r = t.tails();
    out.push_back(CoinTerm::flip(CoinTerm::flip(l.heads(), r.heads()), CoinTerm::flip(l.tails(), r.tails())));
  }
  for (auto& h : coin_steps(t.heads())) out.push_back(CoinTerm::flip(std::move(h), t.tails()));
  for (auto& s : coin_steps(t.tails())) out.push_back(CoinTerm::flip(t.heads(), std::move(s)));
  return out;
}

enum class Verdict { Equal, Distinct, Unknown };

/// Equal when the shrinking-or-medial closures of both terms meet; Distinct
/// when an invariant of both axioms (variables, leftmost and rightmost leaf)
/// separates them.
inline Verdict coin_rewrite_eq(const CoinTerm& a, const CoinTerm& b, std::size_t max_nodes = 4000) {
  std::set<std::string> va, vb;
  variables(a, va);
  variables(b, vb);
  if (va != vb || leftmost(a) != leftmost(b) || rightmost(a) != rightmost(b)) return Verdict::Distinct;
  auto closure = [&](const CoinTerm& t) {
    std::set<CoinTerm> seen{t};
    std::deque<CoinTerm> queue{t};
    while (!queue.empty() && seen.size() < max_nodes) {
      CoinTerm cur = queue.front();
      queue.pop_front();
      for (auto& n : coin_steps(cur)) {
        if (seen.insert(n).second) queue.push_back(std::move(n));
      }
    }
    return seen;
  };
  const auto ca = closure(a);
  const auto cb = closure(b);
  for (const auto& t : ca) {
    if (cb.contains(t)) return Verdict::Equal;
  }
  return Verdict::Unknown;
}

/// Random rewriting walk that stays in the equivalence class of t; also
/// grows terms with x -> c(x,x).
inline CoinTerm coin_walk(CoinTerm t, std::mt19937_64& rng, std::size_t steps) {
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<CoinTerm> options = coin_steps(t);
    if (t.size() < 7) options.push_back(CoinTerm::flip(t, t));
    if (options.empty()) break;
    t = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
  }
  return t;
}

}  // namespace oracle
