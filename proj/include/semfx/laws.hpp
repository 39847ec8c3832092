#pragma once

// Property suites: semiring axioms per instance, convexity-class axioms,
// monad laws and closure for the distribution theories, and the interchange
// law for every implemented tensor. Every suite is deterministic in its seed.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "semfx/coin.hpp"
#include "semfx/convexity.hpp"
#include "semfx/dist.hpp"
#include "semfx/generators.hpp"
#include "semfx/semiring.hpp"
#include "semfx/state.hpp"
#include "semfx/tensor.hpp"

namespace semfx::laws {

struct Counterexample {
  std::string law;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> values;
};

struct CaseReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::optional<Counterexample> counterexample;
  bool ok() const { return !counterexample && passed == trials; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseReport> cases;
  bool ok() const {
    return std::all_of(cases.begin(), cases.end(), [](const CaseReport& c) { return c.ok(); });
  }
};

inline nlohmann::json to_json(const CaseReport& c) {
  nlohmann::json j{{"name", c.name}, {"trials", c.trials}, {"passed", c.passed}, {"ok", c.ok()}};
  if (c.counterexample) {
    j["counterexample"] = {{"law", c.counterexample->law},
                           {"trial", c.counterexample->trial},
                           {"seed", c.counterexample->seed},
                           {"values", c.counterexample->values}};
  }
  return j;
}

inline nlohmann::json to_json(const SuiteReport& s) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : s.cases) cases.push_back(to_json(c));
  return {{"suite", s.suite}, {"seed", s.seed}, {"ok", s.ok()}, {"cases", cases}};
}

// ---------------------------------------------------------------------------
// Semiring axioms.

template <class T>
struct Instance {
  std::string name;
  std::function<T(gen::Rng&)> sample;
  std::function<T(const T&, const T&)> add;
  std::function<T(const T&, const T&)> mul;
  std::function<bool(const T&, const T&)> eq;
  T zero;
  T one;
  std::function<std::string(const T&)> text;
};

/// Name of the first axiom violated by (a, b, c), if any.
template <class T>
std::optional<std::string> first_violation(const Instance<T>& s, const T& a, const T& b, const T& c) {
  auto& add = s.add;
  auto& mul = s.mul;
  auto& eq = s.eq;
  if (!eq(add(add(a, b), c), add(a, add(b, c)))) return "additive associativity";
  if (!eq(add(a, b), add(b, a))) return "additive commutativity";
  if (!eq(add(a, s.zero), a)) return "additive unit";
  if (!eq(mul(mul(a, b), c), mul(a, mul(b, c)))) return "multiplicative associativity";
  if (!eq(mul(s.one, a), a) || !eq(mul(a, s.one), a)) return "multiplicative unit";
  if (!eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))) return "left distributivity";
  if (!eq(mul(add(a, b), c), add(mul(a, c), mul(b, c)))) return "right distributivity";
  if (!eq(mul(s.zero, a), s.zero) || !eq(mul(a, s.zero), s.zero)) return "annihilation";
  return std::nullopt;
}

template <class T>
CaseReport check_instance(const Instance<T>& s, std::size_t trials, std::uint64_t seed) {
  CaseReport r{s.name, 0, 0, std::nullopt};
  const std::uint64_t local_seed = gen::derive_seed(seed, s.name);
  gen::Rng rng(local_seed);
  for (std::size_t t = 0; t < trials; ++t) {
    ++r.trials;
    const T a = s.sample(rng), b = s.sample(rng), c = s.sample(rng);
    if (auto law = first_violation(s, a, b, c)) {
      if (!r.counterexample) r.counterexample = Counterexample{*law, t, local_seed, {s.text(a), s.text(b), s.text(c)}};
      continue;
    }
    ++r.passed;
  }
  return r;
}

inline Instance<SemiringValue> value_instance(const SemiringTag& tag) {
  return {tag_name(tag) + (tag.index.empty() ? "" : " over " + std::to_string(tag.index.size()) + " letters"),
          [tag](gen::Rng& rng) { return gen::value(tag, rng); },
          [](const SemiringValue& a, const SemiringValue& b) { return a + b; },
          [](const SemiringValue& a, const SemiringValue& b) { return a * b; },
          [](const SemiringValue& a, const SemiringValue& b) { return a == b; },
          SemiringValue::zero(tag),
          SemiringValue::one(tag),
          [](const SemiringValue& v) { return to_text(v); }};
}

inline std::vector<SemiringTag> semiring_instances() {
  const std::vector<std::string> io{"a", "b"};
  const std::vector<std::string> st{"1", "2"};
  return {tags::nat(),
          tags::rat(),
          tags::local(6),
          tags::bern(),
          tags::rat_bern(),
          tags::bibern(),
          tags::rat_bibern(),
          tags::io(io),
          tags::prob_io(io),
          tags::state(st),
          tags::prob_state(st)};
}

/// N[X,Xb] with a broken reduction that divides by (X + Xb) without checking
/// the remainder. The mutation harness expects the axioms to fail on it.
struct MutantBernstein {
  std::vector<Natural> c{Natural::zero()};
};

namespace laws_detail {

inline std::vector<Natural> mutant_reduce(std::vector<Natural> cs) {
  while (cs.size() >= 2) {
    std::vector<Natural> q{cs[0]};
    bool ok = true;
    for (std::size_t a = 1; a + 1 < cs.size() && ok; ++a) {
      auto next = checked_sub(cs[a], q.back());
      if (!next) ok = false;
      else q.push_back(*next);
    }
    if (!ok) break;
    cs = std::move(q);
  }
  return cs;
}

inline std::vector<Natural> elevate_to(std::vector<Natural> cs, std::size_t d) {
  while (cs.size() < d + 1) cs = elevate_once(cs);
  return cs;
}

}  // namespace laws_detail

inline Instance<MutantBernstein> mutant_instance() {
  using M = MutantBernstein;
  auto make = [](std::vector<Natural> cs) { return M{laws_detail::mutant_reduce(std::move(cs))}; };
  return {"bern (mutated reduce)",
          [make](gen::Rng& rng) {
            std::vector<Natural> cs(gen::uniform(rng, 1, 4));
            for (auto& x : cs) x = gen::natural(rng);
            return make(cs);
          },
          [make](const M& a, const M& b) {
            const std::size_t d = std::max(a.c.size(), b.c.size()) - 1;
            auto l = laws_detail::elevate_to(a.c, d), r = laws_detail::elevate_to(b.c, d);
            for (std::size_t i = 0; i <= d; ++i) l[i] = l[i] + r[i];
            return make(l);
          },
          [make](const M& a, const M& b) {
            std::vector<Natural> out(a.c.size() + b.c.size() - 1, Natural::zero());
            for (std::size_t i = 0; i < a.c.size(); ++i) {
              for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] = out[i + j] + a.c[i] * b.c[j];
            }
            return make(out);
          },
          [](const M& a, const M& b) {
            const std::size_t d = std::max(a.c.size(), b.c.size()) - 1;
            return laws_detail::elevate_to(a.c, d) == laws_detail::elevate_to(b.c, d);
          },
          M{{Natural::zero()}},
          M{{Natural::one()}},
          [](const M& m) { return to_text(NatBernstein::from_coeffs(m.c)) + " (stored as " + std::to_string(m.c.size()) + " coefficients)"; }};
}

inline SuiteReport semiring_suite(std::size_t trials, std::uint64_t seed, bool mutate = false) {
  SuiteReport s{"semiring", seed, {}};
  for (const auto& tag : semiring_instances()) s.cases.push_back(check_instance(value_instance(tag), trials, seed));
  if (mutate) s.cases.push_back(check_instance(mutant_instance(), trials, seed));
  return s;
}

// ---------------------------------------------------------------------------
// Convexity classes: default samplers.

namespace laws_detail {

inline void io_paths(const IOTree& t, const std::vector<std::string>& index, Word& prefix, std::vector<Word>& out) {
  switch (t.kind) {
    case IOTree::Kind::Leaf: out.push_back(prefix); return;
    case IOTree::Kind::Output:
      prefix.push_back(out_letter(t.index));
      io_paths(t.children[0], index, prefix, out);
      prefix.pop_back();
      return;
    case IOTree::Kind::Input:
      for (std::size_t i = 0; i < index.size(); ++i) {
        prefix.push_back(in_letter(index[i]));
        io_paths(t.children[i], index, prefix, out);
        prefix.pop_back();
      }
      return;
  }
}

inline void prob_paths(const ProbIOTree& t, const std::vector<std::string>& index, Word& prefix, const Rational& w,
                       std::vector<std::pair<Word, Rational>>& out) {
  switch (t.kind) {
    case ProbIOTree::Kind::Leaf: out.emplace_back(prefix, w); return;
    case ProbIOTree::Kind::Output:
      prefix.push_back(out_letter(t.index));
      prob_paths(t.children[0], index, prefix, w, out);
      prefix.pop_back();
      return;
    case ProbIOTree::Kind::Input:
      for (std::size_t i = 0; i < index.size(); ++i) {
        prefix.push_back(in_letter(index[i]));
        prob_paths(t.children[i], index, prefix, w, out);
        prefix.pop_back();
      }
      return;
    case ProbIOTree::Kind::Choice:
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        prob_paths(t.children[i], index, prefix, w * t.weights[i].as<Rational>(), out);
      }
      return;
  }
}

}  // namespace laws_detail

/// Leaves of `t` in depth-first order, as words from the root.
inline std::vector<Word> leaf_paths(const IOTree& t, const std::vector<std::string>& index) {
  std::vector<Word> out;
  Word prefix;
  laws_detail::io_paths(t, index, prefix, out);
  return out;
}

inline std::vector<std::pair<Word, Rational>> leaf_paths(const ProbIOTree& t, const std::vector<std::string>& index) {
  std::vector<std::pair<Word, Rational>> out;
  Word prefix;
  laws_detail::prob_paths(t, index, prefix, Rational::one(), out);
  return out;
}

struct ClassCase {
  ConvexityClass cls;
  AxiomSampler sampler;
};

/// Sampler whose a-lists split a class member and whose b's are members.
/// For the tree classes the a-list comes from grouping the leaves of a random
/// tree, so sum a_i b_i is the tree with b_i grafted on the leaves of group i.
inline ClassCase default_class_case(ClassKind kind) {
  const std::vector<std::string> io{"a", "b"};
  const std::vector<std::string> st{"1", "2", "3"};
  switch (kind) {
    case ClassKind::SingletonOne: {
      const SemiringTag tag = tags::rat_bern();
      return {ConvexityClass(kind, tag), [tag](gen::Rng& rng) {
                const CoinTerm t = gen::coin_term(rng, {"x0", "x1", "x2"}, gen::uniform(rng, 0, 4));
                const Dist d = coin_denote(t);
                AxiomSample s;
                for (const auto& [o, w] : d.weights()) {
                  s.a.push_back(embed(w, tag));
                  s.b.push_back(SemiringValue::one(tag));
                }
                return s;
              }};
    }
    case ClassKind::UnitInterval: {
      const SemiringTag tag = tags::rat();
      return {ConvexityClass(kind, tag), [tag](gen::Rng& rng) {
                AxiomSample s;
                const std::size_t n = gen::uniform(rng, 1, 4);
                for (std::size_t i = 0; i < n; ++i) {
                  s.a.push_back(rat_value(gen::probability(rng) / Rational(n)));
                  s.b.push_back(rat_value(gen::coin(rng, 0.2) ? Rational::zero() : gen::probability(rng)));
                }
                return s;
              }};
    }
    case ClassKind::WholeSemiring: {
      const SemiringTag tag = tags::nat();
      return {ConvexityClass(kind, tag), [tag](gen::Rng& rng) {
                AxiomSample s;
                const std::size_t n = gen::uniform(rng, 1, 4);
                for (std::size_t i = 0; i < n; ++i) {
                  s.a.push_back(gen::value(tag, rng));
                  s.b.push_back(gen::value(tag, rng));
                }
                return s;
              }};
    }
    case ClassKind::IOTreeClass: {
      const SemiringTag tag = tags::io(io);
      return {ConvexityClass(kind, tag), [tag, io](gen::Rng& rng) {
                const std::size_t groups = gen::uniform(rng, 1, 3);
                std::vector<std::size_t> labels;
                const IOTree t = gen::io_tree(rng, io.size(), io, gen::uniform(rng, 0, 3), groups, labels);
                const auto paths = leaf_paths(t, io);
                std::vector<WordMultiset> parts(groups);
                for (std::size_t i = 0; i < paths.size(); ++i) parts[labels[i]].add_entry(paths[i], Natural::one());
                AxiomSample s;
                for (auto& p : parts) {
                  s.a.push_back(make_value(tag, Payload(std::move(p))));
                  s.b.push_back(make_value(tag, Payload(io_tree_paths(gen::io_tree(rng, io, gen::uniform(rng, 0, 2)), io))));
                }
                return s;
              }};
    }
    case ClassKind::FunctionMatrices: {
      const SemiringTag tag = tags::state(st);
      return {ConvexityClass(kind, tag), [tag, st](gen::Rng& rng) {
                const std::size_t n = st.size();
                const std::size_t groups = gen::uniform(rng, 1, 3);
                const StateTransformer f = gen::state_transformer(rng, n);
                std::vector<NatMatrix> parts(groups, NatMatrix(n));
                for (std::size_t r = 0; r < n; ++r) parts[gen::uniform(rng, 0, groups - 1)].at(r, f.mapping[r]) = Natural::one();
                AxiomSample s;
                for (auto& p : parts) {
                  s.a.push_back(make_value(tag, Payload(std::move(p))));
                  s.b.push_back(make_value(tag, Payload(function_matrix(gen::state_transformer(rng, n)))));
                }
                return s;
              }};
    }
    case ClassKind::RowStochastic: {
      const SemiringTag tag = tags::prob_state(st);
      return {ConvexityClass(kind, tag), [tag, st](gen::Rng& rng) {
                const std::size_t n = st.size();
                const std::size_t groups = gen::uniform(rng, 1, 3);
                const RatMatrix m = gen::stochastic_matrix(rng, n);
                std::vector<RatMatrix> parts(groups, RatMatrix(n));
                for (std::size_t r = 0; r < n; ++r) {
                  for (std::size_t c = 0; c < n; ++c) {
                    // Split each entry between two groups.
                    const Rational share = Rational(gen::uniform(rng, 0, 2), 2);
                    const std::size_t g1 = gen::uniform(rng, 0, groups - 1), g2 = gen::uniform(rng, 0, groups - 1);
                    parts[g1].at(r, c) = parts[g1].at(r, c) + m.at(r, c) * share;
                    parts[g2].at(r, c) = parts[g2].at(r, c) + m.at(r, c) * complement(share);
                  }
                }
                AxiomSample s;
                for (auto& p : parts) {
                  s.a.push_back(make_value(tag, Payload(std::move(p))));
                  s.b.push_back(make_value(tag, Payload(gen::stochastic_matrix(rng, n))));
                }
                return s;
              }};
    }
    case ClassKind::ProbIOTensorClass: {
      const SemiringTag tag = tags::prob_io(io);
      return {ConvexityClass(kind, tag), [tag, io](gen::Rng& rng) {
                const std::size_t groups = gen::uniform(rng, 1, 3);
                const ProbIOTree t = gen::prob_io_tree(rng, io, gen::uniform(rng, 0, 3));
                std::vector<WordWeightFn> parts(groups);
                for (const auto& [w, p] : leaf_paths(t, io)) parts[gen::uniform(rng, 0, groups - 1)].add_entry(w, p);
                AxiomSample s;
                for (auto& p : parts) {
                  s.a.push_back(make_value(tag, Payload(std::move(p))));
                  s.b.push_back(make_value(tag, Payload(prob_io_denote(gen::prob_io_tree(rng, io, gen::uniform(rng, 0, 2)), io))));
                }
                return s;
              }};
    }
  }
  throw Error(ErrorCode::InvalidValue, "unknown class kind");
}

inline const std::vector<ClassKind>& all_class_kinds() {
  static const std::vector<ClassKind> k{ClassKind::SingletonOne,     ClassKind::UnitInterval,      ClassKind::WholeSemiring,
                                        ClassKind::IOTreeClass,      ClassKind::FunctionMatrices, ClassKind::RowStochastic,
                                        ClassKind::ProbIOTensorClass};
  return k;
}

inline SuiteReport convexity_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport s{"convexity", seed, {}};
  for (ClassKind k : all_class_kinds()) {
    const ClassCase c = default_class_case(k);
    const std::string name = std::string(class_name(k)) + " over " + tag_name(c.cls.semiring());
    const std::uint64_t local_seed = gen::derive_seed(seed, name);
    const AxiomReport r = convexity_axiom_test(c.cls, c.sampler, trials, local_seed);
    CaseReport cr{name, r.trials, r.passed, std::nullopt};
    if (!r.ok()) cr.counterexample = Counterexample{"convex substitution", 0, local_seed, r.failures};
    s.cases.push_back(std::move(cr));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Distribution theories: unit laws, associativity of substitution, closure.

inline Dist sample_dist(const ClassCase& c, gen::Rng& rng, const std::string& prefix) {
  const AxiomSample s = c.sampler(rng);
  Dist d(c.cls.semiring());
  for (std::size_t i = 0; i < s.a.size(); ++i) d.add(prefix + std::to_string(i), s.a[i]);
  return d;
}

inline SuiteReport theory_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport s{"theory", seed, {}};
  for (ClassKind k : all_class_kinds()) {
    const ClassCase c = default_class_case(k);
    const TheoryTag theory(c.cls.semiring(), k);
    const std::string name = "T(" + tag_name(theory.semiring) + ", " + std::string(class_name(k)) + ")";
    const std::uint64_t local_seed = gen::derive_seed(seed, name);
    gen::Rng rng(local_seed);
    CaseReport cr{name, 0, 0, std::nullopt};
    for (std::size_t t = 0; t < trials; ++t) {
      ++cr.trials;
      const Dist d = sample_dist(c, rng, "x");
      std::map<std::string, Dist> k1, k2;
      for (std::size_t i = 0; i < 4; ++i) {
        k1.emplace("x" + std::to_string(i), sample_dist(c, rng, "y"));
        k2.emplace("y" + std::to_string(i), sample_dist(c, rng, "z"));
      }
      auto dk1 = [&](const std::string& x) { return k1.at(x); };
      auto dk2 = [&](const std::string& y) { return k2.at(y); };
      auto unit = [&](const std::string& x) { return dist_unit(x, theory.semiring); };
      std::optional<std::string> law;
      if (!(dist_bind(dist_unit("x0", theory.semiring), dk1) == k1.at("x0"))) law = "left unit";
      else if (!(dist_bind(d, unit) == d)) law = "right unit";
      else if (!(dist_bind(dist_bind(d, dk1), dk2) == dist_bind(d, [&](const std::string& x) { return dist_bind(k1.at(x), dk2); })))
        law = "associativity";
      else if (member(theory.convexity, total_weight(dist_bind(d, dk1))).verdict != Membership::Member)
        law = "closure under substitution";
      if (law) {
        if (!cr.counterexample) cr.counterexample = Counterexample{*law, t, local_seed, {weights_to_json(d).dump()}};
        continue;
      }
      ++cr.passed;
    }
    s.cases.push_back(std::move(cr));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Tensors: the embeddings are homomorphisms and their images commute.

inline std::vector<std::pair<SemiringTag, SemiringTag>> tensor_cases() {
  const std::vector<std::string> io{"a", "b"};
  const std::vector<std::string> st{"1", "2"};
  return {{tags::local(2), tags::local(3)}, {tags::rat(), tags::bern()},    {tags::bern(), tags::bern()},
          {tags::rat_bern(), tags::bern()}, {tags::rat(), tags::io(io)},    {tags::bern(), tags::io(io)},
          {tags::rat(), tags::state(st)},   {tags::bern(), tags::state(st)}};
}

inline SuiteReport commute_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport s{"commute", seed, {}};
  for (const auto& [l, r] : tensor_cases()) {
    const TensorSpec spec = require_tensor(l, r);
    const std::string name = tag_name(l) + " (x) " + tag_name(r) + " = " + tag_name(spec.result);
    const std::uint64_t local_seed = gen::derive_seed(seed, name);
    gen::Rng rng(local_seed);
    CaseReport cr{name, 0, 0, std::nullopt};
    auto phi1 = [&](const SemiringValue& v) { return tensor_embed(TensorSide::Left, v, spec); };
    auto phi2 = [&](const SemiringValue& v) { return tensor_embed(TensorSide::Right, v, spec); };
    for (std::size_t t = 0; t < trials; ++t) {
      ++cr.trials;
      const SemiringValue a = gen::value(l, rng), a2 = gen::value(l, rng);
      const SemiringValue b = gen::value(r, rng), b2 = gen::value(r, rng);
      std::optional<std::string> law;
      if (!(phi1(a) * phi2(b) == phi2(b) * phi1(a))) law = "interchange";
      else if (!(phi1(a + a2) == phi1(a) + phi1(a2)) || !(phi1(a * a2) == phi1(a) * phi1(a2))) law = "left embedding is a homomorphism";
      else if (!(phi2(b + b2) == phi2(b) + phi2(b2)) || !(phi2(b * b2) == phi2(b) * phi2(b2))) law = "right embedding is a homomorphism";
      else if (!phi1(SemiringValue::one(l)).is_one() || !phi2(SemiringValue::one(r)).is_one()) law = "embeddings preserve 1";
      else {
        Dist dt(l), du(r);
        dt.add("i0", a);
        dt.add("i1", a2);
        du.add("j0", b);
        du.add("j1", b2);
        if (!commute_check(dt, du, spec)) law = "commute_check";
      }
      if (law) {
        if (!cr.counterexample) cr.counterexample = Counterexample{*law, t, local_seed, {to_text(a), to_text(b)}};
        continue;
      }
      ++cr.passed;
    }
    s.cases.push_back(std::move(cr));
  }
  return s;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"semiring", "convexity", "theory", "commute"};
  return n;
}

inline SuiteReport run_suite(const std::string& name, std::size_t trials, std::uint64_t seed, bool mutate = false) {
  if (name == "semiring") return semiring_suite(trials, seed, mutate);
  if (name == "convexity") return convexity_suite(trials, seed);
  if (name == "theory") return theory_suite(trials, seed);
  if (name == "commute") return commute_suite(trials, seed);
  throw Error(ErrorCode::InvalidValue, "unknown suite '" + name + "'");
}

}  // namespace semfx::laws
