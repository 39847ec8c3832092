#pragma once

// Convexity classes: subsets S of a semiring with 1 in S such that
// a_1 + ... + a_n in S and b_1, ..., b_n in S imply a_1 b_1 + ... + a_n b_n in S.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "semfx/error.hpp"
#include "semfx/semiring.hpp"
#include "semfx/state.hpp"

namespace semfx {

enum class ClassKind {
  SingletonOne,
  UnitInterval,
  WholeSemiring,
  IOTreeClass,
  FunctionMatrices,
  RowStochastic,
  ProbIOTensorClass,
};

constexpr std::string_view class_name(ClassKind k) {
  switch (k) {
    case ClassKind::SingletonOne: return "one";
    case ClassKind::UnitInterval: return "unit-interval";
    case ClassKind::WholeSemiring: return "whole";
    case ClassKind::IOTreeClass: return "io-trees";
    case ClassKind::FunctionMatrices: return "function-matrices";
    case ClassKind::RowStochastic: return "row-stochastic";
    case ClassKind::ProbIOTensorClass: return "prob-io-trees";
  }
  return "";
}

inline ClassKind parse_class_name(std::string_view name) {
  for (auto k : {ClassKind::SingletonOne, ClassKind::UnitInterval, ClassKind::WholeSemiring, ClassKind::IOTreeClass,
                 ClassKind::FunctionMatrices, ClassKind::RowStochastic, ClassKind::ProbIOTensorClass}) {
    if (class_name(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidValue, "unknown convexity class '" + std::string(name) + "'");
}

inline SemiringTag coefficient_tag(const SemiringTag& t) { return {t.coeff, Shape::Scalar, t.local_base, {}}; }

class ConvexityClass {
 public:
  ConvexityClass(ClassKind kind, SemiringTag semiring) : kind_(kind), semiring_(std::move(semiring)) {
    SemiringValue::check_tag(semiring_);
    const auto& t = semiring_;
    bool ok = true;
    switch (kind_) {
      case ClassKind::SingletonOne:
      case ClassKind::WholeSemiring: break;
      case ClassKind::UnitInterval:
        ok = t.shape == Shape::Scalar && !is_polynomial(t.coeff);
        break;
      case ClassKind::IOTreeClass: ok = t.shape == Shape::Words && t.coeff == CoeffKind::Nat; break;
      case ClassKind::FunctionMatrices: ok = t.shape == Shape::Matrix && t.coeff == CoeffKind::Nat; break;
      case ClassKind::RowStochastic: ok = t.shape == Shape::Matrix; break;
      case ClassKind::ProbIOTensorClass: ok = t.shape == Shape::Words && t.coeff != CoeffKind::Nat; break;
    }
    if (!ok) {
      throw Error(ErrorCode::TagMismatch,
                  "class " + std::string(class_name(kind_)) + " is not defined over " + tag_name(semiring_));
    }
  }

  ClassKind kind() const { return kind_; }
  const SemiringTag& semiring() const { return semiring_; }
  friend bool operator==(const ConvexityClass&, const ConvexityClass&) = default;

 private:
  ClassKind kind_;
  SemiringTag semiring_;
};

/// Finite tree of unary output nodes and |I|-ary input nodes.
struct IOTree {
  enum class Kind { Leaf, Output, Input };
  Kind kind = Kind::Leaf;
  std::string index;  // Output only
  std::vector<IOTree> children;

  static IOTree leaf() { return {}; }
  static IOTree output(std::string i, IOTree child) { return {Kind::Output, std::move(i), {std::move(child)}}; }
  static IOTree input(std::vector<IOTree> children) { return {Kind::Input, {}, std::move(children)}; }

  friend bool operator==(const IOTree&, const IOTree&) = default;
};

/// I/O tree with weighted choice nodes; certificates for the class
/// generated by {1} and Lambda_I. Choice weights are positive scalars of the
/// coefficient ring and sum to one.
struct ProbIOTree {
  enum class Kind { Leaf, Output, Input, Choice };
  Kind kind = Kind::Leaf;
  std::string index;
  std::vector<ProbIOTree> children;
  std::vector<SemiringValue> weights;  // Choice only, parallel to children

  static ProbIOTree leaf() { return {}; }
  static ProbIOTree output(std::string i, ProbIOTree child) { return {Kind::Output, std::move(i), {std::move(child)}, {}}; }
  static ProbIOTree input(std::vector<ProbIOTree> children) { return {Kind::Input, {}, std::move(children), {}}; }
  static ProbIOTree choice(std::vector<std::pair<SemiringValue, ProbIOTree>> branches) {
    ProbIOTree t;
    t.kind = Kind::Choice;
    for (auto& [w, c] : branches) {
      t.weights.push_back(std::move(w));
      t.children.push_back(std::move(c));
    }
    return t;
  }
};

struct StateTransformer {
  std::vector<std::size_t> mapping;
  friend bool operator==(const StateTransformer&, const StateTransformer&) = default;
};

using Decomposition = std::vector<std::pair<Rational, StateTransformer>>;

// ---------------------------------------------------------------------------
// Lambda_I: path multisets of I/O trees.

inline WordMultiset io_tree_paths(const IOTree& t, const std::vector<std::string>& index) {
  switch (t.kind) {
    case IOTree::Kind::Leaf: return WordMultiset::one();
    case IOTree::Kind::Output:
      if (std::find(index.begin(), index.end(), t.index) == index.end()) {
        throw Error(ErrorCode::UnknownIndex, "output index '" + t.index + "' is not declared");
      }
      return io_tree_paths(t.children.at(0), index).prefixed(out_letter(t.index));
    case IOTree::Kind::Input: {
      if (t.children.size() != index.size()) {
        throw Error(ErrorCode::InvalidValue, "input node needs exactly one child per message");
      }
      WordMultiset out;
      for (std::size_t i = 0; i < index.size(); ++i) out = out + io_tree_paths(t.children[i], index).prefixed(in_letter(index[i]));
      return out;
    }
  }
  return {};
}

/// Parses a path multiset back into the unique tree producing it.
inline std::optional<IOTree> lambda_member(const WordMultiset& m, const std::vector<std::string>& index) {
  if (m.is_zero()) return std::nullopt;
  const auto& entries = m.entries();
  const auto& [first_word, first_mult] = *entries.begin();
  if (first_word.empty()) {
    if (entries.size() == 1 && first_mult.is_one()) return IOTree::leaf();
    return std::nullopt;
  }
  const Letter& head = first_word.front();
  if (head.kind == LetterKind::Output) {
    for (const auto& [w, c] : entries) {
      if (!(w.front() == head)) return std::nullopt;
    }
    auto child = lambda_member(m.strip_prefix(head), index);
    if (!child) return std::nullopt;
    return IOTree::output(head.index, std::move(*child));
  }
  if (head.kind != LetterKind::Input) return std::nullopt;
  std::size_t covered = 0;
  for (const auto& [w, c] : entries) {
    if (w.front().kind != LetterKind::Input) return std::nullopt;
  }
  std::vector<IOTree> children;
  for (const auto& i : index) {
    auto part = m.strip_prefix(in_letter(i));
    covered += part.size();
    auto child = lambda_member(part, index);
    if (!child) return std::nullopt;
    children.push_back(std::move(*child));
  }
  if (covered != m.size()) return std::nullopt;  // letters outside the index set
  return IOTree::input(std::move(children));
}

// ---------------------------------------------------------------------------
// State transformers and row-stochastic matrices.

inline NatMatrix function_matrix(const StateTransformer& f) {
  const std::size_t n = f.mapping.size();
  NatMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.mapping[i] >= n) throw Error(ErrorCode::UnknownIndex, "state transformer leaves the state set");
    m.at(i, f.mapping[i]) = Natural::one();
  }
  return m;
}

template <Coefficient C>
bool rows_sum_to_one(const SquareMatrix<C>& m) {
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (!(m.row_sum(r) == C::one())) return false;
  }
  return true;
}

/// Greedy row-wise peeling: select the first nonzero entry of every row,
/// take the smallest selected entry as the next weight, subtract, repeat.
inline Decomposition stochastic_decompose(const RatMatrix& m) {
  const std::size_t n = m.size();
  if (!rows_sum_to_one(m)) throw Error(ErrorCode::NotRowStochastic, "row sums must all be 1: " + to_text(m));
  RatMatrix residual = m;
  Decomposition out;
  while (!residual.is_zero()) {
    StateTransformer f;
    std::optional<Rational> weight;
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t c = 0;
      while (c < n && residual.at(r, c).is_zero()) ++c;
      if (c == n) throw Error(ErrorCode::NotRowStochastic, "rows ran out of mass unevenly");
      f.mapping.push_back(c);
      if (!weight || residual.at(r, c) < *weight) weight = residual.at(r, c);
    }
    for (std::size_t r = 0; r < n; ++r) {
      auto& e = residual.at(r, f.mapping[r]);
      e = *checked_sub(e, *weight);
    }
    out.emplace_back(*weight, std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probabilistic I/O certificates.

/// Choice weights must be positive, sum to one, and live in `coeff`.
inline void check_prob_io_tree(const ProbIOTree& t, const SemiringTag& coeff, const std::vector<std::string>& index) {
  switch (t.kind) {
    case ProbIOTree::Kind::Leaf: return;
    case ProbIOTree::Kind::Output:
      if (std::find(index.begin(), index.end(), t.index) == index.end()) {
        throw Error(ErrorCode::UnknownIndex, "output index '" + t.index + "' is not declared");
      }
      if (t.children.size() != 1) throw Error(ErrorCode::InvalidValue, "output node needs one child");
      check_prob_io_tree(t.children[0], coeff, index);
      return;
    case ProbIOTree::Kind::Input:
      if (t.children.size() != index.size()) throw Error(ErrorCode::InvalidValue, "input node needs one child per message");
      for (const auto& c : t.children) check_prob_io_tree(c, coeff, index);
      return;
    case ProbIOTree::Kind::Choice: {
      if (t.children.empty() || t.weights.size() != t.children.size()) {
        throw Error(ErrorCode::InvalidValue, "choice node needs one weight per branch");
      }
      SemiringValue total = SemiringValue::zero(coeff);
      for (const auto& w : t.weights) {
        if (!(w.tag() == coeff)) throw Error(ErrorCode::TagMismatch, "choice weight outside " + tag_name(coeff));
        if (w.is_zero()) throw Error(ErrorCode::InvalidValue, "choice weights must be positive");
        total = total + w;
      }
      if (!total.is_one()) throw Error(ErrorCode::InvalidValue, "choice weights sum to " + to_text(total) + ", not 1");
      for (const auto& c : t.children) check_prob_io_tree(c, coeff, index);
      return;
    }
  }
}

/// Weighted path map of a certificate, in the word-map semiring `tag`.
inline SemiringValue prob_io_denote(const ProbIOTree& t, const SemiringTag& tag) {
  if (tag.shape != Shape::Words) throw Error(ErrorCode::TagMismatch, tag_name(tag) + " is not an I/O semiring");
  switch (t.kind) {
    case ProbIOTree::Kind::Leaf: return SemiringValue::one(tag);
    case ProbIOTree::Kind::Output: return io_letter(tag, out_letter(t.index)) * prob_io_denote(t.children.at(0), tag);
    case ProbIOTree::Kind::Input: {
      if (t.children.size() != tag.index.size()) throw Error(ErrorCode::InvalidValue, "input node needs one child per message");
      SemiringValue sum = SemiringValue::zero(tag);
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        sum = sum + io_letter(tag, in_letter(tag.index[i])) * prob_io_denote(t.children[i], tag);
      }
      return sum;
    }
    case ProbIOTree::Kind::Choice: {
      SemiringValue sum = SemiringValue::zero(tag);
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        sum = sum + embed(t.weights.at(i), tag) * prob_io_denote(t.children[i], tag);
      }
      return sum;
    }
  }
  return SemiringValue::zero(tag);
}

inline WordWeightFn prob_io_denote(const ProbIOTree& t, const std::vector<std::string>& index) {
  return prob_io_denote(t, tags::prob_io(index)).as<WordWeightFn>();
}

namespace convexity_detail {

/// Sum over words of f(w) / |I|^(number of inputs in w).
inline Rational input_normalised_mass(const WordWeightFn& f, std::size_t arity) {
  Rational total;
  for (const auto& [w, c] : f.entries()) {
    std::size_t inputs = 0;
    for (const auto& l : w) inputs += l.kind == LetterKind::Input ? 1 : 0;
    total += c / power(Rational(arity), inputs);
  }
  return total;
}

/// Builds a certificate for f (with input-normalised mass 1) from its own
/// support: split f by first letter into a leaf part, output parts, and an
/// input part whose branches must carry equal mass.
inline std::optional<ProbIOTree> search_certificate(const WordWeightFn& f, const std::vector<std::string>& index,
                                                    std::size_t& budget) {
  if (budget == 0) return std::nullopt;
  --budget;
  const std::size_t arity = index.size();
  const SemiringTag rat = tags::rat();
  std::vector<std::pair<SemiringValue, ProbIOTree>> branches;
  const Rational leaf = f.coefficient({});
  if (!leaf.is_zero()) branches.emplace_back(rat_value(leaf), ProbIOTree::leaf());
  std::size_t covered = leaf.is_zero() ? 0 : 1;
  for (const auto& i : index) {
    auto part = f.strip_prefix(out_letter(i));
    if (part.is_zero()) continue;
    covered += part.size();
    const Rational mass = input_normalised_mass(part, arity);
    auto child = search_certificate(part.scaled(Rational::one() / mass), index, budget);
    if (!child) return std::nullopt;
    branches.emplace_back(rat_value(mass), ProbIOTree::output(i, std::move(*child)));
  }
  std::vector<WordWeightFn> inputs;
  bool any_input = false;
  for (const auto& i : index) {
    inputs.push_back(f.strip_prefix(in_letter(i)));
    any_input = any_input || !inputs.back().is_zero();
  }
  if (any_input) {
    std::optional<Rational> mass;
    std::vector<ProbIOTree> children;
    for (const auto& part : inputs) {
      if (part.is_zero()) return std::nullopt;
      covered += part.size();
      const Rational m = input_normalised_mass(part, arity);
      if (mass && !(*mass == m)) return std::nullopt;
      mass = m;
    }
    for (const auto& part : inputs) {
      auto child = search_certificate(part.scaled(Rational::one() / *mass), index, budget);
      if (!child) return std::nullopt;
      children.push_back(std::move(*child));
    }
    branches.emplace_back(rat_value(*mass), ProbIOTree::input(std::move(children)));
  }
  if (covered != f.size() || branches.empty()) return std::nullopt;
  SemiringValue total = SemiringValue::zero(rat);
  for (const auto& [w, t] : branches) total = total + w;
  if (!total.is_one()) return std::nullopt;
  if (branches.size() == 1) return std::move(branches.front().second);
  return ProbIOTree::choice(std::move(branches));
}

}  // namespace convexity_detail

/// Bounded certificate search for {1} (x) Lambda_I over Q+, drawing every
/// node from the target's own support.
inline std::optional<ProbIOTree> find_prob_io_certificate(const WordWeightFn& f, const std::vector<std::string>& index,
                                                          std::size_t node_budget = 10000) {
  if (!(convexity_detail::input_normalised_mass(f, index.size()) == Rational::one())) return std::nullopt;
  return convexity_detail::search_certificate(f, index, node_budget);
}

// ---------------------------------------------------------------------------
// Membership.

enum class Membership { Member, NonMember, Unknown };

constexpr std::string_view membership_name(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "non-member";
    case Membership::Unknown: return "unknown";
  }
  return "";
}

using Certificate = std::variant<std::monostate, IOTree, ProbIOTree, StateTransformer, Decomposition>;

struct MembershipResult {
  Membership verdict = Membership::Unknown;
  Certificate certificate;
};

inline MembershipResult member(const ConvexityClass& c, const SemiringValue& v, const Certificate& supplied = {}) {
  if (!(v.tag() == c.semiring())) {
    throw Error(ErrorCode::TagMismatch, "value in " + tag_name(v.tag()) + " tested against a class over " +
                                            tag_name(c.semiring()));
  }
  auto yes_no = [](bool b) { return MembershipResult{b ? Membership::Member : Membership::NonMember, {}}; };
  switch (c.kind()) {
    case ClassKind::SingletonOne: return yes_no(v.is_one());
    case ClassKind::WholeSemiring: return yes_no(true);
    case ClassKind::UnitInterval: {
      const auto& p = v.payload();
      if (const auto* n = std::get_if<Natural>(&p)) return yes_no(*n <= Natural::one());
      return yes_no(std::get<Rational>(p) <= Rational::one());
    }
    case ClassKind::IOTreeClass: {
      auto tree = lambda_member(v.as<WordMultiset>(), c.semiring().index);
      if (!tree) return yes_no(false);
      return {Membership::Member, std::move(*tree)};
    }
    case ClassKind::FunctionMatrices: {
      const auto& m = v.as<NatMatrix>();
      StateTransformer f;
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (!m.row_sum(r).is_one()) return yes_no(false);
        std::size_t col = 0;
        while (m.at(r, col).is_zero()) ++col;
        f.mapping.push_back(col);
      }
      return {Membership::Member, std::move(f)};
    }
    case ClassKind::RowStochastic: {
      const bool ok = std::visit(
          [](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (is_square_matrix<P>::value) {
              return rows_sum_to_one(p);
            } else {
              return false;
            }
          },
          v.payload());
      if (!ok) return yes_no(false);
      if (const auto* m = std::get_if<RatMatrix>(&v.payload())) return {Membership::Member, stochastic_decompose(*m)};
      return yes_no(true);
    }
    case ClassKind::ProbIOTensorClass: {
      const SemiringTag coeff = coefficient_tag(c.semiring());
      if (const auto* cert = std::get_if<ProbIOTree>(&supplied)) {
        try {
          check_prob_io_tree(*cert, coeff, c.semiring().index);
          if (prob_io_denote(*cert, c.semiring()) == v) return {Membership::Member, *cert};
        } catch (const Error&) {
          // An ill-formed certificate proves nothing; fall through to search.
        }
      }
      if (const auto* f = std::get_if<WordWeightFn>(&v.payload())) {
        if (auto cert = find_prob_io_certificate(*f, c.semiring().index)) return {Membership::Member, std::move(*cert)};
      }
      return {Membership::Unknown, {}};
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Axiom testing.

/// a_1..a_n with sum in S, and b_1..b_n each in S.
struct AxiomSample {
  std::vector<SemiringValue> a;
  std::vector<SemiringValue> b;
};

using AxiomSampler = std::function<AxiomSample(std::mt19937_64&)>;

struct AxiomReport {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline AxiomReport convexity_axiom_test(const ConvexityClass& c, const AxiomSampler& sampler, std::size_t trials,
                                        std::uint64_t seed) {
  AxiomReport report;
  std::mt19937_64 rng(seed);
  const auto& tag = c.semiring();
  if (member(c, SemiringValue::one(tag)).verdict != Membership::Member) report.failures.push_back("1 is not a member");
  for (std::size_t t = 0; t < trials; ++t) {
    ++report.trials;
    AxiomSample s = sampler(rng);
    if (s.a.size() != s.b.size() || s.a.empty()) {
      report.failures.push_back("trial " + std::to_string(t) + ": sampler produced mismatched lists");
      continue;
    }
    SemiringValue sum_a = SemiringValue::zero(tag);
    SemiringValue combo = SemiringValue::zero(tag);
    bool pre = true;
    for (std::size_t i = 0; i < s.a.size(); ++i) {
      sum_a = sum_a + s.a[i];
      combo = combo + s.a[i] * s.b[i];
      pre = pre && member(c, s.b[i]).verdict == Membership::Member;
    }
    pre = pre && member(c, sum_a).verdict == Membership::Member;
    if (!pre) {
      report.failures.push_back("trial " + std::to_string(t) + ": sample violates the hypotheses");
      continue;
    }
    auto verdict = member(c, combo).verdict;
    if (verdict != Membership::Member) {
      report.failures.push_back("trial " + std::to_string(t) + ": sum a_i b_i = " + to_text(combo) + " is " +
                                std::string(membership_name(verdict)));
      continue;
    }
    ++report.passed;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Certificate JSON.

inline nlohmann::json to_json(const IOTree& t) {
  switch (t.kind) {
    case IOTree::Kind::Leaf: return {{"node", "leaf"}};
    case IOTree::Kind::Output: return {{"node", "output"}, {"index", t.index}, {"child", to_json(t.children.at(0))}};
    case IOTree::Kind::Input: {
      nlohmann::json cs = nlohmann::json::array();
      for (const auto& c : t.children) cs.push_back(to_json(c));
      return {{"node", "input"}, {"children", cs}};
    }
  }
  return {};
}

inline nlohmann::json to_json(const ProbIOTree& t) {
  switch (t.kind) {
    case ProbIOTree::Kind::Leaf: return {{"node", "leaf"}};
    case ProbIOTree::Kind::Output: return {{"node", "output"}, {"index", t.index}, {"child", to_json(t.children.at(0))}};
    case ProbIOTree::Kind::Input: {
      nlohmann::json cs = nlohmann::json::array();
      for (const auto& c : t.children) cs.push_back(to_json(c));
      return {{"node", "input"}, {"children", cs}};
    }
    case ProbIOTree::Kind::Choice: {
      nlohmann::json bs = nlohmann::json::array();
      for (std::size_t i = 0; i < t.children.size(); ++i) {
        bs.push_back({{"weight", to_json(t.weights[i])["value"]}, {"tree", to_json(t.children[i])}});
      }
      return {{"node", "choice"}, {"branches", bs}};
    }
  }
  return {};
}

inline nlohmann::json to_json(const StateTransformer& f, const std::vector<std::string>& index) {
  nlohmann::json m = nlohmann::json::array();
  for (auto i : f.mapping) m.push_back(index.at(i));
  return {{"mapping", m}};
}

inline IOTree io_tree_from_json(const nlohmann::json& j) {
  const auto node = j.at("node").get<std::string>();
  if (node == "leaf") return IOTree::leaf();
  if (node == "output") return IOTree::output(j.at("index").get<std::string>(), io_tree_from_json(j.at("child")));
  if (node == "input") {
    std::vector<IOTree> cs;
    for (const auto& c : j.at("children")) cs.push_back(io_tree_from_json(c));
    return IOTree::input(std::move(cs));
  }
  throw Error(ErrorCode::InvalidValue, "unknown I/O tree node '" + node + "'");
}

/// Choice weights are read as scalars of `coeff`.
inline ProbIOTree prob_io_tree_from_json(const nlohmann::json& j, const SemiringTag& coeff) {
  const auto node = j.at("node").get<std::string>();
  if (node == "leaf") return ProbIOTree::leaf();
  if (node == "output") return ProbIOTree::output(j.at("index").get<std::string>(), prob_io_tree_from_json(j.at("child"), coeff));
  if (node == "input") {
    std::vector<ProbIOTree> cs;
    for (const auto& c : j.at("children")) cs.push_back(prob_io_tree_from_json(c, coeff));
    return ProbIOTree::input(std::move(cs));
  }
  if (node == "choice") {
    std::vector<std::pair<SemiringValue, ProbIOTree>> bs;
    for (const auto& b : j.at("branches")) {
      nlohmann::json wj = {{"semiring", tag_name(coeff)}, {"value", b.at("weight")}};
      bs.emplace_back(value_from_json(wj), prob_io_tree_from_json(b.at("tree"), coeff));
    }
    return ProbIOTree::choice(std::move(bs));
  }
  throw Error(ErrorCode::InvalidValue, "unknown certificate node '" + node + "'");
}

inline nlohmann::json certificate_to_json(const Certificate& c, const std::vector<std::string>& index) {
  return std::visit(
      [&](const auto& x) -> nlohmann::json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, StateTransformer>) {
          return to_json(x, index);
        } else if constexpr (std::is_same_v<T, Decomposition>) {
          nlohmann::json out = nlohmann::json::array();
          for (const auto& [w, f] : x) {
            auto e = to_json(f, index);
            e["weight"] = w.str();
            out.push_back(e);
          }
          return out;
        } else {
          return to_json(x);
        }
      },
      c);
}

}  // namespace semfx
