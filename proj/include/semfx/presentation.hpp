#pragma once

// Finitely presented semirings and a bounded equality oracle.
//
// Terms are normalised to sums of words over the generators (the free
// semiring). A relation l = r is applied in either direction inside a
// context u*(-)*v: a sub-multiset u*l*v of the term is replaced by u*r*v.
// Relations with a zero side are only used to delete (0 -> u*l*v would need
// unbounded contexts). The search is a breadth-first closure from both ends
// and is only a semi-decision procedure; a registered interpretation into a
// canonical semiring supplies "distinct" verdicts.

#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "semfx/error.hpp"
#include "semfx/semiring.hpp"
#include "semfx/state.hpp"

namespace semfx {

using GenWord = std::vector<int>;

struct GenWordOrder {
  bool operator()(const GenWord& a, const GenWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Element of the free semiring on the generators: word -> multiplicity.
class FormalTerm {
 public:
  using Entries = std::map<GenWord, std::uint64_t, GenWordOrder>;

  static FormalTerm zero() { return {}; }
  static FormalTerm one() { return word({}); }
  static FormalTerm word(GenWord w, std::uint64_t mult = 1) {
    FormalTerm t;
    t.add(std::move(w), mult);
    return t;
  }

  void add(const GenWord& w, std::uint64_t mult) {
    if (mult == 0) return;
    entries_[w] += mult;
  }
  /// Removes `mult` copies of w; the caller guarantees they are present.
  void remove(const GenWord& w, std::uint64_t mult) {
    auto it = entries_.find(w);
    it->second -= mult;
    if (it->second == 0) entries_.erase(it);
  }
  std::uint64_t count(const GenWord& w) const {
    auto it = entries_.find(w);
    return it == entries_.end() ? 0 : it->second;
  }

  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  friend FormalTerm operator+(const FormalTerm& a, const FormalTerm& b) {
    FormalTerm out = a;
    for (const auto& [w, m] : b.entries_) out.add(w, m);
    return out;
  }
  friend FormalTerm operator*(const FormalTerm& a, const FormalTerm& b) {
    FormalTerm out;
    for (const auto& [wa, ma] : a.entries_) {
      for (const auto& [wb, mb] : b.entries_) {
        GenWord w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add(w, ma * mb);
      }
    }
    return out;
  }
  friend bool operator==(const FormalTerm&, const FormalTerm&) = default;
  friend bool operator<(const FormalTerm& a, const FormalTerm& b) { return a.entries_ < b.entries_; }

 private:
  Entries entries_;
};

struct Relation {
  FormalTerm lhs;
  FormalTerm rhs;
};

class Presentation {
 public:
  Presentation() = default;
  Presentation(std::string name, std::vector<std::string> generators) : name_(std::move(name)), generators_(std::move(generators)) {
    std::set<std::string> seen;
    for (const auto& g : generators_) {
      if (g.empty() || !(std::isalpha(static_cast<unsigned char>(g[0])) || g[0] == '_')) {
        throw Error(ErrorCode::InvalidPresentation, "bad generator name '" + g + "'");
      }
      if (!seen.insert(g).second) throw Error(ErrorCode::InvalidPresentation, "duplicate generator '" + g + "'");
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Relation>& relations() const { return relations_; }

  int generator_id(std::string_view g) const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (generators_[i] == g) return static_cast<int>(i);
    }
    throw Error(ErrorCode::UnknownGenerator, "'" + std::string(g) + "' is not a generator of " + name_);
  }

  void add_relation(FormalTerm lhs, FormalTerm rhs) { relations_.push_back({std::move(lhs), std::move(rhs)}); }
  void add_relation(std::string_view lhs, std::string_view rhs) { add_relation(parse(lhs), parse(rhs)); }

  /// Registers a homomorphism into an implemented semiring; rejects maps that
  /// do not respect every relation.
  void set_interpretation(std::map<std::string, SemiringValue> images) {
    if (images.empty()) throw Error(ErrorCode::InvalidPresentation, "empty interpretation");
    for (const auto& g : generators_) {
      if (!images.contains(g)) throw Error(ErrorCode::InvalidPresentation, "interpretation misses generator " + g);
    }
    std::optional<SemiringTag> tag;
    std::vector<SemiringValue> ordered;
    for (const auto& g : generators_) {
      const auto& v = images.at(g);
      if (tag && !(*tag == v.tag())) throw Error(ErrorCode::InvalidPresentation, "interpretation mixes semirings");
      tag = v.tag();
      ordered.push_back(v);
    }
    interpretation_ = std::move(ordered);
    interpretation_tag_ = *tag;
    for (const auto& r : relations_) {
      if (!(interpret(r.lhs) == interpret(r.rhs))) {
        interpretation_.reset();
        throw Error(ErrorCode::InvalidPresentation,
                    "interpretation does not respect relation " + render(r.lhs) + " = " + render(r.rhs));
      }
    }
  }

  bool has_interpretation() const { return interpretation_.has_value(); }
  const SemiringTag& interpretation_tag() const { return interpretation_tag_; }

  SemiringValue interpret(const FormalTerm& t) const {
    if (!interpretation_) throw Error(ErrorCode::InvalidPresentation, name_ + " has no interpretation");
    SemiringValue sum = SemiringValue::zero(interpretation_tag_);
    for (const auto& [w, m] : t.entries()) {
      SemiringValue prod = SemiringValue::one(interpretation_tag_);
      for (int g : w) prod = prod * (*interpretation_)[static_cast<std::size_t>(g)];
      sum = sum + constant_in(interpretation_tag_, Rational(m)) * prod;
    }
    return sum;
  }

  /// Sum-of-products syntax over generators, naturals, `+`, `*`, parentheses.
  FormalTerm parse(std::string_view text) const {
    TermParser p{*this, text, 0};
    FormalTerm t = p.sum();
    p.skip_space();
    if (p.pos != text.size()) p.fail("unexpected trailing input");
    return t;
  }

  std::string render(const FormalTerm& t) const {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [w, m] : t.entries()) {
      if (!out.empty()) out += " + ";
      std::string word;
      for (int g : w) {
        if (!word.empty()) word += "*";
        word += generators_[static_cast<std::size_t>(g)];
      }
      if (word.empty()) {
        out += std::to_string(m);
      } else {
        out += (m == 1 ? "" : std::to_string(m) + "*") + word;
      }
    }
    return out;
  }

 private:
  struct TermParser {
    const Presentation& pres;
    std::string_view text;
    std::size_t pos;

    [[noreturn]] void fail(const std::string& msg) const {
      throw Error(ErrorCode::SyntaxError, msg + " in term '" + std::string(text) + "'", 1, pos + 1);
    }
    void skip_space() {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    FormalTerm sum() {
      FormalTerm t = product();
      for (;;) {
        skip_space();
        if (pos < text.size() && text[pos] == '+') {
          ++pos;
          t = t + product();
        } else {
          return t;
        }
      }
    }
    FormalTerm product() {
      FormalTerm t = atom();
      for (;;) {
        skip_space();
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          t = t * atom();
        } else {
          return t;
        }
      }
    }
    FormalTerm atom() {
      skip_space();
      if (pos >= text.size()) fail("unexpected end");
      const char c = text[pos];
      if (c == '(') {
        ++pos;
        FormalTerm t = sum();
        skip_space();
        if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
        ++pos;
        return t;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::uint64_t n = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          n = n * 10 + static_cast<std::uint64_t>(text[pos] - '0');
          ++pos;
        }
        return n == 0 ? FormalTerm::zero() : FormalTerm::word({}, n);
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        return FormalTerm::word({pres.generator_id(text.substr(start, pos - start))});
      }
      fail(std::string("unexpected character '") + c + "'");
    }
  };

  std::string name_;
  std::vector<std::string> generators_;
  std::vector<Relation> relations_;
  std::optional<std::vector<SemiringValue>> interpretation_;
  SemiringTag interpretation_tag_;
};

/// All terms reachable from `t` by one relation application.
inline std::vector<FormalTerm> rewrite_neighbours(const Presentation& p, const FormalTerm& t) {
  std::set<FormalTerm> out;
  auto apply = [&](const FormalTerm& from, const FormalTerm& to) {
    if (from.is_zero()) return;
    const auto& [first, first_mult] = *from.entries().begin();
    for (const auto& [w, mult] : t.entries()) {
      if (w.size() < first.size()) continue;
      for (std::size_t pos = 0; pos + first.size() <= w.size(); ++pos) {
        if (!std::equal(first.begin(), first.end(), w.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
        const GenWord u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
        const GenWord v(w.begin() + static_cast<std::ptrdiff_t>(pos + first.size()), w.end());
        auto wrap = [&](const GenWord& s) {
          GenWord r = u;
          r.insert(r.end(), s.begin(), s.end());
          r.insert(r.end(), v.begin(), v.end());
          return r;
        };
        bool present = true;
        for (const auto& [s, m] : from.entries()) {
          if (t.count(wrap(s)) < m) {
            present = false;
            break;
          }
        }
        if (!present) continue;
        FormalTerm next = t;
        for (const auto& [s, m] : from.entries()) next.remove(wrap(s), m);
        for (const auto& [s, m] : to.entries()) next.add(wrap(s), m);
        if (!(next == t)) out.insert(std::move(next));
      }
    }
  };
  for (const auto& r : p.relations()) {
    apply(r.lhs, r.rhs);
    apply(r.rhs, r.lhs);
  }
  return {out.begin(), out.end()};
}

/// Every term reachable from `t` in at most `depth` steps (capped at
/// `max_nodes` terms).
inline std::vector<FormalTerm> rewrite_closure(const Presentation& p, const FormalTerm& t, std::size_t depth,
                                               std::size_t max_nodes = 10000) {
  std::set<FormalTerm> seen{t};
  std::vector<FormalTerm> frontier{t};
  for (std::size_t d = 0; d < depth && !frontier.empty() && seen.size() < max_nodes; ++d) {
    std::vector<FormalTerm> next;
    for (const auto& f : frontier) {
      for (auto& n : rewrite_neighbours(p, f)) {
        if (seen.size() >= max_nodes) break;
        if (seen.insert(n).second) next.push_back(std::move(n));
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

enum class OracleVerdict { Equal, Distinct, Unknown };

constexpr std::string_view verdict_name(OracleVerdict v) {
  switch (v) {
    case OracleVerdict::Equal: return "equal";
    case OracleVerdict::Distinct: return "distinct";
    case OracleVerdict::Unknown: return "unknown";
  }
  return "";
}

struct OracleResult {
  OracleVerdict verdict = OracleVerdict::Unknown;
  /// Rewrite chain from the first to the second term (Equal only).
  std::vector<std::string> chain;
  /// Separating evaluation (Distinct only).
  std::string witness;
  std::size_t visited = 0;
};

namespace oracle_detail {

inline std::string separating_witness(const SemiringValue& a, const SemiringValue& b) {
  const std::vector<Rational> points = {Rational(1, 3), Rational(2, 3), Rational(1, 4), Rational(3, 4), Rational(1, 5),
                                        Rational(2, 5), Rational(3, 5), Rational(4, 5), Rational(1, 2), Rational(0),
                                        Rational(1)};
  auto try_uni = [&](const auto& pa, const auto& pb) -> std::optional<std::string> {
    for (const auto& p : points) {
      auto ea = pa.eval(p);
      auto eb = pb.eval(p);
      if (!(ea == eb)) return "p=" + p.str() + ": " + ea.str() + " vs " + eb.str();
    }
    // Fall back to enough distinct points to separate any two polynomials.
    const std::size_t d = std::max(pa.degree(), pb.degree()) + 1;
    for (std::size_t k = 0; k <= d; ++k) {
      Rational p(k, d);
      auto ea = pa.eval(p);
      auto eb = pb.eval(p);
      if (!(ea == eb)) return "p=" + p.str() + ": " + ea.str() + " vs " + eb.str();
    }
    return std::nullopt;
  };
  std::optional<std::string> found;
  if (a.tag().shape == Shape::Scalar) {
    if (const auto* pa = std::get_if<NatBernstein>(&a.payload())) found = try_uni(*pa, b.as<NatBernstein>());
    if (const auto* pa = std::get_if<RatBernstein>(&a.payload())) found = try_uni(*pa, b.as<RatBernstein>());
  }
  if (found) return *found;
  return to_text(a) + " vs " + to_text(b);
}

}  // namespace oracle_detail

/// Bounded equality check in a presented semiring. `bound` caps the length
/// of the rewrite chain; `max_nodes` caps the number of visited terms.
inline OracleResult presented_eq_oracle(const Presentation& p, const FormalTerm& t1, const FormalTerm& t2,
                                        std::size_t bound, std::size_t max_nodes = 10000) {
  OracleResult result;
  if (p.has_interpretation()) {
    auto a = p.interpret(t1);
    auto b = p.interpret(t2);
    if (!(a == b)) {
      result.verdict = OracleVerdict::Distinct;
      result.witness = oracle_detail::separating_witness(a, b);
      return result;
    }
  }

  struct Side {
    std::vector<FormalTerm> nodes;
    std::vector<std::ptrdiff_t> parent;
    std::map<FormalTerm, std::size_t> ids;
    std::vector<std::size_t> frontier;
    std::size_t depth = 0;
  };
  auto make_side = [](const FormalTerm& t) {
    Side s;
    s.nodes.push_back(t);
    s.parent.push_back(-1);
    s.ids.emplace(t, 0);
    s.frontier.push_back(0);
    return s;
  };
  auto path_to_root = [](const Side& s, std::size_t id) {
    std::vector<FormalTerm> path;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(id); i >= 0; i = s.parent[static_cast<std::size_t>(i)]) {
      path.push_back(s.nodes[static_cast<std::size_t>(i)]);
    }
    return path;
  };

  Side from = make_side(t1);
  Side to = make_side(t2);
  auto finish = [&](std::size_t id_from, std::size_t id_to) {
    auto left = path_to_root(from, id_from);
    std::reverse(left.begin(), left.end());
    auto right = path_to_root(to, id_to);
    for (const auto& t : left) result.chain.push_back(p.render(t));
    for (std::size_t i = 1; i < right.size(); ++i) result.chain.push_back(p.render(right[i]));
    result.verdict = OracleVerdict::Equal;
    result.visited = from.nodes.size() + to.nodes.size();
    return result;
  };
  if (t1 == t2) return finish(0, 0);

  while (from.depth + to.depth < bound && from.nodes.size() + to.nodes.size() < max_nodes) {
    const bool expand_from = !from.frontier.empty() && (to.frontier.empty() || from.frontier.size() <= to.frontier.size());
    Side& side = expand_from ? from : to;
    const Side& other = expand_from ? to : from;
    if (side.frontier.empty()) break;
    std::vector<std::size_t> next;
    for (std::size_t id : side.frontier) {
      const FormalTerm current = side.nodes[id];
      for (auto& n : rewrite_neighbours(p, current)) {
        if (side.ids.contains(n)) continue;
        const std::size_t nid = side.nodes.size();
        side.nodes.push_back(n);
        side.parent.push_back(static_cast<std::ptrdiff_t>(id));
        side.ids.emplace(n, nid);
        next.push_back(nid);
        if (auto hit = other.ids.find(n); hit != other.ids.end()) {
          return expand_from ? finish(nid, hit->second) : finish(hit->second, nid);
        }
        if (from.nodes.size() + to.nodes.size() >= max_nodes) break;
      }
      if (from.nodes.size() + to.nodes.size() >= max_nodes) break;
    }
    side.frontier = std::move(next);
    ++side.depth;
  }
  result.visited = from.nodes.size() + to.nodes.size();
  return result;
}

inline OracleResult presented_eq_oracle(const Presentation& p, std::string_view t1, std::string_view t2,
                                        std::size_t bound, std::size_t max_nodes = 10000) {
  return presented_eq_oracle(p, p.parse(t1), p.parse(t2), bound, max_nodes);
}

// ---------------------------------------------------------------------------
// Built-in presentations.

/// R^st_I: wr_i rd_i = wr_i, wr_i wr_j = wr_j, wr_i rd_j = 0 (i != j),
/// sum_i rd_i wr_i = 1. With `with_model` the matrix model is registered.
inline Presentation state_presentation(const std::vector<std::string>& index, bool with_model = true) {
  std::vector<std::string> gens;
  for (const auto& i : index) gens.push_back("rd_" + i);
  for (const auto& i : index) gens.push_back("wr_" + i);
  Presentation p("state", gens);
  for (const auto& i : index) p.add_relation("wr_" + i + "*rd_" + i, "wr_" + i);
  for (const auto& i : index) {
    for (const auto& j : index) p.add_relation("wr_" + i + "*wr_" + j, "wr_" + j);
  }
  for (const auto& i : index) {
    for (const auto& j : index) {
      if (i != j) p.add_relation("wr_" + i + "*rd_" + j, "0");
    }
  }
  std::string unit_sum;
  for (const auto& i : index) unit_sum += (unit_sum.empty() ? "" : " + ") + ("rd_" + i + "*wr_" + i);
  p.add_relation(unit_sum, "1");
  if (with_model) {
    std::map<std::string, SemiringValue> images;
    for (const auto& i : index) {
      images.emplace("rd_" + i, state_value({rd_letter(i)}, index));
      images.emplace("wr_" + i, state_value({wr_letter(i)}, index));
    }
    p.set_interpretation(std::move(images));
  }
  return p;
}

/// N[X,Xb] = < X, Xb | X + Xb = 1, X Xb = Xb X >, interpreted in Bernstein form.
inline Presentation coin_presentation(bool with_model = true, const std::string& x = "X", const std::string& xb = "Xb") {
  Presentation p("coin", {x, xb});
  p.add_relation(x + " + " + xb, "1");
  p.add_relation(x + "*" + xb, xb + "*" + x);
  if (with_model) {
    std::map<std::string, SemiringValue> images;
    images.emplace(x, make_value(tags::bern(), Payload(NatBernstein::x())));
    images.emplace(xb, make_value(tags::bern(), Payload(NatBernstein::xbar())));
    p.set_interpretation(std::move(images));
  }
  return p;
}

/// Free I/O semiring: no relations, interpreted as word multisets.
inline Presentation io_presentation(const std::vector<std::string>& index) {
  std::vector<std::string> gens;
  for (const auto& i : index) gens.push_back("in_" + i);
  for (const auto& i : index) gens.push_back("out_" + i);
  Presentation p("io", gens);
  std::map<std::string, SemiringValue> images;
  const auto tag = tags::io(index);
  for (const auto& i : index) {
    images.emplace("in_" + i, io_letter(tag, in_letter(i)));
    images.emplace("out_" + i, io_letter(tag, out_letter(i)));
  }
  p.set_interpretation(std::move(images));
  return p;
}

/// Tensor presentation: both sets of generators and relations, plus
/// g1 * g2 = g2 * g1 for every generator g1 of the first factor and g2 of
/// the second (the homomorphism conditions are the factors' relations).
inline Presentation tensor_presentation(const Presentation& a, const Presentation& b) {
  std::vector<std::string> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  Presentation p(a.name() + "(x)" + b.name(), gens);
  const auto offset = static_cast<int>(a.generators().size());
  auto shift = [&](const FormalTerm& t) {
    FormalTerm out;
    for (const auto& [w, m] : t.entries()) {
      GenWord s;
      for (int g : w) s.push_back(g + offset);
      out.add(s, m);
    }
    return out;
  };
  for (const auto& r : a.relations()) p.add_relation(r.lhs, r.rhs);
  for (const auto& r : b.relations()) p.add_relation(shift(r.lhs), shift(r.rhs));
  for (const auto& g1 : a.generators()) {
    for (const auto& g2 : b.generators()) p.add_relation(g1 + "*" + g2, g2 + "*" + g1);
  }
  return p;
}

/// N[X,Xb] (x) N[Y,Yb], interpreted in the bivariate Bernstein form.
inline Presentation bicoin_presentation(bool with_model = true) {
  Presentation p = tensor_presentation(coin_presentation(false), coin_presentation(false, "Y", "Yb"));
  if (with_model) {
    const auto tag = tags::bibern();
    std::map<std::string, SemiringValue> images;
    images.emplace("X", coin_generator(tag, PolyVar::X, false));
    images.emplace("Xb", coin_generator(tag, PolyVar::X, true));
    images.emplace("Y", coin_generator(tag, PolyVar::Y, false));
    images.emplace("Yb", coin_generator(tag, PolyVar::Y, true));
    p.set_interpretation(std::move(images));
  }
  return p;
}

/// Reads a presentation from JSON. Either
///   {"builtin": "state"|"coin"|"bicoin"|"io", "index": [...], "model": bool},
///   {"builtin": "tensor", "left": <presentation>, "right": <presentation>}
/// or
///   {"name": ..., "generators": [...], "relations": [[lhs, rhs], ...],
///    "interpretation": {generator: <semiring value JSON>}}.
inline Presentation presentation_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("builtin")) {
      const auto kind = j.at("builtin").get<std::string>();
      const bool model = j.value("model", true);
      std::vector<std::string> index;
      if (j.contains("index")) index = j.at("index").get<std::vector<std::string>>();
      if (kind == "state") return state_presentation(index, model);
      if (kind == "coin") return coin_presentation(model);
      if (kind == "bicoin") return bicoin_presentation(model);
      if (kind == "io") return io_presentation(index);
      if (kind == "tensor") return tensor_presentation(presentation_from_json(j.at("left")), presentation_from_json(j.at("right")));
      throw Error(ErrorCode::InvalidPresentation, "unknown builtin presentation '" + kind + "'");
    }
    Presentation p(j.value("name", std::string("presentation")), j.at("generators").get<std::vector<std::string>>());
    for (const auto& r : j.value("relations", nlohmann::json::array())) {
      if (!r.is_array() || r.size() != 2) throw Error(ErrorCode::InvalidPresentation, "relation must be [lhs, rhs]");
      p.add_relation(r[0].get<std::string>(), r[1].get<std::string>());
    }
    if (j.contains("interpretation")) {
      std::map<std::string, SemiringValue> images;
      for (const auto& [g, v] : j.at("interpretation").items()) images.emplace(g, value_from_json(v));
      p.set_interpretation(std::move(images));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidPresentation, std::string("malformed presentation: ") + e.what());
  }
}

}  // namespace semfx
