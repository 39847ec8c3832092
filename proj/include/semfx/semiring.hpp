#pragma once

// The uniform carrier for every implemented semiring. A tag names a
// coefficient ring (N, Q+, N[1/n], polynomials in X,Xb and optionally Y,Yb
// over N or Q+) and a shape (plain scalars, word maps for I/O, or square
// matrices for state). Shape "words" over coefficients C is C (x) R^io and
// shape "matrix" over C is C (x) R^st; the coefficient rings are all
// commutative, so both constructions are canonical.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "semfx/bernstein.hpp"
#include "semfx/error.hpp"
#include "semfx/matrix.hpp"
#include "semfx/numbers.hpp"
#include "semfx/words.hpp"

namespace semfx {

enum class CoeffKind { Nat, Rat, Local, Bern, RatBern, BiBern, RatBiBern };
enum class Shape { Scalar, Words, Matrix };

struct SemiringTag {
  CoeffKind coeff = CoeffKind::Nat;
  Shape shape = Shape::Scalar;
  /// Generator denominator for CoeffKind::Local (N[1/base]).
  std::uint64_t local_base = 0;
  /// Declared message set (Words) or state values (Matrix), in order.
  std::vector<std::string> index;

  friend bool operator==(const SemiringTag&, const SemiringTag&) = default;

  std::size_t index_of(std::string_view name) const {
    auto it = std::find(index.begin(), index.end(), name);
    if (it == index.end()) throw Error(ErrorCode::UnknownIndex, "index '" + std::string(name) + "' is not declared");
    return static_cast<std::size_t>(it - index.begin());
  }
  bool has_index(std::string_view name) const { return std::find(index.begin(), index.end(), name) != index.end(); }
};

namespace tags {

inline SemiringTag nat() { return {CoeffKind::Nat, Shape::Scalar, 0, {}}; }
inline SemiringTag rat() { return {CoeffKind::Rat, Shape::Scalar, 0, {}}; }
inline SemiringTag local(std::uint64_t base) { return {CoeffKind::Local, Shape::Scalar, base, {}}; }
inline SemiringTag bern() { return {CoeffKind::Bern, Shape::Scalar, 0, {}}; }
inline SemiringTag rat_bern() { return {CoeffKind::RatBern, Shape::Scalar, 0, {}}; }
inline SemiringTag bibern() { return {CoeffKind::BiBern, Shape::Scalar, 0, {}}; }
inline SemiringTag rat_bibern() { return {CoeffKind::RatBiBern, Shape::Scalar, 0, {}}; }
inline SemiringTag words(CoeffKind c, std::vector<std::string> index) { return {c, Shape::Words, 0, std::move(index)}; }
inline SemiringTag matrix(CoeffKind c, std::vector<std::string> index) { return {c, Shape::Matrix, 0, std::move(index)}; }
/// R^io_I.
inline SemiringTag io(std::vector<std::string> index) { return words(CoeffKind::Nat, std::move(index)); }
/// Q+ (x) R^io_I.
inline SemiringTag prob_io(std::vector<std::string> index) { return words(CoeffKind::Rat, std::move(index)); }
/// R^st_I in its matrix model.
inline SemiringTag state(std::vector<std::string> index) { return matrix(CoeffKind::Nat, std::move(index)); }
/// Q+ (x) R^st_I.
inline SemiringTag prob_state(std::vector<std::string> index) { return matrix(CoeffKind::Rat, std::move(index)); }

}  // namespace tags

inline std::string coeff_name(CoeffKind c, std::uint64_t base = 0) {
  switch (c) {
    case CoeffKind::Nat: return "nat";
    case CoeffKind::Rat: return "rat";
    case CoeffKind::Local: return "nat[1/" + std::to_string(base) + "]";
    case CoeffKind::Bern: return "bern";
    case CoeffKind::RatBern: return "rat-bern";
    case CoeffKind::BiBern: return "bibern";
    case CoeffKind::RatBiBern: return "rat-bibern";
  }
  return "?";
}

/// `rat`, `bern`, `io:nat`, `state:rat`, `nat[1/6]`, ...
inline std::string tag_name(const SemiringTag& t) {
  std::string c = coeff_name(t.coeff, t.local_base);
  switch (t.shape) {
    case Shape::Scalar: return c;
    case Shape::Words: return "io:" + c;
    case Shape::Matrix: return "state:" + c;
  }
  return c;
}

inline SemiringTag parse_tag_name(std::string_view name, std::vector<std::string> index = {}) {
  SemiringTag t;
  std::string_view coeff = name;
  if (name.starts_with("io:")) {
    t.shape = Shape::Words;
    coeff = name.substr(3);
  } else if (name.starts_with("state:")) {
    t.shape = Shape::Matrix;
    coeff = name.substr(6);
  }
  if (coeff == "nat") {
    t.coeff = CoeffKind::Nat;
  } else if (coeff == "rat") {
    t.coeff = CoeffKind::Rat;
  } else if (coeff == "bern") {
    t.coeff = CoeffKind::Bern;
  } else if (coeff == "rat-bern") {
    t.coeff = CoeffKind::RatBern;
  } else if (coeff == "bibern") {
    t.coeff = CoeffKind::BiBern;
  } else if (coeff == "rat-bibern") {
    t.coeff = CoeffKind::RatBiBern;
  } else if (coeff.starts_with("nat[1/") && coeff.ends_with("]")) {
    t.coeff = CoeffKind::Local;
    t.local_base = Natural::parse(coeff.substr(6, coeff.size() - 7)).to_u64();
  } else {
    throw Error(ErrorCode::InvalidValue, "unknown semiring '" + std::string(name) + "'");
  }
  t.index = std::move(index);
  return t;
}

inline bool is_polynomial(CoeffKind c) { return c != CoeffKind::Nat && c != CoeffKind::Rat && c != CoeffKind::Local; }
inline bool is_bivariate(CoeffKind c) { return c == CoeffKind::BiBern || c == CoeffKind::RatBiBern; }
inline bool has_rational_coefficients(CoeffKind c) {
  return c == CoeffKind::Rat || c == CoeffKind::Local || c == CoeffKind::RatBern || c == CoeffKind::RatBiBern;
}

using Payload = std::variant<Natural, Rational, NatBernstein, RatBernstein, NatBiBernstein, RatBiBernstein,
                             WordMap<Natural>, WordMap<Rational>, WordMap<NatBernstein>, WordMap<RatBernstein>,
                             WordMap<NatBiBernstein>, WordMap<RatBiBernstein>, SquareMatrix<Natural>,
                             SquareMatrix<Rational>, SquareMatrix<NatBernstein>, SquareMatrix<RatBernstein>,
                             SquareMatrix<NatBiBernstein>, SquareMatrix<RatBiBernstein>>;

constexpr std::size_t coeff_slot(CoeffKind c) {
  switch (c) {
    case CoeffKind::Nat: return 0;
    case CoeffKind::Rat:
    case CoeffKind::Local: return 1;
    case CoeffKind::Bern: return 2;
    case CoeffKind::RatBern: return 3;
    case CoeffKind::BiBern: return 4;
    case CoeffKind::RatBiBern: return 5;
  }
  return 0;
}

constexpr std::size_t payload_slot(const SemiringTag& t) {
  return static_cast<std::size_t>(t.shape) * 6 + coeff_slot(t.coeff);
}

template <class T>
struct is_word_map : std::false_type {};
template <class C>
struct is_word_map<WordMap<C>> : std::true_type {};
template <class T>
struct is_square_matrix : std::false_type {};
template <class C>
struct is_square_matrix<SquareMatrix<C>> : std::true_type {};
template <class T>
struct is_bernstein : std::false_type {};
template <class C>
struct is_bernstein<Bernstein<C>> : std::true_type {};
template <class T>
struct is_bibernstein : std::false_type {};
template <class C>
struct is_bibernstein<BiBernstein<C>> : std::true_type {};

/// Coefficient ring of a payload (the payload itself for scalars).
template <class P>
struct payload_coefficient {
  using type = P;
};
template <class C>
struct payload_coefficient<WordMap<C>> {
  using type = C;
};
template <class C>
struct payload_coefficient<SquareMatrix<C>> {
  using type = C;
};
template <class P>
using payload_coefficient_t = typename payload_coefficient<P>::type;

/// Calls f(std::type_identity<P>{}) with P the payload alternative at `slot`.
template <std::size_t I = 0, class F>
decltype(auto) with_payload_type(std::size_t slot, F&& f) {
  if constexpr (I + 1 < std::variant_size_v<Payload>) {
    if (slot != I) return with_payload_type<I + 1>(slot, std::forward<F>(f));
  }
  return f(std::type_identity<std::variant_alternative_t<I, Payload>>{});
}

enum class PolyVar { X, Y };

/// Lifts a coefficient into a larger coefficient ring, placing a univariate
/// polynomial in the variable `var` when the target is bivariate. Returns
/// nullopt when no embedding exists (e.g. Q+ into N).
template <class To, class From>
std::optional<To> lift_coefficient(const From& v, PolyVar var = PolyVar::X) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<From, Natural> && std::is_same_v<To, Rational>) {
    return Rational(v);
  } else if constexpr ((std::is_same_v<From, Natural> || std::is_same_v<From, Rational>)&&(
                           is_bernstein<To>::value || is_bibernstein<To>::value)) {
    auto base = lift_coefficient<typename To::coefficient_type>(v, var);
    if (!base) return std::nullopt;
    return To::constant(*base);
  } else if constexpr (is_bernstein<From>::value && is_bernstein<To>::value) {
    std::vector<typename To::coefficient_type> cs;
    for (const auto& c : v.coeffs()) {
      auto l = lift_coefficient<typename To::coefficient_type>(c, var);
      if (!l) return std::nullopt;
      cs.push_back(*l);
    }
    return To::from_coeffs(std::move(cs));
  } else if constexpr (is_bernstein<From>::value && is_bibernstein<To>::value) {
    auto uni = lift_coefficient<Bernstein<typename To::coefficient_type>>(v, var);
    if (!uni) return std::nullopt;
    return var == PolyVar::X ? To::in_x(*uni) : To::in_y(*uni);
  } else if constexpr (is_bibernstein<From>::value && is_bibernstein<To>::value) {
    std::vector<typename To::coefficient_type> cs;
    for (const auto& c : v.grid()) {
      auto l = lift_coefficient<typename To::coefficient_type>(c, var);
      if (!l) return std::nullopt;
      cs.push_back(*l);
    }
    return To::from_grid(v.degree_x(), v.degree_y(), std::move(cs));
  } else {
    return std::nullopt;
  }
}

class SemiringValue;
SemiringValue make_value(SemiringTag tag, Payload payload);

class SemiringValue {
 public:
  /// Validates the payload against the tag.
  SemiringValue(SemiringTag tag, Payload payload) : tag_(std::move(tag)), payload_(std::move(payload)) { validate(); }

  static SemiringValue zero(const SemiringTag& tag) {
    check_tag(tag);
    return with_payload_type(payload_slot(tag), [&](auto id) {
      using P = typename decltype(id)::type;
      if constexpr (is_square_matrix<P>::value) {
        return SemiringValue(tag, Payload(P::zero(tag.index.size())), Unchecked{});
      } else {
        return SemiringValue(tag, Payload(P::zero()), Unchecked{});
      }
    });
  }

  static SemiringValue one(const SemiringTag& tag) {
    check_tag(tag);
    return with_payload_type(payload_slot(tag), [&](auto id) {
      using P = typename decltype(id)::type;
      if constexpr (is_square_matrix<P>::value) {
        return SemiringValue(tag, Payload(P::identity(tag.index.size())), Unchecked{});
      } else {
        return SemiringValue(tag, Payload(P::one()), Unchecked{});
      }
    });
  }

  const SemiringTag& tag() const { return tag_; }
  const Payload& payload() const { return payload_; }

  template <class P>
  const P& as() const {
    if (const auto* p = std::get_if<P>(&payload_)) return *p;
    throw Error(ErrorCode::TagMismatch, "value of semiring " + tag_name(tag_) + " has a different payload");
  }

  bool is_zero() const {
    return std::visit([](const auto& p) { return p.is_zero(); }, payload_);
  }
  bool is_one() const { return *this == one(tag_); }

  friend SemiringValue operator+(const SemiringValue& a, const SemiringValue& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
  }
  /// a on the left; the word and matrix shapes are noncommutative.
  friend SemiringValue operator*(const SemiringValue& a, const SemiringValue& b) {
    return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
  }
  friend bool operator==(const SemiringValue& a, const SemiringValue& b) {
    require_same_tag(a, b);
    return a.payload_ == b.payload_;
  }

  static void require_same_tag(const SemiringValue& a, const SemiringValue& b) {
    if (!(a.tag_ == b.tag_)) {
      throw Error(ErrorCode::TagMismatch, "semiring " + tag_name(a.tag_) + " vs " + tag_name(b.tag_));
    }
  }

  static void check_tag(const SemiringTag& t) {
    if (t.coeff == CoeffKind::Local) {
      if (t.shape != Shape::Scalar) throw Error(ErrorCode::InvalidValue, "N[1/n] is only available as a scalar");
      if (t.local_base < 2) throw Error(ErrorCode::InvalidValue, "N[1/n] needs n >= 2");
    }
    if (t.shape != Shape::Scalar) {
      if (t.index.empty()) throw Error(ErrorCode::InvalidValue, tag_name(t) + " needs a nonempty index set");
      std::set<std::string> seen(t.index.begin(), t.index.end());
      if (seen.size() != t.index.size()) throw Error(ErrorCode::InvalidValue, "duplicate index in " + tag_name(t));
    } else if (!t.index.empty()) {
      throw Error(ErrorCode::InvalidValue, "scalar semiring " + tag_name(t) + " takes no index set");
    }
  }

 private:
  struct Unchecked {};
  SemiringValue(SemiringTag tag, Payload payload, Unchecked) : tag_(std::move(tag)), payload_(std::move(payload)) {}
  friend SemiringValue make_value(SemiringTag tag, Payload payload);

  template <class F>
  static SemiringValue combine(const SemiringValue& a, const SemiringValue& b, F f) {
    require_same_tag(a, b);
    return std::visit(
        [&](const auto& x) {
          using P = std::decay_t<decltype(x)>;
          return SemiringValue(a.tag_, Payload(f(x, std::get<P>(b.payload_))), Unchecked{});
        },
        a.payload_);
  }

  void validate() const {
    check_tag(tag_);
    if (payload_.index() != payload_slot(tag_)) {
      throw Error(ErrorCode::TagMismatch, "payload does not match semiring " + tag_name(tag_));
    }
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, Rational>) {
            if (tag_.coeff == CoeffKind::Local && !in_localization(p, tag_.local_base)) {
              throw Error(ErrorCode::InvalidValue, p.str() + " is not in " + tag_name(tag_));
            }
          } else if constexpr (is_word_map<P>::value) {
            for (const auto& [w, c] : p.entries()) {
              for (const auto& l : w) {
                if (l.kind != LetterKind::Input && l.kind != LetterKind::Output) {
                  throw Error(ErrorCode::InvalidValue, "I/O words use in_/out_ letters only");
                }
                if (!tag_.has_index(l.index)) {
                  throw Error(ErrorCode::UnknownIndex, "letter " + to_text(l) + " outside the declared index set");
                }
              }
            }
          } else if constexpr (is_square_matrix<P>::value) {
            if (p.size() != tag_.index.size()) throw Error(ErrorCode::InvalidValue, "matrix size does not match index set");
          }
        },
        payload_);
  }

  SemiringTag tag_;
  Payload payload_;
};

/// Trusted construction used by library code that builds payloads from
/// already-validated parts.
inline SemiringValue make_value(SemiringTag tag, Payload payload) {
  return SemiringValue(std::move(tag), std::move(payload), SemiringValue::Unchecked{});
}

inline SemiringValue sr_add(const SemiringValue& a, const SemiringValue& b) { return a + b; }
inline SemiringValue sr_mul(const SemiringValue& a, const SemiringValue& b) { return a * b; }
inline bool sr_eq(const SemiringValue& a, const SemiringValue& b) { return a == b; }

inline std::string to_text(const SemiringValue& v) {
  return std::visit([](const auto& p) { return to_text(p); }, v.payload());
}

// ---------------------------------------------------------------------------
// Embeddings and generators.

/// Homomorphic embedding of `v` into the semiring `target`: coefficients are
/// lifted, scalars become constant words or scalar matrices, and I/O words
/// may move to a larger message set.
inline SemiringValue embed(const SemiringValue& v, const SemiringTag& target, PolyVar var = PolyVar::X) {
  SemiringValue::check_tag(target);
  const SemiringTag& src = v.tag();
  auto fail = [&]() -> Error {
    return Error(ErrorCode::TagMismatch, "cannot embed " + tag_name(src) + " into " + tag_name(target));
  };
  if (src.shape == Shape::Matrix && (target.shape != Shape::Matrix || target.index != src.index)) throw fail();
  if (src.shape == Shape::Words) {
    if (target.shape != Shape::Words) throw fail();
    for (const auto& i : src.index) {
      if (!target.has_index(i)) throw fail();
    }
  }
  return std::visit(
      [&](const auto& p) -> SemiringValue {
        using From = std::decay_t<decltype(p)>;
        return with_payload_type(payload_slot(target), [&](auto id) -> SemiringValue {
          using To = typename decltype(id)::type;
          using ToC = payload_coefficient_t<To>;
          if constexpr (is_word_map<From>::value && is_word_map<To>::value) {
            To out;
            for (const auto& [w, c] : p.entries()) {
              auto l = lift_coefficient<ToC>(c, var);
              if (!l) throw fail();
              out.add_entry(w, *l);
            }
            return make_value(target, Payload(std::move(out)));
          } else if constexpr (is_square_matrix<From>::value && is_square_matrix<To>::value) {
            std::vector<ToC> es;
            for (const auto& c : p.entries()) {
              auto l = lift_coefficient<ToC>(c, var);
              if (!l) throw fail();
              es.push_back(*l);
            }
            return make_value(target, Payload(To(p.size(), std::move(es))));
          } else if constexpr (!is_word_map<From>::value && !is_square_matrix<From>::value) {
            auto l = lift_coefficient<ToC>(p, var);
            if (!l) throw fail();
            if constexpr (is_word_map<To>::value) {
              return make_value(target, Payload(To::constant(*l)));
            } else if constexpr (is_square_matrix<To>::value) {
              return make_value(target, Payload(To::scalar(target.index.size(), *l)));
            } else {
              if constexpr (std::is_same_v<To, Rational>) {
                if (target.coeff == CoeffKind::Local && !in_localization(*l, target.local_base)) throw fail();
              }
              return make_value(target, Payload(*l));
            }
          } else {
            throw fail();
          }
        });
      },
      v.payload());
}

inline SemiringValue nat_value(const Natural& n) { return make_value(tags::nat(), Payload(n)); }
inline SemiringValue rat_value(const Rational& r) { return make_value(tags::rat(), Payload(r)); }

/// The rational constant r in `tag`; non-integral r needs rational coefficients.
inline SemiringValue constant_in(const SemiringTag& tag, const Rational& r) {
  if (auto n = r.to_natural()) return embed(nat_value(*n), tag);
  return embed(rat_value(r), tag);
}

/// X or Xb (`bar`) in a polynomial semiring; `var` selects X,Xb vs Y,Yb.
inline SemiringValue coin_generator(const SemiringTag& tag, PolyVar var, bool bar) {
  if (!is_polynomial(tag.coeff) || (var == PolyVar::Y && !is_bivariate(tag.coeff))) {
    throw Error(ErrorCode::TagMismatch, "semiring " + tag_name(tag) + " has no coin generator");
  }
  const SemiringTag bern = tags::bern();
  auto g = make_value(bern, Payload(bar ? NatBernstein::xbar() : NatBernstein::x()));
  return embed(g, tag, var);
}

/// The single-letter word in_i / out_i.
inline SemiringValue io_letter(const SemiringTag& tag, const Letter& l) {
  if (tag.shape != Shape::Words) throw Error(ErrorCode::TagMismatch, tag_name(tag) + " has no I/O letters");
  if (l.kind != LetterKind::Input && l.kind != LetterKind::Output) {
    throw Error(ErrorCode::InvalidValue, "not an I/O letter: " + to_text(l));
  }
  tag.index_of(l.index);
  return with_payload_type(payload_slot(tag), [&](auto id) -> SemiringValue {
    using P = typename decltype(id)::type;
    if constexpr (is_word_map<P>::value) {
      return make_value(tag, Payload(P::letter(l)));
    } else {
      throw Error(ErrorCode::TagMismatch, "unreachable");
    }
  });
}

template <class P>
nlohmann::json payload_to_json(const P& p);

template <class C>
nlohmann::json coefficient_to_json(const C& c) {
  if constexpr (std::is_same_v<C, Natural> || std::is_same_v<C, Rational>) {
    return c.str();
  } else if constexpr (is_bernstein<C>::value) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& x : c.coeffs()) cs.push_back(x.str());
    return {{"coeffs", cs}};
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t a = 0; a <= c.degree_x(); ++a) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t b = 0; b <= c.degree_y(); ++b) row.push_back(c.at(a, b).str());
      rows.push_back(row);
    }
    return {{"coeffs", rows}};
  }
}

template <class P>
nlohmann::json payload_to_json(const P& p) {
  if constexpr (is_word_map<P>::value) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [w, c] : p.entries()) obj[to_text(w)] = coefficient_to_json(c);
    return obj;
  } else if constexpr (is_square_matrix<P>::value) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < p.size(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < p.size(); ++c) row.push_back(coefficient_to_json(p.at(r, c)));
      rows.push_back(row);
    }
    return rows;
  } else {
    return coefficient_to_json(p);
  }
}

/// `{"semiring": <tag>, "index": [...], "value": <payload>}`; "index" only
/// for word and matrix shapes.
inline nlohmann::json to_json(const SemiringValue& v) {
  nlohmann::json out;
  out["semiring"] = tag_name(v.tag());
  if (v.tag().shape != Shape::Scalar) out["index"] = v.tag().index;
  out["value"] = std::visit([](const auto& p) { return payload_to_json(p); }, v.payload());
  return out;
}

namespace json_detail {

inline std::string scalar_text(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_unsigned() || j.is_number_integer()) {
    if (j.is_number_integer() && j.get<std::int64_t>() < 0) throw Error(ErrorCode::InvalidValue, "negative number");
    return std::to_string(j.get<std::uint64_t>());
  }
  throw Error(ErrorCode::InvalidValue, "expected a number or numeric string, got " + j.dump());
}

template <class C>
C coefficient_from_json(const nlohmann::json& j) {
  if constexpr (std::is_same_v<C, Natural>) {
    return Natural::parse(scalar_text(j));
  } else if constexpr (std::is_same_v<C, Rational>) {
    return Rational::parse(scalar_text(j));
  } else if constexpr (is_bernstein<C>::value) {
    const auto& cs = j.is_object() ? j.at("coeffs") : j;
    std::vector<typename C::coefficient_type> v;
    for (const auto& x : cs) v.push_back(coefficient_from_json<typename C::coefficient_type>(x));
    if (v.empty()) throw Error(ErrorCode::InvalidValue, "empty Bernstein coefficient list");
    return C::from_coeffs(std::move(v));
  } else {
    const auto& rows = j.is_object() ? j.at("coeffs") : j;
    if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty()) {
      throw Error(ErrorCode::InvalidValue, "bivariate coefficients must be a nonempty grid");
    }
    const std::size_t w = rows[0].size();
    std::vector<typename C::coefficient_type> g;
    for (const auto& row : rows) {
      if (row.size() != w) throw Error(ErrorCode::InvalidValue, "ragged coefficient grid");
      for (const auto& x : row) g.push_back(coefficient_from_json<typename C::coefficient_type>(x));
    }
    return C::from_grid(rows.size() - 1, w - 1, std::move(g));
  }
}

}  // namespace json_detail

/// Inverse of to_json; validates the payload against the declared semiring.
inline SemiringValue value_from_json(const nlohmann::json& j) {
  try {
    std::vector<std::string> index;
    if (j.contains("index")) index = j.at("index").get<std::vector<std::string>>();
    SemiringTag tag = parse_tag_name(j.at("semiring").get<std::string>(), std::move(index));
    SemiringValue::check_tag(tag);
    const auto& value = j.at("value");
    return with_payload_type(payload_slot(tag), [&](auto id) -> SemiringValue {
      using P = typename decltype(id)::type;
      using C = payload_coefficient_t<P>;
      if constexpr (is_word_map<P>::value) {
        if (!value.is_object()) throw Error(ErrorCode::InvalidValue, "word map must be a JSON object");
        P m;
        for (const auto& [k, c] : value.items()) m.add_entry(parse_word(k), json_detail::coefficient_from_json<C>(c));
        return SemiringValue(tag, Payload(std::move(m)));
      } else if constexpr (is_square_matrix<P>::value) {
        const std::size_t n = tag.index.size();
        if (!value.is_array() || value.size() != n) throw Error(ErrorCode::InvalidValue, "matrix must have one row per index");
        std::vector<C> es;
        for (const auto& row : value) {
          if (!row.is_array() || row.size() != n) throw Error(ErrorCode::InvalidValue, "matrix rows must be square");
          for (const auto& x : row) es.push_back(json_detail::coefficient_from_json<C>(x));
        }
        return SemiringValue(tag, Payload(P(n, std::move(es))));
      } else {
        return SemiringValue(tag, Payload(json_detail::coefficient_from_json<C>(value)));
      }
    });
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidValue, std::string("malformed semiring value: ") + e.what());
  }
}

}  // namespace semfx
