#pragma once

// Finitely supported semiring-valued measures: an element sum_i r_i x_i of
// the module theory T_R(n), with the convexity subtheory T_{R,S} picked out
// by the total weight.

#include <map>
#include <set>
#include <string>
#include <utility>

#include "json.hpp"
#include "semfx/convexity.hpp"
#include "semfx/error.hpp"
#include "semfx/semiring.hpp"
#include "semfx/tensor.hpp"

namespace semfx {

struct TheoryTag {
  SemiringTag semiring;
  ConvexityClass convexity;

  TheoryTag(SemiringTag s, ClassKind kind) : semiring(s), convexity(kind, std::move(s)) {}
  friend bool operator==(const TheoryTag&, const TheoryTag&) = default;
};

inline nlohmann::json to_json(const TheoryTag& t) {
  nlohmann::json out;
  out["semiring"] = tag_name(t.semiring);
  if (t.semiring.shape != Shape::Scalar) out["index"] = t.semiring.index;
  out["class"] = std::string(class_name(t.convexity.kind()));
  return out;
}

class Dist {
 public:
  using Weights = std::map<std::string, SemiringValue>;

  explicit Dist(SemiringTag tag) : tag_(std::move(tag)) { SemiringValue::check_tag(tag_); }

  const SemiringTag& tag() const { return tag_; }
  const Weights& weights() const { return weights_; }
  bool empty() const { return weights_.empty(); }

  SemiringValue weight(const std::string& outcome) const {
    auto it = weights_.find(outcome);
    return it == weights_.end() ? SemiringValue::zero(tag_) : it->second;
  }

  /// Accumulates w at `outcome`; zero weights are never stored.
  void add(const std::string& outcome, const SemiringValue& w) {
    if (!(w.tag() == tag_)) {
      throw Error(ErrorCode::TagMismatch, "weight in " + tag_name(w.tag()) + " added to a distribution over " + tag_name(tag_));
    }
    auto it = weights_.find(outcome);
    if (it == weights_.end()) {
      if (!w.is_zero()) weights_.emplace(outcome, w);
      return;
    }
    it->second = it->second + w;
    if (it->second.is_zero()) weights_.erase(it);
  }

  /// Left action: every weight becomes s * weight.
  Dist scaled_left(const SemiringValue& s) const {
    Dist out(tag_);
    for (const auto& [o, w] : weights_) out.add(o, s * w);
    return out;
  }

  friend bool operator==(const Dist& a, const Dist& b) {
    if (!(a.tag_ == b.tag_)) return false;
    return a.weights_ == b.weights_;
  }

 private:
  SemiringTag tag_;
  Weights weights_;
};

inline Dist dist_unit(const std::string& x, const SemiringTag& tag) {
  Dist d(tag);
  d.add(x, SemiringValue::one(tag));
  return d;
}

inline Dist dist_unit(const std::string& x, const std::set<std::string>& outcomes, const TheoryTag& theory) {
  if (!outcomes.contains(x)) throw Error(ErrorCode::UnknownOutcome, "outcome '" + x + "' is not declared");
  return dist_unit(x, theory.semiring);
}

/// Substitution: weight of y is sum_x d(x) * k(x)(y), with d's weight on the left.
template <class Continuation>
  requires std::invocable<Continuation, const std::string&>
Dist dist_bind(const Dist& d, Continuation&& k) {
  Dist out(d.tag());
  for (const auto& [x, w] : d.weights()) {
    const Dist next = k(x);
    if (!(next.tag() == d.tag())) {
      throw Error(ErrorCode::TagMismatch, "continuation for '" + x + "' lives in " + tag_name(next.tag()));
    }
    for (const auto& [y, v] : next.weights()) out.add(y, w * v);
  }
  return out;
}

inline Dist dist_bind(const Dist& d, const std::map<std::string, Dist>& k) {
  return dist_bind(d, [&](const std::string& x) -> const Dist& {
    auto it = k.find(x);
    if (it == k.end()) throw Error(ErrorCode::MissingContinuation, "no continuation for outcome '" + x + "'");
    return it->second;
  });
}

inline SemiringValue total_weight(const Dist& d) {
  SemiringValue sum = SemiringValue::zero(d.tag());
  for (const auto& [o, w] : d.weights()) sum = sum + w;
  return sum;
}

inline MembershipResult in_subtheory(const Dist& d, const TheoryTag& theory, const Certificate& certificate = {}) {
  if (!(d.tag() == theory.semiring)) {
    throw Error(ErrorCode::TagMismatch, "distribution over " + tag_name(d.tag()) + " checked against " +
                                            tag_name(theory.semiring));
  }
  return member(theory.convexity, total_weight(d), certificate);
}

inline std::string pair_label(const std::string& i, const std::string& j) { return "(" + i + "," + j + ")"; }

/// The distribution over the outcome grid obtained by running `first` and
/// then `second`.
inline Dist sequence_grid(const Dist& first, const Dist& second) {
  if (!(first.tag() == second.tag())) throw Error(ErrorCode::TagMismatch, "grid of distributions over different semirings");
  Dist out(first.tag());
  for (const auto& [i, a] : first.weights()) {
    for (const auto& [j, b] : second.weights()) out.add(pair_label(i, j), a * b);
  }
  return out;
}

/// Interchange law: t-then-u equals u-then-t on the (i,j) grid.
inline bool commute_check(const Dist& t, const Dist& u) {
  if (!(t.tag() == u.tag())) {
    throw Error(ErrorCode::TagMismatch, "commute_check needs one semiring, got " + tag_name(t.tag()) + " and " +
                                            tag_name(u.tag()));
  }
  for (const auto& [i, a] : t.weights()) {
    for (const auto& [j, b] : u.weights()) {
      if (!(a * b == b * a)) return false;
    }
  }
  return true;
}

inline Dist embed_dist(const Dist& d, TensorSide side, const TensorSpec& spec) {
  Dist out(spec.result);
  for (const auto& [o, w] : d.weights()) out.add(o, tensor_embed(side, w, spec));
  return out;
}

/// commute_check after embedding t through phi_1 and u through phi_2.
inline bool commute_check(const Dist& t, const Dist& u, const TensorSpec& spec) {
  return commute_check(embed_dist(t, TensorSide::Left, spec), embed_dist(u, TensorSide::Right, spec));
}

/// Comparison map on a two-level term: the outer distribution's weights come
/// from the left factor, the inner ones from the right factor; both are
/// embedded into the tensor and flattened by substitution.
inline Dist phi_map(const Dist& outer, const std::map<std::string, Dist>& inner, const TensorSpec& spec) {
  const Dist lifted = embed_dist(outer, TensorSide::Left, spec);
  std::map<std::string, Dist> lifted_inner;
  for (const auto& [x, w] : outer.weights()) {
    auto it = inner.find(x);
    if (it == inner.end()) throw Error(ErrorCode::MissingContinuation, "no inner term for outcome '" + x + "'");
    lifted_inner.emplace(x, embed_dist(it->second, TensorSide::Right, spec));
  }
  return dist_bind(lifted, lifted_inner);
}

inline nlohmann::json weights_to_json(const Dist& d) {
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [o, v] : d.weights()) w[o] = to_text(v);
  return w;
}

/// `{"theory": {...}, "weights": {outcome: text}}`.
inline nlohmann::json to_json(const Dist& d, const TheoryTag& theory) {
  return {{"theory", to_json(theory)}, {"weights", weights_to_json(d)}};
}

}  // namespace semfx
