#pragma once

// Tensors of semirings that have a canonical representation here. The
// coefficient rings are commutative, so for a coefficient ring C the tensor
// with the free I/O semiring is the word-map semiring over C, and the tensor
// with the state semiring is the matrix semiring over C.

#include <numeric>
#include <optional>
#include <string>

#include "semfx/error.hpp"
#include "semfx/semiring.hpp"

namespace semfx {

enum class TensorSide { Left, Right };

struct TensorSpec {
  SemiringTag left;
  SemiringTag right;
  SemiringTag result;
  /// Variable carrying the right factor's coin when both factors are N[X,Xb].
  PolyVar right_var = PolyVar::X;
};

namespace tensor_detail {

inline std::optional<std::pair<CoeffKind, PolyVar>> coefficient_tensor(CoeffKind a, CoeffKind b) {
  using K = CoeffKind;
  if (a == K::Nat) return std::pair{b, PolyVar::X};
  if (b == K::Nat) return std::pair{a, PolyVar::X};
  if (a == K::Rat && (b == K::Rat || b == K::RatBern || b == K::RatBiBern)) return std::pair{b, PolyVar::X};
  if (a == K::Rat && b == K::Bern) return std::pair{K::RatBern, PolyVar::X};
  if (a == K::Rat && b == K::BiBern) return std::pair{K::RatBiBern, PolyVar::X};
  if (a == K::Bern && b == K::Rat) return std::pair{K::RatBern, PolyVar::X};
  if (a == K::Bern && b == K::Bern) return std::pair{K::BiBern, PolyVar::Y};
  if (a == K::RatBern && b == K::Bern) return std::pair{K::RatBiBern, PolyVar::Y};
  if (a == K::Bern && b == K::RatBern) return std::pair{K::RatBiBern, PolyVar::Y};
  return std::nullopt;
}

}  // namespace tensor_detail

/// The canonical representation of left (x) right, when one is implemented.
inline std::optional<TensorSpec> find_tensor(const SemiringTag& left, const SemiringTag& right) {
  if (left.coeff == CoeffKind::Local || right.coeff == CoeffKind::Local) {
    // N[1/a] (x) N[1/b] = N[1/ab] for coprime a, b: both generators live in N[1/ab].
    if (left.coeff != CoeffKind::Local || right.coeff != CoeffKind::Local) return std::nullopt;
    if (std::gcd(left.local_base, right.local_base) != 1) return std::nullopt;
    return TensorSpec{left, right, tags::local(left.local_base * right.local_base), PolyVar::X};
  }
  // At most one factor carries words or matrices; the other must be scalar.
  if (left.shape != Shape::Scalar && right.shape != Shape::Scalar) return std::nullopt;
  auto coeff = tensor_detail::coefficient_tensor(left.coeff, right.coeff);
  if (!coeff) return std::nullopt;
  SemiringTag result{coeff->first, Shape::Scalar, 0, {}};
  if (left.shape != Shape::Scalar) {
    result.shape = left.shape;
    result.index = left.index;
  } else if (right.shape != Shape::Scalar) {
    result.shape = right.shape;
    result.index = right.index;
  }
  return TensorSpec{left, right, result, coeff->second};
}

inline TensorSpec require_tensor(const SemiringTag& left, const SemiringTag& right) {
  auto spec = find_tensor(left, right);
  if (!spec) {
    throw Error(ErrorCode::UnsupportedTensor, "no canonical form for " + tag_name(left) + " (x) " + tag_name(right));
  }
  return *spec;
}

/// phi_1 / phi_2: the homomorphic embedding of a factor into the tensor.
inline SemiringValue tensor_embed(TensorSide which, const SemiringValue& v, const TensorSpec& target) {
  const SemiringTag& factor = which == TensorSide::Left ? target.left : target.right;
  if (!(v.tag() == factor)) {
    throw Error(ErrorCode::TagMismatch, "value of " + tag_name(v.tag()) + " is not in the " +
                                            (which == TensorSide::Left ? "left" : "right") + " factor " +
                                            tag_name(factor));
  }
  const PolyVar var = which == TensorSide::Left ? PolyVar::X : target.right_var;
  if (v.tag().coeff == CoeffKind::Local) {
    return make_value(target.result, Payload(v.as<Rational>()));
  }
  return embed(v, target.result, var);
}

}  // namespace semfx
