#pragma once

#include <concepts>
#include <optional>
#include <string>

#include "semfx/numbers.hpp"

namespace semfx {

/// A commutative semiring with canonical equality, usable as the coefficient
/// ring of words, matrices and polynomials.
template <class T>
concept Coefficient = std::regular<T> && requires(const T& a, const T& b) {
  { T::zero() } -> std::same_as<T>;
  { T::one() } -> std::same_as<T>;
  { a + b } -> std::same_as<T>;
  { a* b } -> std::same_as<T>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { to_text(a) } -> std::same_as<std::string>;
};

/// A coefficient ring that also supports truncated subtraction, needed by
/// the Bernstein division step.
template <class T>
concept OrderedCoefficient = Coefficient<T> && requires(const T& a, const T& b) {
  { checked_sub(a, b) } -> std::same_as<std::optional<T>>;
};

}  // namespace semfx
