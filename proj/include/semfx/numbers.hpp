#pragma once

// Exact nonnegative scalars: the naturals and the nonnegative rationals.
// The rationals stand in for the nonnegative reals everywhere in the library.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "semfx/error.hpp"

namespace semfx {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Natural(BigInt v) : value_(std::move(v)) {
    if (value_ < 0) throw Error(ErrorCode::InvalidValue, "negative natural");
  }

  static Natural zero() { return Natural(); }
  static Natural one() { return Natural(1); }

  static Natural parse(std::string_view text) {
    if (text.empty()) throw Error(ErrorCode::InvalidValue, "empty natural");
    for (char ch : text) {
      if (ch < '0' || ch > '9') {
        throw Error(ErrorCode::InvalidValue, "not a natural: '" + std::string(text) + "'");
      }
    }
    return Natural(BigInt(std::string(text)));
  }

  const BigInt& big() const noexcept { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_ == 1; }

  std::uint64_t to_u64() const {
    if (value_ > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::OutOfRange, "natural does not fit 64 bits");
    }
    return static_cast<std::uint64_t>(value_);
  }

  friend Natural operator+(const Natural& a, const Natural& b) { return Natural(a.value_ + b.value_); }
  friend Natural operator*(const Natural& a, const Natural& b) { return Natural(a.value_ * b.value_); }
  Natural& operator+=(const Natural& o) {
    value_ += o.value_;
    return *this;
  }

  /// a - b when a >= b.
  friend std::optional<Natural> checked_sub(const Natural& a, const Natural& b) {
    if (a.value_ < b.value_) return std::nullopt;
    return Natural(BigInt(a.value_ - b.value_));
  }

  friend bool operator==(const Natural& a, const Natural& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return value_.str(); }

 private:
  BigInt value_{0};
};

class Rational {
 public:
  Rational() = default;
  Rational(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Natural& n) : value_(n.big()) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(BigRational v) : value_(std::move(v)) {
    if (value_ < 0) throw Error(ErrorCode::InvalidValue, "negative rational");
  }
  Rational(const Natural& num, const Natural& den) {
    if (den.is_zero()) throw Error(ErrorCode::InvalidValue, "zero denominator");
    value_ = BigRational(num.big(), den.big());
  }
  Rational(std::uint64_t num, std::uint64_t den) : Rational(Natural(num), Natural(den)) {}

  static Rational zero() { return Rational(); }
  static Rational one() { return Rational(1); }

  /// Accepts `n` or `n/d` with decimal naturals.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(Natural::parse(text));
    return Rational(Natural::parse(text.substr(0, slash)), Natural::parse(text.substr(slash + 1)));
  }

  Natural numerator() const { return Natural(BigInt(boost::multiprecision::numerator(value_))); }
  Natural denominator() const { return Natural(BigInt(boost::multiprecision::denominator(value_))); }
  bool is_integer() const { return boost::multiprecision::denominator(value_) == 1; }
  std::optional<Natural> to_natural() const {
    if (!is_integer()) return std::nullopt;
    return numerator();
  }

  const BigRational& big() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(BigRational(a.value_ + b.value_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(BigRational(a.value_ * b.value_)); }
  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  /// Division by a positive rational stays in the nonnegative rationals.
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error(ErrorCode::InvalidValue, "division by zero");
    return Rational(BigRational(a.value_ / b.value_));
  }

  friend std::optional<Rational> checked_sub(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::nullopt;
    return Rational(BigRational(a.value_ - b.value_));
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

 private:
  BigRational value_{0};
};

inline std::string to_text(const Natural& n) { return n.str(); }
inline std::string to_text(const Rational& r) { return r.str(); }

/// 1 - p for p in [0,1].
inline Rational complement(const Rational& p) {
  auto c = checked_sub(Rational::one(), p);
  if (!c) throw Error(ErrorCode::OutOfRange, "probability " + p.str() + " exceeds 1");
  return *c;
}

inline Rational power(const Rational& base, std::size_t exponent) {
  Rational out = Rational::one();
  for (std::size_t i = 0; i < exponent; ++i) out = out * base;
  return out;
}

/// True when every prime factor of r's reduced denominator divides `base`,
/// i.e. r lies in the subsemiring of the rationals generated by 1/base.
inline bool in_localization(const Rational& r, std::uint64_t base) {
  if (base == 0) return false;
  BigInt den = r.denominator().big();
  BigInt b = base;
  while (den != 1) {
    BigInt g = boost::multiprecision::gcd(den, b);
    if (g == 1) return false;
    while (den % g == 0) den /= g;
  }
  return true;
}

}  // namespace semfx
