#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "semfx/coefficient.hpp"
#include "semfx/error.hpp"

namespace semfx {

/// n x n matrix over a commutative coefficient ring. Entry (s, t) reads as
/// "starting in state s, finishing in state t"; products compose left to
/// right in time.
template <Coefficient C>
class SquareMatrix {
 public:
  using coefficient_type = C;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), entries_(n * n, C::zero()) {}
  SquareMatrix(std::size_t n, std::vector<C> entries) : n_(n), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_) throw Error(ErrorCode::InvalidValue, "matrix entry count does not match size");
  }

  static SquareMatrix zero(std::size_t n) { return SquareMatrix(n); }
  static SquareMatrix identity(std::size_t n) { return scalar(n, C::one()); }
  static SquareMatrix scalar(std::size_t n, const C& c) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
  }
  static SquareMatrix unit(std::size_t n, std::size_t row, std::size_t col) {
    SquareMatrix m(n);
    m.at(row, col) = C::one();
    return m;
  }

  std::size_t size() const { return n_; }
  const C& at(std::size_t r, std::size_t c) const { return entries_.at(r * n_ + c); }
  C& at(std::size_t r, std::size_t c) { return entries_.at(r * n_ + c); }
  const std::vector<C>& entries() const { return entries_; }

  bool is_zero() const {
    for (const auto& e : entries_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  C row_sum(std::size_t r) const {
    C s = C::zero();
    for (std::size_t c = 0; c < n_; ++c) s = s + at(r, c);
    return s;
  }

  SquareMatrix scaled(const C& s) const {
    SquareMatrix out = *this;
    for (auto& e : out.entries_) e = s * e;
    return out;
  }

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    check_sizes(a, b);
    SquareMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] = out.entries_[i] + b.entries_[i];
    return out;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    check_sizes(a, b);
    SquareMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      for (std::size_t k = 0; k < a.n_; ++k) {
        const C& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < a.n_; ++j) out.at(i, j) = out.at(i, j) + aik * b.at(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

  friend std::string to_text(const SquareMatrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.n_; ++r) {
      if (r) out += ",";
      out += "[";
      for (std::size_t c = 0; c < m.n_; ++c) {
        if (c) out += ",";
        out += to_text(m.at(r, c));
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  static void check_sizes(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.n_ != b.n_) throw Error(ErrorCode::TagMismatch, "matrix sizes differ");
  }

  std::size_t n_ = 0;
  std::vector<C> entries_;
};

using NatMatrix = SquareMatrix<Natural>;
using RatMatrix = SquareMatrix<Rational>;

}  // namespace semfx
