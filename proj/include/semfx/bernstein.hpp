#pragma once

// Polynomials in X, Xb subject to X + Xb = 1 and X Xb = Xb X, kept in the
// homogeneous Bernstein basis. A degree-d element is a coefficient vector
// c[0..d] with c[a] the coefficient of X^a Xb^(d-a); multiplying by X + Xb
// raises the degree without changing the element, so the stored form is the
// one of minimal degree.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semfx/coefficient.hpp"
#include "semfx/error.hpp"
#include "semfx/numbers.hpp"

namespace semfx {

namespace bernstein_detail {

inline void append_power(std::string& out, const char* symbol, std::size_t exponent) {
  if (exponent == 0) return;
  if (!out.empty()) out += '*';
  out += symbol;
  if (exponent > 1) out += "^" + std::to_string(exponent);
}

template <class C>
std::string monomial_text(const C& coeff, const std::string& powers) {
  if (powers.empty()) return to_text(coeff);
  if (coeff == C::one()) return powers;
  return to_text(coeff) + "*" + powers;
}

}  // namespace bernstein_detail

/// One step of degree elevation: c'[a] = c[a-1] + c[a].
template <Coefficient C>
std::vector<C> elevate_once(const std::vector<C>& coeffs) {
  std::vector<C> out(coeffs.size() + 1, C::zero());
  for (std::size_t a = 0; a < coeffs.size(); ++a) {
    out[a] = out[a] + coeffs[a];
    out[a + 1] = out[a + 1] + coeffs[a];
  }
  return out;
}

/// Exact division by (X + Xb) through forward substitution
/// q[0] = c[0], q[a] = c[a] - q[a-1]; it succeeds iff every q[a] is
/// nonnegative and c[d] = q[d-1].
template <OrderedCoefficient C>
std::optional<std::vector<C>> divide_by_unit_sum(const std::vector<C>& coeffs) {
  if (coeffs.size() < 2) return std::nullopt;
  const std::size_t d = coeffs.size() - 1;
  std::vector<C> q;
  q.reserve(d);
  q.push_back(coeffs[0]);
  for (std::size_t a = 1; a < d; ++a) {
    auto next = checked_sub(coeffs[a], q.back());
    if (!next) return std::nullopt;
    q.push_back(std::move(*next));
  }
  if (!(coeffs[d] == q.back())) return std::nullopt;
  return q;
}

template <OrderedCoefficient C>
class Bernstein {
 public:
  using coefficient_type = C;

  Bernstein() : coeffs_{C::zero()} {}

  /// Reduces to minimal degree.
  static Bernstein from_coeffs(std::vector<C> coeffs) {
    if (coeffs.empty()) coeffs.push_back(C::zero());
    Bernstein out;
    out.coeffs_ = reduce_vector(std::move(coeffs));
    return out;
  }

  static Bernstein zero() { return Bernstein(); }
  static Bernstein one() { return constant(C::one()); }
  static Bernstein constant(C c) { return from_coeffs({std::move(c)}); }
  static Bernstein x() { return from_coeffs({C::zero(), C::one()}); }
  static Bernstein xbar() { return from_coeffs({C::one(), C::zero()}); }

  static std::vector<C> reduce_vector(std::vector<C> coeffs) {
    while (auto q = divide_by_unit_sum(coeffs)) coeffs = std::move(*q);
    return coeffs;
  }

  std::size_t degree() const { return coeffs_.size() - 1; }
  const std::vector<C>& coeffs() const { return coeffs_; }
  const C& coeff(std::size_t a) const { return coeffs_.at(a); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const C& c) { return c.is_zero(); });
  }

  std::vector<C> homogenize(std::size_t d) const {
    if (d < degree()) {
      throw Error(ErrorCode::DegreeTooSmall, "cannot homogenize degree " + std::to_string(degree()) +
                                                 " polynomial to degree " + std::to_string(d));
    }
    std::vector<C> out = coeffs_;
    while (out.size() < d + 1) out = elevate_once(out);
    return out;
  }

  /// Value at X = p, Xb = 1 - p.
  Rational eval(const Rational& p) const {
    const Rational pbar = complement(p);
    Rational sum;
    const std::size_t d = degree();
    for (std::size_t a = 0; a <= d; ++a) {
      if (coeffs_[a].is_zero()) continue;
      sum += Rational(coeffs_[a]) * power(p, a) * power(pbar, d - a);
    }
    return sum;
  }

  friend Bernstein operator+(const Bernstein& a, const Bernstein& b) {
    const std::size_t d = std::max(a.degree(), b.degree());
    auto lhs = a.homogenize(d);
    auto rhs = b.homogenize(d);
    for (std::size_t i = 0; i <= d; ++i) lhs[i] = lhs[i] + rhs[i];
    return from_coeffs(std::move(lhs));
  }

  friend Bernstein operator*(const Bernstein& a, const Bernstein& b) {
    std::vector<C> out(a.degree() + b.degree() + 1, C::zero());
    for (std::size_t i = 0; i <= a.degree(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j <= b.degree(); ++j) out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return from_coeffs(std::move(out));
  }

  friend bool operator==(const Bernstein& a, const Bernstein& b) {
    const std::size_t d = std::max(a.degree(), b.degree());
    return a.homogenize(d) == b.homogenize(d);
  }

  /// e.g. `3*X^2*Xb + 1/2*Xb^3`; terms in decreasing powers of X.
  friend std::string to_text(const Bernstein& p) {
    std::string out;
    const std::size_t d = p.degree();
    for (std::size_t k = 0; k <= d; ++k) {
      const std::size_t a = d - k;
      if (p.coeffs_[a].is_zero()) continue;
      std::string powers;
      bernstein_detail::append_power(powers, "X", a);
      bernstein_detail::append_power(powers, "Xb", d - a);
      if (!out.empty()) out += " + ";
      out += bernstein_detail::monomial_text(p.coeffs_[a], powers);
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<C> coeffs_;
};

using NatBernstein = Bernstein<Natural>;
using RatBernstein = Bernstein<Rational>;

/// Free-function forms of the canonical-form operations.
template <OrderedCoefficient C>
std::vector<C> bernstein_homogenize(const Bernstein<C>& p, std::size_t d) {
  return p.homogenize(d);
}

template <OrderedCoefficient C>
Bernstein<C> bernstein_reduce(std::vector<C> coeffs) {
  return Bernstein<C>::from_coeffs(std::move(coeffs));
}

template <OrderedCoefficient C>
Rational eval_numeric(const Bernstein<C>& p, const Rational& at) {
  if (at > Rational::one()) throw Error(ErrorCode::OutOfRange, "evaluation point " + at.str() + " outside [0,1]");
  return p.eval(at);
}

/// Element of N[X,Xb] (x) N[Y,Yb]: a bihomogeneous coefficient grid, entry
/// (a,b) the coefficient of X^a Xb^(dx-a) Y^b Yb^(dy-b).
template <OrderedCoefficient C>
class BiBernstein {
 public:
  using coefficient_type = C;

  BiBernstein() : dx_(0), dy_(0), grid_{C::zero()} {}

  static BiBernstein from_grid(std::size_t dx, std::size_t dy, std::vector<C> grid) {
    if (grid.size() != (dx + 1) * (dy + 1)) throw Error(ErrorCode::InvalidValue, "bad bernstein grid size");
    BiBernstein out;
    out.dx_ = dx;
    out.dy_ = dy;
    out.grid_ = std::move(grid);
    out.bireduce();
    return out;
  }

  static BiBernstein zero() { return BiBernstein(); }
  static BiBernstein one() { return constant(C::one()); }
  static BiBernstein constant(C c) { return from_grid(0, 0, {std::move(c)}); }
  static BiBernstein in_x(const Bernstein<C>& p) { return from_grid(p.degree(), 0, p.coeffs()); }
  static BiBernstein in_y(const Bernstein<C>& p) { return from_grid(0, p.degree(), p.coeffs()); }
  static BiBernstein x() { return in_x(Bernstein<C>::x()); }
  static BiBernstein xbar() { return in_x(Bernstein<C>::xbar()); }
  static BiBernstein y() { return in_y(Bernstein<C>::x()); }
  static BiBernstein ybar() { return in_y(Bernstein<C>::xbar()); }

  std::size_t degree_x() const { return dx_; }
  std::size_t degree_y() const { return dy_; }
  const C& at(std::size_t a, std::size_t b) const { return grid_.at(a * (dy_ + 1) + b); }
  const std::vector<C>& grid() const { return grid_; }

  bool is_zero() const {
    return std::all_of(grid_.begin(), grid_.end(), [](const C& c) { return c.is_zero(); });
  }

  std::vector<C> homogenize(std::size_t dx, std::size_t dy) const {
    if (dx < dx_ || dy < dy_) throw Error(ErrorCode::DegreeTooSmall, "cannot bihomogenize to a lower degree");
    std::size_t cx = dx_;
    std::size_t cy = dy_;
    std::vector<C> g = grid_;
    while (cx < dx) {
      std::vector<C> next((cx + 2) * (cy + 1), C::zero());
      for (std::size_t a = 0; a <= cx; ++a) {
        for (std::size_t b = 0; b <= cy; ++b) {
          const C& c = g[a * (cy + 1) + b];
          next[a * (cy + 1) + b] = next[a * (cy + 1) + b] + c;
          next[(a + 1) * (cy + 1) + b] = next[(a + 1) * (cy + 1) + b] + c;
        }
      }
      g = std::move(next);
      ++cx;
    }
    while (cy < dy) {
      std::vector<C> next((cx + 1) * (cy + 2), C::zero());
      for (std::size_t a = 0; a <= cx; ++a) {
        for (std::size_t b = 0; b <= cy; ++b) {
          const C& c = g[a * (cy + 1) + b];
          next[a * (cy + 2) + b] = next[a * (cy + 2) + b] + c;
          next[a * (cy + 2) + b + 1] = next[a * (cy + 2) + b + 1] + c;
        }
      }
      g = std::move(next);
      ++cy;
    }
    return g;
  }

  Rational eval(const Rational& p, const Rational& q) const {
    const Rational pbar = complement(p);
    const Rational qbar = complement(q);
    Rational sum;
    for (std::size_t a = 0; a <= dx_; ++a) {
      for (std::size_t b = 0; b <= dy_; ++b) {
        const C& c = at(a, b);
        if (c.is_zero()) continue;
        sum += Rational(c) * power(p, a) * power(pbar, dx_ - a) * power(q, b) * power(qbar, dy_ - b);
      }
    }
    return sum;
  }

  friend BiBernstein operator+(const BiBernstein& l, const BiBernstein& r) {
    const std::size_t dx = std::max(l.dx_, r.dx_);
    const std::size_t dy = std::max(l.dy_, r.dy_);
    auto a = l.homogenize(dx, dy);
    auto b = r.homogenize(dx, dy);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] + b[i];
    return from_grid(dx, dy, std::move(a));
  }

  friend BiBernstein operator*(const BiBernstein& l, const BiBernstein& r) {
    const std::size_t dx = l.dx_ + r.dx_;
    const std::size_t dy = l.dy_ + r.dy_;
    std::vector<C> out((dx + 1) * (dy + 1), C::zero());
    for (std::size_t a = 0; a <= l.dx_; ++a) {
      for (std::size_t b = 0; b <= l.dy_; ++b) {
        const C& c = l.at(a, b);
        if (c.is_zero()) continue;
        for (std::size_t a2 = 0; a2 <= r.dx_; ++a2) {
          for (std::size_t b2 = 0; b2 <= r.dy_; ++b2) {
            C& slot = out[(a + a2) * (dy + 1) + (b + b2)];
            slot = slot + c * r.at(a2, b2);
          }
        }
      }
    }
    return from_grid(dx, dy, std::move(out));
  }

  friend bool operator==(const BiBernstein& l, const BiBernstein& r) {
    const std::size_t dx = std::max(l.dx_, r.dx_);
    const std::size_t dy = std::max(l.dy_, r.dy_);
    return l.homogenize(dx, dy) == r.homogenize(dx, dy);
  }

  friend std::string to_text(const BiBernstein& p) {
    std::string out;
    for (std::size_t i = 0; i <= p.dx_; ++i) {
      const std::size_t a = p.dx_ - i;
      for (std::size_t j = 0; j <= p.dy_; ++j) {
        const std::size_t b = p.dy_ - j;
        const C& c = p.at(a, b);
        if (c.is_zero()) continue;
        std::string powers;
        bernstein_detail::append_power(powers, "X", a);
        bernstein_detail::append_power(powers, "Xb", p.dx_ - a);
        bernstein_detail::append_power(powers, "Y", b);
        bernstein_detail::append_power(powers, "Yb", p.dy_ - b);
        if (!out.empty()) out += " + ";
        out += bernstein_detail::monomial_text(c, powers);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  // Divide every row (X direction) or column (Y direction) by the unit sum
  // simultaneously; alternate until neither direction divides.
  bool reduce_x_once() {
    if (dx_ == 0) return false;
    const std::size_t w = dy_ + 1;
    std::vector<C> q(dx_ * w, C::zero());
    for (std::size_t b = 0; b < w; ++b) {
      std::vector<C> column(dx_ + 1);
      for (std::size_t a = 0; a <= dx_; ++a) column[a] = grid_[a * w + b];
      auto div = divide_by_unit_sum(column);
      if (!div) return false;
      for (std::size_t a = 0; a < dx_; ++a) q[a * w + b] = (*div)[a];
    }
    grid_ = std::move(q);
    --dx_;
    return true;
  }

  bool reduce_y_once() {
    if (dy_ == 0) return false;
    const std::size_t w = dy_ + 1;
    std::vector<C> q((dx_ + 1) * dy_, C::zero());
    for (std::size_t a = 0; a <= dx_; ++a) {
      std::vector<C> row(grid_.begin() + static_cast<std::ptrdiff_t>(a * w),
                         grid_.begin() + static_cast<std::ptrdiff_t>((a + 1) * w));
      auto div = divide_by_unit_sum(row);
      if (!div) return false;
      for (std::size_t b = 0; b < dy_; ++b) q[a * dy_ + b] = (*div)[b];
    }
    grid_ = std::move(q);
    --dy_;
    return true;
  }

  void bireduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      while (reduce_x_once()) changed = true;
      while (reduce_y_once()) changed = true;
    }
  }

  std::size_t dx_;
  std::size_t dy_;
  std::vector<C> grid_;
};

using NatBiBernstein = BiBernstein<Natural>;
using RatBiBernstein = BiBernstein<Rational>;

}  // namespace semfx
