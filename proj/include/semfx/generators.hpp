#pragma once

// Seeded random values for every semiring, plus random trees, state
// transformers and coin terms. Sizes stay small so exact arithmetic is cheap.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "semfx/coin.hpp"
#include "semfx/convexity.hpp"
#include "semfx/semiring.hpp"

namespace semfx::gen {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Mixes a suite name into a seed so independent streams do not overlap.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= h >> 31;
  return h;
}

inline Natural natural(Rng& rng, std::uint64_t max = 4) {
  // Zero and one are over-represented: they exercise the unit and annihilation laws.
  if (coin(rng, 0.25)) return Natural(uniform(rng, 0, 1));
  return Natural(uniform(rng, 0, max));
}

inline Rational rational(Rng& rng, std::uint64_t max_den = 6) {
  if (coin(rng, 0.2)) return Rational(uniform(rng, 0, 1));
  return Rational(Natural(uniform(rng, 0, 2 * max_den)), Natural(uniform(rng, 1, max_den)));
}

/// A positive rational in (0, 1].
inline Rational probability(Rng& rng, std::uint64_t max_den = 6) {
  const std::uint64_t d = uniform(rng, 1, max_den);
  return Rational(uniform(rng, 1, d), d);
}

/// k / b^e: an element of N[1/b].
inline Rational local(Rng& rng, std::uint64_t base) {
  if (coin(rng, 0.2)) return Rational(uniform(rng, 0, 1));
  const Rational num(uniform(rng, 0, 8));
  return num / power(Rational(base), uniform(rng, 0, 3));
}

template <class C>
C coefficient(Rng& rng, std::size_t max_degree = 3) {
  if constexpr (std::is_same_v<C, Natural>) {
    return natural(rng);
  } else if constexpr (std::is_same_v<C, Rational>) {
    return rational(rng);
  } else if constexpr (is_bernstein<C>::value) {
    std::vector<typename C::coefficient_type> cs(uniform(rng, 1, max_degree + 1));
    for (auto& c : cs) c = coefficient<typename C::coefficient_type>(rng);
    return C::from_coeffs(std::move(cs));
  } else {
    static_assert(is_bibernstein<C>::value);
    const std::size_t dx = uniform(rng, 0, 2), dy = uniform(rng, 0, 2);
    std::vector<typename C::coefficient_type> grid((dx + 1) * (dy + 1));
    for (auto& c : grid) c = coefficient<typename C::coefficient_type>(rng);
    return C::from_grid(dx, dy, std::move(grid));
  }
}

inline Word word(Rng& rng, const std::vector<std::string>& index, std::size_t max_len = 3) {
  Word w;
  const std::size_t len = uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < len; ++i) {
    const std::string& m = index[uniform(rng, 0, index.size() - 1)];
    w.push_back(coin(rng) ? in_letter(m) : out_letter(m));
  }
  return w;
}

/// A random element of the semiring named by `tag`.
inline SemiringValue value(const SemiringTag& tag, Rng& rng) {
  if (tag.coeff == CoeffKind::Local) return make_value(tag, Payload(local(rng, tag.local_base)));
  return with_payload_type(payload_slot(tag), [&](auto id) -> SemiringValue {
    using P = typename decltype(id)::type;
    if constexpr (is_word_map<P>::value) {
      using C = typename P::coefficient_type;
      P m;
      const std::size_t n = uniform(rng, 0, 3);
      for (std::size_t i = 0; i < n; ++i) m.add_entry(word(rng, tag.index), coefficient<C>(rng, 1));
      return make_value(tag, Payload(std::move(m)));
    } else if constexpr (is_square_matrix<P>::value) {
      using C = typename P::coefficient_type;
      const std::size_t n = tag.index.size();
      P m(n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m.at(r, c) = coin(rng, 0.4) ? C::zero() : coefficient<C>(rng, 1);
      }
      return make_value(tag, Payload(std::move(m)));
    } else {
      return make_value(tag, Payload(coefficient<P>(rng)));
    }
  });
}

/// Random I/O tree; leaves carry labels in [0, groups) in `labels`, left to right.
inline IOTree io_tree(Rng& rng, std::size_t arity, const std::vector<std::string>& index, std::size_t depth,
                      std::size_t groups, std::vector<std::size_t>& labels) {
  const std::uint64_t pick = depth == 0 ? 0 : uniform(rng, 0, 2);
  if (pick == 0) {
    labels.push_back(uniform(rng, 0, groups - 1));
    return IOTree::leaf();
  }
  if (pick == 1) {
    return IOTree::output(index[uniform(rng, 0, index.size() - 1)], io_tree(rng, arity, index, depth - 1, groups, labels));
  }
  std::vector<IOTree> kids;
  for (std::size_t i = 0; i < arity; ++i) kids.push_back(io_tree(rng, arity, index, depth - 1, groups, labels));
  return IOTree::input(std::move(kids));
}

inline IOTree io_tree(Rng& rng, const std::vector<std::string>& index, std::size_t depth) {
  std::vector<std::size_t> labels;
  return io_tree(rng, index.size(), index, depth, 1, labels);
}

/// Random probabilistic I/O tree with rational choice weights.
inline ProbIOTree prob_io_tree(Rng& rng, const std::vector<std::string>& index, std::size_t depth) {
  const std::uint64_t pick = depth == 0 ? 0 : uniform(rng, 0, 3);
  switch (pick) {
    case 1: return ProbIOTree::output(index[uniform(rng, 0, index.size() - 1)], prob_io_tree(rng, index, depth - 1));
    case 2: {
      std::vector<ProbIOTree> kids;
      for (std::size_t i = 0; i < index.size(); ++i) kids.push_back(prob_io_tree(rng, index, depth - 1));
      return ProbIOTree::input(std::move(kids));
    }
    case 3: {
      const Rational p = Rational(uniform(rng, 1, 4), 5);
      std::vector<std::pair<SemiringValue, ProbIOTree>> b;
      b.emplace_back(rat_value(p), prob_io_tree(rng, index, depth - 1));
      b.emplace_back(rat_value(complement(p)), prob_io_tree(rng, index, depth - 1));
      return ProbIOTree::choice(std::move(b));
    }
    default: return ProbIOTree::leaf();
  }
}

inline StateTransformer state_transformer(Rng& rng, std::size_t n) {
  StateTransformer f;
  for (std::size_t i = 0; i < n; ++i) f.mapping.push_back(uniform(rng, 0, n - 1));
  return f;
}

/// A row-stochastic rational matrix: a random convex mix of a few transformers.
inline RatMatrix stochastic_matrix(Rng& rng, std::size_t n) {
  RatMatrix m(n);
  const std::size_t k = uniform(rng, 1, 3);
  Rational left = Rational::one();
  for (std::size_t j = 0; j < k; ++j) {
    Rational w = j + 1 == k ? left : left * Rational(uniform(rng, 1, 3), 4);
    left = *checked_sub(left, w);
    const StateTransformer f = state_transformer(rng, n);
    for (std::size_t r = 0; r < n; ++r) m.at(r, f.mapping[r]) = m.at(r, f.mapping[r]) + w;
  }
  return m;
}

/// Random coin term with at most `max_ops` flips over the given variables.
inline CoinTerm coin_term(Rng& rng, const std::vector<std::string>& vars, std::size_t max_ops) {
  if (max_ops == 0 || coin(rng, 0.3)) return CoinTerm::variable(vars[uniform(rng, 0, vars.size() - 1)]);
  const std::size_t left = uniform(rng, 0, max_ops - 1);
  return CoinTerm::flip(coin_term(rng, vars, left), coin_term(rng, vars, max_ops - 1 - left));
}

}  // namespace semfx::gen
