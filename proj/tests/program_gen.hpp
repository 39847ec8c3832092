#pragma once

// Random well-scoped programs, generated as source text.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "semfx/semfx.hpp"

namespace progen {

using Rng = std::mt19937_64;
using semfx::lang::EffectFamily;

struct Generated {
  std::string source;
  /// Index of the first statement of the planted adjacent pair.
  std::size_t pair_at = 0;
};

class Builder {
 public:
  Builder(Rng& rng, std::vector<EffectFamily> families) : rng_(rng), families_(std::move(families)) {}

  /// prefix; a; b; suffix. The planted pair comes from families `a` and `b`
  /// and binds fresh names only.
  Generated with_pair(EffectFamily a, EffectFamily b) {
    const std::size_t pre = pick(0, 2);
    for (std::size_t i = 0; i < pre; ++i) statement(any_family(), true);
    const std::size_t at = count_;
    statement(a, false);
    statement(b, false);
    const std::size_t post = pick(0, 2);
    for (std::size_t i = 0; i < post; ++i) statement(any_family(), true);
    return {finish(), at};
  }

  /// prefix; output m1; output m2; suffix with m1 != m2.
  Generated with_distinct_outputs() {
    const std::size_t pre = pick(0, 2);
    for (std::size_t i = 0; i < pre; ++i) statement(any_family(), true);
    const std::size_t at = count_;
    const bool flip = pick(0, 1) == 1;
    line("output " + std::string(flip ? "a" : "b") + ";");
    line("output " + std::string(flip ? "b" : "a") + ";");
    needs_io_ = true;
    const std::size_t post = pick(0, 2);
    for (std::size_t i = 0; i < post; ++i) statement(any_family(), true);
    return {finish(), at};
  }

  /// A program of n statements from the builder's families.
  std::string plain(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) statement(any_family(), true);
    return finish();
  }

 private:
  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

  EffectFamily any_family() { return families_[pick(0, families_.size() - 1)]; }

  std::string fresh() { return "v" + std::to_string(next_var_++); }

  void line(const std::string& s) {
    body_ += s + "\n";
    ++count_;
  }

  std::string sample_effect() {
    static const std::vector<std::string> options{"sample [1: a]", "sample [1/2: a, 1/2: b]", "sample [1/3: a, 2/3: c]",
                                                  "sample [1/4: a, 1/4: b, 1/2: c]", "sample [3/5: b, 2/5: c]"};
    return options[pick(0, options.size() - 1)];
  }

  std::pair<std::string, std::vector<std::string>> effect(EffectFamily f) {
    switch (f) {
      case EffectFamily::Prob: {
        std::string e = sample_effect();
        std::vector<std::string> atoms;
        for (const char* a : {"a", "b", "c"}) {
          if (e.find(std::string(": ") + a) != std::string::npos) atoms.push_back(a);
        }
        return {e, atoms};
      }
      case EffectFamily::Coin: return {"flip", {"H", "T"}};
      case EffectFamily::CoinY: return {"flipY", {"H", "T"}};
      case EffectFamily::IO:
        needs_io_ = true;
        if (pick(0, 1) == 0) return {"input", {"a", "b"}};
        return {"output " + io_target(), {"()"}};
      case EffectFamily::State:
        needs_state_ = true;
        if (pick(0, 1) == 0) return {"read", {"s", "t"}};
        return {"write " + state_target(), {"()"}};
      case EffectFamily::Score: {
        static const std::vector<std::string> factors{"1/2", "2", "3/4", "1"};
        return {"score " + factors[pick(0, factors.size() - 1)], {"()"}};
      }
    }
    return {"flip", {"H", "T"}};
  }

  std::string io_target() {
    if (!io_vars_.empty() && pick(0, 2) == 0) return io_vars_[pick(0, io_vars_.size() - 1)];
    return pick(0, 1) ? "a" : "b";
  }

  std::string state_target() {
    if (!state_vars_.empty() && pick(0, 2) == 0) return state_vars_[pick(0, state_vars_.size() - 1)];
    return pick(0, 1) ? "s" : "t";
  }

  /// A bind or do; with `allow_case`, sometimes a case on an earlier
  /// variable whose branches each run one effect.
  void statement(EffectFamily f, bool allow_case) {
    std::vector<std::size_t> scrutinees;
    for (std::size_t i = 0; i < bound_.size(); ++i) {
      if (bound_[i].second.front() != "()") scrutinees.push_back(i);
    }
    if (allow_case && !scrutinees.empty() && pick(0, 3) == 0) {
      const auto& [var, atoms] = bound_[scrutinees[pick(0, scrutinees.size() - 1)]];
      std::string s = "case " + var + " of {";
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        s += (i ? "; " : " ") + atoms[i] + " -> { " + effect(any_family_or(f)).first + "; }";
      }
      line(s + " }");
      return;
    }
    auto [e, atoms] = effect(f);
    if (atoms.size() > 1 || pick(0, 2) == 0) {
      const std::string v = fresh();
      line(v + " <- " + e + ";");
      if (e == "input") io_vars_.push_back(v);
      if (e == "read") state_vars_.push_back(v);
      bound_.emplace_back(v, atoms);
    } else {
      line(e + ";");
    }
  }

  EffectFamily any_family_or(EffectFamily f) { return pick(0, 1) ? f : any_family(); }

  std::string finish() {
    std::string head;
    if (needs_io_) head += "#io {a, b}\n";
    if (needs_state_) head += "#state {s, t}\n";
    std::string result;
    if (bound_.empty()) {
      result = "()";
    } else if (bound_.size() == 1) {
      result = bound_.front().first;
    } else {
      result = "(";
      for (std::size_t i = 0; i < bound_.size(); ++i) result += (i ? ", " : "") + bound_[i].first;
      result += ")";
    }
    return head + body_ + "return " + result + "\n";
  }

  Rng& rng_;
  std::vector<EffectFamily> families_;
  std::string body_;
  std::size_t count_ = 0;
  std::size_t next_var_ = 0;
  bool needs_io_ = false;
  bool needs_state_ = false;
  std::vector<std::pair<std::string, std::vector<std::string>>> bound_;
  std::vector<std::string> io_vars_;
  std::vector<std::string> state_vars_;
};

/// Pairs of families whose theories are combined by a supported tensor.
inline const std::vector<std::pair<EffectFamily, EffectFamily>>& cross_family_pairs() {
  using F = EffectFamily;
  static const std::vector<std::pair<F, F>> pairs{
      {F::Prob, F::Coin}, {F::Coin, F::Prob},  {F::Prob, F::IO},    {F::IO, F::Prob},     {F::Coin, F::IO},
      {F::IO, F::Coin},   {F::Prob, F::State}, {F::State, F::Coin}, {F::Coin, F::CoinY},  {F::Score, F::IO},
      {F::Prob, F::Score}, {F::State, F::Score}};
  return pairs;
}

/// Cross-family program with its planted swap position.
inline Generated cross_family_program(Rng& rng) {
  const auto& pairs = cross_family_pairs();
  const auto [a, b] = pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
  Builder builder(rng, {a, b});
  return builder.with_pair(a, b);
}

/// Two adjacent outputs of different messages amid io and prob effects.
inline Generated distinct_output_program(Rng& rng) {
  Builder builder(rng, {EffectFamily::IO, EffectFamily::Prob, EffectFamily::Coin});
  return builder.with_distinct_outputs();
}

}  // namespace progen
