#include <gtest/gtest.h>

#include "program_gen.hpp"
#include "semfx/semfx.hpp"

using namespace semfx;
using namespace semfx::lang;

namespace {

ErrorCode error_of(const std::string& src) {
  try {
    parse(src);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << src;
  return ErrorCode::InvalidValue;
}

std::map<std::string, std::string> weights(const std::string& src) {
  std::map<std::string, std::string> out;
  const Dist d = denote_program(parse(src));
  for (const auto& [o, w] : d.weights()) out[o] = to_text(w);
  return out;
}

using W = std::map<std::string, std::string>;

}  // namespace

TEST(Parser, Basics) {
  const Program p = parse("x <- flip; return x");
  ASSERT_EQ(p.statements.size(), 1u);
  EXPECT_EQ(p.statements[0].kind, Statement::Kind::Bind);
  EXPECT_EQ(p.statements[0].var, "x");
  EXPECT_EQ(p.statements[0].effect.kind, EffectKind::Flip);
  EXPECT_EQ(p.result.name, "x");

  const Program q = parse("#io {m}  output m; return ()");
  ASSERT_EQ(q.statements.size(), 1u);
  EXPECT_EQ(q.statements[0].kind, Statement::Kind::Do);
  EXPECT_EQ(q.statements[0].effect.target, "m");
  EXPECT_TRUE(q.result.tuple);
  EXPECT_TRUE(q.result.items.empty());
}

TEST(Parser, Comments) {
  const Program p = parse("-- a coin\nx <- flip; -- heads or tails\nreturn x\n");
  EXPECT_EQ(p.statements.size(), 1u);
}

TEST(Parser, SyntaxErrorsCarryPositions) {
  try {
    parse("x <- flip;\ny <- flap;\nreturn x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 6u);
  }
  try {
    parse("x <- flip\nreturn x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_EQ(error_of("x <- sample [1/0: a]; return x"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("x <- flip;"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("return x y"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("#io {a, a} return ()"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("#io {a} #io {b} return ()"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("#heap {a} return ()"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("case <- flip; return case"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_of("x <- flip; return x @"), ErrorCode::SyntaxError);
}

TEST(Parser, Normalization) {
  try {
    parse("x <- sample [1/2: a, 1/3: b]; return x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NormalizationError);
    EXPECT_NE(std::string(e.what()).find("5/6"), std::string::npos);
  }
  EXPECT_EQ(error_of("x <- sample [0: a, 1: b]; return x"), ErrorCode::NormalizationError);
  EXPECT_NO_THROW(parse("x <- sample [1/2: a, 1/2: a]; return x"));
}

TEST(Parser, ScopeErrors) {
  EXPECT_EQ(error_of("return x"), ErrorCode::ScopeError);
  EXPECT_EQ(error_of("x <- flip; x <- flip; return x"), ErrorCode::ScopeError);
  EXPECT_EQ(error_of("output m; return ()"), ErrorCode::ScopeError);
  EXPECT_EQ(error_of("#io {m} output z; return ()"), ErrorCode::ScopeError);
  EXPECT_EQ(error_of("x <- read; return x"), ErrorCode::ScopeError);
  EXPECT_EQ(error_of("x <- input; return x"), ErrorCode::ScopeError);
  EXPECT_EQ(error_of("x <- flip; case x of { H -> { score 1/2; } } return x"), ErrorCode::ScopeError);
  EXPECT_EQ(error_of("x <- flip; case x of { H -> { score 1; }; T -> { score 1; }; Z -> { score 1; } } return x"),
            ErrorCode::ScopeError);
  EXPECT_EQ(error_of("x <- flip; case x of { H -> { y <- flip; }; T -> { score 1; } } return y"), ErrorCode::ScopeError);
  // A flip outcome is not a message.
  EXPECT_EQ(error_of("#io {a} x <- flip; output x; return ()"), ErrorCode::ScopeError);
}

TEST(Parser, BranchBindingsMerge) {
  const auto w = weights(
      "x <- flip;\n"
      "case x of { H -> { y <- sample [1: a]; }; T -> { y <- sample [1: b]; } }\n"
      "return y");
  EXPECT_EQ(w, (W{{"a", "X"}, {"b", "Xb"}}));
}

TEST(Parser, InputVariablesAsTargets) {
  const auto w = weights("#io {a, b} m <- input; output m; return m");
  EXPECT_EQ(w, (W{{"a", "{in_a.out_a: 1}"}, {"b", "{in_b.out_b: 1}"}}));
}

TEST(Parser, SourceRoundTrip) {
  progen::Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto g = progen::cross_family_program(rng);
    const Program p = parse(g.source);
    const std::string printed = to_source(p);
    const Program q = parse(printed);
    EXPECT_EQ(p, q) << g.source << "\n---\n" << printed;
    EXPECT_EQ(to_source(q), printed);
  }
}

TEST(Effects, Inference) {
  EXPECT_EQ(infer_effects(parse("x <- flip; return x")), (EffectSignature{EffectFamily::Coin}));
  EXPECT_EQ(infer_effects(parse("#io {m} x <- sample [1: a]; output m; return x")),
            (EffectSignature{EffectFamily::Prob, EffectFamily::IO}));
  EXPECT_EQ(infer_effects(parse("x <- flip; y <- flipY; return (x, y)")),
            (EffectSignature{EffectFamily::Coin, EffectFamily::CoinY}));
  EXPECT_EQ(infer_effects(parse("x <- flip; case x of { H -> { score 2; }; T -> { score 1; } } return x")),
            (EffectSignature{EffectFamily::Coin, EffectFamily::Score}));
  EXPECT_EQ(to_json(EffectSignature{EffectFamily::Prob, EffectFamily::IO}).dump(), R"(["prob","io"])");
}

TEST(Effects, TheorySelection) {
  using F = EffectFamily;
  auto name = [](const EffectSignature& s) {
    const TheoryTag t = select_theory(s, {"a"}, {"s"});
    return tag_name(t.semiring) + "/" + std::string(class_name(t.convexity.kind()));
  };
  EXPECT_EQ(name({}), "nat/one");
  EXPECT_EQ(name({F::Prob}), "rat/one");
  EXPECT_EQ(name({F::Coin}), "bern/one");
  EXPECT_EQ(name({F::Coin, F::CoinY}), "bibern/one");
  EXPECT_EQ(name({F::Prob, F::Coin}), "rat-bern/one");
  EXPECT_EQ(name({F::IO}), "io:nat/io-trees");
  EXPECT_EQ(name({F::Prob, F::IO}), "io:rat/prob-io-trees");
  EXPECT_EQ(name({F::Coin, F::IO}), "io:bern/prob-io-trees");
  EXPECT_EQ(name({F::State}), "state:nat/function-matrices");
  EXPECT_EQ(name({F::Prob, F::State}), "state:rat/row-stochastic");
  EXPECT_EQ(name({F::Score}), "rat/whole");
  try {
    select_theory({F::IO, F::State}, {"a"}, {"s"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedCombination);
  }
}

TEST(Effects, UnsupportedCombinationPointsAtStatement) {
  try {
    denote(parse("#io {a}\n#state {s}\noutput a;\nwrite s;\nreturn ()"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedCombination);
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Denote, WorkedExamples) {
  EXPECT_EQ(weights("x <- flip; return x"), (W{{"H", "X"}, {"T", "Xb"}}));
  EXPECT_EQ(weights("#state {s1, s2} write s1; v <- read; return v"), (W{{"s1", "[[1,0],[1,0]]"}}));
  EXPECT_EQ(weights("#io {m} x <- sample [1/2: a, 1/2: b]; output m; return x"),
            (W{{"a", "{out_m: 1/2}"}, {"b", "{out_m: 1/2}"}}));
  EXPECT_EQ(weights("return ()"), (W{{"()", "1"}}));
}

TEST(Denote, WriteThenReadMatchesMatrix) {
  // wr_1 rd_1 = wr_1 in the matrix model.
  const auto w = denote_program(parse("#state {s1, s2} write s1; v <- read; return v"));
  EXPECT_TRUE(w.weight("s1") == state_value(parse_word("wr_s1.rd_s1"), {"s1", "s2"}));
  EXPECT_TRUE(w.weight("s2").is_zero());
}

TEST(Denote, TuplesAndScore) {
  EXPECT_EQ(weights("x <- flip; y <- flip; return (x, y)"),
            (W{{"(H,H)", "X^2"}, {"(H,T)", "X*Xb"}, {"(T,H)", "X*Xb"}, {"(T,T)", "Xb^2"}}));
  EXPECT_EQ(weights("x <- sample [1/2: a, 1/2: b]; case x of { a -> { score 3; }; b -> { score 1; } } return x"),
            (W{{"a", "3/2"}, {"b", "1/2"}}));
}

TEST(Denote, CaseAfterPointMass) {
  const auto w = weights("#io {m} x <- sample [1: a]; case x of { a -> { y <- flip; output m; } } return (x, y)");
  EXPECT_EQ(w, weights("#io {m} x <- sample [1: a]; y <- flip; output m; return (x, y)"));
}

TEST(Denote, Compositional) {
  progen::Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    const Program p = parse(progen::cross_family_program(rng).source);
    const TheoryTag theory = program_theory(p);
    const Statement& first = p.statements.front();
    if (first.kind == Statement::Kind::Case) continue;
    const Dist head = denote_effect(first.effect, {}, theory);
    const Dist composed = dist_bind(head, [&](const std::string& atom) {
      Env env;
      if (first.kind == Statement::Kind::Bind) env[first.var] = atom;
      return denote_suffix(p, 1, env, theory);
    });
    EXPECT_EQ(composed, denote_program(p)) << to_source(p);
  }
}

TEST(Denote, MembershipOfScoreFreePrograms) {
  progen::Rng rng(44);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const Program p = parse(progen::cross_family_program(rng).source);
    if (infer_effects(p).contains(EffectFamily::Score)) continue;
    const Denotation d = denote(p);
    const auto m = denotation_membership(d);
    EXPECT_EQ(m.verdict, Membership::Member) << to_source(p) << to_text(d);
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Denote, CertificateMatchesDenotation) {
  const Denotation d = denote(parse("#io {a, b} x <- sample [1/3: l, 2/3: r]; case x of { l -> { output a; }; r -> { m <- input; } } return ()"));
  ASSERT_TRUE(d.certificate.has_value());
  EXPECT_TRUE(prob_io_denote(*d.certificate, d.theory.semiring) == total_weight(d.dist));
  EXPECT_EQ(to_text(total_weight(d.dist)), "{in_a: 2/3, in_b: 2/3, out_a: 1/3}");
}

TEST(Swap, Examples) {
  const Program p = parse("#io {m} x <- flip; output m; return x");
  const Program q = swap_adjacent(p, 0);
  EXPECT_EQ(q, parse("#io {m} output m; x <- flip; return x"));
  EXPECT_TRUE(equiv(p, q).equal);

  try {
    swap_adjacent(parse("x <- flip; case x of { H -> { y <- flip; }; T -> { y <- flip; } } return y"), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DataDependence);
  }
  try {
    swap_adjacent(p, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }
  EXPECT_THROW(swap_adjacent(parse("#io {a, b} m <- input; output m; return m"), 0), Error);
}

TEST(Equiv, Examples) {
  const auto r = equiv(parse("#io {a, b} output a; output b; return ()"), parse("#io {a, b} output b; output a; return ()"));
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(*r.outcome, "()");
  EXPECT_EQ(r.left, "{out_a.out_b: 1}");
  EXPECT_EQ(r.right, "{out_b.out_a: 1}");
  EXPECT_TRUE(equiv(parse("x <- flip; y <- flip; return (x, y)"), parse("y <- flip; x <- flip; return (x, y)")).equal);
  EXPECT_FALSE(equiv(parse("x <- flip; y <- flip; return (x, y)"), parse("x <- flip; y <- flip; return (x, x)")).equal);
}

TEST(Equiv, Mismatches) {
  auto code = [](const std::string& a, const std::string& b) {
    try {
      equiv(parse(a), parse(b));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidValue;
  };
  EXPECT_EQ(code("x <- flip; return x", "x <- flip; y <- flip; return (x, y)"), ErrorCode::SignatureMismatch);
  EXPECT_EQ(code("x <- flip; return x", "x <- sample [1: a]; return x"), ErrorCode::SignatureMismatch);
  EXPECT_EQ(code("#io {a} output a; return ()", "#io {a, b} output a; return ()"), ErrorCode::SignatureMismatch);
}

TEST(Equiv, CrossFamilySwapsCommute) {
  progen::Rng rng(55);
  for (int t = 0; t < 200; ++t) {
    const auto g = progen::cross_family_program(rng);
    const Program p = parse(g.source);
    const Program q = swap_adjacent(p, g.pair_at);
    EXPECT_TRUE(equiv(p, q).equal) << g.source << "\nswap at " << g.pair_at;
  }
}

TEST(Equiv, SameFamilySwapsCommuteForCommutativeTheories) {
  progen::Rng rng(66);
  for (int t = 0; t < 100; ++t) {
    const auto f = t % 2 == 0 ? EffectFamily::Prob : EffectFamily::Coin;
    progen::Builder b(rng, {f});
    const auto g = b.with_pair(f, f);
    const Program p = parse(g.source);
    EXPECT_TRUE(equiv(p, swap_adjacent(p, g.pair_at)).equal) << g.source;
  }
}

TEST(Equiv, DistinctOutputSwapsDiffer) {
  progen::Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const auto g = progen::distinct_output_program(rng);
    const Program p = parse(g.source);
    EXPECT_FALSE(equiv(p, swap_adjacent(p, g.pair_at)).equal) << g.source;
  }
}

TEST(Json, DenotationShape) {
  const auto j = to_json(denote(parse("x <- flip; return x")));
  EXPECT_EQ(j.at("weights").dump(), R"({"H":"X","T":"Xb"})");
  EXPECT_EQ(j.at("total").get<std::string>(), "1");
  EXPECT_EQ(j.at("membership").get<std::string>(), "member");
  EXPECT_EQ(j.at("effects").dump(), R"(["coin"])");
  EXPECT_FALSE(j.contains("certificate"));
}
