#include <gtest/gtest.h>

#include "oracles.hpp"
#include "semfx/semfx.hpp"

using namespace semfx;

namespace {
const std::vector<std::string> kAB{"a", "b"};

WordMultiset ms(std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
  WordMultiset m;
  for (const auto& [w, c] : entries) m.add_entry(parse_word(w), Natural(c));
  return m;
}

bool is_member(ClassKind k, const SemiringValue& v) {
  return member(ConvexityClass(k, v.tag()), v).verdict == Membership::Member;
}
}  // namespace

TEST(Classes, ScalarClasses) {
  EXPECT_TRUE(is_member(ClassKind::SingletonOne, nat_value(Natural(1))));
  EXPECT_FALSE(is_member(ClassKind::SingletonOne, nat_value(Natural(2))));
  EXPECT_TRUE(is_member(ClassKind::UnitInterval, rat_value(Rational(2, 3))));
  EXPECT_FALSE(is_member(ClassKind::UnitInterval, rat_value(Rational(4, 3))));
  EXPECT_TRUE(is_member(ClassKind::UnitInterval, nat_value(Natural(0))));
  EXPECT_TRUE(is_member(ClassKind::WholeSemiring, nat_value(Natural(7))));
  EXPECT_TRUE(is_member(ClassKind::SingletonOne,
                        coin_generator(tags::bern(), PolyVar::X, false) + coin_generator(tags::bern(), PolyVar::X, true)));
}

TEST(Classes, UndefinedCombinations) {
  EXPECT_THROW(ConvexityClass(ClassKind::UnitInterval, tags::bern()), Error);
  EXPECT_THROW(ConvexityClass(ClassKind::IOTreeClass, tags::prob_io({"a"})), Error);
  EXPECT_THROW(ConvexityClass(ClassKind::FunctionMatrices, tags::nat()), Error);
  EXPECT_THROW(ConvexityClass(ClassKind::ProbIOTensorClass, tags::io({"a"})), Error);
  EXPECT_THROW(parse_class_name("convex"), Error);
}

TEST(Lambda, WorkedExample) {
  const auto v = make_value(tags::io({"1", "2"}), Payload(ms({{"in_1", 1}, {"in_2.out_1", 1}})));
  const auto r = member(ConvexityClass(ClassKind::IOTreeClass, v.tag()), v);
  ASSERT_EQ(r.verdict, Membership::Member);
  const auto& tree = std::get<IOTree>(r.certificate);
  EXPECT_EQ(tree.kind, IOTree::Kind::Input);
  EXPECT_EQ(tree.children[1], IOTree::output("1", IOTree::leaf()));
}

TEST(Lambda, NonMembers) {
  const auto tag = tags::io(kAB);
  for (const auto& m : {ms({{"", 2}}), ms({}), ms({{"in_a", 1}}), ms({{"out_a", 1}, {"out_b", 1}}), ms({{"", 1}, {"out_a", 1}}),
                        ms({{"in_a", 1}, {"in_b", 1}, {"in_b.out_a", 1}})}) {
    EXPECT_FALSE(is_member(ClassKind::IOTreeClass, make_value(tag, Payload(m)))) << to_text(m);
  }
}

TEST(Lambda, RoundTripOnRandomTrees) {
  gen::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const IOTree tree = gen::io_tree(rng, kAB, 4);
    const auto paths = io_tree_paths(tree, kAB);
    const auto back = lambda_member(paths, kAB);
    ASSERT_TRUE(back.has_value()) << to_text(paths);
    EXPECT_EQ(*back, tree);
  }
}

TEST(Lambda, AgreesWithBruteForce) {
  const auto trees = oracle::enumerate_trees(kAB, 6);
  std::set<oracle::PathMultiset> tree_set(trees.begin(), trees.end());
  gen::Rng rng(8);
  std::size_t members = 0;
  for (int t = 0; t < 200; ++t) {
    WordMultiset m;
    if (t % 2 == 0) {
      m = io_tree_paths(gen::io_tree(rng, kAB, 3), kAB);
    } else {
      const auto n = gen::uniform(rng, 1, 3);
      for (std::uint64_t k = 0; k < n; ++k) m.add_entry(gen::word(rng, kAB, 2), Natural(1));
    }
    if (oracle::total_path_length(m) > 6) continue;
    const bool lib = lambda_member(m, kAB).has_value();
    EXPECT_EQ(lib, tree_set.contains(oracle::to_paths(m))) << to_text(m);
    members += lib ? 1 : 0;
  }
  EXPECT_GT(members, 10u);
}

TEST(Matrices, FunctionMatrices) {
  const auto tag = tags::state({"1", "2"});
  EXPECT_TRUE(is_member(ClassKind::FunctionMatrices, state_value(parse_word("wr_1"), {"1", "2"})));
  EXPECT_TRUE(is_member(ClassKind::FunctionMatrices, SemiringValue::one(tag)));
  EXPECT_FALSE(is_member(ClassKind::FunctionMatrices, state_value(parse_word("rd_1"), {"1", "2"})));
}

TEST(Matrices, StochasticDecomposition) {
  gen::Rng rng(4);
  for (int t = 0; t < 50; ++t) {
    const RatMatrix m = gen::stochastic_matrix(rng, 3);
    const auto d = stochastic_decompose(m);
    RatMatrix sum(3);
    Rational total;
    for (const auto& [w, f] : d) {
      EXPECT_TRUE(Rational::zero() < w);
      total = total + w;
      for (std::size_t i = 0; i < 3; ++i) sum.at(i, f.mapping[i]) = sum.at(i, f.mapping[i]) + w;
    }
    EXPECT_EQ(total.str(), "1");
    EXPECT_TRUE(sum == m);
  }
  RatMatrix bad(2);
  bad.at(0, 0) = Rational(1, 2);
  bad.at(1, 1) = Rational::one();
  EXPECT_FALSE(is_member(ClassKind::RowStochastic, make_value(tags::prob_state({"1", "2"}), Payload(bad))));
}

TEST(ProbIO, CertificateDenotation) {
  const auto tag = tags::prob_io(kAB);
  const auto half = rat_value(Rational(1, 2));
  const auto cert = ProbIOTree::choice({{half, ProbIOTree::output("a", ProbIOTree::leaf())},
                                        {half, ProbIOTree::input({ProbIOTree::leaf(), ProbIOTree::leaf()})}});
  const auto v = prob_io_denote(cert, tag);
  EXPECT_EQ(to_text(v), "{in_a: 1/2, in_b: 1/2, out_a: 1/2}");
  const auto r = member(ConvexityClass(ClassKind::ProbIOTensorClass, tag), v, cert);
  EXPECT_EQ(r.verdict, Membership::Member);
}

TEST(ProbIO, SearchFindsCertificates) {
  gen::Rng rng(9);
  const auto tag = tags::prob_io(kAB);
  const ConvexityClass cls(ClassKind::ProbIOTensorClass, tag);
  for (int t = 0; t < 100; ++t) {
    const auto tree = gen::prob_io_tree(rng, kAB, 3);
    const auto v = prob_io_denote(tree, tag);
    const auto r = member(cls, v);
    ASSERT_EQ(r.verdict, Membership::Member) << to_text(v);
    EXPECT_TRUE(prob_io_denote(std::get<ProbIOTree>(r.certificate), tag) == v);
  }
}

TEST(ProbIO, WrongMassIsNotCertified) {
  const auto tag = tags::prob_io({"a"});
  const auto v = constant_in(tag, Rational(1, 2));
  EXPECT_NE(member(ConvexityClass(ClassKind::ProbIOTensorClass, tag), v).verdict, Membership::Member);
}

TEST(Axioms, AllClassesPass) {
  for (const auto kind : laws::all_class_kinds()) {
    const auto c = laws::default_class_case(kind);
    const auto report = convexity_axiom_test(c.cls, c.sampler, 100, 17);
    EXPECT_TRUE(report.ok()) << class_name(kind) << ": " << (report.failures.empty() ? "" : report.failures.front());
    EXPECT_EQ(report.passed, 100u);
  }
}

TEST(Axioms, ReportsBadSamples) {
  const ConvexityClass cls(ClassKind::SingletonOne, tags::nat());
  const AxiomSampler bad = [](gen::Rng&) {
    return AxiomSample{{nat_value(Natural(1)), nat_value(Natural(0))}, {nat_value(Natural(2)), nat_value(Natural(1))}};
  };
  EXPECT_FALSE(convexity_axiom_test(cls, bad, 5, 1).ok());
}

TEST(CertificateJson, RoundTrip) {
  gen::Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto tree = gen::io_tree(rng, kAB, 3);
    EXPECT_EQ(io_tree_from_json(to_json(tree)), tree);
    const auto p = gen::prob_io_tree(rng, kAB, 2);
    const auto back = prob_io_tree_from_json(to_json(p), tags::rat());
    EXPECT_TRUE(prob_io_denote(back, tags::prob_io(kAB)) == prob_io_denote(p, tags::prob_io(kAB)));
  }
}
