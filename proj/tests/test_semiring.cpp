#include <gtest/gtest.h>

#include "semfx/semfx.hpp"

using namespace semfx;

namespace {
WordMultiset ms(std::initializer_list<std::pair<const char*, std::uint64_t>> entries) {
  WordMultiset m;
  for (const auto& [w, c] : entries) m.add_entry(parse_word(w), Natural(c));
  return m;
}
}  // namespace

TEST(Words, ParseAndRender) {
  const Word w = parse_word("out_a.in_1");
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0], out_letter("a"));
  EXPECT_EQ(w[1], in_letter("1"));
  EXPECT_EQ(to_text(w), "out_a.in_1");
  EXPECT_EQ(to_text(Word{}), "ε");
  EXPECT_TRUE(parse_word("ε").empty());
  EXPECT_THROW(parse_word("foo"), Error);
}

TEST(Words, ConcatenationIsNotCommutative) {
  const auto a = WordMultiset::letter(out_letter("a"));
  const auto b = WordMultiset::letter(out_letter("b"));
  EXPECT_FALSE(a * b == b * a);
  EXPECT_EQ(to_text(a * b), "{out_a.out_b: 1}");
}

TEST(Words, RenderingIsLengthLex) {
  const auto m = ms({{"out_b", 1}, {"in_a.out_a", 2}, {"", 1}, {"in_a", 1}});
  EXPECT_EQ(to_text(m), "{ε: 1, in_a: 1, out_b: 1, in_a.out_a: 2}");
}

TEST(Words, ZeroEntriesVanish) {
  WordMultiset m;
  m.add_entry(parse_word("in_a"), Natural::zero());
  EXPECT_TRUE(m.is_zero());
  EXPECT_EQ(to_text(m), "{}");
}

TEST(Matrix, ProductAndRendering) {
  NatMatrix m(2);
  m.at(0, 0) = Natural::one();
  m.at(1, 0) = Natural::one();
  m.at(1, 1) = Natural::one();
  EXPECT_EQ(to_text(m), "[[1,0],[1,1]]");
  EXPECT_TRUE(NatMatrix::identity(2) * m == m);
  EXPECT_EQ(to_text(m * m), "[[1,0],[2,1]]");
}

TEST(State, MatrixModelRelations) {
  const std::vector<std::string> I{"1", "2"};
  auto M = [&](const char* w) { return state_to_matrix(parse_word(w), I); };
  EXPECT_TRUE(M("wr_1.rd_1") == M("wr_1"));
  EXPECT_TRUE(M("wr_1.wr_2") == M("wr_2"));
  EXPECT_TRUE(M("wr_1.rd_2").is_zero());
  EXPECT_TRUE(M("rd_1.wr_1") + M("rd_2.wr_2") == NatMatrix::identity(2));
  EXPECT_TRUE(M("rd_1") == M("rd_1.wr_1"));
  EXPECT_EQ(to_text(M("wr_1")), "[[1,0],[1,0]]");
}

TEST(Tags, NamesRoundTrip) {
  for (const char* n : {"nat", "rat", "nat[1/6]", "bern", "rat-bern", "bibern", "rat-bibern"}) {
    EXPECT_EQ(tag_name(parse_tag_name(n)), n);
  }
  EXPECT_EQ(tag_name(parse_tag_name("io:rat", {"a"})), "io:rat");
  EXPECT_EQ(tag_name(parse_tag_name("state:nat", {"1", "2"})), "state:nat");
  EXPECT_THROW(parse_tag_name("real"), Error);
}

TEST(Values, TagMismatch) {
  try {
    (void)(nat_value(Natural(1)) + rat_value(Rational(1, 2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TagMismatch);
  }
}

TEST(Values, LocalizationRejectsForeignDenominators) {
  EXPECT_NO_THROW(SemiringValue(tags::local(6), Payload(Rational(1, 12))));
  try {
    SemiringValue(tags::local(6), Payload(Rational(1, 5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidValue);
  }
}

TEST(Values, UnitsPerShape) {
  EXPECT_EQ(to_text(SemiringValue::one(tags::io({"a"}))), "{ε: 1}");
  EXPECT_EQ(to_text(SemiringValue::zero(tags::io({"a"}))), "{}");
  EXPECT_EQ(to_text(SemiringValue::one(tags::state({"1", "2"}))), "[[1,0],[0,1]]");
  EXPECT_TRUE(SemiringValue::one(tags::bern()).is_one());
}

TEST(Values, UnknownIndex) {
  try {
    io_letter(tags::io({"a"}), out_letter("z"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownIndex);
  }
}

TEST(Values, EmbeddingIntoLargerRings) {
  const auto half = rat_value(Rational(1, 2));
  EXPECT_EQ(to_text(embed(half, tags::rat_bern())), "1/2");
  EXPECT_EQ(to_text(embed(half, tags::prob_io({"a"}))), "{ε: 1/2}");
  const auto x = coin_generator(tags::bern(), PolyVar::X, false);
  EXPECT_EQ(to_text(embed(x, tags::bibern(), PolyVar::Y)), "Y");
  EXPECT_THROW(embed(half, tags::nat()), Error);
  EXPECT_THROW(embed(x, tags::io({"a"})), Error);
}

TEST(Values, JsonRoundTrip) {
  const std::vector<SemiringValue> values{
      nat_value(Natural(3)),
      rat_value(Rational(2, 3)),
      SemiringValue(tags::local(2), Payload(Rational(3, 8))),
      coin_generator(tags::rat_bern(), PolyVar::X, true) * constant_in(tags::rat_bern(), Rational(1, 2)),
      coin_generator(tags::bibern(), PolyVar::Y, false) * coin_generator(tags::bibern(), PolyVar::X, true),
      make_value(tags::io({"a", "b"}), Payload(ms({{"in_a.out_b", 2}, {"", 1}}))),
      state_value(parse_word("wr_1"), {"1", "2"}),
  };
  for (const auto& v : values) {
    const auto j = to_json(v);
    EXPECT_TRUE(value_from_json(j) == v) << j.dump();
    EXPECT_EQ(to_json(value_from_json(j)).dump(), j.dump());
  }
}

TEST(Values, JsonShape) {
  const auto v = make_value(tags::io({"a"}), Payload(ms({{"out_a", 1}})));
  EXPECT_EQ(to_json(v).dump(), R"({"index":["a"],"semiring":"io:nat","value":{"out_a":"1"}})");
  EXPECT_EQ(to_json(coin_generator(tags::bern(), PolyVar::X, false)).dump(),
            R"({"semiring":"bern","value":{"coeffs":["0","1"]}})");
}

TEST(Values, MalformedJson) {
  EXPECT_THROW(value_from_json(nlohmann::json::parse(R"({"semiring":"nat","value":"-3"})")), Error);
  EXPECT_THROW(value_from_json(nlohmann::json::parse(R"({"semiring":"io:nat","value":{}})")), Error);
  EXPECT_THROW(value_from_json(nlohmann::json::parse(R"({"value":"1"})")), Error);
}
