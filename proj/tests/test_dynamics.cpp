#include <random>

#include "doctest.h"

#include "common.hpp"
#include "fskit/errors.hpp"

using namespace fskit;
using namespace testing_support;

namespace {

const char *kJ = "colors a b\nrel a1 a1 a3 = b1 b2 b3\n";
const char *kN = "colors a b\nrel a1 a1 a3 a4 = b1 b2 b3 b4\n";
const char *kRho = "colors a b\nrel a1 a2 = b1 b2\n";

Eppm word(const RightVineClass &c, const std::string &w) { return evaluate_word(c, parse_signed_word(w)); }
Eppm elem(const RightVineClass &c, const std::string &e) { return evaluate_element(c, parse_element(e)); }

std::string repeat(const std::string &s, int k) {
  std::string r;
  for (int i = 0; i < k; ++i) r += s + " ";
  return r;
}

} // namespace

TEST_CASE("point normal form") {
  CHECK(EvPeriodicWord::parse("01(01)").to_string() == "(01)");
  CHECK(EvPeriodicWord::parse("(0101)").to_string() == "(01)");
  CHECK(EvPeriodicWord::parse("1(1)").to_string() == "(1)");
  CHECK(EvPeriodicWord::parse("10(10)") == EvPeriodicWord::parse("(10)"));
  CHECK_THROWS_AS(EvPeriodicWord::parse("01"), ParseError);
  CHECK_THROWS_AS(EvPeriodicWord::parse("0()"), ParseError);
  CHECK_THROWS_AS(EvPeriodicWord::parse("2(0)"), ParseError);
  CHECK(tail_equivalent(EvPeriodicWord::parse("0(1)"), EvPeriodicWord::omega()));
  CHECK(tail_equivalent(EvPeriodicWord::parse("(01)"), EvPeriodicWord::parse("(10)")));
  CHECK_FALSE(tail_equivalent(EvPeriodicWord::parse("(01)"), EvPeriodicWord::origin()));
  CHECK(compare_points(EvPeriodicWord::parse("0(1)"), EvPeriodicWord::parse("1(0)")) < 0);
}

TEST_CASE("caret maps") {
  auto c = class_of(kJ);
  CHECK(caret_map(c, Gen::A0) == Eppm::piece("", "0"));
  CHECK(caret_map(c, Gen::B0) == Eppm::piece("", "00"));
  Eppm b1 = caret_map(c, Gen::B1);
  REQUIRE(b1.families.size() == 1);
  CHECK(b1.families[0].dom_step == 2);
  CHECK(b1.families[0].blocks == std::vector<Block>{{"00", "01"}, {"01", "10"}, {"10", "1100"}});
  CHECK(evaluate(b1, EvPeriodicWord::origin()) == EvPeriodicWord::parse("01(0)"));
  CHECK(evaluate(b1, EvPeriodicWord::omega()) == EvPeriodicWord::omega());
  CHECK_THROWS_AS(evaluate(invert(b1), EvPeriodicWord::origin()), UndefinedAt);
  CHECK_THROWS_AS(caret_map(class_of(kJ), "c", 0), UnknownColour);
}

TEST_CASE("compose, invert, equals") {
  auto c = class_of(kJ);
  Eppm b1 = caret_map(c, Gen::B1);
  CHECK(equals(compose(b1, Eppm::identity()), b1));
  CHECK(equals(invert(caret_map(c, Gen::A0)), Eppm::piece("0", "")));
  CHECK(equals(word(c, "A0 A0"), caret_map(c, Gen::B0)));
  CHECK(equals(word(c, "A1 A1"), word(c, "B1 B1 B1")));
  CHECK_FALSE(equals(b1, caret_map(c, Gen::A1)));
  CHECK(equals(word(c, ""), Eppm::identity()));
  // B1^-1 is undefined exactly on the cone of the first leaf
  Eppm bi = invert(b1);
  CHECK(domain_measure(bi) == Rational(3, 4));
  CHECK_FALSE(try_evaluate(bi, EvPeriodicWord::parse("00(1)")));
  CHECK(try_evaluate(bi, EvPeriodicWord::parse("01(1)")));

  auto n = class_of(kN);
  Eppm phi5 = word(n, repeat("A1 B1", 5));
  CHECK(canonicalize(phi5) == Eppm::piece("", "111111111"));
  CHECK(is_power_of_A1(phi5) == 9);
  std::mt19937_64 rng(31);
  for (int k = 0; k < 50; ++k) {
    auto p = random_point(rng);
    CHECK(evaluate(phi5, p) == p.prepend("111111111"));
  }
  // the shorter collapse in the same class
  CHECK(is_power_of_A1(word(n, "B1 " + repeat("A1 B1", 4))) == 8);
  CHECK(is_power_of_A1(Eppm::identity()) == 0);
  CHECK_FALSE(is_power_of_A1(b1));
}

TEST_CASE("pointwise composition matches sequential evaluation") {
  std::mt19937_64 rng(32);
  for (const auto &fl : flagships()) {
    auto c = class_of(fl.text);
    for (int t = 0; t < 500; ++t) {
      auto u = random_word(rng, 6), v = random_word(rng, 6);
      Eppm f = evaluate_word(c, u.word), g = evaluate_word(c, v.word), fg = compose(f, g);
      auto p = random_point(rng);
      auto step = try_evaluate(g, p);
      CHECK(try_evaluate(fg, p) == (step ? try_evaluate(f, *step) : std::nullopt));
    }
  }
}

TEST_CASE("oracle agreement on fractions") {
  std::mt19937_64 rng(33);
  for (const auto &fl : flagships()) {
    auto c = class_of(fl.text);
    oracle::Class oc(fl.x_word);
    for (int t = 0; t < 200; ++t) {
      auto fr = random_fraction(rng, 8);
      Eppm f = elem(c, fr.text);
      CHECK(is_total(f));
      CHECK(is_surjective(f));
      for (int k = 0; k < 5; ++k) {
        auto p = random_point_not_tail_one(rng);
        auto want = oracle::apply_fraction(oc, fr.t, fr.pi, fr.s, p.prefix(64));
        REQUIRE(want);
        if (want->size() < 16) continue;
        CHECK(evaluate(f, p).prefix(want->size()) == *want);
      }
    }
  }
}

TEST_CASE("fractions") {
  auto c = class_of(kJ);
  std::mt19937_64 rng(34);
  for (int t = 0; t < 50; ++t) {
    auto w = random_caret_word(rng, t % 7);
    CHECK(equals(elem(c, "[" + w + " | id | " + w + "]"), Eppm::identity()));
    auto fr = random_fraction(rng, 6, 0);
    CHECK(is_order_preserving(elem(c, fr.text)));
    auto rot = random_fraction(rng, 6, 1);
    CHECK(is_cyclic_order_preserving(elem(c, rot.text)));
  }
  Eppm f = elem(c, "[b1 | id | a1]");
  Eppm want = caret_map(c, Gen::B1);
  CHECK(equals(f, union_of({Eppm::piece("0", "00"), compose(want, Eppm::piece("1", ""))})));
  CHECK(to_string(classify_element(f)) == std::string("F"));
  Eppm swap = elem(c, "[a1 | 2 1 | a1]");
  CHECK_FALSE(is_order_preserving(swap));
  CHECK(is_cyclic_order_preserving(swap));
  CHECK(to_string(classify_element(swap)) == std::string("T"));
  CHECK(to_string(classify_element(elem(c, "[a1 a1 | 2 1 3 | a1 a1]"))) == std::string("V"));
  CHECK_THROWS_AS(parse_fraction("[a1 | id | a1 a1]"), ParseError);
  CHECK_THROWS_AS(parse_fraction("[a1 | 1 2 3 | a1]"), ParseError);
  CHECK_THROWS_AS(parse_fraction("a1 | id | a1"), ParseError);
  CHECK_THROWS_AS(is_order_preserving(invert(caret_map(c, Gen::A0))), NotTotal);
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(35);
  for (const auto &fl : flagships()) {
    auto c = class_of(fl.text);
    for (int t = 0; t < 100; ++t) {
      auto w = random_word(rng, 10);
      Eppm f = evaluate_word(c, w.word);
      CHECK(equals(invert(invert(f)), f));
      Eppm h = compose(f, invert(f));
      CHECK(is_identity_on_domain(h));
      CHECK(domain_measure(h) == range_measure(f));
      CHECK(equals(canonicalize(f), f));
    }
  }
}

TEST_CASE("support") {
  auto c = class_of(kJ);
  CHECK(support(Eppm::identity()).everything_fixed());
  Eppm f = elem(c, "[b1 | id | a1]");
  Support s = support(f);
  CHECK_FALSE(s.everything_fixed());
  bool omega_fixed = false;
  for (const auto &p : s.fixed_points) omega_fixed |= p == EvPeriodicWord::omega();
  CHECK(omega_fixed);
  bool infinite = false;
  for (const auto &fam : s.fixed_point_families) infinite |= fam.infinite;
  CHECK(infinite);
  CHECK(support(compose(f, invert(f))).everything_fixed());
}

TEST_CASE("singular points") {
  auto c = class_of(kJ);
  CHECK(singular_points(c, Eppm::identity()).empty());
  CHECK(singular_points(c, elem(c, "[b1 | id | a1]")) == std::vector<EvPeriodicWord>{EvPeriodicWord::omega()});
  auto r = class_of(kRho);
  std::mt19937_64 rng(36);
  for (int t = 0; t < 50; ++t) CHECK(singular_points(r, elem(r, random_fraction(rng, 6).text)).empty());
  // partial maps are accepted: B1 is singular at omega exactly when x != rho
  CHECK(singular_points(c, caret_map(c, Gen::B1)) == std::vector<EvPeriodicWord>{EvPeriodicWord::omega()});
  CHECK(singular_points(r, caret_map(r, Gen::B1)).empty());
}

TEST_CASE("germs") {
  auto n = class_of(kN);
  Eppm phi5 = word(n, repeat("A1 B1", 5));
  CHECK(germ_at(Eppm::identity(), EvPeriodicWord::omega()).is_identity());
  auto a1 = germ_at(caret_map(n, Gen::A1), EvPeriodicWord::omega());
  CHECK(a1.kind == GermDescriptor::Prefix);
  CHECK(a1.image.empty()); // 1·1^∞ is 1^∞ again
  CHECK(a1.shift == 1);
  CHECK(germ_at(phi5, EvPeriodicWord::omega()) == germ_at(word(n, repeat("A1", 9)), EvPeriodicWord::omega()));
  CHECK(germ_equal(phi5, word(n, repeat("A1", 9)), EvPeriodicWord::omega()));
  auto c = class_of(kJ);
  Eppm f = elem(c, "[b1 | id | a1]");
  CHECK_FALSE(germ_equal(f, Eppm::identity(), EvPeriodicWord::omega()));
  CHECK(germ_equal(f, compose(f, elem(c, "[a1 a1 | id | a1 a1]")), EvPeriodicWord::omega()));
}

TEST_CASE("bi-order") {
  auto c = class_of(kJ);
  Eppm f = elem(c, "[b1 | id | a1]");
  CHECK(bi_order_compare(f, f) == Ordering::Equal);
  CHECK(bi_order_compare(f, Eppm::identity()) == Ordering::Less);
  CHECK(bi_order_compare(Eppm::identity(), f) == Ordering::Greater);
  std::mt19937_64 rng(37);
  std::vector<Eppm> els;
  for (int t = 0; t < 12; ++t) els.push_back(elem(c, random_fraction(rng, 5, 0).text));
  for (const auto &x : els)
    for (const auto &y : els) {
      auto xy = bi_order_compare(x, y), yx = bi_order_compare(y, x);
      if (xy == Ordering::Equal) CHECK(yx == Ordering::Equal);
      else CHECK(yx != xy);
      for (const auto &z : els)
        if (xy == Ordering::Less && bi_order_compare(y, z) == Ordering::Less)
          CHECK(bi_order_compare(x, z) == Ordering::Less);
    }
  CHECK_THROWS_AS(bi_order_compare(elem(c, "[a1 | 2 1 | a1]"), f), NotOrderPreserving);
}

TEST_CASE("signed word syntax") {
  auto w = parse_signed_word("A0 A1^-1  B1");
  CHECK(w.size() == 3);
  CHECK(w[1].exp == -1);
  CHECK(format_signed_word(w) == "A0 A1^-1 B1");
  CHECK_THROWS_AS(parse_signed_word("A2"), ParseError);
  CHECK(format_fraction(parse_fraction("[ b1 | id | a1 ]")) == "[b1 | id | a1]");
  CHECK(format_fraction(parse_fraction("[a1 | 2 1 | b1]")) == "[a1 | 2 1 | b1]");
}

TEST_CASE("unsupported presentations are refused") {
  CHECK_THROWS_AS(require_class(h_family(3)), UnsupportedClass);
}
