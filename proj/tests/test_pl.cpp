#include <random>

#include "doctest.h"

#include "common.hpp"
#include "fskit/errors.hpp"
#include "fskit/pl.hpp"

using namespace fskit;
using namespace testing_support;

namespace {

const char *kJ = "colors a b\nrel a1 a1 a3 = b1 b2 b3\n";

Eppm elem(const RightVineClass &c, const std::string &e) { return evaluate_element(c, parse_element(e)); }

} // namespace

TEST_CASE("dyadics") {
  CHECK(Dyadic(4, 3) == Dyadic(1, 1));
  CHECK(Dyadic(0, 5) == Dyadic(0));
  CHECK(Dyadic::pow2(-2).to_string() == "1/4");
  CHECK(Dyadic::pow2(3).to_string() == "8");
  CHECK(Dyadic::of_word("011") == Dyadic(3, 3));
  CHECK((Dyadic(1, 1) + Dyadic(1, 2)).to_string() == "3/4");
  CHECK((Dyadic(1, 1) - Dyadic(3, 2)).to_string() == "-1/4");
  CHECK(Dyadic(1, 2) < Dyadic(1, 1));
  CHECK(j_value(EvPeriodicWord::parse("(01)")) == Rational(1, 3));
  CHECK(j_value(EvPeriodicWord::omega()) == 1);
  CHECK(j_value(EvPeriodicWord::parse("0(1)")) == Rational(1, 2));
}

TEST_CASE("decimal9 rounds half to even") {
  CHECK(decimal9(Rational(1, 3)) == "0.333333333");
  CHECK(decimal9(Rational(2, 3)) == "0.666666667");
  CHECK(decimal9(Rational(1, 2000000000)) == "0.000000000");
  CHECK(decimal9(Rational(3, 2000000000)) == "0.000000002");
  CHECK(decimal9(Rational(600)) == "600.000000000");
  CHECK(decimal9(Rational(-1, 4)) == "-0.250000000");
}

TEST_CASE("identity rendering") {
  PlMap m = to_interval_map(Eppm::identity());
  REQUIRE(m.pieces.size() == 1);
  CHECK(m.pieces[0].slope_exp == 0);
  CHECK(m.pieces[0].intercept == Dyadic(0));
  CHECK(breakpoints(m).empty());
  auto fx = fixed_points(m);
  REQUIRE(fx.size() == 1);
  CHECK(fx[0].to_string() == "[0, 1]");
  CHECK(emit_csv(m) == "left,right,slope_exp,intercept_num,intercept_exp\n0,1,0,0,0\n");
  CHECK(to_circle_map(Eppm::identity()).pieces.size() == 1);
}

TEST_CASE("the [Y_b, id, Y_a] map") {
  auto c = class_of(kJ);
  Eppm f = elem(c, "[b1 | id | a1]");
  PlMap m = to_interval_map(f, 12);
  CHECK(m.pieces[0].left == Dyadic(0));
  CHECK(m.pieces[0].right == Dyadic(1, 1));
  CHECK(m.pieces[0].slope_exp == -1);
  auto bps = breakpoints(m);
  REQUIRE_FALSE(bps.empty());
  CHECK(bps[0].point == Dyadic(1, 1));
  CHECK(bps[0].left_slope_exp == -1);
  CHECK(bps[0].right_slope_exp == 1);
  CHECK(breakpoints(to_interval_map(f, 16)).size() > bps.size()); // grows with the depth
  REQUIRE(m.accumulation_points.size() == 1);
  CHECK(m.accumulation_points[0].point == Dyadic(1));
  // monotone, dyadic, powers of two
  for (size_t k = 0; k < m.pieces.size(); ++k) {
    const auto &p = m.pieces[k];
    CHECK(p.left < p.right);
    CHECK(p.value_at(p.left) <= p.value_at(p.right));
    if (k) CHECK(m.pieces[k - 1].right <= p.left);
  }
  CHECK(parse_csv(emit_csv(m)).pieces == m.pieces);
  CHECK(emit_svg(m) == emit_svg(to_interval_map(f, 12)));
  auto fx = fixed_points(m);
  CHECK(fx.front().to_string() == "0");
  CHECK(fx.back().to_string() == "1");
  CHECK(fx[1].to_string() == "3/4");
}

TEST_CASE("finite maps stabilise") {
  auto c = class_of(kJ);
  Eppm f = elem(c, "[a1 a2 | id | a1 a1]");
  CHECK(breakpoints(to_interval_map(f, 8)).size() == breakpoints(to_interval_map(f, 14)).size());
}

TEST_CASE("circle maps") {
  auto c = class_of(kJ);
  PlMap half = to_circle_map(elem(c, "[a1 | 2 1 | a1]"));
  REQUIRE(half.pieces.size() == 2);
  CHECK(half.pieces[0].intercept == Dyadic(1, 1));
  CHECK(half.pieces[1].intercept == Dyadic(-1, 1));
  CHECK(fixed_points(half).empty());
  CHECK_THROWS_AS(to_interval_map(elem(c, "[a1 | 2 1 | a1]")), NotOrderPreserving);
  CHECK_THROWS_AS(to_circle_map(elem(c, "[a1 a1 | 2 1 3 | a1 a1]")), NotCyclicOrderPreserving);
  // rendered values agree with exact evaluation at every left endpoint
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    Eppm f = elem(c, random_fraction(rng, 5, 1).text);
    PlMap m = to_circle_map(f, 10);
    for (const auto &p : m.pieces) {
      Word u;
      BigInt num = p.left.num();
      for (unsigned k = 0; k < p.left.exp(); ++k) u.insert(u.begin(), (num >> k) % 2 == 1 ? '1' : '0');
      CHECK(j_value(evaluate(f, EvPeriodicWord(u, "0"))) == p.value_at(p.left).to_rational());
    }
  }
}

TEST_CASE("csv parsing errors") {
  CHECK_THROWS_AS(parse_csv("nope\n"), ParseError);
  CHECK_THROWS_AS(parse_csv("left,right,slope_exp,intercept_num,intercept_exp\n1/3,1,0,0,0\n"), ParseError);
  CHECK_THROWS_AS(parse_csv("left,right,slope_exp,intercept_num,intercept_exp\n0,1,0\n"), ParseError);
}
