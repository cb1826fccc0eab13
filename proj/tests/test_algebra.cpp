#include "doctest.h"
#include "support.hpp"

#include "agv/region.hpp"

using namespace agvtest;

namespace {

Polynomial random_poly(std::mt19937& rng) {
  const Polynomial p = Polynomial::variable("p"), r = Polynomial::variable("r");
  Polynomial out;
  for (int i = 0; i < 3; ++i)
    out += Polynomial(q(uniform(rng, -9, 9), uniform(rng, 1, 6))) * p.pow(uniform(rng, 0, 2)) * r.pow(uniform(rng, 0, 2));
  return out;
}

}  // namespace

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(parse_rational("6/8") == q(3, 4));
  CHECK(parse_rational("0.125") == q(1, 8));
  CHECK(parse_rational("-3") == q(-3));
  CHECK(to_string(q(-14, 4)) == "-7/2");
  CHECK(to_string(q(0, 5)) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseFailure);
  CHECK_THROWS_AS(parse_rational("x"), ParseFailure);
}

TEST_CASE("polynomial parsing is canonical") {
  auto a = Polynomial::parse("(1-p)^2");
  auto b = Polynomial::parse("1 - 2*p + p^2");
  CHECK(a == b);
  CHECK(a.to_string() == b.to_string());
  CHECK(Polynomial::parse(a.to_string()) == a);
  CHECK(Polynomial::parse("p - p").is_zero());
  CHECK(Polynomial::parse("0.5*q").eval({{"q", q(1, 3)}}) == q(1, 6));
  CHECK(Polynomial::parse("p*q + 1").parameters() == std::set<std::string>{"p", "q"});
  CHECK(Polynomial::parse("p^3*q").degree() == 4);
}

TEST_CASE("polynomial syntax errors carry the offset") {
  try {
    Polynomial::parse("1 - * p");
    FAIL("expected a parse failure");
  } catch (const ParseFailure& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(Polynomial::parse("(p"), ParseFailure);
  CHECK_THROWS_AS(Polynomial::parse("p^"), ParseFailure);
}

TEST_CASE("missing parameters are reported") {
  CHECK_THROWS_AS(Polynomial::parse("p*q").eval({{"p", q(1)}}), Error);
}

TEST_CASE("polynomials form a commutative ring (property)") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a * Polynomial(1) == a);
    Valuation v{{"p", q(uniform(rng, -5, 5), uniform(rng, 1, 4))}, {"r", q(uniform(rng, -5, 5), uniform(rng, 1, 4))}};
    CHECK((a * b + c).eval(v) == a.eval(v) * b.eval(v) + c.eval(v));
  }
}

TEST_CASE("region grammar round-trips") {
  for (const char* text : {"box:p=[0,1/10],q=[0,1]", "finite:{p=1/10,q=1/2};{p=9/10,q=0}", "empty",
                           "box:p=[0,1],q=[0,1];where:1 - p - q>=0", "box:p=[0,1/2] | finite:{p=1}"}) {
    Region r = Region::parse(text);
    CHECK(r.to_string() == text);
    CHECK(Region::parse(r.to_string()) == r);
  }
}

TEST_CASE("region membership and sampling") {
  Region r = Region::parse("box:p=[0,1],q=[0,1];where:q<=1-p");
  CHECK(r.contains({{"p", q(1, 2)}, {"q", q(1, 2)}}));
  CHECK_FALSE(r.contains({{"p", q(1, 2)}, {"q", q(3, 4)}}));
  auto s = r.samples(2);
  for (const auto& v : s) CHECK(r.contains(v));
  // Grid 4x4 restricted to q <= 1 - p: 4 + 3 + 2 + 1 points.
  CHECK(s.size() == 10);
  CHECK(Region::parse("box:p=[0,1]").samples(1).size() == 3);
  CHECK_THROWS_AS(Region::parse("empty").samples(2), Error);
  CHECK(Region::parse("finite:{p=1};{p=1}").samples(1).size() == 1);
}

TEST_CASE("region intersection") {
  Region a = Region::parse("box:p=[0,1/10]");
  Region b = Region::parse("box:p=[0,1],q=[0,1];where:q<=1-p");
  Region c = intersect(a, b);
  CHECK(c.to_string() == "box:p=[0,1/10],q=[0,1];where:1 - p - q>=0");
  CHECK(intersect(Region::parse("finite:{p=1/5}"), a).is_empty());
  CHECK(intersect(Region::parse("finite:{p=1/20};{p=1/2}"), a).to_string() == "finite:{p=1/20}");
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    Valuation v{{"p", q(uniform(rng, 0, 10), 10)}, {"q", q(uniform(rng, 0, 10), 10)}};
    CHECK(c.contains(v) == (a.contains(v) && b.contains(v)));
  }
}
