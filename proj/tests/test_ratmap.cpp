#include "doctest.h"
#include "oracles.hpp"
#include "orbitlab/ratmap.hpp"

using namespace orbitlab;

namespace {
RationalMap M(const char* s) { return RationalMap::parse(s); }
ProjPoint P(const char* s) { return ProjPoint::parse(s); }
}  // namespace

TEST_CASE("make_map examples") {
  CHECK(RationalMap::make(parse_poly("X^2+1"), parse_poly("X")).degree() == 2);
  const auto id = RationalMap::make(parse_poly("X^2-X"), parse_poly("X-1"));
  CHECK(id.degree() == 1);
  CHECK(id == M("X"));
  CHECK(M("(1-X)^2/X").degree() == 2);
  CHECK_THROWS_AS(RationalMap::make(Poly(), Poly()), std::invalid_argument);
  CHECK_THROWS(M("X^2 +"));
  CHECK_THROWS(M("1/(X-X)"));
}

TEST_CASE("evaluate examples") {
  const auto f = M("(1-X)^2/X");
  CHECK(f(P("1/3")) == P("4/3"));
  CHECK(M("X^2")(ProjPoint::infinity()).is_infinity());
  CHECK(f(P("0")).is_infinity());
}

TEST_CASE("compose examples") {
  CHECK(compose(M("X^2"), M("X^2")) == M("X^4"));
  const auto f = M("(1-X)^2/X");
  const auto ff = compose(f, f);
  CHECK(ff.degree() == 4);
  CHECK(ff(P("0")).is_infinity());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const ProjPoint p(oracle::random_rational(rng, 50));
    CHECK(ff(p) == f(f(p)));
  }
}

TEST_CASE("evaluation agrees with exact rational arithmetic") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto f = oracle::random_map(rng, 2 + i % 3);
    const Rational x = oracle::random_rational(rng, 30);
    const Rational g = f.den().eval(x);
    const ProjPoint got = f(ProjPoint(x));
    if (g == 0) {
      CHECK(got.is_infinity());
    } else {
      CHECK(got == ProjPoint(Rational(f.num().eval(x) / g)));
    }
  }
}

TEST_CASE("ramification examples") {
  CHECK(ramification_index(M("X^3"), P("0")) == 3);
  CHECK(ramification_index(M("X^2-2*X"), P("1")) == 2);
  for (int D = 2; D <= 5; ++D) {
    const std::string s = "3*X^" + std::to_string(D) + "/(X-2)^" + std::to_string(D - 1);
    const auto f = RationalMap::parse(s);
    CHECK(ramification_index(f, ProjPoint::infinity()) == 1);
    CHECK(ramification_index(f, P("2")) == D - 1);
  }
}

TEST_CASE("ramification agrees with the Wronskian oracle") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto f = oracle::random_map(rng, 2 + i % 4, i % 3 == 0);
    ProjPoint a = (i % 10 == 0) ? ProjPoint::infinity() : ProjPoint(oracle::random_rational(rng, 6));
    CHECK(ramification_index(f, a) == oracle::ramification(f, a));
  }
}

TEST_CASE("critical data examples") {
  auto total = [](const RationalMap& f) {
    int t = 0;
    for (const auto& e : critical_data(f)) t += (e.factor ? e.factor->degree() : 1) * (e.e - 1);
    return t;
  };
  for (const char* s : {"X^2", "X^2-1"}) {
    const auto c = critical_data(M(s));
    REQUIRE(c.size() == 2);
    CHECK(total(M(s)) == 2);
    for (const auto& e : c) {
      CHECK(e.e == 2);
      if (e.factor) CHECK(*e.factor == Poly::x());
    }
  }
  int points = 0;
  for (const auto& e : critical_data(M("(1-X)^2/X"))) points += e.factor ? e.factor->degree() : 1;
  CHECK(points == 2);
  CHECK(total(M("(1-X)^2/X")) == 2);
}

TEST_CASE("nu and zero_pole_count examples") {
  CHECK(nu(parse_poly("(X^2-1)*(X-1)")) == 2);
  CHECK(nu(parse_poly("X^5")) == 1);
  CHECK(nu(parse_poly("7")) == 0);
  CHECK_THROWS_AS(nu(Poly()), std::domain_error);
  CHECK(zero_pole_count(M("X^2+1")) == 3);
  CHECK(zero_pole_count(M("3*X^4")) == 2);
  CHECK(zero_pole_count(M("(X-1)^2/(X-2)^2")) == 2);
}

TEST_CASE("exceptional examples") {
  CHECK(is_exceptional(M("X^2"), P("0")));
  CHECK(!is_exceptional(M("X^2"), P("1")));
  CHECK(is_exceptional(M("1/X^2"), P("0")));
  CHECK(!is_exceptional(M("X^2-1"), P("0")));
  CHECK(is_exceptional(M("X^2+1"), ProjPoint::infinity()));
}

TEST_CASE("special form examples") {
  auto a = classify_special_form(M("3*X^4"));
  REQUIRE(a);
  CHECK(a->kind == FormKind::Monomial);
  CHECK(a->a == 3);
  auto b = classify_special_form(M("5*X^2/(X-1)"));
  REQUIRE(b);
  CHECK(b->kind == FormKind::MonomialOverShift);
  CHECK(b->a == 5);
  CHECK(b->b == 1);
  CHECK(!classify_special_form(M("X^2+1")));
}

TEST_CASE("invert_coordinates examples") {
  CHECK(invert_coordinates(M("3*X^2")) == M("X^2/3"));
  const auto f = M("(1-X)^2/X");
  const auto g = invert_coordinates(f);
  for (int i = 1; i <= 10; ++i) {
    const Rational x(i, 3);
    const ProjPoint fx = f(ProjPoint(Rational(1) / x));
    const ProjPoint want = fx.is_zero() ? ProjPoint::infinity()
                           : fx.is_infinity() ? ProjPoint(0, 1)
                                              : ProjPoint(Rational(1) / fx.value());
    CHECK(g(ProjPoint(x)) == want);
  }
  CHECK(invert_coordinates(g) == f);
}

TEST_CASE("bad reduction examples") {
  CHECK(bad_reduction_primes(M("X^2+1")).empty());
  CHECK(bad_reduction_primes(M("X^2+1/3")) == std::vector<Integer>{3});
  CHECK(bad_reduction_primes(M("2*X^2+1")) == std::vector<Integer>{2});
  CHECK_THROWS_AS(bad_reduction_primes(M("1/X")), std::invalid_argument);
}

TEST_CASE("poly gcd, resultant and squarefree decomposition") {
  const Poly a = parse_poly("(X-1)^3*(X+2)^2*(X^2+1)");
  const auto dec = squarefree_decomposition(a);
  Poly prod = Poly::constant(1);
  for (const auto& e : dec) prod = prod * e.factor.pow(static_cast<unsigned>(e.multiplicity));
  CHECK(prod == a.monic());
  CHECK(nu(a) == 4);
  CHECK(gcd(parse_poly("X^2-1"), parse_poly("X^2+2*X+1")) == parse_poly("X+1"));
  CHECK(resultant(parse_poly("X^2-2"), parse_poly("X-3")) == 7);
  CHECK(resultant(parse_poly("X^2-1"), parse_poly("X-1")) == 0);
}
