#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/interval.hpp"

using namespace orbitlab;

TEST_CASE("valuation examples") {
  CHECK(valuation(Rational(12), Integer(2)) == 2);
  CHECK(valuation(Rational(1, 25), Integer(5)) == -2);
  CHECK(valuation(Rational(26, 25), Integer(5)) == -2);
  CHECK_THROWS_AS(valuation(Rational(0), Integer(2)), std::domain_error);
  CHECK_THROWS_AS(valuation(Rational(12), Integer(4)), std::invalid_argument);
}

TEST_CASE("factor examples") {
  auto f = factor(677);
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0] == PrimePower{677, 1});
  auto g = factor(-12);
  CHECK(g.sign == -1);
  CHECK(g.factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(factor(1).factors.empty());
  CHECK_THROWS_AS(factor(0), std::domain_error);
}

TEST_CASE("factor agrees with trial division") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> dist(2, 2'000'000'000'000ull);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = dist(rng);
    const auto f = factor(Integer(std::to_string(n)));
    std::map<std::uint64_t, unsigned> got;
    for (const auto& pp : f.factors) got[std::stoull(to_string(pp.prime))] = static_cast<unsigned>(pp.exponent);
    CHECK(got == oracle::trial_factor(n));
  }
}

TEST_CASE("factor splits semiprimes beyond trial division") {
  const Integer p("1000000007"), q("998244353"), r("2305843009213693951");
  const auto f = factor(p * q * r * r);
  REQUIRE(f.complete());
  CHECK(f.factors == std::vector<PrimePower>{{q, 1}, {p, 1}, {r, 2}});
}

TEST_CASE("primality matches trial division") {
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(Integer(static_cast<unsigned long>(n))) == oracle::trial_prime(n));
}

TEST_CASE("coprime base covers its inputs") {
  const std::vector<Integer> vals{12, 18, 35, 49};
  const auto base = coprime_base(vals);
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) CHECK(gcd(base[i], base[j]) == 1);
  for (Integer v : vals) {
    for (const auto& b : base) strip(v, b);
    CHECK(v == 1);
  }
}

TEST_CASE("points normalize and print") {
  CHECK(ProjPoint(-4, -6) == ProjPoint(2, 3));
  CHECK(ProjPoint(5, 0) == ProjPoint::infinity());
  CHECK(ProjPoint::parse("inf").is_infinity());
  CHECK(ProjPoint::parse("-6/4").to_string() == "-3/2");
  CHECK_THROWS(ProjPoint(0, 0));
  CHECK_THROWS(ProjPoint::parse("1/0/"));
}

TEST_CASE("weil height examples") {
  CHECK(weil_height(ProjPoint::parse("2/3")).magnitude == 3);
  CHECK(weil_height(ProjPoint::infinity()).magnitude == 1);
  CHECK(weil_height(ProjPoint::parse("1")).magnitude == 1);
  CHECK(weil_height(ProjPoint::parse("2/3")).log.contains(Interval::log_of(Integer(3))));
}

TEST_CASE("enumerate_points examples and counts") {
  auto p1 = enumerate_points(1);
  CHECK(p1.size() == 4);
  std::set<std::string> s1;
  for (const auto& p : p1) s1.insert(p.to_string());
  CHECK(s1 == std::set<std::string>{"0", "inf", "1", "-1"});
  auto p2 = enumerate_points(2);
  CHECK(p2.size() == 8);
  CHECK(enumerate_points(3).size() == 16);
  CHECK_THROWS_AS(enumerate_points(0), std::invalid_argument);
  for (std::int64_t M = 1; M <= 40; ++M) {
    CHECK(count_points(static_cast<std::uint64_t>(M)) == oracle::count_points(M));
  }
}

TEST_CASE("point stream is sorted, unique and seekable") {
  const auto all = enumerate_points(25);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(canonical_less(all[i - 1], all[i]));
  PointStream s(25);
  s.seek(137);
  for (std::size_t i = 137; i < 160; ++i) {
    auto p = s.next();
    REQUIRE(p);
    CHECK(*p == all[i]);
  }
  s.seek(all.size());
  CHECK(!s.next());
}

TEST_CASE("intervals enclose exact values") {
  const Interval l2 = Interval::log_of(Integer(2));
  CHECK(l2.lower() <= 0.6931471805599453);
  CHECK(l2.upper() >= 0.6931471805599453);
  const Interval third = Interval::exact(Rational(1, 3));
  CHECK(third.contains(Rational(1, 3)));
  CHECK(!third.contains(Rational(1, 3) + Rational(1, 1000000000)));
  const Interval sum = l2 + l2;
  CHECK(sum.contains(Interval::log_of(Integer(4))));
}
