#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/lattice.hpp"
#include "orbitlab/unit_group.hpp"

using namespace orbitlab;

namespace {

Rational pow_q(const Rational& x, long e) {
  Rational out = 1;
  const Rational base = e >= 0 ? x : Rational(1) / x;
  for (long i = 0; i < (e >= 0 ? e : -e); ++i) out *= base;
  return out;
}

// Every product of generators with exponents in [-B, B].
std::set<Rational> brute_elements(const std::vector<Rational>& gens, long B) {
  std::set<Rational> out{Rational(1)};
  for (const auto& g : gens) {
    std::set<Rational> next;
    for (const auto& x : out)
      for (long e = -B; e <= B; ++e) next.insert(x * pow_q(g, e));
    out.swap(next);
  }
  return out;
}

}  // namespace

TEST_CASE("support_places examples") {
  auto places = [](const char* s) {
    std::vector<std::string> out;
    for (const auto& p : support_places(UnitGroup::parse(s))) out.push_back(p.to_string());
    return out;
  };
  CHECK(places("-2, 3/5") == std::vector<std::string>{"inf", "2", "3", "5"});
  CHECK(places("1") == std::vector<std::string>{"inf"});
  CHECK(places("4") == std::vector<std::string>{"inf", "2"});
  CHECK_THROWS_AS(UnitGroup::parse("0"), std::invalid_argument);
}

TEST_CASE("is_s_unit examples") {
  const std::vector<Integer> S{2, 3};
  CHECK(is_s_unit(Rational(9, 8), S));
  CHECK(!is_s_unit(Rational(5), S));
  CHECK(is_s_unit(Rational(-1), std::vector<Integer>{}));
}

TEST_CASE("in_group examples") {
  const auto g4 = UnitGroup::parse("4");
  auto w = in_group(Rational(1, 16), g4);
  REQUIRE(w);
  CHECK(w->exponents == std::vector<Integer>{-2});
  CHECK(!in_group(Rational(8), g4));
  const auto g = UnitGroup::parse("-2, 3");
  auto v = in_group(Rational(-6), g);
  REQUIRE(v);
  CHECK(v->exponents == std::vector<Integer>{1, 1});
  CHECK(!in_group(Rational(6), g));
  CHECK(!in_group(Rational(-1), UnitGroup::parse("2")));
}

TEST_CASE("saturate examples") {
  CHECK(saturate(UnitGroup::parse("4")).generators() == std::vector<Rational>{-1, 2});
  CHECK(saturate(UnitGroup::parse("2")).generators() == std::vector<Rational>{-1, 2});
  CHECK(saturate(UnitGroup::parse("8, 2")).generators() == std::vector<Rational>{-1, 2});
  CHECK(saturate(UnitGroup::parse("12, 18")).generators() == std::vector<Rational>{-1, 2, 3});
}

TEST_CASE("coset examples") {
  const std::vector<Integer> two{2};
  CHECK(coset_reps_mod_powers(two, 3) == std::vector<Rational>{1, 2, 4});
  CHECK(coset_reps_mod_powers(two, 2) == std::vector<Rational>{1, -1, 2, -2});
  CHECK(coset_reps_mod_powers(std::vector<Integer>{}, 5) == std::vector<Rational>{1});
  CHECK_THROWS_AS(coset_reps_mod_powers(two, 1), std::invalid_argument);
}

TEST_CASE("lcm_exponent examples") {
  CHECK(lcm_exponent(2, 1) == 7);
  CHECK(lcm_exponent(2, 2) == 61);
  CHECK(lcm_exponent(3, 1) == 13);
}

TEST_CASE("membership agrees with bounded brute force") {
  std::mt19937_64 rng(17);
  const std::vector<long> pool{-1, 2, 3, 5, 6, 10, 12, 15, 18, 25, 27};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> ngen(1, 2), expo(-2, 2);
  for (int i = 0; i < 60; ++i) {
    std::vector<Rational> gens;
    for (int j = ngen(rng); j > 0; --j) gens.push_back(Rational(pool[pick(rng)]) / std::abs(pool[pick(rng)]));
    const UnitGroup g(gens);
    const auto elems = brute_elements(g.generators(), 10);
    // Candidates built from the same primes, in and out of the group.
    for (int t = 0; t < 8; ++t) {
      Rational x = pow_q(Rational(2), expo(rng)) * pow_q(Rational(3), expo(rng)) * pow_q(Rational(5), expo(rng));
      if (t % 2) x = -x;
      const auto w = in_group(x, g);
      CHECK(w.has_value() == (elems.count(x) > 0));
      if (w) CHECK(evaluate(g, *w) == x);
    }
  }
}

TEST_CASE("cosets cover R_S mod m-th powers exactly once") {
  const std::vector<Integer> S{2, 3};
  for (unsigned m = 2; m <= 5; ++m) {
    const auto reps = coset_reps_mod_powers(S, m);
    CHECK(reps.size() == m * m * (m % 2 == 0 ? 2 : 1));
    std::set<Rational> seen(reps.begin(), reps.end());
    CHECK(seen.size() == reps.size());
    for (const auto& r : reps) CHECK(coset_representative(r, S, m) == r);
    // x and x * y^m share a representative.
    CHECK(coset_representative(Rational(-12), S, m) ==
          coset_representative(Rational(-12) * pow_q(Rational(6, 1), m), S, m));
  }
}

TEST_CASE("hermite form is canonical and kernels are kernels") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<long> v(-6, 6);
  for (int i = 0; i < 100; ++i) {
    IntMatrix a(3, std::vector<Integer>(4));
    for (auto& row : a)
      for (auto& x : row) x = v(rng);
    for (const auto& k : integer_kernel(a, 4)) {
      for (const auto& row : a) {
        Integer dot = 0;
        for (std::size_t j = 0; j < 4; ++j) dot += row[j] * k[j];
        CHECK(dot == 0);
      }
    }
    // Row operations do not change the HNF.
    IntMatrix b = a;
    for (std::size_t j = 0; j < 4; ++j) b[0][j] += 3 * b[1][j];
    std::swap(b[1], b[2]);
    CHECK(hermite_rows(a, 4) == hermite_rows(b, 4));
    // Saturation contains the lattice with finite index and is saturated.
    const auto sat = saturate_rows(a, 4);
    CHECK(saturate_rows(sat, 4) == sat);
    CHECK(sat.size() == hermite_rows(a, 4).size());
  }
}

TEST_CASE("membership replay is exact for large exponents") {
  const UnitGroup g = UnitGroup::parse("12, 18");
  Rational x = pow_q(Rational(12), 37) / pow_q(Rational(18), 29);
  auto w = in_group(x, g);
  REQUIRE(w);
  CHECK(evaluate(g, *w) == x);
}
