#include "orbitlab/unit_group.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "orbitlab/errors.hpp"

namespace orbitlab {

UnitGroup::UnitGroup(std::vector<Rational> generators) : generators_(std::move(generators)) {
  std::set<Integer> primes;
  for (auto& g : generators_) {
    g.canonicalize();
    if (g == 0) throw std::invalid_argument("unit group generator must be nonzero");
    for (auto& p : prime_support(g)) primes.insert(p);
  }
  support_.assign(primes.begin(), primes.end());
  for (const auto& g : generators_) {
    std::vector<Integer> row;
    row.reserve(support_.size() + 1);
    row.emplace_back(g < 0 ? 1 : 0);
    for (const auto& p : support_) row.emplace_back(valuation(g, p));
    lattice_.push_back(std::move(row));
  }
}

UnitGroup UnitGroup::s_units(std::vector<Integer> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Rational> gens{Rational(-1)};
  for (auto& p : primes) {
    if (!is_prime(p)) throw std::invalid_argument(orbitlab::to_string(p) + " is not prime");
    gens.emplace_back(p);
  }
  return UnitGroup(std::move(gens));
}

UnitGroup UnitGroup::parse(std::string_view text) {
  std::vector<Rational> gens;
  std::string token;
  auto flush = [&] {
    if (!token.empty()) gens.push_back(parse_rational(token));
    token.clear();
  };
  for (char c : text) {
    if (c == ',' || c == '[' || c == ']' || std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c != '"' && c != '\'') {
      token.push_back(c);
    }
  }
  flush();
  return UnitGroup(std::move(gens));
}

std::string UnitGroup::to_string() const {
  std::string s = "<";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) s += ", ";
    s += orbitlab::to_string(generators_[i]);
  }
  return s + ">";
}

std::vector<Place> support_places(const UnitGroup& group) {
  std::vector<Place> out{Place::infinite()};
  for (const auto& p : group.support()) out.push_back(Place::finite(p));
  return out;
}

std::optional<std::vector<Integer>> unit_vector(const Rational& x, std::span<const Integer> primes) {
  if (x == 0) throw std::domain_error("0 is not a unit");
  std::vector<Integer> v;
  v.reserve(primes.size() + 1);
  v.emplace_back(x < 0 ? 1 : 0);
  Integer num = abs(x.get_num()), den = x.get_den();
  for (const auto& p : primes) {
    const long up = static_cast<long>(strip(num, p));
    const long down = static_cast<long>(strip(den, p));
    v.emplace_back(up - down);
  }
  if (num != 1 || den != 1) return std::nullopt;
  return v;
}

bool is_s_unit(const Rational& x, std::span<const Integer> primes) { return unit_vector(x, primes).has_value(); }

std::optional<MembershipWitness> in_group(const Rational& x, const UnitGroup& group) {
  const auto target = unit_vector(x, group.support());
  if (!target) return std::nullopt;
  const std::size_t g = group.generators().size();
  const std::size_t rows = group.support().size() + 1;
  IntMatrix a(rows, std::vector<Integer>(g + 1, Integer(0)));
  for (std::size_t j = 0; j < g; ++j)
    for (std::size_t r = 0; r < rows; ++r) a[r][j] = group.lattice()[j][r];
  a[0][g] = 2;  // the sign coordinate lives in Z/2
  auto e = solve_integer(a, g + 1, *target);
  if (!e) return std::nullopt;
  e->pop_back();
  MembershipWitness w{std::move(*e)};
  if (evaluate(group, w) != x) throw IntegrityError("in_group: witness does not reproduce the element");
  return w;
}

Rational evaluate(const UnitGroup& group, const MembershipWitness& w) {
  Rational acc = 1;
  for (std::size_t i = 0; i < w.exponents.size(); ++i) {
    const Rational& gen = group.generators()[i];
    const Integer& e = w.exponents[i];
    if (e == 0) continue;
    if (!e.fits_slong_p()) throw std::domain_error("exponent too large to evaluate");
    const long k = e.get_si();
    Integer num, den;
    const unsigned long mag = static_cast<unsigned long>(k < 0 ? -k : k);
    mpz_pow_ui(num.get_mpz_t(), gen.get_num_mpz_t(), mag);
    mpz_pow_ui(den.get_mpz_t(), gen.get_den_mpz_t(), mag);
    Rational p(num, den);
    p.canonicalize();
    acc *= (k < 0) ? Rational(1 / p) : p;
  }
  return acc;
}

UnitGroup saturate(const UnitGroup& group) {
  const std::size_t k = group.support().size();
  IntMatrix vals;
  for (const auto& row : group.lattice()) vals.emplace_back(row.begin() + 1, row.end());
  const IntMatrix basis = k == 0 ? IntMatrix{} : saturate_rows(vals, k);
  std::vector<Rational> gens{Rational(-1)};
  for (const auto& row : basis) {
    Integer num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (row[i] == 0) continue;
      Integer pp;
      mpz_pow_ui(pp.get_mpz_t(), group.support()[i].get_mpz_t(), Integer(abs(row[i])).get_ui());
      (row[i] > 0 ? num : den) *= pp;
    }
    gens.emplace_back(num, den);
    gens.back().canonicalize();
  }
  return UnitGroup(std::move(gens));
}

std::vector<Rational> coset_reps_mod_powers(std::span<const Integer> primes, unsigned m) {
  if (m < 2) throw std::invalid_argument("coset representatives need m >= 2");
  const std::size_t k = primes.size();
  const unsigned signs = (m % 2 == 0) ? 2 : 1;
  double estimate = signs;
  for (std::size_t i = 0; i < k; ++i) estimate *= m;
  if (estimate > 1e6) throw ResourceError("coset_reps_mod_powers: more than 10^6 cosets");
  std::vector<Rational> out;
  std::vector<unsigned> exps(k, 0);
  for (;;) {
    Integer value = 1;
    for (std::size_t i = 0; i < k; ++i) {
      Integer pp;
      mpz_pow_ui(pp.get_mpz_t(), primes[i].get_mpz_t(), exps[i]);
      value *= pp;
    }
    out.emplace_back(value);
    if (signs == 2) out.emplace_back(-value);
    // lexicographic increment, last prime fastest
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++exps[i] < m) break;
      exps[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

Rational coset_representative(const Rational& x, std::span<const Integer> primes, unsigned m) {
  if (m < 2) throw std::invalid_argument("coset representatives need m >= 2");
  const auto v = unit_vector(x, primes);
  if (!v) throw std::invalid_argument(to_string(x) + " is not an S-unit");
  Integer value = 1;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), (*v)[i + 1].get_mpz_t(), m);
    Integer pp;
    mpz_pow_ui(pp.get_mpz_t(), primes[i].get_mpz_t(), r.get_ui());
    value *= pp;
  }
  if (m % 2 == 0 && (*v)[0] == 1) value = -value;
  return Rational(value);
}

Integer lcm_exponent(unsigned d, unsigned n) {
  if (d < 1) throw std::invalid_argument("lcm_exponent: d must be positive");
  Integer top;
  mpz_ui_pow_ui(top.get_mpz_t(), d, n);
  top += 1;
  if (top < 2) throw std::invalid_argument("lcm_exponent: d^n + 1 must be >= 2");
  if (top > 10'000'000) throw ResourceError("lcm_exponent: d^n + 1 exceeds 10^7");
  Integer acc = 1;
  const unsigned long limit = top.get_ui();
  for (unsigned long k = 2; k <= limit; ++k) mpz_lcm_ui(acc.get_mpz_t(), acc.get_mpz_t(), k);
  return acc + 1;
}

}  // namespace orbitlab
