#include <algorithm>
#include <map>
#include <vector>

#include "orbitlab/arith.hpp"
#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kTrialDivisionLimit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kTrialDivisionLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kTrialDivisionLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho. Returns a nontrivial divisor, or 0 if the
// budget ran out.
Integer rho_split(const Integer& n, std::uint64_t budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::uint64_t spent = 0;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, ys, q = 1, g = 1;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto step = [&](Integer& v) {
      v = v * v + c;
      v %= n;
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) step(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        const std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          step(y);
          q = (q * abs(Integer(x - y))) % n;
        }
        g = gcd(q, n);
        k += lim;
        spent += lim;
        if (budget != 0 && spent > budget && g == 1) return 0;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys);
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
    // Cycle closed without a split: retry with the next constant.
  }
}

void split_into(const Integer& n, std::map<Integer, unsigned long>& out, Integer& cofactor,
                const FactorOptions& opts) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  // Rho cannot separate equal factors cheaply, so take exact roots first.
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    const unsigned long bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long k = bits; k >= 2; --k) {
      Integer root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
        std::map<Integer, unsigned long> inner;
        Integer rest = 1;
        split_into(root, inner, rest, opts);
        for (const auto& [p, e] : inner) out[p] += e * k;
        Integer rest_k;
        mpz_pow_ui(rest_k.get_mpz_t(), rest.get_mpz_t(), k);
        cofactor *= rest_k;
        return;
      }
    }
  }
  Integer d = rho_split(n, opts.rho_budget);
  if (d == 0) {
    cofactor *= n;
    return;
  }
  split_into(d, out, cofactor, opts);
  split_into(Integer(n / d), out, cofactor, opts);
}

}  // namespace

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

Factorization factor_partial(const Integer& n, const FactorOptions& opts) {
  if (n == 0) throw std::domain_error("cannot factor 0");
  Factorization result;
  result.sign = n < 0 ? -1 : 1;
  Integer rest = abs(n);
  std::map<Integer, unsigned long> found;
  for (unsigned long p : small_primes()) {
    if (rest == 1) break;
    if (Integer(p) * p > rest) {
      ++found[rest];
      rest = 1;
      break;
    }
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      Integer pp(p);
      found[pp] += strip(rest, pp);
    }
  }
  Integer cofactor = 1;
  split_into(rest, found, cofactor, opts);
  for (auto& [p, e] : found) result.factors.push_back({p, e});
  result.cofactor = cofactor;
  return result;
}

Factorization factor(const Integer& n, const FactorOptions& opts) {
  Factorization f = factor_partial(n, opts);
  if (!f.complete())
    throw ResourceError("factorization budget exhausted on cofactor " + to_string(f.cofactor));
  return f;
}

}  // namespace orbitlab
