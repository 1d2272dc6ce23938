#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbitlab {

using Integer = mpz_class;
using Rational = mpq_class;

struct PrimePower {
  Integer prime;
  unsigned long exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

/// sign * prod(prime^exponent) * cofactor == n. `cofactor` is 1 unless a
/// partial factorization ran out of budget, in which case it is a composite
/// with no prime factor below the trial-division limit.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;  // ascending primes
  Integer cofactor = 1;

  bool complete() const { return cofactor == 1; }
};

struct FactorOptions {
  /// Pollard-Brent iterations allowed per split attempt (0 = unlimited).
  std::uint64_t rho_budget = 1ull << 24;
};

inline constexpr unsigned long kTrialDivisionLimit = 1'000'000;

bool is_prime(const Integer& n);

/// Complete factorization; throws ResourceError if rho exhausts its budget.
Factorization factor(const Integer& n, const FactorOptions& opts = {});
/// As factor(), but an unsplittable remainder is returned in `cofactor`.
Factorization factor_partial(const Integer& n, const FactorOptions& opts = {});

/// Distinct prime divisors of |n|.
std::vector<Integer> prime_support(const Integer& n);
/// Distinct primes dividing numerator or denominator of x (x != 0).
std::vector<Integer> prime_support(const Rational& x);

long valuation(const Integer& x, const Integer& p);
long valuation(const Rational& x, const Integer& p);

/// Removes every factor of p from n, returning how many were removed.
unsigned long strip(Integer& n, const Integer& p);

/// Pairwise coprime integers > 1 over which every input factors completely.
std::vector<Integer> coprime_base(const std::vector<Integer>& values);

struct Place {
  bool archimedean = true;
  Integer prime = 0;

  static Place infinite() { return {}; }
  static Place finite(Integer p) { return {false, std::move(p)}; }
  std::string to_string() const;
  bool operator==(const Place&) const = default;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Integer& n);
std::string to_string(const Rational& q);
std::optional<std::int64_t> to_int64(const Integer& n);

/// A point of P^1(Q) stored as a primitive integer pair (x : z) with z >= 0
/// and infinity represented as (1 : 0).
class ProjPoint {
 public:
  ProjPoint() : x_(0), z_(1) {}
  ProjPoint(Integer x, Integer z);
  explicit ProjPoint(const Rational& q) : ProjPoint(q.get_num(), q.get_den()) {}

  static ProjPoint infinity() { return ProjPoint(1, 0); }
  static ProjPoint parse(std::string_view text);

  const Integer& x() const { return x_; }
  const Integer& z() const { return z_; }
  bool is_infinity() const { return z_ == 0; }
  bool is_zero() const { return x_ == 0; }
  /// The affine coordinate; precondition: finite.
  Rational value() const;
  Integer magnitude() const;
  std::string to_string() const;

  bool operator==(const ProjPoint& other) const = default;

 private:
  Integer x_, z_;
};

/// Canonical stream order: magnitude, then infinity first, then x, then z.
bool canonical_less(const ProjPoint& a, const ProjPoint& b);

struct ProjPointLess {
  bool operator()(const ProjPoint& a, const ProjPoint& b) const {
    return canonical_less(a, b);
  }
};

/// All points of magnitude <= bound in canonical order. Restartable from any
/// index so a scan can be partitioned across workers.
class PointStream {
 public:
  explicit PointStream(std::uint64_t bound);

  std::uint64_t bound() const { return bound_; }
  /// Next point, or nullopt at the end.
  std::optional<ProjPoint> next();
  /// Position counted in emitted points.
  std::uint64_t index() const { return index_; }
  void seek(std::uint64_t index);

 private:
  void load_shell(std::uint64_t magnitude);

  std::uint64_t bound_;
  std::uint64_t magnitude_ = 0;
  std::vector<ProjPoint> shell_;
  std::size_t pos_ = 0;
  std::uint64_t index_ = 0;
};

std::vector<ProjPoint> enumerate_points(std::uint64_t bound);
/// Number of points of magnitude <= bound (without materializing them).
std::uint64_t count_points(std::uint64_t bound);

}  // namespace orbitlab
