#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orbitlab/arith.hpp"

namespace orbitlab {

/// Dense univariate polynomial over Q, constant term first. The coefficient
/// vector is kept trimmed, so the zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<long> coeffs);

  static Poly constant(const Rational& c);
  static Poly x();
  /// c * X^k
  static Poly monomial(const Rational& c, unsigned k);
  /// (X - root)
  static Poly linear(const Rational& root);

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  /// Coefficient of X^i (zero beyond the degree).
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& s) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const = default;

  Poly pow(unsigned e) const;
  Poly derivative() const;
  Rational eval(const Rational& x) const;
  /// this(g(X))
  Poly compose(const Poly& g) const;
  Poly monic() const;

  /// Multiplicity of `root` as a zero (0 if not a root). Precondition: nonzero.
  int order_at(const Rational& root) const;
  /// Exact division by (X - root)^k, asserting divisibility.
  Poly deflate(const Rational& root, int k) const;

  /// lcm of denominators times gcd-free numerators: the primitive integer
  /// polynomial proportional to this one, with positive leading coefficient.
  Poly primitive() const;
  bool has_integer_coeffs() const;

  std::string to_string(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd (zero only if both are zero).
Poly gcd(const Poly& a, const Poly& b);
/// The squarefree part a / gcd(a, a'), monic.
Poly squarefree_part(const Poly& a);

/// Yun decomposition: monic squarefree pairwise coprime factors with their
/// multiplicities, ascending multiplicity. Product of factor^mult equals the
/// input up to its leading coefficient.
struct FactorShapeEntry {
  Poly factor;
  int multiplicity = 1;
};
using FactorShape = std::vector<FactorShapeEntry>;
FactorShape squarefree_decomposition(const Poly& a);

/// Number of distinct complex roots.
int nu(const Poly& h);

/// Resultant via the Sylvester determinant.
Rational resultant(const Poly& a, const Poly& b);

}  // namespace orbitlab

namespace orbitlab {

/// Parses an expression in X built from rational constants and + - * / ^ ( ).
/// The result must be a polynomial (division only by constants).
Poly parse_poly(std::string_view text);

}  // namespace orbitlab
