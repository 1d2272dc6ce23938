#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitlab/arith.hpp"
#include "orbitlab/poly.hpp"

namespace orbitlab {

/// A rational map f = F/G on P^1(Q). F and G are coprime with integer
/// coefficients of joint content 1, and G has positive leading coefficient
/// (F = 1 when G = 0, i.e. the constant map to infinity).
class RationalMap {
 public:
  /// Cancels gcd(F, G) and normalizes. Throws if F = G = 0.
  static RationalMap make(const Poly& num, const Poly& den);
  static RationalMap parse(std::string_view text);
  static RationalMap polynomial(const Poly& p) { return make(p, Poly::constant(1)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  int degree() const { return degree_; }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// Image of a point via the homogeneous lift of degree max(deg F, deg G).
  ProjPoint operator()(const ProjPoint& p) const;
  /// Orbit P, f(P), ..., f^(n)(P).
  std::vector<ProjPoint> orbit(const ProjPoint& p, std::size_t n) const;

  std::string to_string() const;
  bool operator==(const RationalMap&) const = default;

 private:
  RationalMap() = default;
  Poly num_, den_;
  int degree_ = 0;
};

/// g o f
RationalMap compose(const RationalMap& g, const RationalMap& f);
RationalMap iterate(const RationalMap& f, unsigned n);
/// X -> 1 / f(1 / X)
RationalMap invert_coordinates(const RationalMap& f);

/// Order of vanishing of f(X) - f(alpha) at alpha, using the conjugation
/// L(X) = t + 1/X when alpha or f(alpha) is infinite.
int ramification_index(const RationalMap& f, const ProjPoint& alpha);

/// Ramified points, grouped: `factor` is a monic squarefree polynomial whose
/// roots all have ramification index `e`; factor == nullopt means infinity.
struct CriticalEntry {
  std::optional<Poly> factor;
  int e = 1;
};
std::vector<CriticalEntry> critical_data(const RationalMap& f);

/// nu(F G) plus one if infinity is a zero or pole.
int zero_pole_count(const RationalMap& f);

/// Totally ramified fixed point of f o f.
bool is_exceptional(const RationalMap& f, const ProjPoint& beta);

enum class FormKind {
  Monomial,            // aX^d
  InverseMonomial,     // aX^-d
  MonomialOverShift,   // aX^d/(X-b)^(d-1)
  XTimesShift,         // aX(X-b)^(d-1)
  XOverShift,          // aX/(X-b)^d
  XShiftRatio,         // aX(X-b)^(d-1)/(X-c)^(d-1)
  ShiftedPower,        // a(X-b)^d
  InverseShiftedPower, // a(X-b)^-d
  ShiftedPowerRatio,   // a(X-b)^d/(X-c)^d
};

struct SpecialForm {
  FormKind kind;
  Rational a, b = 0, c = 0;
  /// The match is for X -> f(1/X)^-1 rather than f itself.
  bool inverted = false;
};

std::string form_pattern(FormKind kind);
std::optional<SpecialForm> classify_special_form(const RationalMap& f);

/// Primes where a polynomial map has bad reduction. Throws for non-polynomials.
std::vector<Integer> bad_reduction_primes(const RationalMap& f);

}  // namespace orbitlab
