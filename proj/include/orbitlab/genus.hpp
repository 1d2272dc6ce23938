#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitlab/arith.hpp"
#include "orbitlab/poly.hpp"
#include "orbitlab/ratmap.hpp"

namespace orbitlab {

/// The affine curve F(X) = c G(X) Y^m.
struct CurveSpec {
  Poly F;
  Poly G;
  Rational c = 1;
  Integer m = 2;

  /// Throws std::invalid_argument unless F, G are nonzero, coprime, not both
  /// constant, c != 0 and m >= 2.
  void validate() const;
};

struct HypothesisCheck {
  bool m_large = false;  // m >= d_F + 2
  bool gcd = false;      // gcd(m, k) = 1 for 2 <= k <= max(d_F, d_G)
  std::vector<std::string> reasons;
  bool ok() const { return m_large && gcd; }
};

HypothesisCheck check_hypotheses(const CurveSpec& spec);

/// A singular point of the projective closure in P^2 with coordinates [X:Y:Z].
/// For [alpha:0:1] the point is given by its squarefree factor and the
/// multiplicity of alpha as a root of F.
struct SingularPoint {
  std::string label;
  std::optional<Poly> factor;
  int multiplicity = 0;
};

std::vector<SingularPoint> singular_points(const CurveSpec& spec);

struct GenusReport {
  HypothesisCheck hypotheses;
  int nu = 0;  // nu(F G)
  bool degrees_differ = false;
  Integer genus;
  std::vector<SingularPoint> singular;
  int points_over_y_infinity = 0;  // nu(G)
};

/// Throws PreconditionError when the hypotheses fail.
GenusReport genus(const CurveSpec& spec);

Integer superelliptic_genus(unsigned q, const Integer& m);
/// F must be squarefree.
Integer superelliptic_genus(const Poly& F, const Integer& m);

struct Fiber {
  std::string point;
  Integer size;
};

/// 2g = 2(1 - m) + sum (m - size). Throws IntegrityError if that is odd or negative.
Integer riemann_hurwitz_genus(const Integer& m, const std::vector<Fiber>& fibers);
/// Fibers of (X, Y) -> X over the branch candidates: roots of F and G and infinity.
std::vector<Fiber> branch_fibers(const CurveSpec& spec);

struct DependenceCurveReport {
  char kind = 'A';  // case A, B or C
  int e = 0;        // order of vanishing of f^(n) at 0
  Poly Fn;
  Poly Gn;
  Integer m;
  CurveSpec curve;
  int nu = 0;  // nu(F_n G_n)
  /// 2 genus / (m - 1) as displayed for the case (assumes G_n(0) != 0 in case A).
  int displayed_ratio = 0;
  /// Genus of the curve itself via the genus formula.
  Integer genus;
  bool pole_at_zero = false;
  std::optional<std::string> row;
  std::string conclusion;
};

/// Throws ResourceError when d^n > 4096.
DependenceCurveReport classify_dependence_curve(const RationalMap& f, unsigned n);

}  // namespace orbitlab
