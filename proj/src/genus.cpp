#include "orbitlab/genus.hpp"

#include <algorithm>
#include <stdexcept>

#include "orbitlab/errors.hpp"
#include "orbitlab/unit_group.hpp"

namespace orbitlab {

namespace {

std::string root_label(const Poly& factor, int index) {
  if (factor.degree() == 1) return to_string(Rational(-factor.coeff(0) / factor.coeff(1)));
  return "root " + std::to_string(index) + " of " + factor.to_string();
}

}  // namespace

void CurveSpec::validate() const {
  if (F.is_zero() || G.is_zero()) throw std::invalid_argument("F and G must be nonzero");
  if (F.is_constant() && G.is_constant()) throw std::invalid_argument("F and G are both constant");
  if (gcd(F, G).degree() > 0) throw std::invalid_argument("F and G must be coprime");
  if (c == 0) throw std::invalid_argument("c must be nonzero");
  if (m < 2) throw std::invalid_argument("m must be >= 2");
}

HypothesisCheck check_hypotheses(const CurveSpec& spec) {
  HypothesisCheck h;
  const int dF = spec.F.degree(), dG = spec.G.degree();
  h.m_large = spec.m >= dF + 2;
  if (!h.m_large) h.reasons.push_back("m = " + to_string(spec.m) + " < d_F + 2 = " + std::to_string(dF + 2));
  h.gcd = true;
  for (int k = 2; k <= std::max(dF, dG); ++k) {
    const unsigned long g = mpz_gcd_ui(nullptr, spec.m.get_mpz_t(), static_cast<unsigned long>(k));
    if (g != 1) {
      h.gcd = false;
      h.reasons.push_back("gcd(m, " + std::to_string(k) + ") = " + std::to_string(g));
    }
  }
  return h;
}

std::vector<SingularPoint> singular_points(const CurveSpec& spec) {
  spec.validate();
  if (spec.m < spec.F.degree() + 2) throw PreconditionError("singular_points needs m >= d_F + 2");
  std::vector<SingularPoint> out{{"[1,0,0]", std::nullopt, 0}};
  for (const auto& entry : squarefree_decomposition(spec.F)) {
    if (entry.multiplicity < 2) continue;
    if (entry.factor.degree() == 1) {
      out.push_back({"[" + root_label(entry.factor, 1) + ",0,1]", entry.factor, entry.multiplicity});
    } else {
      out.push_back({"[alpha,0,1] for alpha a root of " + entry.factor.to_string(), entry.factor, entry.multiplicity});
    }
  }
  if (spec.G.degree() != 1) out.push_back({"[0,1,0]", std::nullopt, 0});
  return out;
}

GenusReport genus(const CurveSpec& spec) {
  spec.validate();
  GenusReport r;
  r.hypotheses = check_hypotheses(spec);
  if (!r.hypotheses.ok()) {
    std::string msg = "genus hypotheses fail:";
    for (const auto& s : r.hypotheses.reasons) msg += " " + s + ";";
    throw PreconditionError(msg);
  }
  r.nu = nu(spec.F * spec.G);
  r.degrees_differ = spec.F.degree() != spec.G.degree();
  const int t = r.nu - (r.degrees_differ ? 1 : 2);
  const Integer twice = Integer(t) * (spec.m - 1);
  if (twice < 0 || twice % 2 != 0) throw IntegrityError("genus formula produced " + to_string(twice) + "/2");
  r.genus = twice / 2;
  r.singular = singular_points(spec);
  r.points_over_y_infinity = nu(spec.G);
  return r;
}

Integer superelliptic_genus(unsigned q, const Integer& m) {
  if (q < 1) throw std::invalid_argument("q must be >= 1");
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  const Integer g = mpz_gcd_ui(nullptr, m.get_mpz_t(), q);
  const Integer twice = (m - 1) * (q - 1) - g + 1;
  if (twice < 0 || twice % 2 != 0) throw IntegrityError("superelliptic genus is not an integer");
  return twice / 2;
}

Integer superelliptic_genus(const Poly& F, const Integer& m) {
  if (F.is_zero() || F.degree() < 1) throw std::invalid_argument("F must have degree >= 1");
  if (nu(F) != F.degree()) throw std::invalid_argument("F must be squarefree");
  return superelliptic_genus(static_cast<unsigned>(F.degree()), m);
}

Integer riemann_hurwitz_genus(const Integer& m, const std::vector<Fiber>& fibers) {
  if (m < 1) throw std::invalid_argument("cover degree must be >= 1");
  Integer twice = 2 * (1 - m);
  for (const auto& f : fibers) {
    if (f.size < 1 || f.size > m) throw std::invalid_argument("fiber size out of range at " + f.point);
    twice += m - f.size;
  }
  if (twice < 0 || twice % 2 != 0)
    throw IntegrityError("Riemann-Hurwitz gives 2g = " + to_string(twice));
  return twice / 2;
}

std::vector<Fiber> branch_fibers(const CurveSpec& spec) {
  spec.validate();
  std::vector<Fiber> out;
  auto add_roots = [&](const Poly& p) {
    for (const auto& entry : squarefree_decomposition(p)) {
      const Integer size = mpz_gcd_ui(nullptr, spec.m.get_mpz_t(), static_cast<unsigned long>(entry.multiplicity));
      for (int i = 1; i <= entry.factor.degree(); ++i) out.push_back({root_label(entry.factor, i), size});
    }
  };
  add_roots(spec.F);
  add_roots(spec.G);
  const int diff = std::abs(spec.F.degree() - spec.G.degree());
  const Integer size = diff == 0 ? spec.m : Integer(mpz_gcd_ui(nullptr, spec.m.get_mpz_t(), diff));
  out.push_back({"inf", size});
  return out;
}

DependenceCurveReport classify_dependence_curve(const RationalMap& f, unsigned n) {
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("map degree must be >= 2");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  Integer D;
  mpz_ui_pow_ui(D.get_mpz_t(), static_cast<unsigned long>(d), n);
  if (D > 4096) throw ResourceError("d^n = " + to_string(D) + " exceeds the degree guard 4096");

  DependenceCurveReport r;
  const RationalMap fn = iterate(f, n);
  const Poly num = fn.num();
  r.e = num.is_zero() ? 0 : num.order_at(0);
  r.Fn = r.e > 0 ? num.deflate(0, r.e) : num;
  r.Gn = fn.den();
  r.kind = r.e == 0 ? 'A' : (r.e == 1 ? 'B' : 'C');
  r.m = lcm_exponent(static_cast<unsigned>(d), n);
  r.pole_at_zero = r.Gn.eval(0) == 0;

  const Poly X = Poly::x();
  switch (r.kind) {
    case 'A': r.curve = {r.Fn, X * r.Gn, 1, r.m}; break;
    case 'B': r.curve = {r.Fn, r.Gn, 1, r.m}; break;
    default: r.curve = {X.pow(static_cast<unsigned>(r.e - 1)) * r.Fn, r.Gn, 1, r.m}; break;
  }
  r.nu = nu(r.Fn * r.Gn);
  const int dF = r.Fn.degree(), dG = r.Gn.degree();
  bool second = false;
  switch (r.kind) {
    case 'A':
      second = dF == dG + 1;
      r.displayed_ratio = second ? r.nu - 1 : r.nu;
      break;
    case 'B':
      second = dF == dG;
      r.displayed_ratio = second ? r.nu - 2 : r.nu - 1;
      break;
    default:
      second = dF + r.e - 1 == dG;
      r.displayed_ratio = second ? r.nu - 1 : r.nu;
      break;
  }
  r.genus = genus(r.curve).genus;

  if (r.displayed_ratio == 0) {
    r.row = std::string(1, r.kind) + (second ? "2" : "1");
    const std::string& row = *r.row;
    if (row == "A1") r.conclusion = "impossible: f^(n) would be constant";
    else if (row == "A2") r.conclusion = "impossible: forces d^n = 1";
    else if (row == "B1") r.conclusion = "f^(n)(X) = aX(X-b)^(d^n-1) or aX/(X-b)^(d^n); then n = 1";
    else if (row == "B2") r.conclusion = "f^(n)(X) = aX(X-b)^(d^n-1)/(X-c)^(d^n-1); then n = 1";
    else if (row == "C1") r.conclusion = "f^(n)(X) = cX^e; f(X) = aX^(+-d)";
    else r.conclusion = "f^(n)(X) = aX^(d^n)/(X-b)^(d^n-1); then n = 1";
  } else {
    r.conclusion = r.genus > 0 ? "genus > 0" : "genus 0 with G_n(0) = 0, outside the displayed cases";
  }
  return r;
}

}  // namespace orbitlab
