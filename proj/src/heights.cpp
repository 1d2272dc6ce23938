#include "orbitlab/heights.hpp"

#include <map>
#include "json.hpp"
#include <stdexcept>

#include "orbitlab/errors.hpp"
#include "orbitlab/parallel.hpp"

namespace orbitlab {
namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Solves M u = rhs for square nonsingular M over Q.
std::vector<Rational> solve_rational(Matrix m, std::vector<Rational> rhs) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular elimination system (F and G share a root)");
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
  return rhs;
}

// Cofactors A, B of degree d-1 with A F + B G = x^(2d-1) (or z^(2d-1)),
// stacked as (a_0..a_{d-1}, b_0..b_{d-1}) with index = power of x.
std::vector<Rational> elimination_cofactors(const RationalMap& f, bool x_power) {
  const int d = f.degree();
  const std::size_t n = static_cast<std::size_t>(2 * d);
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= d; ++j) {
      m[static_cast<std::size_t>(i + j)][static_cast<std::size_t>(i)] = f.num().coeff(static_cast<std::size_t>(j));
      m[static_cast<std::size_t>(i + j)][static_cast<std::size_t>(d + i)] = f.den().coeff(static_cast<std::size_t>(j));
    }
  std::vector<Rational> rhs(n, Rational(0));
  rhs[x_power ? n - 1 : 0] = 1;
  return solve_rational(std::move(m), std::move(rhs));
}

Interval integer_power(unsigned base, unsigned exponent) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, exponent);
  return Interval::exact(p);
}

Integer floor_exp(const Interval& x) {
  mpfr_t t;
  mpfr_init2(t, kRealPrecision);
  mpfr_exp(t, x.hi(), MPFR_RNDU);
  Integer out;
  mpfr_get_z(out.get_mpz_t(), t, MPFR_RNDD);
  mpfr_clear(t);
  return out;
}

}  // namespace

HeightValue weil_height(const ProjPoint& p) {
  Integer m = p.magnitude();
  Interval log = Interval::log_of(m);
  return {std::move(m), std::move(log)};
}

Interval weil_height(const Rational& c) { return weil_height(ProjPoint(c)).log; }

StepBound c1_bound(const RationalMap& f) {
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("c1_bound requires degree >= 2");
  StepBound out;
  out.degree = d;

  Integer sum_f = 0, sum_g = 0;
  for (const auto& c : f.num().coeffs()) sum_f += abs(c.get_num());
  for (const auto& c : f.den().coeffs()) sum_g += abs(c.get_num());
  out.upper_step = Interval::log_of((sum_f < sum_g ? sum_g : sum_f)).widen_to_upper();

  Rational k = 0;
  Integer den_lcm = 1;
  for (bool x_power : {true, false}) {
    Rational norm = 0;
    for (const auto& c : elimination_cofactors(f, x_power)) {
      norm += abs(c);
      den_lcm = lcm(den_lcm, c.get_den());
    }
    if (norm > k) k = norm;
  }
  out.lower_step = (Interval::log_of(k) + Interval::log_of(den_lcm)).widen_to_upper();

  Interval step = Interval::hull(out.upper_step, out.lower_step).widen_to_upper();
  out.c_step = step.clamp_nonnegative();
  out.c1 = (out.c_step / Interval(static_cast<long>(d - 1))).widen_to_upper();
  return out;
}

HeightInterval canonical_height(const RationalMap& f, const ProjPoint& alpha, unsigned depth,
                                const StepBound& bound) {
  ProjPoint p = alpha;
  for (unsigned i = 0; i < depth; ++i) p = f(p);
  const Interval h = weil_height(p).log;
  const Interval scale = integer_power(static_cast<unsigned>(f.degree()), depth);
  const Interval low = (h - bound.c1) / scale;
  const Interval high = (h + bound.c1) / scale;
  return {Interval::hull(low, high).clamp_nonnegative(), depth};
}

HeightInterval canonical_height(const RationalMap& f, const ProjPoint& alpha, unsigned depth) {
  return canonical_height(f, alpha, depth, c1_bound(f));
}

OrbitClass decide_preperiodic(const RationalMap& f, const ProjPoint& alpha, const StepBound& bound) {
  if (f.degree() < 2) throw std::invalid_argument("decide_preperiodic requires degree >= 2");
  std::map<ProjPoint, std::size_t, ProjPointLess> seen;
  ProjPoint p = alpha;
  for (std::size_t n = 0;; ++n) {
    if (bound.c1.certainly_less(weil_height(p).log)) {
      OrbitClass out;
      out.certificate = n;
      return out;
    }
    auto [it, inserted] = seen.emplace(p, n);
    if (!inserted) {
      OrbitClass out;
      out.preperiodic = true;
      out.tail = it->second;
      out.period = n - it->second;
      return out;
    }
    p = f(p);
  }
}

OrbitClass decide_preperiodic(const RationalMap& f, const ProjPoint& alpha) {
  return decide_preperiodic(f, alpha, c1_bound(f));
}

C2Result c2_bound(const RationalMap& f, const StepBound& bound, const C2Options& opts) {
  C2Result out;
  out.magnitude_bound = floor_exp(Interval(1) + bound.c1);
  if (out.magnitude_bound < 1) out.magnitude_bound = 1;
  if (!out.magnitude_bound.fits_ulong_p() ||
      count_points(out.magnitude_bound.get_ui()) > opts.point_budget) {
    nlohmann::json partial = {{"magnitude_bound", to_string(out.magnitude_bound)},
                              {"c1_upper", bound.c1.upper()},
                              {"point_budget", opts.point_budget}};
    throw ResourceError("c2_bound: points of height <= 1 + c1 exceed the point budget", partial.dump());
  }
  const std::vector<ProjPoint> points = enumerate_points(out.magnitude_bound.get_ui());
  out.points_scanned = points.size();

  struct Best {
    std::optional<Interval> value;
    std::size_t index = 0;
    std::uint64_t wandering = 0;
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<Best> best(jobs);
  parallel_for(points.size(), jobs, [&](std::size_t i, unsigned w) {
    const OrbitClass oc = decide_preperiodic(f, points[i], bound);
    if (oc.preperiodic) return;
    if (oc.certificate > opts.max_depth) {
      nlohmann::json partial = {{"point", points[i].to_string()}, {"certificate", oc.certificate}};
      throw ResourceError("c2_bound: wandering certificate deeper than the depth budget", partial.dump());
    }
    unsigned depth = static_cast<unsigned>(oc.certificate) + opts.refine;
    HeightInterval hi = canonical_height(f, points[i], depth, bound);
    while (!hi.enclosure.certainly_positive()) {
      if (++depth > opts.max_depth + opts.refine)
        throw ResourceError("c2_bound: could not certify a positive lower endpoint",
                            nlohmann::json{{"point", points[i].to_string()}}.dump());
      hi = canonical_height(f, points[i], depth, bound);
    }
    Best& b = best[w];
    ++b.wandering;
    if (!b.value || hi.enclosure.lower_less(*b.value) ||
        (!b.value->lower_less(hi.enclosure) && i < b.index)) {
      b.value = hi.enclosure;
      b.index = i;
    }
  });

  std::optional<Interval> min_value;
  std::size_t min_index = 0;
  for (const auto& b : best) {
    out.wandering_points += b.wandering;
    if (!b.value) continue;
    if (!min_value || b.value->lower_less(*min_value) ||
        (!min_value->lower_less(*b.value) && b.index < min_index)) {
      min_value = b.value;
      min_index = b.index;
    }
  }
  if (min_value) {
    out.value = min_value->lower_point().cap(Interval(1));
    out.minimizer = points[min_index];
  } else {
    out.value = Interval(1);
  }
  return out;
}

C2Result c2_bound(const RationalMap& f, const C2Options& opts) { return c2_bound(f, c1_bound(f), opts); }

}  // namespace orbitlab
