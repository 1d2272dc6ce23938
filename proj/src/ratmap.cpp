#include "orbitlab/ratmap.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

// Homogeneous evaluation of sum a_i x^i z^(d-i) for integer coefficients.
Integer eval_form(const Poly& p, int d, const Integer& x, const Integer& z) {
  Integer acc = 0;
  std::vector<Integer> zp(static_cast<std::size_t>(d) + 1);
  zp[0] = 1;
  for (int i = 1; i <= d; ++i) zp[static_cast<std::size_t>(i)] = zp[static_cast<std::size_t>(i - 1)] * z;
  for (int i = d; i >= 0; --i) {
    acc *= x;
    const Rational c = p.coeff(static_cast<std::size_t>(i));
    if (c != 0) acc += c.get_num() * zp[static_cast<std::size_t>(d - i)];
  }
  return acc;
}

std::optional<Rational> power_of_linear(const Poly& p, int k) {
  if (k < 1 || p.degree() != k) return std::nullopt;
  const Rational lc = p.leading();
  Rational b = -p.coeff(static_cast<std::size_t>(k - 1)) / (lc * k);
  if (Poly::linear(b).pow(static_cast<unsigned>(k)) * lc != p) return std::nullopt;
  return b;
}

bool is_scaled_power_of_x(const Poly& p, int k) {
  auto b = power_of_linear(p, k);
  return b && *b == 0;
}

std::optional<SpecialForm> match_special_forms(const RationalMap& f, bool inverted) {
  const Poly& F = f.num();
  const Poly& G = f.den();
  const int d = f.degree();
  const Rational lcF = F.is_zero() ? Rational(0) : F.leading();
  const Rational lcG = G.is_zero() ? Rational(0) : G.leading();
  if (F.is_zero() || G.is_zero()) return std::nullopt;

  if (F.degree() == d && G.degree() == d - 1 && is_scaled_power_of_x(F, d)) {
    if (d - 1 >= 1) {
      if (auto b = power_of_linear(G, d - 1); b && *b != 0)
        return SpecialForm{FormKind::MonomialOverShift, lcF / lcG, *b, 0, inverted};
    }
  }
  if (G.degree() == 0 && F.degree() == d && F.coeff(0) == 0) {
    Poly q = F.deflate(0, 1);
    if (auto b = power_of_linear(q, d - 1); b && *b != 0)
      return SpecialForm{FormKind::XTimesShift, lcF / lcG, *b, 0, inverted};
  }
  if (F.degree() == 1 && F.coeff(0) == 0 && G.degree() == d) {
    if (auto b = power_of_linear(G, d); b && *b != 0)
      return SpecialForm{FormKind::XOverShift, lcF / lcG, *b, 0, inverted};
  }
  if (F.degree() == d && G.degree() == d - 1 && F.coeff(0) == 0) {
    Poly q = F.deflate(0, 1);
    auto b = power_of_linear(q, d - 1);
    auto c = power_of_linear(G, d - 1);
    if (b && c && *b != 0 && *c != 0 && *b != *c)
      return SpecialForm{FormKind::XShiftRatio, lcF / lcG, *b, *c, inverted};
  }
  return std::nullopt;
}

}  // namespace

RationalMap RationalMap::make(const Poly& num, const Poly& den) {
  if (num.is_zero() && den.is_zero()) throw std::invalid_argument("rational map with F = G = 0");
  RationalMap f;
  if (den.is_zero()) {
    f.num_ = Poly::constant(1);
    f.den_ = Poly();
    f.degree_ = 0;
    return f;
  }
  if (num.is_zero()) {
    f.num_ = Poly();
    f.den_ = Poly::constant(1);
    f.degree_ = 0;
    return f;
  }
  Poly g = gcd(num, den);
  Poly F = divmod(num, g).first;
  Poly G = divmod(den, g).first;
  Integer den_lcm = 1;
  for (const auto& q : F.coeffs()) den_lcm = lcm(den_lcm, q.get_den());
  for (const auto& q : G.coeffs()) den_lcm = lcm(den_lcm, q.get_den());
  F = F * Rational(den_lcm);
  G = G * Rational(den_lcm);
  Integer content = 0;
  for (const auto& q : F.coeffs()) content = gcd(content, q.get_num());
  for (const auto& q : G.coeffs()) content = gcd(content, q.get_num());
  Rational scale(1, content);
  if (G.leading() < 0) scale = -scale;
  f.num_ = F * scale;
  f.den_ = G * scale;
  f.degree_ = std::max(f.num_.degree(), f.den_.degree());
  return f;
}

ProjPoint RationalMap::operator()(const ProjPoint& p) const {
  Integer a = eval_form(num_, degree_, p.x(), p.z());
  Integer b = eval_form(den_, degree_, p.x(), p.z());
  return ProjPoint(std::move(a), std::move(b));
}

std::vector<ProjPoint> RationalMap::orbit(const ProjPoint& p, std::size_t n) const {
  std::vector<ProjPoint> out;
  out.reserve(n + 1);
  out.push_back(p);
  for (std::size_t i = 0; i < n; ++i) out.push_back((*this)(out.back()));
  return out;
}

std::string RationalMap::to_string() const {
  if (den_ == Poly::constant(1)) return num_.to_string();
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

RationalMap compose(const RationalMap& g, const RationalMap& f) {
  const int dg = g.degree(), df = f.degree();
  // Powers of the homogeneous lift of f, dehomogenized at z = 1.
  std::vector<Poly> fpow(static_cast<std::size_t>(dg) + 1), gpow(static_cast<std::size_t>(dg) + 1);
  fpow[0] = gpow[0] = Poly::constant(1);
  for (int i = 1; i <= dg; ++i) {
    fpow[static_cast<std::size_t>(i)] = fpow[static_cast<std::size_t>(i - 1)] * f.num();
    gpow[static_cast<std::size_t>(i)] = gpow[static_cast<std::size_t>(i - 1)] * f.den();
  }
  auto lift = [&](const Poly& p) {
    Poly acc;
    for (int i = 0; i <= dg; ++i) {
      const Rational c = p.coeff(static_cast<std::size_t>(i));
      if (c != 0) acc = acc + fpow[static_cast<std::size_t>(i)] * gpow[static_cast<std::size_t>(dg - i)] * c;
    }
    return acc;
  };
  RationalMap h = RationalMap::make(lift(g.num()), lift(g.den()));
  if (h.degree() != dg * df)
    throw IntegrityError("compose: degree " + std::to_string(h.degree()) + " != " + std::to_string(dg) + "*" +
                         std::to_string(df));
  return h;
}

RationalMap iterate(const RationalMap& f, unsigned n) {
  RationalMap result = RationalMap::polynomial(Poly::x());
  for (unsigned i = 0; i < n; ++i) result = compose(f, result);
  return result;
}

RationalMap invert_coordinates(const RationalMap& f) {
  // g(x : z) = [G(z, x) : F(z, x)]: reverse coefficient order at degree d.
  const int d = f.degree();
  auto reversed = [d](const Poly& p) {
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1, Rational(0));
    for (int i = 0; i <= d; ++i) c[static_cast<std::size_t>(d - i)] = p.coeff(static_cast<std::size_t>(i));
    return Poly(std::move(c));
  };
  return RationalMap::make(reversed(f.den()), reversed(f.num()));
}

int ramification_index(const RationalMap& f, const ProjPoint& alpha) {
  if (f.degree() < 1) throw std::invalid_argument("ramification index of a constant map");
  const ProjPoint image = f(alpha);
  if (!alpha.is_infinity() && !image.is_infinity()) {
    Poly h = f.num() - f.den() * image.value();
    return h.order_at(alpha.value());
  }
  // t runs through 0, 1, -1, 2, -2, ... avoiding alpha and f(alpha).
  long t = 0;
  for (long k = 1; ProjPoint(Integer(t), Integer(1)) == alpha || ProjPoint(Integer(t), Integer(1)) == image; ++k)
    t = (k % 2 == 1) ? (k + 1) / 2 : -k / 2;
  // L(X) = (tX + 1)/X, L^-1(Y) = 1/(Y - t)
  const RationalMap L = RationalMap::make(Poly{1, t}, Poly::x());
  const RationalMap Linv = RationalMap::make(Poly{1}, Poly{-t, 1});
  const RationalMap conjugated = compose(Linv, compose(f, L));
  return ramification_index(conjugated, Linv(alpha));
}

std::vector<CriticalEntry> critical_data(const RationalMap& f) {
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("critical data requires degree >= 2");
  const Poly w = f.num().derivative() * f.den() - f.num() * f.den().derivative();
  std::vector<CriticalEntry> out;
  for (auto& entry : squarefree_decomposition(w)) out.push_back({entry.factor, entry.multiplicity + 1});
  const int at_infinity = 2 * d - 2 - w.degree();
  if (at_infinity > 0) out.push_back({std::nullopt, at_infinity + 1});
  return out;
}

int zero_pole_count(const RationalMap& f) {
  return nu(f.num() * f.den()) + (f.num().degree() != f.den().degree() ? 1 : 0);
}

bool is_exceptional(const RationalMap& f, const ProjPoint& beta) {
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("exceptional points require degree >= 2");
  const RationalMap f2 = compose(f, f);
  if (f2(beta) != beta) return false;
  return ramification_index(f2, beta) == d * d;
}

std::string form_pattern(FormKind kind) {
  switch (kind) {
    case FormKind::Monomial: return "aX^d";
    case FormKind::InverseMonomial: return "aX^-d";
    case FormKind::MonomialOverShift: return "aX^d/(X-b)^(d-1)";
    case FormKind::XTimesShift: return "aX(X-b)^(d-1)";
    case FormKind::XOverShift: return "aX/(X-b)^d";
    case FormKind::XShiftRatio: return "aX(X-b)^(d-1)/(X-c)^(d-1)";
    case FormKind::ShiftedPower: return "a(X-b)^d";
    case FormKind::InverseShiftedPower: return "a(X-b)^-d";
    case FormKind::ShiftedPowerRatio: return "a(X-b)^d/(X-c)^d";
  }
  return "?";
}

std::optional<SpecialForm> classify_special_form(const RationalMap& f) {
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("special-form classification requires degree >= 2");
  const Poly& F = f.num();
  const Poly& G = f.den();
  if (G.degree() == 0 && is_scaled_power_of_x(F, d))
    return SpecialForm{FormKind::Monomial, F.leading() / G.leading()};
  if (F.degree() == 0 && is_scaled_power_of_x(G, d))
    return SpecialForm{FormKind::InverseMonomial, F.leading() / G.leading()};
  if (auto m = match_special_forms(f, false)) return m;
  if (G.degree() == 0) {
    if (auto b = power_of_linear(F, d)) return SpecialForm{FormKind::ShiftedPower, F.leading() / G.leading(), *b};
  }
  if (F.degree() == 0) {
    if (auto b = power_of_linear(G, d))
      return SpecialForm{FormKind::InverseShiftedPower, F.leading() / G.leading(), *b};
  }
  {
    auto b = power_of_linear(F, d);
    auto c = power_of_linear(G, d);
    if (b && c && *b != *c) return SpecialForm{FormKind::ShiftedPowerRatio, F.leading() / G.leading(), *b, *c};
  }
  return match_special_forms(invert_coordinates(f), true);
}

std::vector<Integer> bad_reduction_primes(const RationalMap& f) {
  if (!f.is_polynomial()) throw std::invalid_argument("bad reduction is defined here for polynomial maps only");
  const Rational g0 = f.den().leading();
  std::set<Integer> primes;
  const Poly& F = f.num();
  for (const auto& c : F.coeffs()) {
    if (c == 0) continue;
    const Rational ci = c / g0;
    for (auto& p : prime_support(ci.get_den())) primes.insert(p);
  }
  if (!F.is_zero()) {
    const Rational lead = F.leading() / g0;
    for (auto& p : prime_support(lead.get_num())) primes.insert(p);
  }
  return {primes.begin(), primes.end()};
}

}  // namespace orbitlab
