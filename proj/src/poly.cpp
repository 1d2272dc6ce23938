#include "orbitlab/poly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace orbitlab {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& q : c_) q.canonicalize();
  trim();
}

Poly::Poly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }
Poly Poly::x() { return Poly{0, 1}; }

Poly Poly::monomial(const Rational& c, unsigned k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return Poly(std::move(v));
}

Poly Poly::linear(const Rational& root) { return Poly(std::vector<Rational>{-root, Rational(1)}); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::leading() const {
  if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  Poly p;
  p.c_ = std::move(r);
  p.trim();
  return p;
}

Poly Poly::operator-() const {
  Poly p(*this);
  for (auto& q : p.c_) q = -q;
  return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  Poly p;
  p.c_ = std::move(r);
  p.trim();
  return p;
}

Poly Poly::operator*(const Rational& s) const {
  if (s == 0) return {};
  Poly p(*this);
  for (auto& q : p.c_) q *= s;
  return p;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(1), base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return Poly(std::move(r));
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::compose(const Poly& g) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + constant(*it);
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / leading());
}

int Poly::order_at(const Rational& root) const {
  if (is_zero()) throw std::domain_error("order of vanishing of the zero polynomial");
  int k = 0;
  Poly p = *this;
  while (p.eval(root) == 0) {
    p = p.deflate(root, 1);
    ++k;
  }
  return k;
}

Poly Poly::deflate(const Rational& root, int k) const {
  Poly p = *this;
  for (int i = 0; i < k; ++i) {
    // synthetic division by (X - root)
    std::vector<Rational> q(p.c_.size() > 0 ? p.c_.size() - 1 : 0);
    Rational carry = 0;
    for (std::size_t j = p.c_.size(); j-- > 0;) {
      Rational v = p.c_[j] + carry * root;
      if (j == 0) {
        if (v != 0) throw std::logic_error("deflate: not a root");
      } else {
        q[j - 1] = v;
      }
      carry = v;
    }
    p = Poly(std::move(q));
  }
  return p;
}

Poly Poly::primitive() const {
  if (is_zero()) return {};
  Integer den_lcm = 1;
  for (const auto& q : c_) den_lcm = lcm(den_lcm, q.get_den());
  Integer content = 0;
  for (const auto& q : c_) content = gcd(content, Integer(q.get_num() * (den_lcm / q.get_den())));
  Rational scale(den_lcm, content);
  scale.canonicalize();
  Poly p = *this * scale;
  if (p.leading() < 0) p = -p;
  return p;
}

bool Poly::has_integer_coeffs() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Rational& q = c_[i];
    if (q == 0) continue;
    Rational mag = abs(q);
    if (first) {
      if (q < 0) os << "-";
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    first = false;
    const bool unit = mag == 1;
    if (i == 0) {
      os << orbitlab::to_string(mag);
      continue;
    }
    if (!unit) os << orbitlab::to_string(mag) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rational> quot(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational lead_inv = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational factor = rem[static_cast<std::size_t>(i)] * lead_inv;
    quot[static_cast<std::size_t>(i - db)] = factor;
    if (factor == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= factor * b.coeff(static_cast<std::size_t>(j));
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    y = r.is_zero() ? Poly() : r.monic();
  }
  return x.monic();
}

Poly squarefree_part(const Poly& a) {
  if (a.is_zero()) throw std::domain_error("squarefree part of the zero polynomial");
  if (a.is_constant()) return Poly::constant(1);
  return divmod(a, gcd(a, a.derivative())).first.monic();
}

FactorShape squarefree_decomposition(const Poly& a) {
  if (a.is_zero()) throw std::domain_error("squarefree decomposition of the zero polynomial");
  FactorShape out;
  if (a.is_constant()) return out;
  Poly f = a.monic();
  Poly fp = f.derivative();
  Poly g = gcd(f, fp);
  Poly b = divmod(f, g).first;
  Poly c = divmod(fp, g).first;
  Poly d = c - b.derivative();
  int i = 1;
  while (!b.is_constant()) {
    Poly h = gcd(b, d);
    if (!h.is_constant()) out.push_back({h.monic(), i});
    b = divmod(b, h).first;
    c = divmod(d, h).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

int nu(const Poly& h) {
  if (h.is_zero()) throw std::domain_error("nu of the zero polynomial");
  return squarefree_part(h).degree();
}

Rational resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree(), n = b.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= a.leading();
    return r;
  }
  if (n == 0) {
    Rational r = 1;
    for (int i = 0; i < m; ++i) r *= b.leading();
    return r;
  }
  const int size = m + n;
  std::vector<std::vector<Rational>> s(static_cast<std::size_t>(size), std::vector<Rational>(static_cast<std::size_t>(size), Rational(0)));
  for (int row = 0; row < n; ++row)
    for (int j = 0; j <= m; ++j) s[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + j)] = a.coeff(static_cast<std::size_t>(m - j));
  for (int row = 0; row < m; ++row)
    for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(n + row)][static_cast<std::size_t>(row + j)] = b.coeff(static_cast<std::size_t>(n - j));
  Rational det = 1;
  for (std::size_t col = 0; col < s.size(); ++col) {
    std::size_t piv = col;
    while (piv < s.size() && s[piv][col] == 0) ++piv;
    if (piv == s.size()) return 0;
    if (piv != col) {
      std::swap(s[piv], s[col]);
      det = -det;
    }
    det *= s[col][col];
    for (std::size_t r = col + 1; r < s.size(); ++r) {
      if (s[r][col] == 0) continue;
      Rational f = s[r][col] / s[col][col];
      for (std::size_t c = col; c < s.size(); ++c) s[r][c] -= f * s[col][c];
    }
  }
  return det;
}

}  // namespace orbitlab
