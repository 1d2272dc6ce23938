#include "orbitlab/arith.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

#include "orbitlab/errors.hpp"

namespace orbitlab {

long valuation(const Integer& x, const Integer& p) {
  if (x == 0) throw std::domain_error("valuation of 0 is undefined");
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("valuation: " + to_string(p) + " is not prime");
  Integer t = abs(x);
  return static_cast<long>(strip(t, p));
}

long valuation(const Rational& x, const Integer& p) {
  if (x == 0) throw std::domain_error("valuation of 0 is undefined");
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

unsigned long strip(Integer& n, const Integer& p) {
  if (n == 0) return 0;
  return mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

std::vector<Integer> prime_support(const Integer& n) {
  if (n == 0) throw std::domain_error("prime support of 0 is undefined");
  std::vector<Integer> out;
  for (const auto& pp : factor(n).factors) out.push_back(pp.prime);
  return out;
}

std::vector<Integer> prime_support(const Rational& x) {
  if (x == 0) throw std::domain_error("prime support of 0 is undefined");
  std::vector<Integer> out = prime_support(x.get_num());
  for (auto& p : prime_support(x.get_den())) out.push_back(std::move(p));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void insert_coprime(std::vector<Integer>& base, Integer x) {
  x = abs(x);
  if (x <= 1) return;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base[i] == x) return;
    Integer g = gcd(base[i], x);
    if (g != 1) {
      Integer b = base[i];
      base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
      insert_coprime(base, g);
      insert_coprime(base, Integer(b / g));
      insert_coprime(base, Integer(x / g));
      return;
    }
  }
  base.push_back(std::move(x));
}

}  // namespace

std::vector<Integer> coprime_base(const std::vector<Integer>& values) {
  std::vector<Integer> base;
  for (const auto& v : values) insert_coprime(base, v);
  std::sort(base.begin(), base.end());
  return base;
}

std::string Place::to_string() const {
  return archimedean ? std::string("inf") : orbitlab::to_string(prime);
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto valid_int = [](std::string_view t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto to_int = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return Integer(t, 10);
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
    return Rational(to_int(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den))
    throw std::invalid_argument("cannot parse rational '" + std::string(text) + "'");
  Integer d = to_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(to_int(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& n) { return n.get_str(10); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

std::optional<std::int64_t> to_int64(const Integer& n) {
  if (!n.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(n.get_si());
}

ProjPoint::ProjPoint(Integer x, Integer z) : x_(std::move(x)), z_(std::move(z)) {
  if (x_ == 0 && z_ == 0) throw std::invalid_argument("(0:0) is not a point of P^1");
  if (z_ == 0) {
    x_ = 1;
    return;
  }
  Integer g = gcd(x_, z_);
  x_ /= g;
  z_ /= g;
  if (z_ < 0) {
    x_ = -x_;
    z_ = -z_;
  }
}

ProjPoint ProjPoint::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s == "inf" || s == "oo" || s == "infinity") return infinity();
  return ProjPoint(parse_rational(s));
}

Rational ProjPoint::value() const {
  if (is_infinity()) throw std::domain_error("infinity has no affine coordinate");
  return Rational(x_, z_);
}

Integer ProjPoint::magnitude() const {
  Integer a = abs(x_), b = abs(z_);
  return a < b ? b : a;
}

std::string ProjPoint::to_string() const {
  if (is_infinity()) return "inf";
  return orbitlab::to_string(value());
}

bool canonical_less(const ProjPoint& a, const ProjPoint& b) {
  const Integer ma = a.magnitude(), mb = b.magnitude();
  if (ma != mb) return ma < mb;
  if (a.is_infinity() != b.is_infinity()) return a.is_infinity();
  if (a.x() != b.x()) return a.x() < b.x();
  return a.z() < b.z();
}

namespace {

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::uint64_t shell_size(std::uint64_t m) { return 4 * euler_phi(m); }

}  // namespace

PointStream::PointStream(std::uint64_t bound) : bound_(bound) {
  if (bound < 1) throw std::invalid_argument("point enumeration bound must be >= 1");
}

void PointStream::load_shell(std::uint64_t m) {
  shell_.clear();
  pos_ = 0;
  magnitude_ = m;
  if (m == 1) {
    shell_ = {ProjPoint::infinity(), ProjPoint(-1, 1), ProjPoint(0, 1), ProjPoint(1, 1)};
    return;
  }
  const std::int64_t mm = static_cast<std::int64_t>(m);
  for (std::int64_t x = -mm + 1; x < mm; ++x)
    if (std::gcd(x < 0 ? -x : x, mm) == 1) shell_.emplace_back(Integer(static_cast<long>(x)), Integer(static_cast<long>(mm)));
  for (std::int64_t z = 1; z < mm; ++z)
    if (std::gcd(z, mm) == 1) {
      shell_.emplace_back(Integer(static_cast<long>(mm)), Integer(static_cast<long>(z)));
      shell_.emplace_back(Integer(static_cast<long>(-mm)), Integer(static_cast<long>(z)));
    }
  std::sort(shell_.begin(), shell_.end(), canonical_less);
}

std::optional<ProjPoint> PointStream::next() {
  while (pos_ >= shell_.size()) {
    if (magnitude_ >= bound_) return std::nullopt;
    load_shell(magnitude_ + 1);
  }
  ++index_;
  return shell_[pos_++];
}

void PointStream::seek(std::uint64_t index) {
  std::uint64_t skipped = 0, m = 1;
  while (m <= bound_ && skipped + shell_size(m) <= index) {
    skipped += shell_size(m);
    ++m;
  }
  if (m > bound_) {
    magnitude_ = bound_;
    shell_.clear();
    pos_ = 0;
    index_ = skipped;
    return;
  }
  load_shell(m);
  pos_ = static_cast<std::size_t>(index - skipped);
  index_ = index;
}

std::vector<ProjPoint> enumerate_points(std::uint64_t bound) {
  PointStream stream(bound);
  std::vector<ProjPoint> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count_points(bound), 1u << 24)));
  while (auto p = stream.next()) out.push_back(std::move(*p));
  return out;
}

std::uint64_t count_points(std::uint64_t bound) {
  std::uint64_t total = 0;
  for (std::uint64_t m = 1; m <= bound; ++m) total += shell_size(m);
  return total;
}

}  // namespace orbitlab
