#include <cctype>
#include <stdexcept>
#include <string>

#include "orbitlab/poly.hpp"
#include "orbitlab/ratmap.hpp"

namespace orbitlab {
namespace {

struct Fraction {
  Poly num, den;
};

Fraction mul(const Fraction& a, const Fraction& b) { return {a.num * b.num, a.den * b.den}; }

Fraction add(const Fraction& a, const Fraction& b) {
  if (a.den == b.den) return {a.num + b.num, a.den};
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Fraction reduce(const Fraction& f) {
  Poly g = gcd(f.num, f.den);
  if (g.is_constant()) return f;
  return {divmod(f.num, g).first, divmod(f.den, g).first};
}

// Recursive descent:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary | juxtaposed unary)*
//   unary  := ('-'|'+') unary | power
//   power  := atom ('^' ['-'] integer)?
//   atom   := integer | 'X' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Fraction parse_all() {
    Fraction f = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse '" + std::string(s_) + "': " + why + " at offset " +
                                std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Fraction expr() {
    Fraction acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc = reduce(add(acc, term()));
      } else if (c == '-') {
        ++pos_;
        Fraction t = term();
        acc = reduce(add(acc, {-t.num, t.den}));
      } else {
        return acc;
      }
    }
  }

  Fraction term() {
    Fraction acc = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = reduce(mul(acc, unary()));
      } else if (c == '/') {
        ++pos_;
        Fraction d = unary();
        if (d.num.is_zero()) fail("division by zero");
        acc = reduce(mul(acc, {d.den, d.num}));
      } else if (c == '(' || c == 'X' || c == 'x' || std::isdigit(static_cast<unsigned char>(c))) {
        acc = reduce(mul(acc, unary()));
      } else {
        return acc;
      }
    }
  }

  Fraction unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      Fraction f = unary();
      return {-f.num, f.den};
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Fraction power() {
    Fraction base = atom();
    if (peek() != '^') return base;
    ++pos_;
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
    Fraction r{base.num.pow(e), base.den.pow(e)};
    if (negative) {
      if (r.num.is_zero()) fail("zero raised to a negative power");
      std::swap(r.num, r.den);
    }
    return r;
  }

  Fraction atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Fraction f = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return f;
    }
    if (c == 'X' || c == 'x') {
      ++pos_;
      return {Poly::x(), Poly::constant(1)};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Integer n(std::string(s_.substr(start, pos_ - start)), 10);
      return {Poly::constant(Rational(n)), Poly::constant(1)};
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text) {
  Fraction f = Parser(text).parse_all();
  if (f.den.degree() != 0) throw std::invalid_argument("'" + std::string(text) + "' is not a polynomial");
  return f.num * Rational(1 / f.den.leading());
}

RationalMap RationalMap::parse(std::string_view text) {
  Fraction f = Parser(text).parse_all();
  return make(f.num, f.den);
}

}  // namespace orbitlab
