#pragma once

#include <mpfr.h>

#include <string>

#include "orbitlab/arith.hpp"

namespace orbitlab {

/// Working precision for every real enclosure, in bits.
inline constexpr mpfr_prec_t kRealPrecision = 128;

/// Closed real interval with MPFR endpoints. Every operation rounds the lower
/// endpoint down and the upper endpoint up, so the true value stays inside.
class Interval {
 public:
  Interval();
  explicit Interval(long value);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  static Interval exact(const Integer& n);
  static Interval exact(const Rational& q);
  /// Enclosure of log(n) for n > 0.
  static Interval log_of(const Integer& n);
  static Interval log_of(const Rational& q);
  /// Enclosure of log 2 and friends use log_of; this is the hull of a and b.
  static Interval hull(const Interval& a, const Interval& b);

  double lower() const;  // rounded down
  double upper() const;  // rounded up
  const __mpfr_struct* lo() const { return lo_; }
  const __mpfr_struct* hi() const { return hi_; }

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  /// Division by an interval that does not contain 0.
  Interval operator/(const Interval& o) const;
  Interval operator-() const;

  Interval& operator+=(const Interval& o) { return *this = *this + o; }

  /// max(lower, 0) for quantities known to be nonnegative.
  Interval clamp_nonnegative() const;
  Interval widen_to_upper() const;  // [upper, upper]
  Interval lower_point() const;     // [lower, lower]
  /// min(this, bound) on both endpoints.
  Interval cap(const Interval& bound) const;

  bool contains(const Interval& o) const;
  bool contains(const Rational& q) const;
  bool intersects(const Interval& o) const;
  bool certainly_positive() const;
  bool certainly_less(const Interval& o) const;  // hi < o.lo
  bool lower_less(const Interval& o) const;      // lo < o.lo
  Interval width() const;                         // upper-rounded width, as a point interval

  std::string to_string() const;

 private:
  void swap(Interval& other) noexcept;
  mpfr_t lo_, hi_;
};

}  // namespace orbitlab
