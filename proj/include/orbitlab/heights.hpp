#pragma once

#include <cstdint>
#include <optional>

#include "orbitlab/arith.hpp"
#include "orbitlab/interval.hpp"
#include "orbitlab/ratmap.hpp"

namespace orbitlab {

/// Weil height of a point of P^1(Q): h = log magnitude, with magnitude the
/// exact integer max(|x|, |z|). Comparisons go through the magnitude.
struct HeightValue {
  Integer magnitude;
  Interval log;
};

HeightValue weil_height(const ProjPoint& p);
/// h(c) for a nonzero rational, i.e. the height of the point (c : 1).
Interval weil_height(const Rational& c);

/// |h(f(P)) - d h(P)| <= c_step for all P in P^1(Q); c1 = c_step / (d - 1)
/// then bounds |hhat - h|. Both are stored as upper bounds (point intervals).
struct StepBound {
  Interval upper_step;  // log of the coefficient-size constant
  Interval lower_step;  // log of the elimination constant
  Interval c_step;
  Interval c1;
  int degree = 0;
};

StepBound c1_bound(const RationalMap& f);

struct HeightInterval {
  Interval enclosure;
  unsigned depth = 0;
};

HeightInterval canonical_height(const RationalMap& f, const ProjPoint& alpha, unsigned depth, const StepBound& bound);
HeightInterval canonical_height(const RationalMap& f, const ProjPoint& alpha, unsigned depth);

/// Either an exact preperiod structure or a certificate of infinite orbit:
/// `certificate` is an n with h(f^(n)(alpha)) > c1, hence hhat > 0.
struct OrbitClass {
  bool preperiodic = false;
  std::size_t tail = 0;
  std::size_t period = 0;
  std::size_t certificate = 0;
};

OrbitClass decide_preperiodic(const RationalMap& f, const ProjPoint& alpha, const StepBound& bound);
OrbitClass decide_preperiodic(const RationalMap& f, const ProjPoint& alpha);

struct C2Options {
  unsigned max_depth = 60;
  std::uint64_t point_budget = 1'000'000;
  /// Extra iterations beyond the wandering certificate, to tighten each
  /// lower endpoint.
  unsigned refine = 2;
  unsigned jobs = 1;
};

struct C2Result {
  Interval value;  // lower endpoint is the certified bound
  Integer magnitude_bound;
  std::uint64_t points_scanned = 0;
  std::uint64_t wandering_points = 0;
  std::optional<ProjPoint> minimizer;
};

C2Result c2_bound(const RationalMap& f, const StepBound& bound, const C2Options& opts = {});
C2Result c2_bound(const RationalMap& f, const C2Options& opts = {});

}  // namespace orbitlab
