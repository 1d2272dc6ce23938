#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orbitlab/arith.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/interval.hpp"
#include "orbitlab/ratmap.hpp"
#include "orbitlab/unit_group.hpp"

namespace orbitlab {

/// log(|s|/|r|)/log d + 1, in floating point (reporting only).
double rho(long r, long s, unsigned d);
/// n >= rho, decided exactly as |s| d^(1-n) <= |r|.
bool meets_rho(unsigned n, long r, long s, unsigned d);

struct SearchConfig {
  std::uint64_t height = 1;  // magnitude bound H
  unsigned n_min = 1;
  unsigned n_max = 1;
  unsigned k_max = 0;
  long r = 1;
  long s = 1;
  bool wandering_only = true;
  /// Test membership in R_S^* (S = support of the group) instead of the group.
  bool full_s_units = false;
  unsigned jobs = 1;
};

/// The group that membership is tested in: the group itself, or R_S^*.
UnitGroup membership_group(const UnitGroup& group, bool full_s_units);

struct GroupHit {
  unsigned n = 0;
  ProjPoint alpha;
  Rational value;
  MembershipWitness membership;
};

/// alpha of height <= H with f(alpha) in the group.
std::vector<GroupHit> find_G_set(const RationalMap& f, const UnitGroup& group, const SearchConfig& cfg);
/// (n, alpha), n in [n_min, n_max], alpha wandering, f^(n)(alpha) in the group.
std::vector<GroupHit> find_F_set(const RationalMap& f, const UnitGroup& group, const SearchConfig& cfg);

struct DependenceWitness {
  unsigned n = 0;
  unsigned k = 0;
  ProjPoint alpha;
  long r = 0;
  long s = 0;
  Rational u;
  MembershipWitness membership;
};

struct ESearchResult {
  std::vector<DependenceWitness> witnesses;
  std::uint64_t points = 0;
  std::uint64_t preperiodic_skipped = 0;
  std::uint64_t zero_or_infinity_skipped = 0;
  std::uint64_t valuation_rejected = 0;
  unsigned n_from = 0;  // first n admitted by n >= rho
};

ESearchResult find_E_set(const RationalMap& f, const UnitGroup& group, const SearchConfig& cfg);

/// Replays a witness exactly.
bool verify_witness(const RationalMap& f, const UnitGroup& group, const DependenceWitness& w);

struct Dependence {
  long r = 0;
  long s = 0;
  Rational u;
  MembershipWitness membership;
  long gcd = 1;
};

/// Minimal (|r| + |s|) nonzero (r, s) with a^r b^-s in the group.
std::optional<Dependence> mult_dependent_mod_group(const Rational& a, const Rational& b, const UnitGroup& group);

struct PairwiseHit {
  ProjPoint alpha;
  unsigned m = 0;
  unsigned n = 0;
  Dependence dep;
};

struct PairwiseReport {
  bool squarefree = false;
  bool second_iterate_squarefree = true;
  bool zero_not_periodic = false;
  std::vector<std::string> warnings;
  std::vector<PairwiseHit> hits;
  std::uint64_t points = 0;
  std::uint64_t preperiodic_skipped = 0;
};

PairwiseReport find_pairwise_dependences(const RationalMap& f, const UnitGroup& group, const SearchConfig& cfg);

struct ZsigmondyEntry {
  unsigned n = 0;
  ProjPoint value;
  std::vector<Integer> primitive_primes;
  Integer unfactored = 1;  // primitive part left unsplit by the rho budget
  bool has_primitive_divisor = false;
};

struct ZsigmondyReport {
  std::vector<ZsigmondyEntry> entries;
  std::vector<unsigned> zsigmondy_set;
  bool truncated = false;
  std::string truncation_reason;
  bool alpha_wandering = true;
};

ZsigmondyReport zsigmondy(const RationalMap& f, const ProjPoint& alpha, unsigned n_max, bool include_m0 = true,
                          const FactorOptions& opts = {});

/// sum_i c_i prod_{j in J_i} T_j with the J_i partitioning {1..k}.
struct SplitMultilinearForm {
  struct Term {
    Rational c;
    std::vector<unsigned> vars;  // 1-based, ascending
  };
  unsigned k = 0;
  std::vector<Term> terms;

  static SplitMultilinearForm parse(std::string_view text);
  Interval height() const;
  Rational eval(const std::vector<Rational>& t) const;
  std::string to_string() const;
};

/// (2k/d^(k-1)) h(F) + (7/3) c1 + (2/9) log 2. Requires d >= 3.
Interval thm19_height_bound(const SplitMultilinearForm& form, unsigned d, const Interval& c1);
/// Largest n1 with d^n1 <= (d-1)/(d-2+d^(1-k)) (k c1 + k h(F) + log(k-1)) / c2,
/// or nullopt when the right side is below 1.
std::optional<unsigned> thm19_n1_bound(const SplitMultilinearForm& form, unsigned d, const Interval& c1,
                                       const Interval& c2);

struct SplitOptions {
  unsigned n_cap = 12;
  /// Enumerate up to n_cap even past the n1 bound.
  bool ignore_bound = false;
  C2Options c2;
};

struct SplitReport {
  std::vector<std::vector<unsigned>> tuples;  // n1 > n2 > ... > nk >= 0
  std::optional<unsigned> n1_bound;
  unsigned searched_to = 0;
  Interval c1;
  Interval c2;
  std::vector<std::string> warnings;
};

SplitReport find_split_relations(const SplitMultilinearForm& form, const RationalMap& f, const ProjPoint& alpha,
                                 const SplitOptions& opts = {});

}  // namespace orbitlab
