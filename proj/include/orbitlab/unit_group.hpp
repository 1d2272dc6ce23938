#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbitlab/arith.hpp"
#include "orbitlab/lattice.hpp"

namespace orbitlab {

/// A finitely generated subgroup of Q*, stored as its generators and the
/// lattice of their (sign bit, valuations over the support primes).
class UnitGroup {
 public:
  UnitGroup() = default;
  explicit UnitGroup(std::vector<Rational> generators);
  /// R_S^*: generated by -1 and the given primes.
  static UnitGroup s_units(std::vector<Integer> primes);
  /// Parses "-2, 3/5", "[\"-2\", \"3/5\"]" or an empty string.
  static UnitGroup parse(std::string_view text);

  const std::vector<Rational>& generators() const { return generators_; }
  /// Ascending finite support primes.
  const std::vector<Integer>& support() const { return support_; }
  /// One row per generator: sign bit then valuation at each support prime.
  const IntMatrix& lattice() const { return lattice_; }

  std::string to_string() const;
  bool operator==(const UnitGroup& o) const { return generators_ == o.generators_; }

 private:
  std::vector<Rational> generators_;
  std::vector<Integer> support_;
  IntMatrix lattice_;
};

struct MembershipWitness {
  std::vector<Integer> exponents;  // one per generator
};

std::vector<Place> support_places(const UnitGroup& group);
bool is_s_unit(const Rational& x, std::span<const Integer> primes);
std::optional<MembershipWitness> in_group(const Rational& x, const UnitGroup& group);
/// Product of generators^exponents.
Rational evaluate(const UnitGroup& group, const MembershipWitness& w);
/// Smallest saturated subgroup of Q* containing the group. It always
/// contains -1; generators are -1 followed by the reduced HNF basis.
UnitGroup saturate(const UnitGroup& group);

/// Sign/valuation vector of an S-unit over `primes` (nullopt if not an S-unit).
std::optional<std::vector<Integer>> unit_vector(const Rational& x, std::span<const Integer> primes);

/// One representative per coset of R_S^* / (R_S^*)^m, ordered by exponent
/// tuple then sign.
std::vector<Rational> coset_reps_mod_powers(std::span<const Integer> primes, unsigned m);
/// The representative of x's coset (x an S-unit).
Rational coset_representative(const Rational& x, std::span<const Integer> primes, unsigned m);

/// LCM(2, ..., d^n + 1) + 1.
Integer lcm_exponent(unsigned d, unsigned n);

}  // namespace orbitlab
