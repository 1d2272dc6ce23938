#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "orbitlab/genus.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/ratmap.hpp"
#include "orbitlab/search.hpp"
#include "orbitlab/unit_group.hpp"

// JSON encodings shared by the C API and the tests. Objects use sorted keys,
// so dump() is deterministic.
namespace orbitlab::report {

using nlohmann::json;

/// A JSON number when it fits in 64 bits, otherwise a decimal string.
json integer(const Integer& n);
json interval(const Interval& x);
json poly(const Poly& p);

json height(const ProjPoint& p);
json step_bound(const StepBound& b);
json canonical_height(const HeightInterval& h, const StepBound& b);
json orbit_class(const OrbitClass& c);
json c2(const C2Result& r, const StepBound& b);
json critical(const RationalMap& f, const std::vector<CriticalEntry>& entries);
json special_form(const RationalMap& f, const std::optional<SpecialForm>& form);

json group(const UnitGroup& g);
json membership(const Rational& x, const UnitGroup& g, const std::optional<MembershipWitness>& w);
json saturation(const UnitGroup& g, const UnitGroup& sat);
json cosets(const std::vector<Integer>& primes, unsigned m, const std::vector<Rational>& reps);

json group_hit(const char* kind, const GroupHit& h);
json witness(const DependenceWitness& w);
json e_summary(const ESearchResult& r, const SearchConfig& cfg);
json dependence(const Rational& a, const Rational& b, const std::optional<Dependence>& d);
std::vector<json> pairwise(const PairwiseReport& r);
json zsigmondy(const ZsigmondyReport& r, const ProjPoint& alpha, bool include_m0);

json singular(const std::vector<SingularPoint>& pts);
json hypotheses(const HypothesisCheck& h);
json genus(const GenusReport& r);
json curve_class(const DependenceCurveReport& r, unsigned n);
json split(const SplitReport& r, const SplitMultilinearForm& form, const ProjPoint& alpha);

/// Newline-terminated JSON lines.
std::string lines(const std::vector<json>& records);

}  // namespace orbitlab::report
