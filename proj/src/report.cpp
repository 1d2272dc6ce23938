#include "orbitlab/report.hpp"

namespace orbitlab::report {

json integer(const Integer& n) {
  if (auto v = to_int64(n)) return *v;
  return to_string(n);
}

json interval(const Interval& x) { return {{"lo", x.lower()}, {"hi", x.upper()}}; }

json poly(const Poly& p) { return p.to_string(); }

namespace {

json rationals(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

json integers(const std::vector<Integer>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(integer(x));
  return out;
}

}  // namespace

json height(const ProjPoint& p) {
  const HeightValue h = weil_height(p);
  return {{"point", p.to_string()},
          {"magnitude", integer(h.magnitude)},
          {"h", h.magnitude == 1 ? std::string("0") : "log " + to_string(h.magnitude)},
          {"h_interval", interval(h.log)}};
}

json step_bound(const StepBound& b) {
  return {{"degree", b.degree},
          {"upper_step", b.upper_step.upper()},
          {"lower_step", b.lower_step.upper()},
          {"c_step", b.c_step.upper()},
          {"c1", b.c1.upper()}};
}

json canonical_height(const HeightInterval& h, const StepBound& b) {
  return {{"depth", h.depth}, {"enclosure", interval(h.enclosure)}, {"c1", b.c1.upper()}};
}

json orbit_class(const OrbitClass& c) {
  if (c.preperiodic)
    return {{"class", "preperiodic"}, {"tail", c.tail}, {"period", c.period}, {"periodic", c.tail == 0}};
  return {{"class", "wandering"}, {"certificate", c.certificate}};
}

json c2(const C2Result& r, const StepBound& b) {
  json out = {{"c2", r.value.lower()},
              {"c2_interval", interval(r.value)},
              {"c1", b.c1.upper()},
              {"magnitude_bound", integer(r.magnitude_bound)},
              {"points_scanned", r.points_scanned},
              {"wandering_points", r.wandering_points}};
  out["minimizer"] = r.minimizer ? json(r.minimizer->to_string()) : json(nullptr);
  return out;
}

json critical(const RationalMap& f, const std::vector<CriticalEntry>& entries) {
  json list = json::array();
  int total = 0;
  for (const auto& e : entries) {
    const int deg = e.factor ? e.factor->degree() : 1;
    total += deg * (e.e - 1);
    list.push_back({{"point", e.factor ? json(e.factor->to_string()) : json("inf")}, {"e", e.e}, {"count", deg}});
  }
  return {{"map", f.to_string()}, {"degree", f.degree()}, {"critical", list}, {"total_ramification", total}};
}

json special_form(const RationalMap& f, const std::optional<SpecialForm>& form) {
  json out = {{"map", f.to_string()}, {"zero_pole_count", zero_pole_count(f)}};
  if (!form) {
    out["form"] = nullptr;
    return out;
  }
  out["form"] = form_pattern(form->kind);
  out["a"] = to_string(form->a);
  out["b"] = to_string(form->b);
  out["c"] = to_string(form->c);
  out["inverted"] = form->inverted;
  return out;
}

json group(const UnitGroup& g) {
  json places = json::array();
  for (const auto& p : support_places(g)) places.push_back(p.to_string());
  return {{"generators", rationals(g.generators())}, {"support", places}};
}

json membership(const Rational& x, const UnitGroup& g, const std::optional<MembershipWitness>& w) {
  json out = group(g);
  out["element"] = to_string(x);
  out["member"] = w.has_value();
  out["exponents"] = w ? integers(w->exponents) : json(nullptr);
  return out;
}

json saturation(const UnitGroup& g, const UnitGroup& sat) {
  return {{"group", rationals(g.generators())}, {"saturation", rationals(sat.generators())}};
}

json cosets(const std::vector<Integer>& primes, unsigned m, const std::vector<Rational>& reps) {
  return {{"primes", integers(primes)}, {"m", m}, {"count", reps.size()}, {"representatives", rationals(reps)}};
}

json group_hit(const char* kind, const GroupHit& h) {
  return {{"kind", kind},
          {"n", h.n},
          {"alpha", h.alpha.to_string()},
          {"value", to_string(h.value)},
          {"exponents", integers(h.membership.exponents)}};
}

json witness(const DependenceWitness& w) {
  return {{"kind", "E-witness"}, {"n", w.n},       {"k", w.k},
          {"alpha", w.alpha.to_string()}, {"r", w.r}, {"s", w.s},
          {"u", to_string(w.u)},          {"exponents", integers(w.membership.exponents)}};
}

json e_summary(const ESearchResult& r, const SearchConfig& cfg) {
  json out = {{"kind", "E-summary"},
              {"witnesses", r.witnesses.size()},
              {"points", r.points},
              {"preperiodic_skipped", r.preperiodic_skipped},
              {"zero_or_infinity_skipped", r.zero_or_infinity_skipped},
              {"valuation_rejected", r.valuation_rejected},
              {"n_from", r.n_from}};
  out["r"] = cfg.r;
  out["s"] = cfg.s;
  return out;
}

json dependence(const Rational& a, const Rational& b, const std::optional<Dependence>& d) {
  json out = {{"a", to_string(a)}, {"b", to_string(b)}, {"dependent", d.has_value()}};
  if (d) {
    out["r"] = d->r;
    out["s"] = d->s;
    out["u"] = to_string(d->u);
    out["gcd"] = d->gcd;
    out["exponents"] = integers(d->membership.exponents);
  }
  return out;
}

std::vector<json> pairwise(const PairwiseReport& r) {
  std::vector<json> out;
  for (const auto& h : r.hits) {
    out.push_back({{"kind", "pairwise-witness"},
                   {"alpha", h.alpha.to_string()},
                   {"m", h.m},
                   {"n", h.n},
                   {"r", h.dep.r},
                   {"s", h.dep.s},
                   {"u", to_string(h.dep.u)},
                   {"gcd", h.dep.gcd},
                   {"one_sided", h.dep.r == 0 || h.dep.s == 0},
                   {"exponents", integers(h.dep.membership.exponents)}});
  }
  out.push_back({{"kind", "pairwise-summary"},
                 {"hypotheses",
                  {{"squarefree", r.squarefree},
                   {"second_iterate_squarefree", r.second_iterate_squarefree},
                   {"zero_not_periodic", r.zero_not_periodic}}},
                 {"warnings", r.warnings},
                 {"witnesses", r.hits.size()},
                 {"points", r.points},
                 {"preperiodic_skipped", r.preperiodic_skipped}});
  return out;
}

json zsigmondy(const ZsigmondyReport& r, const ProjPoint& alpha, bool include_m0) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json item = {{"n", e.n},
                 {"value", e.value.to_string()},
                 {"primitive_primes", integers(e.primitive_primes)},
                 {"has_primitive_divisor", e.has_primitive_divisor}};
    item["unfactored"] = e.unfactored == 1 ? json(nullptr) : json(to_string(e.unfactored));
    entries.push_back(std::move(item));
  }
  json out = {{"alpha", alpha.to_string()},
              {"include_m0", include_m0},
              {"alpha_wandering", r.alpha_wandering},
              {"entries", entries},
              {"zsigmondy_set", r.zsigmondy_set},
              {"truncated", r.truncated}};
  if (r.truncated) out["truncation_reason"] = r.truncation_reason;
  return out;
}

json singular(const std::vector<SingularPoint>& pts) {
  json out = json::array();
  for (const auto& p : pts) {
    json item = {{"point", p.label}};
    if (p.factor) {
      item["factor"] = p.factor->to_string();
      item["multiplicity"] = p.multiplicity;
    }
    out.push_back(std::move(item));
  }
  return out;
}

json hypotheses(const HypothesisCheck& h) {
  return {{"m_large", h.m_large}, {"gcd", h.gcd}, {"reasons", h.reasons}};
}

json genus(const GenusReport& r) {
  return {{"genus", integer(r.genus)},
          {"nu", r.nu},
          {"case", r.degrees_differ ? "dF≠dG" : "dF=dG"},
          {"singular", singular(r.singular)},
          {"points_over_y_infinity", r.points_over_y_infinity},
          {"hypotheses", hypotheses(r.hypotheses)}};
}

json curve_class(const DependenceCurveReport& r, unsigned n) {
  json out = {{"n", n},
              {"case", std::string(1, r.kind)},
              {"e", r.e},
              {"F_n", r.Fn.to_string()},
              {"G_n", r.Gn.to_string()},
              {"curve_F", r.curve.F.to_string()},
              {"curve_G", r.curve.G.to_string()},
              {"m", integer(r.m)},
              {"nu", r.nu},
              {"displayed_ratio", r.displayed_ratio},
              {"genus", integer(r.genus)},
              {"pole_at_zero", r.pole_at_zero},
              {"conclusion", r.conclusion}};
  out["row"] = r.row ? json(*r.row) : json(nullptr);
  return out;
}

json split(const SplitReport& r, const SplitMultilinearForm& form, const ProjPoint& alpha) {
  json out = {{"form", form.to_string()},
              {"k", form.k},
              {"alpha", alpha.to_string()},
              {"tuples", r.tuples},
              {"searched_to", r.searched_to},
              {"c1", r.c1.upper()},
              {"c2", r.c2.lower()},
              {"warnings", r.warnings}};
  out["n1_bound"] = r.n1_bound ? json(*r.n1_bound) : json(nullptr);
  return out;
}

std::string lines(const std::vector<json>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

}  // namespace orbitlab::report
