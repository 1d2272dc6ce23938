#include "orbitlab/orbitlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "json.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/genus.hpp"
#include "orbitlab/heights.hpp"
#include "orbitlab/parallel.hpp"
#include "orbitlab/ratmap.hpp"
#include "orbitlab/report.hpp"
#include "orbitlab/search.hpp"
#include "orbitlab/unit_group.hpp"

struct orbitlab_map {
  orbitlab::RationalMap f;
};

struct orbitlab_group {
  orbitlab::UnitGroup g;
};

namespace {

using nlohmann::json;
using namespace orbitlab;

thread_local std::string g_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

orbitlab_status fail(orbitlab_status st, const char* msg) {
  g_error = msg;
  return st;
}

template <class Fn>
orbitlab_status guard(char** out, Fn&& fn) {
  g_error.clear();
  if (!out) return fail(ORBITLAB_E_ARGUMENT, "null output pointer");
  *out = nullptr;
  try {
    *out = dup(fn());
    return ORBITLAB_OK;
  } catch (const ResourceError& e) {
    g_error = e.what();
    try {
      *out = dup(e.partial());
    } catch (...) {
    }
    return ORBITLAB_E_RESOURCE;
  } catch (const PreconditionError& e) {
    return fail(ORBITLAB_E_PRECONDITION, e.what());
  } catch (const IntegrityError& e) {
    return fail(ORBITLAB_E_INTEGRITY, e.what());
  } catch (const json::exception& e) {
    return fail(ORBITLAB_E_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ORBITLAB_E_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(ORBITLAB_E_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(ORBITLAB_E_INTERNAL, e.what());
  } catch (...) {
    return fail(ORBITLAB_E_INTERNAL, "unknown error");
  }
}

const char* need(const char* s, const char* what) {
  if (!s) throw std::invalid_argument(std::string("missing ") + what);
  return s;
}

const RationalMap& need(const orbitlab_map* m) {
  if (!m) throw std::invalid_argument("missing map");
  return m->f;
}

const UnitGroup& need(const orbitlab_group* g) {
  if (!g) throw std::invalid_argument("missing group");
  return g->g;
}

SearchConfig config(const orbitlab_search_options* o) {
  if (!o) throw std::invalid_argument("missing search options");
  SearchConfig c;
  c.height = o->height;
  c.n_min = o->n_min;
  c.n_max = o->n_max;
  c.k_max = o->k_max;
  c.r = o->r;
  c.s = o->s;
  c.wandering_only = o->wandering_only != 0;
  c.full_s_units = o->full_s_units != 0;
  c.jobs = o->jobs ? o->jobs : default_jobs();
  return c;
}

C2Options c2_config(const orbitlab_c2_options* o) {
  C2Options c;
  if (!o) return c;
  c.max_depth = o->max_depth;
  c.point_budget = o->point_budget;
  c.refine = o->refine;
  c.jobs = o->jobs ? o->jobs : default_jobs();
  return c;
}

Integer parse_integer(const char* text, const char* what) {
  const Rational q = parse_rational(need(text, what));
  if (q.get_den() != 1) throw std::invalid_argument(std::string(what) + " must be an integer");
  return q.get_num();
}

std::vector<Integer> parse_primes(const char* text) {
  std::vector<Integer> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    Integer p = parse_integer(tok.c_str(), "prime");
    if (!is_prime(p)) throw std::invalid_argument(tok + " is not prime");
    out.push_back(p);
    tok.clear();
  };
  for (const char* c = text ? text : ""; *c; ++c) {
    if (*c == ',' || *c == ' ' || *c == '[' || *c == ']' || *c == '"') flush();
    else tok.push_back(*c);
  }
  flush();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CurveSpec curve(const char* F, const char* G, const char* c, const char* m) {
  CurveSpec s;
  s.F = parse_poly(need(F, "F"));
  s.G = parse_poly(need(G, "G"));
  s.c = c ? parse_rational(c) : Rational(1);
  s.m = parse_integer(m, "m");
  return s;
}

}  // namespace

extern "C" {

const char* orbitlab_version(void) { return "0.1.0"; }

const char* orbitlab_last_error(void) { return g_error.c_str(); }

void orbitlab_string_free(char* s) { std::free(s); }

unsigned orbitlab_default_jobs(void) { return default_jobs(); }

void orbitlab_search_options_init(orbitlab_search_options* o) {
  if (!o) return;
  *o = {};
  o->height = 1;
  o->n_min = 1;
  o->n_max = 1;
  o->k_max = 0;
  o->r = 1;
  o->s = 1;
  o->wandering_only = 1;
  o->full_s_units = 0;
  o->jobs = 1;
}

void orbitlab_c2_options_init(orbitlab_c2_options* o) {
  if (!o) return;
  const C2Options d;
  o->max_depth = d.max_depth;
  o->point_budget = d.point_budget;
  o->refine = d.refine;
  o->jobs = d.jobs;
}

orbitlab_status orbitlab_map_parse(const char* text, orbitlab_map** out) {
  g_error.clear();
  if (!out) return fail(ORBITLAB_E_ARGUMENT, "null output pointer");
  *out = nullptr;
  char* dummy = nullptr;
  orbitlab_map* made = nullptr;
  const auto st = guard(&dummy, [&] {
    made = new orbitlab_map{RationalMap::parse(need(text, "map"))};
    return std::string();
  });
  std::free(dummy);
  if (st == ORBITLAB_OK) *out = made;
  return st;
}

void orbitlab_map_free(orbitlab_map* map) { delete map; }

orbitlab_status orbitlab_map_to_string(const orbitlab_map* map, char** out) {
  return guard(out, [&] { return need(map).to_string(); });
}

int orbitlab_map_degree(const orbitlab_map* map) { return map ? map->f.degree() : -1; }

orbitlab_status orbitlab_group_parse(const char* text, orbitlab_group** out) {
  g_error.clear();
  if (!out) return fail(ORBITLAB_E_ARGUMENT, "null output pointer");
  *out = nullptr;
  char* dummy = nullptr;
  orbitlab_group* made = nullptr;
  const auto st = guard(&dummy, [&] {
    made = new orbitlab_group{UnitGroup::parse(text ? text : "")};
    return std::string();
  });
  std::free(dummy);
  if (st == ORBITLAB_OK) *out = made;
  return st;
}

void orbitlab_group_free(orbitlab_group* group) { delete group; }

orbitlab_status orbitlab_point_normalize(const char* point, char** out) {
  return guard(out, [&] { return ProjPoint::parse(need(point, "point")).to_string(); });
}

orbitlab_status orbitlab_height(const char* point, char** out) {
  return guard(out, [&] { return report::height(ProjPoint::parse(need(point, "point"))).dump(); });
}

orbitlab_status orbitlab_valuation(const char* x, const char* p, char** out) {
  return guard(out, [&] {
    const Rational q = parse_rational(need(x, "x"));
    const Integer prime = parse_integer(p, "p");
    return json{{"x", to_string(q)}, {"p", report::integer(prime)}, {"valuation", valuation(q, prime)}}.dump();
  });
}

orbitlab_status orbitlab_factor(const char* n, char** out) {
  return guard(out, [&] {
    const Integer v = parse_integer(n, "n");
    if (v == 0) throw std::domain_error("cannot factor 0");
    const Factorization fac = factor(v);
    json fs = json::array();
    for (const auto& pp : fac.factors) fs.push_back({report::integer(pp.prime), pp.exponent});
    return json{{"n", report::integer(v)}, {"sign", fac.sign}, {"factors", fs}}.dump();
  });
}

orbitlab_status orbitlab_evaluate(const orbitlab_map* map, const char* point, unsigned n, char** out) {
  return guard(out, [&] {
    const auto orbit = need(map).orbit(ProjPoint::parse(need(point, "point")), n);
    json pts = json::array();
    for (const auto& p : orbit) pts.push_back(p.to_string());
    return json{{"map", map->f.to_string()}, {"orbit", pts}}.dump();
  });
}

orbitlab_status orbitlab_c1(const orbitlab_map* map, char** out) {
  return guard(out, [&] { return report::step_bound(c1_bound(need(map))).dump(); });
}

orbitlab_status orbitlab_c2(const orbitlab_map* map, const orbitlab_c2_options* opts, char** out) {
  return guard(out, [&] {
    const StepBound b = c1_bound(need(map));
    return report::c2(c2_bound(map->f, b, c2_config(opts)), b).dump();
  });
}

orbitlab_status orbitlab_canonical_height(const orbitlab_map* map, const char* point, unsigned depth, char** out) {
  return guard(out, [&] {
    const StepBound b = c1_bound(need(map));
    const ProjPoint p = ProjPoint::parse(need(point, "point"));
    json j = report::canonical_height(canonical_height(map->f, p, depth, b), b);
    j["point"] = p.to_string();
    j["map"] = map->f.to_string();
    return j.dump();
  });
}

orbitlab_status orbitlab_preperiodic(const orbitlab_map* map, const char* point, char** out) {
  return guard(out, [&] {
    const ProjPoint p = ProjPoint::parse(need(point, "point"));
    json j = report::orbit_class(decide_preperiodic(need(map), p));
    j["point"] = p.to_string();
    j["map"] = map->f.to_string();
    return j.dump();
  });
}

orbitlab_status orbitlab_ramification(const orbitlab_map* map, const char* point, char** out) {
  return guard(out, [&] {
    const ProjPoint p = ProjPoint::parse(need(point, "point"));
    const RationalMap& f = need(map);
    return json{{"map", f.to_string()}, {"point", p.to_string()}, {"image", f(p).to_string()},
                {"e", ramification_index(f, p)}}
        .dump();
  });
}

orbitlab_status orbitlab_critical(const orbitlab_map* map, char** out) {
  return guard(out, [&] { return report::critical(need(map), critical_data(map->f)).dump(); });
}

orbitlab_status orbitlab_exceptional(const orbitlab_map* map, const char* point, char** out) {
  return guard(out, [&] {
    const ProjPoint p = ProjPoint::parse(need(point, "point"));
    return json{{"map", need(map).to_string()}, {"point", p.to_string()}, {"exceptional", is_exceptional(map->f, p)}}
        .dump();
  });
}

orbitlab_status orbitlab_classify(const orbitlab_map* map, char** out) {
  return guard(out, [&] { return report::special_form(need(map), classify_special_form(map->f)).dump(); });
}

orbitlab_status orbitlab_reduction(const orbitlab_map* map, char** out) {
  return guard(out, [&] {
    json ps = json::array();
    for (const auto& p : bad_reduction_primes(need(map))) ps.push_back(report::integer(p));
    return json{{"map", map->f.to_string()}, {"bad_primes", ps}}.dump();
  });
}

orbitlab_status orbitlab_group_describe(const orbitlab_group* group, char** out) {
  return guard(out, [&] { return report::group(need(group)).dump(); });
}

orbitlab_status orbitlab_group_check(const orbitlab_group* group, const char* x, char** out) {
  return guard(out, [&] {
    const Rational q = parse_rational(need(x, "element"));
    if (q == 0) throw std::domain_error("0 is not in any subgroup of Q*");
    return report::membership(q, need(group), in_group(q, group->g)).dump();
  });
}

orbitlab_status orbitlab_group_saturate(const orbitlab_group* group, char** out) {
  return guard(out, [&] { return report::saturation(need(group), saturate(group->g)).dump(); });
}

orbitlab_status orbitlab_group_cosets(const char* primes, unsigned m, char** out) {
  return guard(out, [&] {
    const auto ps = parse_primes(primes);
    return report::cosets(ps, m, coset_reps_mod_powers(ps, m)).dump();
  });
}

orbitlab_status orbitlab_lcm_exponent(unsigned d, unsigned n, char** out) {
  return guard(out, [&] {
    return json{{"d", d}, {"n", n}, {"m", report::integer(lcm_exponent(d, n))}}.dump();
  });
}

orbitlab_status orbitlab_search_g(const orbitlab_map* map, const orbitlab_group* group,
                                  const orbitlab_search_options* opts, char** out) {
  return guard(out, [&] {
    std::vector<json> recs;
    for (const auto& h : find_G_set(need(map), need(group), config(opts))) recs.push_back(report::group_hit("G-hit", h));
    return report::lines(recs);
  });
}

orbitlab_status orbitlab_search_f(const orbitlab_map* map, const orbitlab_group* group,
                                  const orbitlab_search_options* opts, char** out) {
  return guard(out, [&] {
    std::vector<json> recs;
    for (const auto& h : find_F_set(need(map), need(group), config(opts))) recs.push_back(report::group_hit("F-hit", h));
    return report::lines(recs);
  });
}

orbitlab_status orbitlab_search_e(const orbitlab_map* map, const orbitlab_group* group,
                                  const orbitlab_search_options* opts, char** out) {
  return guard(out, [&] {
    const SearchConfig cfg = config(opts);
    const ESearchResult r = find_E_set(need(map), need(group), cfg);
    std::vector<json> recs;
    for (const auto& w : r.witnesses) recs.push_back(report::witness(w));
    recs.push_back(report::e_summary(r, cfg));
    return report::lines(recs);
  });
}

orbitlab_status orbitlab_search_pairwise(const orbitlab_map* map, const orbitlab_group* group,
                                         const orbitlab_search_options* opts, char** out) {
  return guard(out, [&] {
    return report::lines(report::pairwise(find_pairwise_dependences(need(map), need(group), config(opts))));
  });
}

orbitlab_status orbitlab_dependence(const char* a, const char* b, const orbitlab_group* group, char** out) {
  return guard(out, [&] {
    const Rational x = parse_rational(need(a, "a")), y = parse_rational(need(b, "b"));
    return report::dependence(x, y, mult_dependent_mod_group(x, y, need(group))).dump();
  });
}

orbitlab_status orbitlab_zsigmondy(const orbitlab_map* map, const char* point, unsigned n_max, int include_m0,
                                   char** out) {
  return guard(out, [&] {
    const ProjPoint p = ProjPoint::parse(need(point, "point"));
    return report::zsigmondy(zsigmondy(need(map), p, n_max, include_m0 != 0), p, include_m0 != 0).dump();
  });
}

orbitlab_status orbitlab_genus(const char* F, const char* G, const char* c, const char* m, char** out) {
  return guard(out, [&] { return report::genus(genus(curve(F, G, c, m))).dump(); });
}

orbitlab_status orbitlab_singular_points(const char* F, const char* G, const char* m, char** out) {
  return guard(out, [&] {
    const CurveSpec s = curve(F, G, nullptr, m);
    return json{{"singular", report::singular(singular_points(s))}, {"points_over_y_infinity", nu(s.G)}}.dump();
  });
}

orbitlab_status orbitlab_superelliptic_genus(unsigned q, const char* m, char** out) {
  return guard(out, [&] {
    const Integer mm = parse_integer(m, "m");
    return json{{"q", q}, {"m", report::integer(mm)}, {"genus", report::integer(superelliptic_genus(q, mm))}}.dump();
  });
}

orbitlab_status orbitlab_curve_classify(const orbitlab_map* map, unsigned n, char** out) {
  return guard(out, [&] { return report::curve_class(classify_dependence_curve(need(map), n), n).dump(); });
}

orbitlab_status orbitlab_bound_thm19(const char* form, const orbitlab_map* map, char** out) {
  return guard(out, [&] {
    const auto F = SplitMultilinearForm::parse(need(form, "form"));
    const StepBound b = c1_bound(need(map));
    const Interval bound = thm19_height_bound(F, static_cast<unsigned>(map->f.degree()), b.c1);
    return json{{"form", F.to_string()}, {"k", F.k},           {"d", map->f.degree()}, {"h_F", F.height().upper()},
                {"c1", b.c1.upper()},    {"height_bound", bound.upper()}}
        .dump();
  });
}

orbitlab_status orbitlab_bound_n1(const char* form, const orbitlab_map* map, const orbitlab_c2_options* opts,
                                  char** out) {
  return guard(out, [&] {
    const auto F = SplitMultilinearForm::parse(need(form, "form"));
    const StepBound b = c1_bound(need(map));
    const Interval c2 = c2_bound(map->f, b, c2_config(opts)).value.lower_point();
    const auto n1 = thm19_n1_bound(F, static_cast<unsigned>(map->f.degree()), b.c1, c2);
    json j = {{"form", F.to_string()}, {"k", F.k},          {"d", map->f.degree()},
              {"h_F", F.height().upper()}, {"c1", b.c1.upper()}, {"c2", c2.lower()}};
    j["n1_bound"] = n1 ? json(*n1) : json(nullptr);
    return j.dump();
  });
}

orbitlab_status orbitlab_split_search(const char* form, const orbitlab_map* map, const char* point, unsigned n_cap,
                                      int ignore_bound, const orbitlab_c2_options* opts, char** out) {
  return guard(out, [&] {
    const auto F = SplitMultilinearForm::parse(need(form, "form"));
    const ProjPoint p = ProjPoint::parse(need(point, "point"));
    SplitOptions so;
    so.n_cap = n_cap;
    so.ignore_bound = ignore_bound != 0;
    so.c2 = c2_config(opts);
    return report::split(find_split_relations(F, need(map), p, so), F, p).dump();
  });
}

}  // extern "C"
