#include "orbitlab/search.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "orbitlab/errors.hpp"
#include "orbitlab/lattice.hpp"
#include "orbitlab/parallel.hpp"
#include "orbitlab/poly.hpp"

namespace orbitlab {

namespace {

constexpr std::uint64_t kChunk = 512;

Rational rpow(const Rational& x, long e) {
  const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), mag);
  Rational p(num, den);
  p.canonicalize();
  if (e >= 0) return p;
  if (p == 0) throw std::domain_error("negative power of 0");
  return 1 / p;
}

long to_long(const Integer& n, const char* what) {
  if (!n.fits_slong_p()) throw std::domain_error(std::string(what) + " does not fit in 64 bits");
  return n.get_si();
}

// Runs fn(point, chunk_state) over all points of magnitude <= H in chunks and
// returns the per-chunk states in stream order.
template <class State, class Fn>
std::vector<State> scan_points(std::uint64_t height, unsigned jobs, Fn&& fn) {
  if (height < 1) throw std::invalid_argument("height bound must be >= 1");
  const std::uint64_t total = count_points(height);
  const std::size_t chunks = static_cast<std::size_t>((total + kChunk - 1) / kChunk);
  std::vector<State> states(chunks);
  parallel_for(chunks, jobs, [&](std::size_t i, unsigned) {
    PointStream stream(height);
    stream.seek(i * kChunk);
    for (std::uint64_t j = 0; j < kChunk; ++j) {
      auto p = stream.next();
      if (!p) break;
      fn(*p, states[i]);
    }
  });
  return states;
}

bool is_wandering(const RationalMap& f, const ProjPoint& alpha, const StepBound& bound) {
  return !decide_preperiodic(f, alpha, bound).preperiodic;
}

}  // namespace

UnitGroup membership_group(const UnitGroup& group, bool full_s_units) {
  return full_s_units ? UnitGroup::s_units(group.support()) : group;
}

double rho(long r, long s, unsigned d) {
  if (r == 0 || s == 0) throw std::invalid_argument("rho needs r and s nonzero");
  if (d < 2) throw std::invalid_argument("rho needs d >= 2");
  return std::log(std::fabs(static_cast<double>(s)) / std::fabs(static_cast<double>(r))) / std::log(double(d)) + 1.0;
}

bool meets_rho(unsigned n, long r, long s, unsigned d) {
  if (r == 0 || s == 0) throw std::invalid_argument("rho needs r and s nonzero");
  Integer lhs = std::abs(s), rhs = std::abs(r);
  Integer dp;
  if (n >= 1) {
    mpz_ui_pow_ui(dp.get_mpz_t(), d, n - 1);
    rhs *= dp;
  } else {
    lhs *= d;
  }
  return lhs <= rhs;
}

std::vector<GroupHit> find_G_set(const RationalMap& f, const UnitGroup& group, const SearchConfig& cfg) {
  const UnitGroup target = membership_group(group, cfg.full_s_units);
  auto states = scan_points<std::vector<GroupHit>>(cfg.height, cfg.jobs, [&](const ProjPoint& a, auto& out) {
    if (a.is_infinity()) return;
    const ProjPoint v = f(a);
    if (v.is_infinity() || v.is_zero()) return;
    if (auto w = in_group(v.value(), target)) out.push_back({1, a, v.value(), std::move(*w)});
  });
  std::vector<GroupHit> hits;
  for (auto& s : states) std::move(s.begin(), s.end(), std::back_inserter(hits));
  return hits;
}

std::vector<GroupHit> find_F_set(const RationalMap& f, const UnitGroup& group, const SearchConfig& cfg) {
  if (cfg.n_max < cfg.n_min) throw std::invalid_argument("empty n range");
  const UnitGroup target = membership_group(group, cfg.full_s_units);
  const StepBound bound = c1_bound(f);
  auto states = scan_points<std::vector<GroupHit>>(cfg.height, cfg.jobs, [&](const ProjPoint& a, auto& out) {
    if (!is_wandering(f, a, bound)) return;
    const auto orbit = f.orbit(a, cfg.n_max);
    for (unsigned n = cfg.n_min; n <= cfg.n_max; ++n) {
      const ProjPoint& v = orbit[n];
      if (v.is_infinity() || v.is_zero()) continue;
      if (auto w = in_group(v.value(), target)) out.push_back({n, a, v.value(), std::move(*w)});
    }
  });
  std::vector<GroupHit> hits;
  for (auto& s : states) std::move(s.begin(), s.end(), std::back_inserter(hits));
  return hits;
}

ESearchResult find_E_set(const RationalMap& f, const UnitGroup& group, const SearchConfig& cfg) {
  if (cfg.r == 0 && cfg.s == 0) throw std::invalid_argument("(r, s) = (0, 0) is excluded");
  if (cfg.n_max < cfg.n_min) throw std::invalid_argument("empty n range");
  const unsigned d = static_cast<unsigned>(f.degree());
  if (d < 2) throw std::invalid_argument("map degree must be >= 2");
  unsigned n_from = std::max(cfg.n_min, 1u);
  if (cfg.r != 0 && cfg.s != 0)
    while (n_from <= cfg.n_max && !meets_rho(n_from, cfg.r, cfg.s, d)) ++n_from;

  const UnitGroup target = membership_group(group, cfg.full_s_units);
  const StepBound bound = c1_bound(f);
  struct State {
    std::vector<DependenceWitness> w;
    std::uint64_t points = 0, preper = 0, zero_inf = 0, rejected = 0;
  };
  auto states = scan_points<State>(cfg.height, cfg.jobs, [&](const ProjPoint& a, State& st) {
    ++st.points;
    if (cfg.wandering_only && !is_wandering(f, a, bound)) {
      ++st.preper;
      return;
    }
    if (n_from > cfg.n_max) return;
    const auto orbit = f.orbit(a, cfg.n_max + cfg.k_max);
    for (unsigned n = n_from; n <= cfg.n_max; ++n) {
      for (unsigned k = 0; k <= cfg.k_max; ++k) {
        const ProjPoint& top = orbit[n + k];
        const ProjPoint& low = orbit[k];
        if (top.is_infinity() || top.is_zero() || low.is_infinity() || low.is_zero()) {
          ++st.zero_inf;
          continue;
        }
        const Rational u = rpow(top.value(), cfg.r) / rpow(low.value(), cfg.s);
        if (!unit_vector(u, target.support())) {
          ++st.rejected;
          continue;
        }
        if (auto m = in_group(u, target)) st.w.push_back({n, k, a, cfg.r, cfg.s, u, std::move(*m)});
      }
    }
  });
  ESearchResult out;
  out.n_from = n_from;
  for (auto& st : states) {
    std::move(st.w.begin(), st.w.end(), std::back_inserter(out.witnesses));
    out.points += st.points;
    out.preperiodic_skipped += st.preper;
    out.zero_or_infinity_skipped += st.zero_inf;
    out.valuation_rejected += st.rejected;
  }
  return out;
}

bool verify_witness(const RationalMap& f, const UnitGroup& group, const DependenceWitness& w) {
  if (w.r == 0 && w.s == 0) return false;
  const auto orbit = f.orbit(w.alpha, w.n + w.k);
  const ProjPoint& top = orbit[w.n + w.k];
  const ProjPoint& low = orbit[w.k];
  if (top.is_infinity() || top.is_zero() || low.is_infinity() || low.is_zero()) return false;
  if (rpow(top.value(), w.r) != w.u * rpow(low.value(), w.s)) return false;
  if (w.membership.exponents.size() != group.generators().size()) return false;
  return evaluate(group, w.membership) == w.u;
}

std::optional<Dependence> mult_dependent_mod_group(const Rational& a, const Rational& b, const UnitGroup& group) {
  if (a == 0 || b == 0) throw std::domain_error("dependence needs nonzero values");
  const auto& primes = group.support();

  // S-free parts, split over a coprime base.
  auto s_free = [&](const Integer& n) {
    Integer t = abs(n);
    for (const auto& p : primes) strip(t, p);
    return t;
  };
  const Integer an = s_free(a.get_num()), ad = s_free(a.get_den());
  const Integer bn = s_free(b.get_num()), bd = s_free(b.get_den());
  std::vector<Integer> seeds;
  for (const Integer* v : {&an, &ad, &bn, &bd})
    if (*v > 1) seeds.push_back(*v);
  const std::vector<Integer> base = coprime_base(seeds);

  auto vec = [&](const Rational& x) {
    std::vector<Integer> v;
    v.emplace_back(x < 0 ? 1 : 0);
    Integer num = abs(x.get_num()), den = x.get_den();
    for (const auto& p : primes) v.emplace_back(long(strip(num, p)) - long(strip(den, p)));
    for (const auto& q : base) {
      long e = 0;
      while (mpz_divisible_p(num.get_mpz_t(), q.get_mpz_t())) {
        num /= q;
        ++e;
      }
      while (mpz_divisible_p(den.get_mpz_t(), q.get_mpz_t())) {
        den /= q;
        --e;
      }
      v.emplace_back(e);
    }
    if (num != 1 || den != 1) throw IntegrityError("coprime base does not cover the value");
    return v;
  };

  const auto va = vec(a), vb = vec(b);
  const std::size_t rows = va.size();
  const std::size_t g = group.generators().size();
  const std::size_t cols = 2 + g + 1;
  IntMatrix m(rows, std::vector<Integer>(cols, Integer(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    m[i][0] = va[i];
    m[i][1] = -vb[i];
    for (std::size_t j = 0; j < g; ++j) m[i][2 + j] = (i <= primes.size()) ? Integer(-group.lattice()[j][i]) : Integer(0);
  }
  m[0][cols - 1] = -2;

  IntMatrix proj;
  for (const auto& k : integer_kernel(m, cols)) proj.push_back({k[0], k[1]});
  const IntMatrix h = hermite_rows(proj, 2);
  if (h.empty()) return std::nullopt;

  using Vec = std::pair<Integer, Integer>;
  auto normalize = [](Vec v) {
    if (v.first < 0 || (v.first == 0 && v.second < 0)) v = {-v.first, -v.second};
    return v;
  };
  auto better = [](const Vec& x, const Vec& y) {
    const Integer nx = abs(x.first) + abs(x.second), ny = abs(y.first) + abs(y.second);
    if (nx != ny) return nx < ny;
    const bool px = x.first > 0, py = y.first > 0;
    if (px != py) return px;
    return x.second < y.second;
  };

  Vec best;
  if (h.size() == 1) {
    best = normalize({h[0][0], h[0][1]});
  } else {
    const Integer& pa = h[0][0];
    const Integer& pb = h[0][1];
    const Integer& pc = h[1][1];
    if (pa <= 0 || h[1][0] != 0 || pc <= 0) throw IntegrityError("unexpected Hermite shape");
    best = normalize({pa, pb});
    if (better({0, pc}, best)) best = {0, pc};
    for (Integer x = 1; x * pa <= abs(best.first) + abs(best.second); ++x) {
      Integer lo;
      const Integer t = -x * pb;
      mpz_fdiv_q(lo.get_mpz_t(), t.get_mpz_t(), pc.get_mpz_t());
      for (const Integer& y : {lo, Integer(lo + 1)}) {
        const Vec cand = normalize({x * pa, x * pb + y * pc});
        if (better(cand, best)) best = cand;
      }
    }
  }

  Dependence dep;
  dep.r = to_long(best.first, "r");
  dep.s = to_long(best.second, "s");
  dep.u = rpow(a, dep.r) / rpow(b, dep.s);
  auto w = in_group(dep.u, group);
  if (!w) throw IntegrityError("dependence witness failed membership replay");
  dep.membership = std::move(*w);
  Integer gg;
  mpz_gcd(gg.get_mpz_t(), best.first.get_mpz_t(), best.second.get_mpz_t());
  dep.gcd = gg.get_si();
  return dep;
}

PairwiseReport find_pairwise_dependences(const RationalMap& f, const UnitGroup& group, const SearchConfig& cfg) {
  if (!f.is_polynomial()) throw std::invalid_argument("pairwise search needs a polynomial map");
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("map degree must be >= 2");
  if (cfg.n_max < 2) throw std::invalid_argument("pairwise search needs n_max >= 2");
  PairwiseReport rep;
  rep.squarefree = nu(f.num()) == f.num().degree();
  if (d == 2) rep.second_iterate_squarefree = [&] {
    const RationalMap f2 = iterate(f, 2);
    return nu(f2.num()) == f2.num().degree();
  }();
  const StepBound bound = c1_bound(f);
  const OrbitClass zero = decide_preperiodic(f, ProjPoint(0, 1), bound);
  rep.zero_not_periodic = !(zero.preperiodic && zero.tail == 0);
  if (!rep.squarefree) rep.warnings.emplace_back("f has a multiple root");
  if (!rep.second_iterate_squarefree) rep.warnings.emplace_back("d = 2 and f^(2) has a multiple root");
  if (!rep.zero_not_periodic) rep.warnings.emplace_back("0 is periodic");

  const UnitGroup target = membership_group(group, cfg.full_s_units);
  struct State {
    std::vector<PairwiseHit> hits;
    std::uint64_t points = 0, preper = 0;
  };
  auto states = scan_points<State>(cfg.height, cfg.jobs, [&](const ProjPoint& a, State& st) {
    if (a.is_infinity()) return;
    ++st.points;
    if (cfg.wandering_only && !is_wandering(f, a, bound)) {
      ++st.preper;
      return;
    }
    const auto orbit = f.orbit(a, cfg.n_max);
    for (unsigned m = 2; m <= cfg.n_max; ++m) {
      for (unsigned n = 1; n < m; ++n) {
        if (orbit[m].is_zero() || orbit[n].is_zero()) continue;
        if (auto dep = mult_dependent_mod_group(orbit[m].value(), orbit[n].value(), target))
          st.hits.push_back({a, m, n, std::move(*dep)});
      }
    }
  });
  for (auto& st : states) {
    std::move(st.hits.begin(), st.hits.end(), std::back_inserter(rep.hits));
    rep.points += st.points;
    rep.preperiodic_skipped += st.preper;
  }
  return rep;
}

ZsigmondyReport zsigmondy(const RationalMap& f, const ProjPoint& alpha, unsigned n_max, bool include_m0,
                          const FactorOptions& opts) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  ZsigmondyReport rep;
  rep.alpha_wandering = f.degree() >= 2 ? !decide_preperiodic(f, alpha).preperiodic : false;

  // Each earlier value contributes |x| * z, whose primes are exactly those
  // with nonzero valuation.
  std::vector<Integer> earlier;
  auto carrier = [](const ProjPoint& p) { return Integer(abs(p.x()) * p.z()); };
  if (include_m0 && !alpha.is_infinity() && !alpha.is_zero()) earlier.push_back(carrier(alpha));

  ProjPoint cur = alpha;
  for (unsigned n = 1; n <= n_max; ++n) {
    cur = f(cur);
    if (cur.is_infinity() || cur.is_zero()) {
      rep.truncated = true;
      rep.truncation_reason = "f^(" + std::to_string(n) + ")(alpha) = " + cur.to_string();
      break;
    }
    ZsigmondyEntry e;
    e.n = n;
    e.value = cur;
    Integer cof = carrier(cur);
    for (const auto& prev : earlier) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), cof.get_mpz_t(), prev.get_mpz_t());
      while (g > 1) {
        cof /= g;
        mpz_gcd(g.get_mpz_t(), cof.get_mpz_t(), g.get_mpz_t());
      }
    }
    e.has_primitive_divisor = cof > 1;
    if (e.has_primitive_divisor) {
      const Factorization fac = factor_partial(cof, opts);
      for (const auto& pp : fac.factors) e.primitive_primes.push_back(pp.prime);
      e.unfactored = fac.cofactor;
    } else {
      rep.zsigmondy_set.push_back(n);
    }
    earlier.push_back(carrier(cur));
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

SplitMultilinearForm SplitMultilinearForm::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty form");

  SplitMultilinearForm form;
  std::set<unsigned> seen;
  std::size_t i = 0;
  while (i < s.size()) {
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
    } else if (i != 0) {
      throw std::invalid_argument("expected + or - in form");
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    const std::string term = s.substr(i, j - i);
    if (term.empty()) throw std::invalid_argument("empty term in form");
    Term t{neg ? Rational(-1) : Rational(1), {}};
    std::size_t a = 0;
    while (a <= term.size()) {
      std::size_t b = term.find('*', a);
      if (b == std::string::npos) b = term.size();
      const std::string factor = term.substr(a, b - a);
      if (factor.empty()) throw std::invalid_argument("empty factor in form");
      if (factor[0] == 'T' || factor[0] == 't') {
        const std::string idx = factor.substr(1);
        if (idx.empty() || idx.size() > 4 || !std::all_of(idx.begin(), idx.end(), ::isdigit))
          throw std::invalid_argument("bad variable '" + factor + "'");
        const unsigned v = static_cast<unsigned>(std::stoul(idx));
        if (v == 0) throw std::invalid_argument("variables are numbered from T1");
        if (!seen.insert(v).second) throw std::invalid_argument("variable T" + idx + " appears twice");
        t.vars.push_back(v);
      } else {
        t.c *= parse_rational(factor);
      }
      a = b + 1;
    }
    if (t.c == 0) throw std::invalid_argument("zero coefficient in form");
    if (t.vars.empty()) throw std::invalid_argument("constant term in form");
    std::sort(t.vars.begin(), t.vars.end());
    form.terms.push_back(std::move(t));
    i = j;
  }
  form.k = *seen.rbegin();
  if (seen.size() != form.k) throw std::invalid_argument("variables must be exactly T1..Tk");
  return form;
}

Interval SplitMultilinearForm::height() const {
  Integer best = 1;
  for (const auto& t : terms) {
    const Integer mag = std::max(Integer(abs(t.c.get_num())), Integer(t.c.get_den()));
    if (mag > best) best = mag;
  }
  return Interval::log_of(best);
}

Rational SplitMultilinearForm::eval(const std::vector<Rational>& values) const {
  if (values.size() != k) throw std::invalid_argument("form arity mismatch");
  Rational acc = 0;
  for (const auto& t : terms) {
    Rational p = t.c;
    for (unsigned v : t.vars) p *= values[v - 1];
    acc += p;
  }
  return acc;
}

std::string SplitMultilinearForm::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    Rational c = t.c;
    if (c < 0) {
      out += i ? " - " : "-";
      c = -c;
    } else if (i) {
      out += " + ";
    }
    std::string body;
    for (unsigned v : t.vars) body += (body.empty() ? "T" : "*T") + std::to_string(v);
    out += (c == 1) ? body : orbitlab::to_string(c) + "*" + body;
  }
  return out;
}

Interval thm19_height_bound(const SplitMultilinearForm& form, unsigned d, const Interval& c1) {
  if (d < 3) throw std::invalid_argument("the explicit height bound needs d >= 3; use the n1 bound for d = 2");
  Integer dk;
  mpz_ui_pow_ui(dk.get_mpz_t(), d, form.k - 1);
  const Rational lead(Integer(2 * form.k), dk);
  return Interval::exact(Rational(lead)) * form.height() + Interval::exact(Rational(7, 3)) * c1 +
         Interval::exact(Rational(2, 9)) * Interval::log_of(Integer(2));
}

std::optional<unsigned> thm19_n1_bound(const SplitMultilinearForm& form, unsigned d, const Interval& c1,
                                       const Interval& c2) {
  if (d < 2) throw std::invalid_argument("n1 bound needs d >= 2");
  if (form.k < 2) throw std::invalid_argument("n1 bound needs k >= 2");
  if (!c2.certainly_positive()) throw std::invalid_argument("c2 must be positive");
  Integer dk;
  mpz_ui_pow_ui(dk.get_mpz_t(), d, form.k - 1);
  const Rational factor = Rational(d - 1) / (Rational(d) - 2 + Rational(Integer(1), dk));
  const Interval k = Interval::exact(Integer(form.k));
  const Interval rhs = Interval::exact(factor) * (k * c1 + k * form.height() + Interval::log_of(Integer(form.k - 1))) / c2;
  const Interval top = rhs.widen_to_upper();
  if (top.certainly_less(Interval::exact(Integer(1)))) return std::nullopt;
  unsigned n = 0;
  Integer pw = d;
  while (!top.certainly_less(Interval::exact(pw))) {
    ++n;
    pw *= d;
    if (n > 100000) throw ResourceError("n1 bound out of range");
  }
  return n;
}

SplitReport find_split_relations(const SplitMultilinearForm& form, const RationalMap& f, const ProjPoint& alpha,
                                 const SplitOptions& opts) {
  const int d = f.degree();
  if (d < 2) throw std::invalid_argument("map degree must be >= 2");
  SplitReport rep;
  const StepBound bound = c1_bound(f);
  rep.c1 = bound.c1;
  if (decide_preperiodic(f, alpha, bound).preperiodic)
    rep.warnings.emplace_back("alpha is preperiodic; the tuple set need not be finite");
  rep.c2 = c2_bound(f, bound, opts.c2).value.lower_point();
  rep.n1_bound = thm19_n1_bound(form, static_cast<unsigned>(d), rep.c1, rep.c2);

  unsigned limit = opts.n_cap;
  if (!opts.ignore_bound) {
    if (!rep.n1_bound) return rep;
    if (*rep.n1_bound > opts.n_cap)
      rep.warnings.emplace_back("n1 bound " + std::to_string(*rep.n1_bound) + " truncated to " +
                                std::to_string(opts.n_cap));
    else
      limit = *rep.n1_bound;
  }
  rep.searched_to = limit;

  constexpr std::size_t kMaxBits = std::size_t(1) << 24;
  std::vector<ProjPoint> orbit{alpha};
  for (unsigned i = 1; i <= limit; ++i) {
    orbit.push_back(f(orbit.back()));
    if (mpz_sizeinbase(orbit.back().magnitude().get_mpz_t(), 2) > kMaxBits)
      throw ResourceError("orbit value exceeds 2^24 bits at n = " + std::to_string(i));
  }
  if (std::any_of(orbit.begin(), orbit.end(), [](const ProjPoint& p) { return p.is_zero(); }))
    rep.warnings.emplace_back("0 lies in the searched orbit");
  if (limit + 1 < form.k) return rep;

  std::vector<unsigned> tuple(form.k);
  std::vector<Rational> values(form.k);
  std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned below) {
    if (pos == form.k) {
      for (unsigned i = 0; i < form.k; ++i) {
        if (orbit[tuple[i]].is_infinity()) return;
        values[i] = orbit[tuple[i]].value();
      }
      if (form.eval(values) == 0) rep.tuples.push_back(tuple);
      return;
    }
    const unsigned need = form.k - pos - 1;  // entries still to place below this one
    for (unsigned v = need; v < below; ++v) {
      tuple[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, limit + 1);
  std::sort(rep.tuples.begin(), rep.tuples.end());
  return rep;
}

}  // namespace orbitlab
