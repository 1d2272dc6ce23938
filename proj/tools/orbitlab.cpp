#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orbitlab/orbitlab.h"

namespace {

using nlohmann::json;

struct Global {
  unsigned jobs = 0;
  std::string output;
  std::string cache_dir;
};

struct Result {
  orbitlab_status status = ORBITLAB_OK;
  std::string text;
  std::string error;
};

struct CString {
  char* p = nullptr;
  ~CString() { orbitlab_string_free(p); }
};

Result call(const std::function<orbitlab_status(char**)>& fn) {
  CString s;
  Result r;
  r.status = fn(&s.p);
  if (s.p) r.text = s.p;
  if (r.status != ORBITLAB_OK) r.error = orbitlab_last_error();
  return r;
}

int exit_code(orbitlab_status st) {
  switch (st) {
    case ORBITLAB_OK: return 0;
    case ORBITLAB_E_ARGUMENT:
    case ORBITLAB_E_DOMAIN:
    case ORBITLAB_E_PRECONDITION: return 2;
    case ORBITLAB_E_RESOURCE: return 3;
    default: return 1;
  }
}

// Owning wrappers; a failed parse is reported and turned into exit status 2.
struct MapHandle {
  orbitlab_map* p = nullptr;
  ~MapHandle() { orbitlab_map_free(p); }
};
struct GroupHandle {
  orbitlab_group* p = nullptr;
  ~GroupHandle() { orbitlab_group_free(p); }
};

struct InputError {
  orbitlab_status status;
  std::string message;
};

void load_map(MapHandle& h, const std::string& text) {
  if (orbitlab_map_parse(text.c_str(), &h.p) != ORBITLAB_OK)
    throw InputError{ORBITLAB_E_ARGUMENT, std::string("map: ") + orbitlab_last_error()};
}

void load_group(GroupHandle& h, const std::string& text) {
  if (orbitlab_group_parse(text.c_str(), &h.p) != ORBITLAB_OK)
    throw InputError{ORBITLAB_E_ARGUMENT, std::string("group: ") + orbitlab_last_error()};
}

std::string map_string(const MapHandle& h) {
  Result r = call([&](char** o) { return orbitlab_map_to_string(h.p, o); });
  return r.text;
}

json group_generators(const GroupHandle& h) {
  Result r = call([&](char** o) { return orbitlab_group_describe(h.p, o); });
  return json::parse(r.text).at("generators");
}

json c1_of(const MapHandle& h) {
  Result r = call([&](char** o) { return orbitlab_c1(h.p, o); });
  if (r.status != ORBITLAB_OK) return nullptr;
  return json::parse(r.text).at("c1");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

// Prints manifest + results, honoring --cache-dir and --output.
int emit(const Global& g, json manifest, const std::function<Result()>& produce) {
  manifest["kind"] = "manifest";
  manifest["version"] = orbitlab_version();
  const auto start = std::chrono::steady_clock::now();

  std::filesystem::path cache_file;
  bool cached = false;
  std::string text;
  int code = 0;
  if (!g.cache_dir.empty()) {
    char key[17];
    std::snprintf(key, sizeof key, "%016llx", static_cast<unsigned long long>(fnv1a(manifest.dump())));
    std::filesystem::create_directories(g.cache_dir);
    cache_file = std::filesystem::path(g.cache_dir) / (std::string(key) + ".jsonl");
    if (std::filesystem::exists(cache_file)) {
      text = slurp(cache_file);
      cached = true;
    }
  }
  if (!cached) {
    Result r = produce();
    code = exit_code(r.status);
    if (r.status == ORBITLAB_E_RESOURCE) manifest["note"] = "budget exceeded: " + r.error;
    if (r.status != ORBITLAB_OK && r.status != ORBITLAB_E_RESOURCE) {
      std::cerr << "orbitlab: " << r.error << "\n";
      return code;
    }
    std::string body = r.text;
    if (!body.empty() && body.back() != '\n') body += '\n';
    text = manifest.dump() + "\n" + body;
    if (r.status == ORBITLAB_OK && !cache_file.empty()) spit(cache_file, text);
    if (r.status == ORBITLAB_E_RESOURCE) std::cerr << "orbitlab: " << r.error << "\n";
  }
  std::cout << text;
  if (!g.output.empty()) {
    spit(g.output, text);
    json side = manifest;
    side["cached"] = cached;
    side["exit_code"] = code;
    side["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    spit(g.output + ".manifest.json", side.dump(2) + "\n");
  }
  return code;
}

std::string join_group(const std::string& flag, const std::vector<std::string>& rest) {
  if (!flag.empty()) return flag;
  std::string out;
  for (const auto& s : rest) out += (out.empty() ? "" : ",") + s;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic dynamics toolkit", "orbitlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML-style file with option values");
  Global g;
  app.add_option("--jobs", g.jobs, "Worker threads (0 = all cores)");
  app.add_option("--output", g.output, "Also write results here, plus <output>.manifest.json");
  app.add_option("--cache-dir", g.cache_dir, "Directory for cached results");

  std::function<int()> action;
  std::string map_text, point, group_flag, element, primes, form, F, G, c = "1", m_text;
  std::vector<std::string> group_rest;
  unsigned depth = 8, m_small = 2, d_arg = 2, n_arg = 1, nmax = 4, q = 0, ncap = 12;
  bool exclude_m0 = false, ignore_bound = false, all_points = false, s_units = false;
  std::string a_text, b_text;
  orbitlab_search_options so;
  orbitlab_search_options_init(&so);
  std::uint64_t height_bound = 1;
  orbitlab_c2_options co;
  orbitlab_c2_options_init(&co);

  auto need_map = [&](CLI::App* s) { s->add_option("--map", map_text, "Rational map in X, e.g. \"(1-X)^2/X\"")->required(); };
  auto need_point = [&](CLI::App* s, bool required = true) {
    auto* o = s->add_option("--point,--alpha", point, "Point of P^1(Q): p/q or inf");
    if (required) o->required();
  };
  auto group_opts = [&](CLI::App* s) {
    s->add_option("--group", group_flag, "Generators, comma separated")->expected(0, 1);
    s->add_option("generators", group_rest, "Generators (after --)");
  };
  auto c2_opts = [&](CLI::App* s) {
    s->add_option("--max-depth", co.max_depth, "Iteration depth budget for C2");
    s->add_option("--point-budget", co.point_budget, "Point budget for C2");
  };

  // height
  auto* height = app.add_subcommand("height", "Weil height of a point");
  need_point(height);
  height->callback([&] {
    action = [&] {
      return emit(g, {{"command", "height"}, {"point", point}},
                  [&] { return call([&](char** o) { return orbitlab_height(point.c_str(), o); }); });
    };
  });

  auto* ch = app.add_subcommand("canonical-height", "Certified canonical height enclosure");
  need_map(ch);
  need_point(ch);
  ch->add_option("--depth", depth, "Iteration depth N");
  ch->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      return emit(g, {{"command", "canonical-height"}, {"map", map_string(mh)}, {"point", point}, {"depth", depth},
                      {"c1", c1_of(mh)}},
                  [&] { return call([&](char** o) { return orbitlab_canonical_height(mh.p, point.c_str(), depth, o); }); });
    };
  });

  auto* pre = app.add_subcommand("preperiodic", "Decide preperiodic or wandering");
  need_map(pre);
  need_point(pre);
  pre->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      return emit(g, {{"command", "preperiodic"}, {"map", map_string(mh)}, {"point", point}, {"c1", c1_of(mh)}},
                  [&] { return call([&](char** o) { return orbitlab_preperiodic(mh.p, point.c_str(), o); }); });
    };
  });

  auto* ram = app.add_subcommand("ramify", "Ramification index at a point, or all critical data");
  need_map(ram);
  need_point(ram, false);
  ram->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      json man = {{"command", "ramify"}, {"map", map_string(mh)}};
      if (!point.empty()) man["point"] = point;
      return emit(g, man, [&] {
        return call([&](char** o) {
          return point.empty() ? orbitlab_critical(mh.p, o) : orbitlab_ramification(mh.p, point.c_str(), o);
        });
      });
    };
  });

  auto* exc = app.add_subcommand("exceptional", "Is the point exceptional");
  need_map(exc);
  need_point(exc);
  exc->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      return emit(g, {{"command", "exceptional"}, {"map", map_string(mh)}, {"point", point}},
                  [&] { return call([&](char** o) { return orbitlab_exceptional(mh.p, point.c_str(), o); }); });
    };
  });

  auto* cls = app.add_subcommand("classify", "Match the special forms");
  need_map(cls);
  cls->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      return emit(g, {{"command", "classify"}, {"map", map_string(mh)}},
                  [&] { return call([&](char** o) { return orbitlab_classify(mh.p, o); }); });
    };
  });

  auto* red = app.add_subcommand("reduction", "Bad reduction primes of a polynomial");
  need_map(red);
  red->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      return emit(g, {{"command", "reduction"}, {"map", map_string(mh)}},
                  [&] { return call([&](char** o) { return orbitlab_reduction(mh.p, o); }); });
    };
  });

  // group
  auto* grp = app.add_subcommand("group", "Unit group operations");
  grp->require_subcommand(1);
  auto* gcheck = grp->add_subcommand("check", "Membership with exponent witness");
  group_opts(gcheck);
  gcheck->add_option("--element,-x", element, "Element to test")->required();
  gcheck->callback([&] {
    action = [&] {
      GroupHandle gh;
      load_group(gh, join_group(group_flag, group_rest));
      return emit(g, {{"command", "group check"}, {"group", group_generators(gh)}, {"element", element}},
                  [&] { return call([&](char** o) { return orbitlab_group_check(gh.p, element.c_str(), o); }); });
    };
  });
  auto* gsat = grp->add_subcommand("saturate", "Saturation in Q*");
  group_opts(gsat);
  gsat->callback([&] {
    action = [&] {
      GroupHandle gh;
      load_group(gh, join_group(group_flag, group_rest));
      return emit(g, {{"command", "group saturate"}, {"group", group_generators(gh)}},
                  [&] { return call([&](char** o) { return orbitlab_group_saturate(gh.p, o); }); });
    };
  });
  auto* gcos = grp->add_subcommand("cosets", "Coset representatives of R_S^* mod m-th powers");
  gcos->add_option("--primes", primes, "Finite primes of S, comma separated");
  gcos->add_option("--m", m_small, "Exponent m >= 2")->required();
  gcos->callback([&] {
    action = [&] {
      return emit(g, {{"command", "group cosets"}, {"primes", primes}, {"m", m_small}},
                  [&] { return call([&](char** o) { return orbitlab_group_cosets(primes.c_str(), m_small, o); }); });
    };
  });
  auto* glcm = grp->add_subcommand("lcm", "LCM(2..d^n+1)+1");
  glcm->add_option("--d", d_arg)->required();
  glcm->add_option("--n", n_arg)->required();
  glcm->callback([&] {
    action = [&] {
      return emit(g, {{"command", "group lcm"}, {"d", d_arg}, {"n", n_arg}},
                  [&] { return call([&](char** o) { return orbitlab_lcm_exponent(d_arg, n_arg, o); }); });
    };
  });

  // search
  auto* search = app.add_subcommand("search", "Exhaustive desk-scale searches");
  search->require_subcommand(1);
  auto search_opts = [&](CLI::App* s, bool rs) {
    need_map(s);
    group_opts(s);
    s->add_option("--height", height_bound, "Magnitude bound H")->check(CLI::PositiveNumber);
    s->add_option("--nmin", so.n_min, "Smallest n");
    s->add_option("--nmax", so.n_max, "Largest n");
    s->add_flag("--all-points", all_points, "Do not restrict to wandering points");
    s->add_flag("--s-units", s_units, "Test membership in R_S^* instead of the group");
    if (rs) {
      s->add_option("--kmax", so.k_max, "Largest k");
      s->add_option("--r", so.r, "Exponent r");
      s->add_option("--s", so.s, "Exponent s");
    }
  };
  using SearchFn = orbitlab_status (*)(const orbitlab_map*, const orbitlab_group*, const orbitlab_search_options*,
                                       char**);
  auto search_action = [&](const char* name, SearchFn fn, bool rs) {
    return [&, name, fn, rs] {
      action = [&, name, fn, rs] {
        MapHandle mh;
        load_map(mh, map_text);
        GroupHandle gh;
        load_group(gh, join_group(group_flag, group_rest));
        so.height = height_bound;
        so.wandering_only = all_points ? 0 : 1;
        so.full_s_units = s_units ? 1 : 0;
        so.jobs = g.jobs;
        json man = {{"command", std::string("search ") + name},
                    {"map", map_string(mh)},
                    {"group", group_generators(gh)},
                    {"height", height_bound},
                    {"n_min", so.n_min},
                    {"n_max", so.n_max},
                    {"flags", {{"wandering_only", !all_points}, {"full_s_units", s_units}}},
                    {"c1", c1_of(mh)}};
        if (rs) {
          man["k_max"] = so.k_max;
          man["r"] = so.r;
          man["s"] = so.s;
        }
        return emit(g, man, [&] { return call([&](char** o) { return fn(mh.p, gh.p, &so, o); }); });
      };
    };
  };
  auto* sg = search->add_subcommand("g", "alpha with f(alpha) in the group");
  search_opts(sg, false);
  sg->callback(search_action("g", orbitlab_search_g, false));
  auto* sf = search->add_subcommand("f", "(n, alpha) with f^(n)(alpha) in the group");
  search_opts(sf, false);
  sf->callback(search_action("f", orbitlab_search_f, false));
  auto* se = search->add_subcommand("e", "Witnesses f^(n+k)(alpha)^r = u f^(k)(alpha)^s");
  search_opts(se, true);
  se->callback(search_action("e", orbitlab_search_e, true));
  auto* sp = search->add_subcommand("pairwise", "Pairwise multiplicative dependence of orbit values");
  search_opts(sp, false);
  sp->callback(search_action("pairwise", orbitlab_search_pairwise, false));

  auto* sdep = search->add_subcommand("dep", "Minimal dependence a^r b^-s in the group");
  group_opts(sdep);
  sdep->add_option("--a", a_text)->required();
  sdep->add_option("--b", b_text)->required();
  sdep->callback([&] {
    action = [&] {
      GroupHandle gh;
      load_group(gh, join_group(group_flag, group_rest));
      return emit(g, {{"command", "search dep"}, {"group", group_generators(gh)}, {"a", a_text}, {"b", b_text}},
                  [&] { return call([&](char** o) { return orbitlab_dependence(a_text.c_str(), b_text.c_str(), gh.p, o); }); });
    };
  });

  auto* ssplit = search->add_subcommand("split", "Split multilinear relations along an orbit");
  need_map(ssplit);
  need_point(ssplit);
  ssplit->add_option("--form", form, "e.g. \"T1 - 5/2*T2\"")->required();
  ssplit->add_option("--ncap", ncap, "Largest n searched");
  ssplit->add_flag("--ignore-bound", ignore_bound, "Search to --ncap regardless of the n1 bound");
  c2_opts(ssplit);
  ssplit->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      co.jobs = g.jobs;
      return emit(g, {{"command", "search split"}, {"map", map_string(mh)}, {"point", point}, {"form", form},
                      {"n_cap", ncap}, {"ignore_bound", ignore_bound}, {"c1", c1_of(mh)}},
                  [&] {
                    return call([&](char** o) {
                      return orbitlab_split_search(form.c_str(), mh.p, point.c_str(), ncap, ignore_bound, &co, o);
                    });
                  });
    };
  });

  auto* zs = app.add_subcommand("zsigmondy", "Primitive divisors along an orbit");
  need_map(zs);
  need_point(zs);
  zs->add_option("--nmax", nmax, "Largest n");
  zs->add_flag("--exclude-m0", exclude_m0, "Do not count alpha itself as an earlier value");
  zs->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      return emit(g, {{"command", "zsigmondy"}, {"map", map_string(mh)}, {"point", point}, {"n_max", nmax},
                      {"include_m0", !exclude_m0}},
                  [&] { return call([&](char** o) { return orbitlab_zsigmondy(mh.p, point.c_str(), nmax, !exclude_m0, o); }); });
    };
  });

  auto* gen = app.add_subcommand("genus", "Genus of F(X) = c G(X) Y^m, or superelliptic with --q");
  gen->add_option("--F", F, "Polynomial F");
  gen->add_option("--G", G, "Polynomial G");
  gen->add_option("--c", c, "Constant c");
  gen->add_option("--q", q, "Degree of a squarefree F (superelliptic formula)");
  gen->add_option("--m", m_text, "Exponent m")->required();
  gen->callback([&] {
    action = [&] {
      if (q > 0)
        return emit(g, {{"command", "genus"}, {"q", q}, {"m", m_text}},
                    [&] { return call([&](char** o) { return orbitlab_superelliptic_genus(q, m_text.c_str(), o); }); });
      if (F.empty() || G.empty()) throw InputError{ORBITLAB_E_ARGUMENT, "genus needs --F and --G, or --q"};
      return emit(g, {{"command", "genus"}, {"F", F}, {"G", G}, {"c", c}, {"m", m_text}},
                  [&] { return call([&](char** o) { return orbitlab_genus(F.c_str(), G.c_str(), c.c_str(), m_text.c_str(), o); }); });
    };
  });

  auto* sing = app.add_subcommand("singulars", "Singular points of the projective closure");
  sing->add_option("--F", F)->required();
  sing->add_option("--G", G)->required();
  sing->add_option("--m", m_text)->required();
  sing->callback([&] {
    action = [&] {
      return emit(g, {{"command", "singulars"}, {"F", F}, {"G", G}, {"m", m_text}},
                  [&] { return call([&](char** o) { return orbitlab_singular_points(F.c_str(), G.c_str(), m_text.c_str(), o); }); });
    };
  });

  auto* cc = app.add_subcommand("curve-classify", "Case and table row for the curve attached to f^(n)");
  need_map(cc);
  cc->add_option("--n", n_arg)->required();
  cc->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      return emit(g, {{"command", "curve-classify"}, {"map", map_string(mh)}, {"n", n_arg}},
                  [&] { return call([&](char** o) { return orbitlab_curve_classify(mh.p, n_arg, o); }); });
    };
  });

  auto* bound = app.add_subcommand("bound", "Explicit bounds");
  bound->require_subcommand(1);
  auto* bthm = bound->add_subcommand("thm19", "Height bound for split relations (d >= 3)");
  need_map(bthm);
  bthm->add_option("--form", form)->required();
  bthm->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      return emit(g, {{"command", "bound thm19"}, {"map", map_string(mh)}, {"form", form}},
                  [&] { return call([&](char** o) { return orbitlab_bound_thm19(form.c_str(), mh.p, o); }); });
    };
  });
  auto* bn1 = bound->add_subcommand("n1", "Bound on the largest index of a split relation");
  need_map(bn1);
  bn1->add_option("--form", form)->required();
  c2_opts(bn1);
  bn1->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      co.jobs = g.jobs;
      return emit(g, {{"command", "bound n1"}, {"map", map_string(mh)}, {"form", form}},
                  [&] { return call([&](char** o) { return orbitlab_bound_n1(form.c_str(), mh.p, &co, o); }); });
    };
  });
  auto* bc1 = bound->add_subcommand("c1", "Height difference constant");
  need_map(bc1);
  bc1->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      return emit(g, {{"command", "bound c1"}, {"map", map_string(mh)}},
                  [&] { return call([&](char** o) { return orbitlab_c1(mh.p, o); }); });
    };
  });
  auto* bc2 = bound->add_subcommand("c2", "Lower bound for canonical heights of wandering points");
  need_map(bc2);
  c2_opts(bc2);
  bc2->callback([&] {
    action = [&] {
      MapHandle mh;
      load_map(mh, map_text);
      co.jobs = g.jobs;
      return emit(g, {{"command", "bound c2"}, {"map", map_string(mh)}, {"max_depth", co.max_depth},
                      {"point_budget", co.point_budget}},
                  [&] { return call([&](char** o) { return orbitlab_c2(mh.p, &co, o); }); });
    };
  });

  // "--group -- X" names X as the group and keeps later options live.
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i + 2 < args.size(); ++i) {
    if (args[i] == "--group" && args[i + 1] == "--") {
      args[i] = "--group=" + args[i + 2];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i) + 1, args.begin() + static_cast<std::ptrdiff_t>(i) + 3);
    }
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const InputError& e) {
    std::cerr << "orbitlab: " << e.message << "\n";
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "orbitlab: " << e.what() << "\n";
    return 1;
  }
}
