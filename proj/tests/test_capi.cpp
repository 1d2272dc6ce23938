#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "orbitlab/orbitlab.h"

using nlohmann::json;

namespace {

struct Out {
  char* p = nullptr;
  ~Out() { orbitlab_string_free(p); }
  json parse() const { return json::parse(p); }
};

struct Map {
  orbitlab_map* p = nullptr;
  explicit Map(const char* s) { REQUIRE(orbitlab_map_parse(s, &p) == ORBITLAB_OK); }
  ~Map() { orbitlab_map_free(p); }
};

struct Group {
  orbitlab_group* p = nullptr;
  explicit Group(const char* s) { REQUIRE(orbitlab_group_parse(s, &p) == ORBITLAB_OK); }
  ~Group() { orbitlab_group_free(p); }
};

}  // namespace

TEST_CASE("version and defaults") {
  CHECK(std::string(orbitlab_version()) == "0.1.0");
  CHECK(orbitlab_default_jobs() >= 1);
  orbitlab_search_options o;
  orbitlab_search_options_init(&o);
  CHECK(o.n_min == 1);
  CHECK(o.r == 1);
  CHECK(o.wandering_only == 1);
}

TEST_CASE("height through the C API") {
  Out o;
  REQUIRE(orbitlab_height("2/3", &o.p) == ORBITLAB_OK);
  const json j = o.parse();
  CHECK(j["h"] == "log 3");
  CHECK(j["magnitude"] == 3);
}

TEST_CASE("error codes and messages") {
  orbitlab_map* m = nullptr;
  CHECK(orbitlab_map_parse("X^^2", &m) == ORBITLAB_E_ARGUMENT);
  CHECK(m == nullptr);
  CHECK(std::strlen(orbitlab_last_error()) > 0);
  Out o;
  CHECK(orbitlab_valuation("0", "2", &o.p) == ORBITLAB_E_DOMAIN);
  Out g;
  CHECK(orbitlab_genus("X^3-X", "1", "1", "4", &g.p) == ORBITLAB_E_PRECONDITION);
  CHECK(std::string(orbitlab_last_error()).find("m = 4") != std::string::npos);
  CHECK(orbitlab_height(nullptr, &o.p) == ORBITLAB_E_ARGUMENT);
  CHECK(orbitlab_height("1", nullptr) == ORBITLAB_E_ARGUMENT);
  Map f("X^2+1");
  Out r;
  orbitlab_c2_options c2;
  orbitlab_c2_options_init(&c2);
  c2.point_budget = 3;
  CHECK(orbitlab_c2(f.p, &c2, &r.p) == ORBITLAB_E_RESOURCE);
  CHECK(r.p != nullptr);
}

TEST_CASE("genus and map round trip") {
  Out o;
  REQUIRE(orbitlab_genus("X^3-X", "1", "1", "5", &o.p) == ORBITLAB_OK);
  const json j = o.parse();
  CHECK(j["genus"] == 4);
  CHECK(j["nu"] == 3);
  CHECK(j["hypotheses"]["m_large"] == true);
  Map f("(1-X)^2/X");
  CHECK(orbitlab_map_degree(f.p) == 2);
  Out s;
  REQUIRE(orbitlab_map_to_string(f.p, &s.p) == ORBITLAB_OK);
  Map g(s.p);
  Out t;
  REQUIRE(orbitlab_map_to_string(g.p, &t.p) == ORBITLAB_OK);
  CHECK(std::string(s.p) == t.p);
}

TEST_CASE("E search through the C API is deterministic across workers") {
  Map f("(1-X)^2/X");
  Group g("2");
  orbitlab_search_options o;
  orbitlab_search_options_init(&o);
  o.height = 30;
  o.n_max = 2;
  o.k_max = 1;
  o.jobs = 1;
  Out a;
  REQUIRE(orbitlab_search_e(f.p, g.p, &o, &a.p) == ORBITLAB_OK);
  o.jobs = 7;
  Out b;
  REQUIRE(orbitlab_search_e(f.p, g.p, &o, &b.p) == ORBITLAB_OK);
  CHECK(std::string(a.p) == b.p);
  CHECK(std::string(a.p).find("\"alpha\":\"1/3\"") != std::string::npos);
}

TEST_CASE("group operations through the C API") {
  Group g("4");
  Out c;
  REQUIRE(orbitlab_group_check(g.p, "1/16", &c.p) == ORBITLAB_OK);
  CHECK(c.parse()["exponents"] == json::array({-2}));
  Out s;
  REQUIRE(orbitlab_group_saturate(g.p, &s.p) == ORBITLAB_OK);
  CHECK(s.parse()["saturation"] == json::array({"-1", "2"}));
  Out k;
  REQUIRE(orbitlab_group_cosets("2", 2, &k.p) == ORBITLAB_OK);
  CHECK(k.parse()["representatives"] == json::array({"1", "-1", "2", "-2"}));
  Out l;
  REQUIRE(orbitlab_lcm_exponent(2, 2, &l.p) == ORBITLAB_OK);
  CHECK(l.parse()["m"] == 61);
}

TEST_CASE("zsigmondy through the C API") {
  Map f("X^2+1");
  Out o;
  REQUIRE(orbitlab_zsigmondy(f.p, "1", 4, 1, &o.p) == ORBITLAB_OK);
  const json j = o.parse();
  CHECK(j["zsigmondy_set"].empty());
  CHECK(j["entries"][3]["primitive_primes"] == json::array({677}));
}
