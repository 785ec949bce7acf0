#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "lightcone/laws.hpp"
#include "lightcone/models.hpp"

using namespace lightcone;

namespace {
RunConfig cfg() {
  RunConfig c;
  c.samples = 12;
  c.seed = 31;
  return c;
}
}  // namespace

TEST_CASE("text and json reports carry the same records") {
  Geometry g = hyperplane(2, cfg());
  Report r = run_validate(g, cfg());
  auto j = nlohmann::json::parse(r.to_json());
  std::string text = r.to_text();
  REQUIRE(j["checks"].size() == r.records().size());
  for (const auto& rec : r.records()) {
    CHECK(text.find(rec.name) != std::string::npos);
    bool found = false;
    for (const auto& jrec : j["checks"])
      if (jrec["name"] == rec.name) {
        found = true;
        CHECK(jrec["passed"] == rec.passed);
        CHECK(jrec["max_residual"] == doctest::Approx(rec.max_residual));
      }
    CHECK(found);
  }
  CHECK(j["config"]["samples"] == 12);
  CHECK(j["config"]["seed"] == 31);
}

TEST_CASE("reports are byte-identical for identical spec, seed and flags") {
  RunConfig c = cfg();
  Geometry g1 = hyperplane(2, c);
  Geometry g2 = hyperplane(2, c);
  Report r1 = run_screen_identities(g1, c);
  Report r2 = run_screen_identities(g2, c);
  CHECK(r1.to_json() == r2.to_json());
  CHECK(r1.to_text() == r2.to_text());
}

TEST_CASE("failed records flip the aggregate flag") {
  Report r("demo", cfg());
  r.check("ok", "plumbing", 1e-12, 1e-9, 4);
  CHECK(r.all_passed());
  r.check("bad", "plumbing", 1e-3, 1e-9, 4);
  CHECK_FALSE(r.all_passed());
}

TEST_CASE("spec json emitted for the builders is stable and versioned") {
  RunConfig c = cfg();
  std::string a = to_spec_json(cone(3, c));
  std::string b = to_spec_json(cone(3, c));
  CHECK(a == b);
  auto j = nlohmann::json::parse(a);
  CHECK(j["spec_version"] == 1);
  CHECK(j["coords"].size() == 4);
  CHECK(j["metric"].size() == 4);
}
