#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lightcone/laws.hpp"
#include "lightcone/models.hpp"

using namespace lightcone;

namespace {

RunConfig cfg() {
  RunConfig c;
  c.samples = 20;
  return c;
}

double max_at_samples(const std::vector<Expr>& es, const ChartPtr& chart, int count = 20) {
  double worst = 0.0;
  for (const auto& p : chart->samples(count)) {
    Evaluator ev(p);
    for (const auto& e : es) worst = std::max(worst, std::abs(ev(e)));
  }
  return worst;
}

}  // namespace

TEST_CASE("hyperplane base frame is the coordinate screen frame") {
  Geometry g = hyperplane(3, cfg());
  const auto& frame = g.tau0->frame();
  REQUIRE(frame.size() == 3);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 4; ++k) {
      double want = (k == i + 1) ? 1.0 : 0.0;
      CHECK(frame[i].comp[k].eval(std::vector<double>{0.1, 0.2, 0.3, 0.4}) ==
            doctest::Approx(want));
    }
}

TEST_CASE("cone frame matches the closed form") {
  Geometry g = cone(2, cfg());
  const auto& frame = g.tau0->frame();
  std::vector<double> p{0.4, 0.3, -0.8};
  double expect = std::exp(-p[0]) * (1.0 + p[1] * p[1] + p[2] * p[2]) / 2.0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 3; ++k) {
      double want = (k == i + 1) ? expect : 0.0;
      CHECK(frame[i].comp[k].eval(p) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("screen construction rejects forms that do not pair to one with Z") {
  Geometry g = hyperplane(2, cfg());
  std::vector<Expr> bad(3, Expr::constant(0.0));
  bad[1] = Expr::constant(1.0);  // dr1 pairs to 0 with Z
  CHECK_THROWS_AS((void)make_screen(g.structure, OneForm(g.structure->chart, bad), cfg()),
                  std::invalid_argument);
}

TEST_CASE("projection examples") {
  Geometry g = hyperplane(2, cfg());
  const ScreenForm& tau = *g.tau0;
  // P(Z) = 0
  CHECK(max_at_samples(tau.project(g.structure->Z).comp, g.structure->chart) == 0.0);
  // P fixes screen directions
  VectorField v = coordinate_vector(g.structure->chart, 1);
  VectorField d = tau.project(v) - v;
  CHECK(max_at_samples(d.comp, g.structure->chart) == 0.0);
  // P(d_{r0} + d_{r1}) = d_{r1}
  VectorField w = coordinate_vector(g.structure->chart, 0) + v;
  VectorField diff = tau.project(w) - v;
  CHECK(max_at_samples(diff.comp, g.structure->chart) == 0.0);
}

TEST_CASE("difference field for a tilted screen on the hyperplane") {
  Geometry g = hyperplane(3, cfg());
  const auto& chart = g.structure->chart;
  // taubar = dr0 + dr1
  std::vector<Expr> tb(4, Expr::constant(0.0));
  tb[0] = Expr::constant(1.0);
  tb[1] = Expr::constant(1.0);
  auto taubar = make_screen(g.structure, OneForm(chart, tb), cfg());
  VectorField L = L_field(*g.tau0, *taubar);
  // L = d_{r0} - d_{r1}
  std::vector<Expr> defects{L.comp[0] - Expr::constant(1.0), L.comp[1] + Expr::constant(1.0),
                            L.comp[2], L.comp[3]};
  CHECK(max_at_samples(defects, chart) < 1e-12);
}

TEST_CASE("screen identity suite passes on all builders") {
  for (Geometry g : {cone(2, cfg()), cone(3, cfg()), hyperplane(2, cfg()), sasakian(1, cfg())}) {
    Report r = run_screen_identities(g, cfg());
    INFO(g.name, ": ", r.to_text());
    CHECK(r.all_passed());
  }
}
