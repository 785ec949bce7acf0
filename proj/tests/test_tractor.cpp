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

std::vector<Expr> residual(const TractorSection& a, const TractorSection& b) {
  std::vector<Expr> out{a.alpha - b.alpha, a.beta - b.beta};
  for (std::size_t i = 0; i < a.x.size(); ++i) out.push_back(a.x[i] - b.x[i]);
  return out;
}

}  // namespace

TEST_CASE("tractor metric on canonical sections") {
  int m = 3;
  TractorSection xi = TractorSection::xi(m), eta = TractorSection::eta(m);
  CHECK(tractor_metric(xi, xi).is_zero());
  CHECK(tractor_metric(xi, eta).eval(std::vector<double>{}) == doctest::Approx(1.0));
  TractorSection mid{Expr::constant(0.0),
                     {Expr::constant(1.0), Expr::constant(2.0), Expr::constant(0.0)},
                     Expr::constant(0.0)};
  CHECK(tractor_metric(mid, mid).eval(std::vector<double>{}) == doctest::Approx(5.0));
}

TEST_CASE("deriving at the base screen returns the stored data") {
  Geometry g = hyperplane(2, cfg());
  DerivedStructure ds(*g.compat, g.compat->tau0);
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j)
        CHECK(ds.gamma()[a][i][j].id() == g.compat->Gamma[a][i][j].id());
      CHECK(ds.dcomp()[a][i].id() == g.compat->D0[a][i].id());
    }
}

TEST_CASE("covariant derivative of the canonical sections on the hyperplane") {
  Geometry g = hyperplane(2, cfg());
  DerivedStructure ds(*g.compat, g.compat->tau0);
  const auto& chart = g.structure->chart;
  int m = 2;
  for (int a = 0; a < 3; ++a) {
    VectorField w = coordinate_vector(chart, a);
    TractorSection dxi = tractor_connection(ds, w, TractorSection::xi(m));
    CHECK(max_at_samples(residual(dxi, phi(ds, w)), chart) < 1e-12);
    TractorSection deta = tractor_connection(ds, w, TractorSection::eta(m));
    TractorSection want{Expr::constant(0.0), ds.d_components(w),
                        Expr::constant(0.0) - g.tau0->tau()(w)};
    CHECK(max_at_samples(residual(deta, want), chart) < 1e-12);
  }
}

TEST_CASE("transition to a tilted hyperplane screen satisfies the morphism change law") {
  Geometry g = hyperplane(3, cfg());
  const auto& chart = g.structure->chart;
  std::vector<Expr> tb(4, Expr::constant(0.0));
  tb[0] = Expr::constant(1.0);
  tb[1] = Expr::constant(1.0);
  auto taubar = make_screen(g.structure, OneForm(chart, tb), cfg());
  DerivedStructure ds0(*g.compat, g.compat->tau0);
  DerivedStructure dsb(*g.compat, taubar);
  const LightlikeStructure& s = *g.structure;

  VectorField L = L_field(*g.tau0, *taubar);
  Expr hLL = s.h.pair(L, L);
  std::vector<Expr> defects;
  for (int a = 0; a < 4; ++a) {
    VectorField w = coordinate_vector(chart, a);
    VectorField lhs = dsb.d_of(w);
    VectorField inner = ds0.d_of(w) + w.scaled(Expr::constant(0.5) * hLL);
    VectorField rhs = taubar->project(inner) - L.scaled(g.tau0->tau()(w)) - dsb.nabla(w, L);
    VectorField diff = lhs - rhs;
    defects.insert(defects.end(), diff.comp.begin(), diff.comp.end());
  }
  CHECK(max_at_samples(defects, chart) < 1e-9);
}

TEST_CASE("curvature is antisymmetric and kills the radical slot of the canonical section") {
  Geometry g = hyperplane(2, cfg());
  DerivedStructure ds(*g.compat, g.compat->tau0);
  const auto& chart = g.structure->chart;
  int m = 2;
  VectorField v = coordinate_vector(chart, 0), w = coordinate_vector(chart, 1);
  TractorSection sec = TractorSection::frame_basis(m, 0);
  TractorSection rvw = tractor_curvature(ds, v, w, sec);
  TractorSection rwv = tractor_curvature(ds, w, v, sec);
  std::vector<Expr> anti{rvw.alpha + rwv.alpha, rvw.beta + rwv.beta};
  for (int i = 0; i < m; ++i) anti.push_back(rvw.x[i] + rwv.x[i]);
  CHECK(max_at_samples(anti, chart) == 0.0);

  TractorSection rxi = tractor_curvature(ds, v, w, TractorSection::xi(m));
  CHECK(max_at_samples({rxi.beta}, chart) == 0.0);
}

TEST_CASE("node budget aborts oversized curvature computations") {
  Geometry g = sasakian(1, cfg());
  DerivedStructure ds(*g.compat, g.compat->tau0);
  const auto& chart = g.structure->chart;
  VectorField v = coordinate_vector(chart, 0), w = coordinate_vector(chart, 1);
  // exotic constants keep hash consing from absorbing the whole computation
  TractorSection sec{Expr::constant(0.911882733) * sin(Expr::coord(0)),
                     {Expr::constant(0.377511432) * Expr::coord(2),
                      exp(Expr::constant(0.15937714) * Expr::coord(1))},
                     Expr::constant(0.733310976) * cos(Expr::coord(2))};
  CHECK_THROWS_AS((void)tractor_curvature(ds, v, w, sec, 10), BudgetExceeded);
}

TEST_CASE("finite-difference curvature agrees with the symbolic computation") {
  Geometry g = sasakian(1, cfg());
  DerivedStructure ds(*g.compat, g.compat->tau0);
  const auto& chart = g.structure->chart;
  int m = 2;
  VectorField v = coordinate_vector(chart, 0), w = coordinate_vector(chart, 1);
  for (const auto& sec :
       {TractorSection::xi(m), TractorSection::eta(m), TractorSection::frame_basis(m, 0)}) {
    TractorSection sym = tractor_curvature(ds, v, w, sec);
    for (const auto& p : chart->samples(5)) {
      auto fd = tractor_curvature_fd(ds, v, w, sec, p);
      Evaluator ev(p);
      CHECK(std::abs(fd[0] - ev(sym.alpha)) < 1e-5);
      for (int i = 0; i < m; ++i) CHECK(std::abs(fd[i + 1] - ev(sym.x[i])) < 1e-5);
      CHECK(std::abs(fd[m + 1] - ev(sym.beta)) < 1e-5);
    }
  }
}

TEST_CASE("Galilean extension of the hyperplane structure on coordinate fields") {
  Geometry g = hyperplane(2, cfg());
  DerivedStructure ds(*g.compat, g.compat->tau0);
  const auto& chart = g.structure->chart;
  // constant tau and flat screen connection leave tilde_V W = tau(W) P(V)
  std::vector<Expr> defects;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      VectorField va = coordinate_vector(chart, a);
      VectorField r = galilean_extend(ds, va, coordinate_vector(chart, b));
      VectorField want = g.tau0->project(va).scaled(Expr::constant(b == 0 ? 1.0 : 0.0));
      VectorField diff = r - want;
      defects.insert(defects.end(), diff.comp.begin(), diff.comp.end());
    }
  CHECK(max_at_samples(defects, chart) == 0.0);
}

TEST_CASE("structure law suite passes on hyperplane and sasakian") {
  for (Geometry g : {hyperplane(2, cfg()), sasakian(1, cfg())}) {
    Report r = run_structure_laws(g, cfg());
    INFO(g.name, ":\n", r.to_text());
    CHECK(r.all_passed());
  }
}

TEST_CASE("laws are skipped gracefully without a compatible structure") {
  Geometry g = cone(2, cfg());
  Report r = run_structure_laws(g, cfg());
  CHECK(r.all_passed());
  REQUIRE(r.records().size() == 1);
  CHECK(r.records()[0].notes.find("skipped") != std::string::npos);
}
