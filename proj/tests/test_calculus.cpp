#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lightcone/laws.hpp"
#include "lightcone/models.hpp"
#include "lightcone/screen.hpp"

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

TEST_CASE("coordinate fields commute") {
  auto chart = make_chart({"t", "u1"}, {{-1, 1}, {-1, 1}}, 5);
  VectorField a = coordinate_vector(chart, 0), b = coordinate_vector(chart, 1);
  for (const auto& c : lie_bracket(a, b).comp) CHECK(c.is_zero());
}

TEST_CASE("bracket with a linear coefficient field") {
  auto chart = make_chart({"t", "u1"}, {{-1, 1}, {-1, 1}}, 5);
  // [t d_{u1}, d_t] = -d_{u1}
  VectorField v(chart, {Expr::constant(0.0), Expr::coord(0)});
  VectorField w = coordinate_vector(chart, 0);
  VectorField br = lie_bracket(v, w);
  CHECK(br.comp[0].is_zero());
  CHECK(br.comp[1].eval(std::vector<double>{0.4, 0.7}) == doctest::Approx(-1.0));
}

TEST_CASE("bracket on the cone chart") {
  auto chart = make_chart({"t", "u1"}, {{-1, 1}, {-1, 1}}, 5);
  // [d_t, e^{-t} d_{u1}] = -e^{-t} d_{u1}
  VectorField v = coordinate_vector(chart, 0);
  VectorField w(chart, {Expr::constant(0.0), exp(Expr::constant(-1.0) * Expr::coord(0))});
  VectorField br = lie_bracket(v, w);
  std::vector<double> p{0.3, 0.1};
  CHECK(br.comp[0].is_zero());
  CHECK(br.comp[1].eval(p) == doctest::Approx(-std::exp(-0.3)));
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi at samples") {
  auto chart = make_chart({"t", "u1", "u2"}, {{-1, 1}, {-1, 1}, {-1, 1}}, 11);
  VectorField a(chart, {sin(Expr::coord(1)), Expr::coord(0) * Expr::coord(2),
                        Expr::constant(1.0)});
  VectorField b(chart, {Expr::coord(2), cos(Expr::coord(0)), Expr::coord(1) * Expr::coord(1)});
  VectorField c(chart, {Expr::constant(0.5), exp(Expr::coord(2)), Expr::coord(0)});

  std::vector<Expr> defects;
  VectorField anti = lie_bracket(a, b) + lie_bracket(b, a);
  defects.insert(defects.end(), anti.comp.begin(), anti.comp.end());
  VectorField jac = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
                    lie_bracket(c, lie_bracket(a, b));
  defects.insert(defects.end(), jac.comp.begin(), jac.comp.end());
  CHECK(max_at_samples(defects, chart) < 1e-9);
}

TEST_CASE("Lie derivative of the hyperplane metric vanishes") {
  Geometry g = hyperplane(2, cfg());
  MetricField lzh = lie_derivative_metric(g.structure->h, g.structure->Z);
  std::vector<Expr> entries;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j) entries.push_back(lzh(i, j));
  CHECK(max_at_samples(entries, g.structure->chart) == 0.0);
}

TEST_CASE("Lie derivative of the cone metric is twice the metric") {
  Geometry g = cone(2, cfg());
  MetricField lzh = lie_derivative_metric(g.structure->h, g.structure->Z);
  std::vector<Expr> defects;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j)
      defects.push_back(lzh(i, j) - Expr::constant(2.0) * g.structure->h(i, j));
  CHECK(max_at_samples(defects, g.structure->chart) < 1e-12);
}

TEST_CASE("Lie derivative along the zero field vanishes") {
  Geometry g = cone(2, cfg());
  MetricField lzh = lie_derivative_metric(g.structure->h, zero_vector(g.structure->chart));
  std::vector<Expr> entries;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j) entries.push_back(lzh(i, j));
  CHECK(max_at_samples(entries, g.structure->chart) == 0.0);
}

TEST_CASE("radical endomorphism of the cone is the identity") {
  Geometry g = cone(3, cfg());
  auto az = radical_endomorphism(*g.structure, *g.tau0);
  std::vector<Expr> defects;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      defects.push_back(az[i][j] - Expr::constant(i == j ? 1.0 : 0.0));
  CHECK(max_at_samples(defects, g.structure->chart) < 1e-9);
}

TEST_CASE("radical endomorphism of the hyperplane vanishes") {
  Geometry g = hyperplane(3, cfg());
  auto az = radical_endomorphism(*g.structure, *g.tau0);
  std::vector<Expr> entries;
  for (auto& row : az)
    for (auto& e : row) entries.push_back(e);
  CHECK(max_at_samples(entries, g.structure->chart) < 1e-12);
}

TEST_CASE("radical endomorphism is symmetric and has screen-stable spectrum") {
  Geometry g = cone(2, cfg());
  Report r = run_validate(g, cfg());
  CHECK(r.all_passed());
}

TEST_CASE("structure validation accepts the builders and rejects junk") {
  CHECK(validate_structure(*cone(2, cfg()).structure, cfg()).all_passed());
  CHECK(validate_structure(*hyperplane(2, cfg()).structure, cfg()).all_passed());

  // a metric with a two-dimensional radical must fail the rank check
  auto chart = make_chart({"a", "b", "c"}, {{-1, 1}, {-1, 1}, {-1, 1}}, 3);
  MetricField h = MetricField::zero(chart);
  h.set(1, 1, Expr::constant(1.0));
  VectorField Z = coordinate_vector(chart, 0);
  LightlikeStructure bad{chart, h, Z};
  CHECK_FALSE(validate_structure(bad, cfg()).all_passed());
}
