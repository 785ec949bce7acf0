#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lightcone/expr.hpp"

using namespace lightcone;

namespace {
const std::vector<std::string> kNames{"t", "u1", "u2"};
}

TEST_CASE("constant folding and absorption") {
  Expr t = Expr::coord(0);
  CHECK((Expr::constant(2.0) + Expr::constant(3.0)).eval(std::vector<double>{}) == 5.0);
  CHECK((t * Expr::constant(0.0)).is_zero());
  CHECK((t + Expr::constant(0.0)).id() == t.id());
  CHECK((t * Expr::constant(1.0)).id() == t.id());
  CHECK((t - t).is_zero());
  CHECK(t.pow(0).eval(std::vector<double>{1.7}) == 1.0);
  CHECK(t.pow(1).id() == t.id());
}

TEST_CASE("hash consing shares structurally equal trees") {
  Expr a = sin(Expr::coord(0)) * Expr::coord(1) + Expr::constant(2.0);
  Expr b = sin(Expr::coord(0)) * Expr::coord(1) + Expr::constant(2.0);
  CHECK(a.id() == b.id());
  // commutative canonical order
  Expr c = Expr::coord(1) * sin(Expr::coord(0)) + Expr::constant(2.0);
  CHECK(a.id() == c.id());
}

TEST_CASE("derivative of exp(2t)") {
  Expr t = Expr::coord(0);
  Expr e = exp(Expr::constant(2.0) * t);
  Expr d = e.diff(0);
  std::vector<double> p{0.3};
  CHECK(d.eval(p) == doctest::Approx(2.0 * std::exp(0.6)).epsilon(1e-12));
}

TEST_CASE("derivative of the conformal factor at the origin") {
  Expr u1 = Expr::coord(1), u2 = Expr::coord(2);
  Expr denom = Expr::constant(1.0) + u1 * u1 + u2 * u2;
  Expr e = Expr::constant(4.0) / denom.pow(2);
  std::vector<double> p{0.0, 0.0, 0.0};
  CHECK(e.diff(1).eval(p) == doctest::Approx(0.0));
  CHECK(e.diff(2).eval(p) == doctest::Approx(0.0));
}

TEST_CASE("derivative of sin at zero") {
  Expr x = Expr::coord(0);
  CHECK(sin(x).diff(0).eval(std::vector<double>{0.0}) == doctest::Approx(1.0));
}

TEST_CASE("fd crosscheck agrees for smooth expressions") {
  Expr t = Expr::coord(0);
  Expr e = exp(Expr::constant(2.0) * t);
  CHECK(fd_crosscheck(e, 0, std::vector<double>{0.3}) < 1e-8);
  CHECK(fd_crosscheck(Expr::constant(4.25), 0, std::vector<double>{0.1}) == 0.0);
}

TEST_CASE("fd crosscheck reports a domain violation at a pole") {
  Expr u = Expr::coord(0);
  Expr e = Expr::constant(1.0) / u;
  // the lower stencil point at 1e-5 with step 1e-5 lands on the pole
  CHECK_THROWS_AS((void)fd_crosscheck(e, 0, std::vector<double>{1e-5}, 1e-5), EvalDomainError);
}

TEST_CASE("evaluation domain errors") {
  Expr x = Expr::coord(0);
  CHECK_THROWS_AS((void)(Expr::constant(1.0) / x).eval(std::vector<double>{0.0}),
                  EvalDomainError);
  CHECK_THROWS_AS((void)log(x).eval(std::vector<double>{-1.0}), EvalDomainError);
  CHECK_THROWS_AS((void)sqrt(x).eval(std::vector<double>{-0.5}), EvalDomainError);
  CHECK_THROWS_AS((void)x.pow(-2).eval(std::vector<double>{0.0}), EvalDomainError);
}

TEST_CASE("parser handles the spec surface syntax") {
  Expr e = parse_expr("4/(1 + u1^2 + u2^2)^2", kNames);
  CHECK(e.eval(std::vector<double>{0.0, 1.0, 0.0}) == doctest::Approx(1.0));
  CHECK(parse_expr("pi", kNames).eval(std::vector<double>{}) ==
        doctest::Approx(3.14159265358979));
  CHECK(parse_expr("-t^2", kNames).eval(std::vector<double>{2.0}) == doctest::Approx(-4.0));
  CHECK(parse_expr("exp(2*t)*sin(u1)", kNames).eval(std::vector<double>{0.0, 1.5707963267948966}) ==
        doctest::Approx(1.0));
  CHECK(parse_expr("u1^(-2)", kNames).eval(std::vector<double>{0.0, 2.0}) ==
        doctest::Approx(0.25));
  CHECK_THROWS_AS((void)parse_expr("2 +", kNames), ParseError);
  CHECK_THROWS_AS((void)parse_expr("bogus + 1", kNames), ParseError);
  CHECK_THROWS_AS((void)parse_expr("t^u1", kNames), ParseError);
  CHECK_THROWS_AS((void)parse_expr("sin 3", kNames), ParseError);
}

TEST_CASE("print/parse round trip preserves values") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0.2, 1.4);
  std::vector<Expr> pool_exprs;
  Expr t = Expr::coord(0), u1 = Expr::coord(1), u2 = Expr::coord(2);
  pool_exprs.push_back(exp(Expr::constant(2.0) * t) * (Expr::constant(2.0) / (Expr::constant(1.0) + u1 * u1 + u2 * u2)).pow(2));
  pool_exprs.push_back(sqrt(Expr::constant(1.0) + u1 * u1) / (cos(t) + Expr::constant(2.0)));
  pool_exprs.push_back((t - u1 * u2).pow(3) - log(Expr::constant(1.5) + sin(u2)));
  pool_exprs.push_back(pool_exprs[0].diff(1).diff(2));
  for (const auto& e : pool_exprs) {
    Expr back = parse_expr(e.str(kNames), kNames);
    for (int k = 0; k < 25; ++k) {
      std::vector<double> p{uni(rng), uni(rng), uni(rng)};
      CHECK(back.eval(p) == doctest::Approx(e.eval(p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("derivative engine against the stencil on random composites") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> uni(0.3, 1.2);
  Expr t = Expr::coord(0), u1 = Expr::coord(1), u2 = Expr::coord(2);
  std::vector<Expr> es{
      exp(t * u1) * sin(u2) + sqrt(u1 + Expr::constant(2.0)),
      log(Expr::constant(1.0) + t * t) / (u1 + Expr::constant(3.0)),
      (sin(t) * cos(u1)).pow(2) - u2.pow(3) / (t + Expr::constant(2.0)),
  };
  for (const auto& e : es)
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < 10; ++k) {
        std::vector<double> p{uni(rng), uni(rng), uni(rng)};
        CHECK(fd_crosscheck(e, c, p) < 1e-6);
      }
}

TEST_CASE("evaluator shares values across expressions at one point") {
  Expr t = Expr::coord(0);
  Expr shared = exp(Expr::constant(2.0) * t);
  Expr a = shared * Expr::constant(3.0);
  Expr b = shared + Expr::constant(1.0);
  std::vector<double> p{0.25};
  Evaluator ev(p);
  CHECK(ev(a) == doctest::Approx(3.0 * std::exp(0.5)));
  CHECK(ev(b) == doctest::Approx(std::exp(0.5) + 1.0));
}
