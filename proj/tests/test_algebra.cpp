#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lightcone/algebra.hpp"

using namespace lightcone::algebra;

namespace {
Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}
}  // namespace

TEST_CASE("grading element projects to the center of grade zero") {
  int m = 3;
  auto d = grade_project(grading_element(m));
  CHECK(d.a == doctest::Approx(1.0));
  CHECK(d.x.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(d.zrow.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(d.skew.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("a pure lower block is pure grade minus one") {
  int m = 3;
  Eigen::VectorXd x = vec({1.0, -2.0, 0.5});
  Eigen::MatrixXd M = assemble(m, 0.0, x, Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m));
  auto d = grade_project(M);
  CHECK((d.x - x).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(d.a == 0.0);
  CHECK(d.zrow.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grade projection is linear") {
  int m = 2;
  Eigen::VectorXd x = vec({0.7, -0.3});
  Eigen::MatrixXd M = grading_element(m) +
                      assemble(m, 0.0, x, Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m));
  auto d = grade_project(M);
  CHECK(d.a == doctest::Approx(1.0));
  CHECK((d.x - x).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(d.zrow.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("grade projection rejects matrices outside the algebra") {
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(4, 4);  // not in o(3,1)
  CHECK_THROWS_AS((void)grade_project(M), std::invalid_argument);
}

TEST_CASE("reassembling the graded blocks reproduces the matrix exactly") {
  int m = 4;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXd x(m), z(m);
    Eigen::MatrixXd A(m, m);
    for (int i = 0; i < m; ++i) {
      x(i) = uni(rng);
      z(i) = uni(rng);
      for (int j = 0; j < m; ++j) A(i, j) = uni(rng);
    }
    Eigen::MatrixXd M = assemble(m, uni(rng), x, z, A - A.transpose());
    auto d = grade_project(M);
    Eigen::MatrixXd back = assemble(m, d.a, d.x, d.zrow, d.skew);
    CHECK((back - M).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("adjoint action of the grading element") {
  int m = 3;
  Eigen::MatrixXd E = grading_element(m);
  Eigen::VectorXd x = vec({0.4, 1.1, -0.9});
  Eigen::MatrixXd Xel =
      assemble(m, 0.0, x, Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Zero(m, m));
  CHECK((bracket(E, Xel) + Xel).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::MatrixXd Zel =
      assemble(m, 0.0, Eigen::VectorXd::Zero(m), x, Eigen::MatrixXd::Zero(m, m));
  CHECK((bracket(E, Zel) - Zel).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(bracket(Xel, Xel).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("H embedding: identity, unipotent shape, corner entry") {
  int m = 3;
  Eigen::MatrixXd id = h_embed(Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Identity(m, m));
  CHECK((id - Eigen::MatrixXd::Identity(m + 2, m + 2)).cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd w = vec({1.0, 2.0, -1.0});
  Eigen::MatrixXd u = h_embed(w, Eigen::MatrixXd::Identity(m, m));
  CHECK(u(0, m + 1) == doctest::Approx(-0.5 * w.squaredNorm()));
  CHECK((u.block(0, 1, 1, m).transpose() + w).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK((u.block(1, m + 1, m, 1) - w).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  Eigen::MatrixXd S = product_matrix(m);
  CHECK((u.transpose() * S * u - S).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS((void)h_embed(w, 2.0 * Eigen::MatrixXd::Identity(m, m)),
                  std::invalid_argument);
}

TEST_CASE("quotient adjoint examples") {
  int m = 3;
  Eigen::VectorXd x = vec({0.3, -1.0, 0.8});
  auto [a0, x0] =
      quotient_adjoint(Eigen::VectorXd::Zero(m), Eigen::MatrixXd::Identity(m, m), 0.9, x);
  CHECK(a0 == doctest::Approx(0.9));
  CHECK((x0 - x).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  Eigen::VectorXd w = vec({1.0, 0.5, -2.0});
  auto [a1, x1] = quotient_adjoint(w, Eigen::MatrixXd::Identity(m, m), 0.0, x);
  CHECK(a1 == doctest::Approx(-w.dot(x)));
  CHECK((x1 - x).cwiseAbs().maxCoeff() == doctest::Approx(0.0));

  // the radical direction (1, 0) is fixed by the whole group
  Eigen::MatrixXd g(3, 3);
  g << 0, 1, 0, -1, 0, 0, 0, 0, 1;
  auto [a2, x2] = quotient_adjoint(w, g, 1.0, Eigen::VectorXd::Zero(m));
  CHECK(a2 == doctest::Approx(1.0));
  CHECK(x2.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("full invariant suite for m in {2,3,4}") {
  for (int m : {2, 3, 4}) {
    auto report = run_suite(m, 7);
    INFO(report.to_text());
    CHECK(report.all_passed());
  }
}
