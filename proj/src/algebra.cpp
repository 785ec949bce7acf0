#include "lightcone/algebra.hpp"

#include <random>
#include <stdexcept>

namespace lightcone::algebra {

Eigen::MatrixXd product_matrix(int m) {
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(m + 2, m + 2);
  S(0, m + 1) = 1.0;
  S(m + 1, 0) = 1.0;
  S.block(1, 1, m, m).setIdentity();
  return S;
}

Eigen::MatrixXd assemble(int m, double a, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& zrow, const Eigen::MatrixXd& skew) {
  if (x.size() != m || zrow.size() != m || skew.rows() != m || skew.cols() != m)
    throw std::invalid_argument("assemble: block sizes must match m");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 2, m + 2);
  M(0, 0) = a;
  M(m + 1, m + 1) = -a;
  M.block(1, 0, m, 1) = x;
  M.block(m + 1, 1, 1, m) = -x.transpose();
  M.block(0, 1, 1, m) = zrow.transpose();
  M.block(1, m + 1, m, 1) = -zrow;
  M.block(1, 1, m, m) = 0.5 * (skew - skew.transpose());
  return M;
}

Eigen::MatrixXd grading_element(int m) {
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(m + 2, m + 2);
  E(0, 0) = 1.0;
  E(m + 1, m + 1) = -1.0;
  return E;
}

double membership_residual(const Eigen::MatrixXd& M) {
  int m = static_cast<int>(M.rows()) - 2;
  Eigen::MatrixXd S = product_matrix(m);
  return (M.transpose() * S + S * M).cwiseAbs().maxCoeff();
}

GradedDecomposition grade_project(const Eigen::MatrixXd& M, double tol) {
  double res = membership_residual(M);
  if (res > tol)
    throw std::invalid_argument("grade_project: not in the model algebra (residual " +
                                format_sci(res) + ")");
  int m = static_cast<int>(M.rows()) - 2;
  GradedDecomposition d;
  d.a = M(0, 0);
  d.x = M.block(1, 0, m, 1);
  d.zrow = M.block(0, 1, 1, m).transpose();
  d.skew = M.block(1, 1, m, m);
  return d;
}

Eigen::MatrixXd bracket(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a * b - b * a;
}

Eigen::MatrixXd h_embed(const Eigen::VectorXd& w, const Eigen::MatrixXd& g, double ortho_tol) {
  int m = static_cast<int>(w.size());
  if (g.rows() != m || g.cols() != m) throw std::invalid_argument("h_embed: size mismatch");
  double ortho = (g.transpose() * g - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (ortho > ortho_tol)
    throw std::invalid_argument("h_embed: g not orthogonal (residual " + format_sci(ortho) + ")");
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m + 2, m + 2);
  s(0, 0) = 1.0;
  s(m + 1, m + 1) = 1.0;
  s.block(0, 1, 1, m) = -(g.transpose() * w).transpose();
  s(0, m + 1) = -0.5 * w.squaredNorm();
  s.block(1, 1, m, m) = g;
  s.block(1, m + 1, m, 1) = w;
  return s;
}

std::pair<double, Eigen::VectorXd> quotient_adjoint(const Eigen::VectorXd& w,
                                                    const Eigen::MatrixXd& g, double a,
                                                    const Eigen::VectorXd& x, double ortho_tol) {
  int m = static_cast<int>(w.size());
  double ortho = (g.transpose() * g - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
  if (ortho > ortho_tol) throw std::invalid_argument("quotient_adjoint: g not orthogonal");
  Eigen::VectorXd gx = g * x;
  return {a - w.dot(gx), gx};
}

namespace {

Eigen::MatrixXd random_orthogonal(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd Q = qr.householderQ();
  // fix the signs so Q is a deterministic function of A
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < m; ++i)
    if (R(i, i) < 0) Q.col(i) = -Q.col(i);
  return Q;
}

Eigen::VectorXd random_vec(int m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) v(i) = uni(rng);
  return v;
}

Eigen::MatrixXd random_grade(int m, int grade, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd zskew = Eigen::MatrixXd::Zero(m, m);
  switch (grade) {
    case -1: return assemble(m, 0.0, random_vec(m, rng), zero, zskew);
    case 1: return assemble(m, 0.0, zero, random_vec(m, rng), zskew);
    default: {
      Eigen::MatrixXd A(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A(i, j) = uni(rng);
      return assemble(m, uni(rng), zero, zero, A - A.transpose());
    }
  }
}

/// Residual of M against the grades in `allowed`: norm of the blocks outside
/// the allowed grades.
double off_grade_residual(const Eigen::MatrixXd& M, std::initializer_list<int> allowed) {
  GradedDecomposition d = grade_project(M, 1e-9);
  bool keep_m1 = false, keep_0 = false, keep_1 = false;
  for (int g : allowed) {
    if (g == -1) keep_m1 = true;
    if (g == 0) keep_0 = true;
    if (g == 1) keep_1 = true;
  }
  double r = 0.0;
  if (!keep_m1) r = std::max(r, d.x.cwiseAbs().maxCoeff());
  if (!keep_0) r = std::max(r, std::max(std::abs(d.a), d.skew.cwiseAbs().maxCoeff()));
  if (!keep_1) r = std::max(r, d.zrow.cwiseAbs().maxCoeff());
  return r;
}

}  // namespace

Report run_suite(int m, std::uint64_t seed, int random_pairs) {
  RunConfig cfg;
  cfg.seed = seed;
  cfg.tol = 1e-12;
  Report report("model algebra o(" + std::to_string(m + 1) + ",1)", cfg);
  std::mt19937_64 rng(seed ^ 0xa5a5a5a5deadbeefull);
  Eigen::MatrixXd S = product_matrix(m);
  Eigen::MatrixXd E = grading_element(m);

  // grading inclusions [g_i, g_j] in g_{i+j}
  double grading_res = 0.0;
  for (int gi = -1; gi <= 1; ++gi) {
    for (int gj = -1; gj <= 1; ++gj) {
      for (int k = 0; k < random_pairs; ++k) {
        Eigen::MatrixXd a = random_grade(m, gi, rng);
        Eigen::MatrixXd b = random_grade(m, gj, rng);
        Eigen::MatrixXd c = bracket(a, b);
        int sum = gi + gj;
        double r = (sum < -1 || sum > 1) ? c.cwiseAbs().maxCoeff()
                                         : off_grade_residual(c, {sum});
        grading_res = std::max(grading_res, r);
      }
    }
  }
  report.check("grading inclusions", "bracket grading relation", grading_res, 1e-12,
               9 * random_pairs);

  // ad(E) acts on g_k with eigenvalue k
  double ad_res = 0.0;
  for (int grade = -1; grade <= 1; ++grade) {
    for (int k = 0; k < random_pairs; ++k) {
      Eigen::MatrixXd M = random_grade(m, grade, rng);
      Eigen::MatrixXd r = bracket(E, M) - grade * M;
      ad_res = std::max(ad_res, r.cwiseAbs().maxCoeff());
    }
  }
  report.check("ad(grading element) eigenvalues {-1,0,1}", "eigenspace decomposition", ad_res,
               1e-12, 3 * random_pairs);

  // H embeds isometrically and fixes the first basis vector
  double h_res = 0.0, fix_res = 0.0, comp_res = 0.0, rep_res = 0.0;
  Eigen::VectorXd first = Eigen::VectorXd::Zero(m + 2);
  first(0) = 1.0;
  for (int k = 0; k < random_pairs; ++k) {
    Eigen::VectorXd w1 = random_vec(m, rng), w2 = random_vec(m, rng);
    Eigen::MatrixXd g1 = random_orthogonal(m, rng), g2 = random_orthogonal(m, rng);
    Eigen::MatrixXd s1 = h_embed(w1, g1), s2 = h_embed(w2, g2);
    h_res = std::max(h_res, (s1.transpose() * S * s1 - S).cwiseAbs().maxCoeff());
    fix_res = std::max(fix_res, (s1 * first - first).cwiseAbs().maxCoeff());

    // closure: the product is again an H element (isometry fixing l, with
    // the block pattern of the embedding)
    Eigen::MatrixXd prod = s1 * s2;
    comp_res = std::max(comp_res, (prod.transpose() * S * prod - S).cwiseAbs().maxCoeff());
    comp_res = std::max(comp_res, (prod * first - first).cwiseAbs().maxCoeff());
    Eigen::VectorXd wp = prod.block(1, m + 1, m, 1);
    Eigen::MatrixXd gp = prod.block(1, 1, m, m);
    comp_res = std::max(comp_res, (h_embed(wp, gp, 1e-9) - prod).cwiseAbs().maxCoeff());

    // representation law of the quotient adjoint, against conjugation
    double a0 = random_vec(1, rng)(0);
    Eigen::VectorXd x0 = random_vec(m, rng);
    auto [a1, x1] = quotient_adjoint(w2, g2, a0, x0);
    auto [a2, x2] = quotient_adjoint(w1, g1, a1, x1);
    auto [ac, xc] = quotient_adjoint(wp, gp, a0, x0);
    rep_res = std::max(rep_res, std::abs(a2 - ac));
    rep_res = std::max(rep_res, (x2 - xc).cwiseAbs().maxCoeff());

    // conjugation pushed to the quotient agrees with the quotient adjoint
    Eigen::MatrixXd M =
        assemble(m, a0, x0, random_vec(m, rng),
                 Eigen::MatrixXd::Zero(m, m));
    Eigen::MatrixXd conj = s1 * M * s1.inverse();
    GradedDecomposition d = grade_project(conj, 1e-8);
    auto [aq, xq] = quotient_adjoint(w1, g1, a0, x0);
    rep_res = std::max(rep_res, std::abs(d.a - aq));
    rep_res = std::max(rep_res, (d.x - xq).cwiseAbs().maxCoeff());
  }
  report.check("H isometry sigma^t S sigma = S", "group membership", h_res, 1e-12, random_pairs);
  report.check("H fixes the lightlike basis vector", "isotropy of l", fix_res, 1e-12,
               random_pairs);
  report.check("H closed under composition", "group closure", comp_res, 1e-10, random_pairs);
  report.check("quotient adjoint representation law", "composition and conjugation", rep_res,
               1e-12, random_pairs);

  // radical direction (1,0) is fixed by every H element
  double rad_res = 0.0;
  for (int k = 0; k < 32; ++k) {
    Eigen::VectorXd w = random_vec(m, rng);
    Eigen::MatrixXd g = random_orthogonal(m, rng);
    auto [a, x] = quotient_adjoint(w, g, 1.0, Eigen::VectorXd::Zero(m));
    rad_res = std::max(rad_res, std::abs(a - 1.0));
    rad_res = std::max(rad_res, x.cwiseAbs().maxCoeff());
  }
  report.check("radical direction is H-invariant", "invariance of (1,0)", rad_res, 1e-12, 32);

  return report;
}

}  // namespace lightcone::algebra
