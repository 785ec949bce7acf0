#ifndef LIGHTCONE_ALGEBRA_HPP
#define LIGHTCONE_ALGEBRA_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "lightcone/report.hpp"

namespace lightcone::algebra {

/// The model algebra is o(m+1,1) in the lightlike basis (l, e_1..e_m, n)
/// where the inner product matrix S has 1's in the corners and the identity
/// in the middle block. Elements are (m+2)x(m+2) matrices
///
///     ( a    Zrow   0   )
///     ( X    A     -Z^t )
///     ( 0   -X^t   -a   )
///
/// with A skew. The grading g_{-1} (+) g_0 (+) g_1 collects the X, (a,A)
/// and Zrow blocks; ad of the grading element acts with eigenvalue k on g_k.

Eigen::MatrixXd product_matrix(int m);  // S

struct GradedDecomposition {
  Eigen::VectorXd x;     // g_{-1}
  double a = 0.0;        // center of g_0
  Eigen::MatrixXd skew;  // [g_0, g_0] part
  Eigen::VectorXd zrow;  // g_1
};

Eigen::MatrixXd assemble(int m, double a, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& zrow, const Eigen::MatrixXd& skew);

Eigen::MatrixXd grading_element(int m);

/// Residual of the algebra membership condition M^t S + S M = 0.
double membership_residual(const Eigen::MatrixXd& M);

/// Exact block extraction; throws std::invalid_argument when the membership
/// residual exceeds `tol`.
GradedDecomposition grade_project(const Eigen::MatrixXd& M, double tol = 1e-12);

Eigen::MatrixXd bracket(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Group element of H from Euclidean data (w, g), g orthogonal.
Eigen::MatrixXd h_embed(const Eigen::VectorXd& w, const Eigen::MatrixXd& g,
                        double ortho_tol = 1e-12);

/// Quotient adjoint action of (w,g) on g/h ~ R x R^m: (a, X) -> (a - <w,gX>, gX).
std::pair<double, Eigen::VectorXd> quotient_adjoint(const Eigen::VectorXd& w,
                                                    const Eigen::MatrixXd& g, double a,
                                                    const Eigen::VectorXd& x,
                                                    double ortho_tol = 1e-12);

/// Full invariant suite for one value of m (grading inclusions, ad(E)
/// eigenvalues, H isometry/isotropy, representation law).
Report run_suite(int m, std::uint64_t seed, int random_pairs = 200);

}  // namespace lightcone::algebra

#endif
