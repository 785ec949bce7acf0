#ifndef LIGHTCONE_TRACTOR_HPP
#define LIGHTCONE_TRACTOR_HPP

#include <memory>
#include <optional>

#include "lightcone/screen.hpp"

namespace lightcone {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

using ExprMatrix = std::vector<std::vector<Expr>>;

ExprMatrix expr_matrix(int rows, int cols);

/// The pair (screen connection, screen morphism) stored at one base screen
/// form tau0:
///   Gamma[a](i,j) = h(nabla_{d_a} E_i, E_j)   (antisymmetric in i,j)
///   D0[a][j]      = h(D(d_a), E_j)
/// Data at every other screen form is derived on demand; see DerivedStructure.
struct CompatibleStructure {
  std::shared_ptr<const ScreenForm> tau0;
  std::vector<ExprMatrix> Gamma;  // n entries of m x m
  ExprMatrix D0;                  // n x m

  int n() const { return tau0->structure().n(); }
  int m() const { return tau0->m(); }
};

/// Connection and morphism data at an arbitrary screen form, expressed in
/// that screen's own frame. Obtained from a CompatibleStructure via the
/// transformation laws, which also makes those laws hold between any two
/// derived structures automatically.
class DerivedStructure {
 public:
  DerivedStructure(const CompatibleStructure& cs, std::shared_ptr<const ScreenForm> tau);

  const ScreenForm& screen() const { return *tau_; }
  const std::shared_ptr<const ScreenForm>& screen_ptr() const { return tau_; }
  const LightlikeStructure& structure() const { return tau_->structure(); }
  int n() const { return tau_->structure().n(); }
  int m() const { return tau_->m(); }

  /// h(D(V), E_j) for the frame of this screen.
  std::vector<Expr> d_components(const VectorField& v) const;

  /// Frame components of nabla^tau_V X for X given by frame components x.
  std::vector<Expr> nabla_components(const VectorField& v, const std::vector<Expr>& x) const;

  /// nabla^tau_V Y as a coordinate vector field, Y in An(tau).
  VectorField nabla(const VectorField& v, const VectorField& y) const;

  /// D(V) as a coordinate vector field.
  VectorField d_of(const VectorField& v) const;

  const std::vector<ExprMatrix>& gamma() const { return gamma_; }
  const ExprMatrix& dcomp() const { return dcomp_; }

 private:
  std::shared_ptr<const ScreenForm> tau_;
  std::vector<ExprMatrix> gamma_;  // n entries of m x m
  ExprMatrix dcomp_;               // n x m
};

/// A tractor section in the splitting of one screen form: scalar alpha, the
/// frame components of the An(tau) part, and scalar beta. The canonical
/// section xi is (1,0,0) in every splitting; eta^tau is (0,0,1).
struct TractorSection {
  Expr alpha;
  std::vector<Expr> x;
  Expr beta;

  static TractorSection xi(int m);
  static TractorSection eta(int m);
  static TractorSection frame_basis(int m, int i);
};

/// Bundle metric h(s1,s2) = a1 b2 + b1 a2 + <x1,x2>; the frame is
/// orthonormal, so the middle term is the Euclidean pairing of components.
Expr tractor_metric(const TractorSection& s1, const TractorSection& s2);

/// Sliding a section from the tau-splitting to the taubar-splitting:
/// (a, X, b) -> (a + taubar(X) - h(L,L)/2 b, P^taubar(X) + b L, b).
TractorSection transition(const ScreenForm& tau, const ScreenForm& taubar,
                          const TractorSection& s);

/// Covariant derivative in the splitting of `ds`:
///  ( W(a) + a tau(W) - h(X, D(W)) ;
///    a P(W) + b D(W) + nabla_W X ;
///    W(b) - b tau(W) - h(X, W) ).
TractorSection tractor_connection(const DerivedStructure& ds, const VectorField& w,
                                  const TractorSection& s);

/// Phi(W) = covariant derivative of xi in direction W = (tau(W), P(W), 0).
TractorSection phi(const DerivedStructure& ds, const VectorField& w);

/// R(V,W)s by double covariant differentiation minus the bracket term.
/// Throws BudgetExceeded when the expression pool grows past `node_budget`
/// during the computation (checked coarsely).
TractorSection tractor_curvature(const DerivedStructure& ds, const VectorField& v,
                                 const VectorField& w, const TractorSection& s,
                                 std::int64_t node_budget = 2'000'000);

/// Numeric fallback: the same curvature evaluated at a single point with the
/// outer covariant derivative taken by central differences.
std::vector<double> tractor_curvature_fd(const DerivedStructure& ds, const VectorField& v,
                                         const VectorField& w, const TractorSection& s,
                                         std::span<const double> point, double step = 1e-5);

/// One curvature computation R(V,W)s reusable across sample points: symbolic
/// when it fits the node budget, finite differences per point otherwise (or
/// a BudgetExceeded throw when the fallback is disabled).
class CurvatureValues {
 public:
  CurvatureValues(const DerivedStructure& ds, VectorField v, VectorField w, TractorSection s,
                  const RunConfig& config);

  bool fd() const { return !symbolic_.has_value(); }
  /// Components (alpha, x_1..x_m, beta) at one point.
  std::vector<double> at(std::span<const double> point) const;

 private:
  const DerivedStructure& ds_;
  VectorField v_, w_;
  TractorSection s_;
  std::optional<TractorSection> symbolic_;
};

/// Galilean extension of the screen connection:
/// tilde(V,W) = V(tau(W)) Z + tau(W) P(V) + nabla_V(P(W)).
VectorField galilean_extend(const DerivedStructure& ds, const VectorField& v,
                            const VectorField& w);

/// Torsion of the Galilean extension.
VectorField galilean_torsion(const DerivedStructure& ds, const VectorField& v,
                             const VectorField& w);

/// The torsion-type invariant independent of the screen choice:
/// T(V,W) = P(Tor(V,W)) + (d tau(V,W) + theta(V,W)) Z with
/// theta(V,W) = h(V, D(W)) - h(W, D(V)).
VectorField torsion_invariant(const DerivedStructure& ds, const VectorField& v,
                              const VectorField& w);

/// Matrix of J([V]) = [nabla_Z(P(V)) - [Z,V]] in the screen frame; its
/// symmetric part reproduces A_Z.
ExprMatrix j_endomorphism(const DerivedStructure& ds);

}  // namespace lightcone

#endif
