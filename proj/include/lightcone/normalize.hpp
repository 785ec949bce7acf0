#ifndef LIGHTCONE_NORMALIZE_HPP
#define LIGHTCONE_NORMALIZE_HPP

#include "lightcone/tractor.hpp"

namespace lightcone {

/// Screen connection given by raw coefficient matrices in the frame of one
/// screen form; the intermediate object of the normalization pipeline before
/// a morphism D is available.
struct ScreenConnection {
  std::shared_ptr<const ScreenForm> screen;
  std::vector<ExprMatrix> gamma;  // n entries of m x m, antisymmetric

  std::vector<Expr> nabla_components(const VectorField& v, const std::vector<Expr>& x) const;
  /// R(V,W) applied to frame components x.
  std::vector<Expr> curvature_components(const VectorField& v, const VectorField& w,
                                         const std::vector<Expr>& x) const;
};

/// Gate: the normalization applies only when A_Z is the identity, i.e. Z is
/// homothetic. Returns the sampled residual of A_Z - Id in the screen frame.
double homothetic_residual(const LightlikeStructure& s, const ScreenForm& tau,
                           const RunConfig& config);

/// Koszul-type formula for the unique screen connection compatible with the
/// collinearity normalization:
/// 2 h(nabla_W X, Y) = W h(X,Y) + X h(W,Y) - Y h(X,W)
///                     + h([W,X],Y) - h([X,Y],W) + h([Y,W],X).
/// The output is structurally antisymmetrized; `asym_residual` receives the
/// sampled size of the discarded symmetric part.
std::vector<ExprMatrix> koszul_connection(const LightlikeStructure& s, const ScreenForm& tau,
                                          const RunConfig& config, double* asym_residual);

struct DzSolution {
  std::vector<Expr> dz;  // frame components of D(Z)
  double residual;       // sampled defect of the determining equation
};

/// D(Z) from the trace of the determining equation
/// h(X,Y) D(Z) - h(Y, D(Z)) X = R(Z,X)Y; the equation has at most one
/// solution and may have none, so the defect is reported, never assumed zero.
DzSolution solve_dz(const ScreenConnection& conn, const RunConfig& config);

struct RicciData {
  ExprMatrix ric;        // m x m, not symmetrized
  Expr scalar;           // trace of ric
  double asym_residual;  // sampled |ric - ric^t|
};

RicciData ricci(const ScreenConnection& conn, const RunConfig& config);

/// Screen part of D from the Schouten-type formula
/// h(D(X),Y) = (Ric(X,Y) - S/(2(m-1)) h(X,Y)) / (m-2), combined with D(Z)
/// into the full coefficient table D0[a][j]. Requires m >= 3.
ExprMatrix schouten_d(const RicciData& rd, const std::vector<Expr>& dz, const ScreenForm& tau);

struct ConditionReport {
  double collinear_xi;       // non-xi components of R(V,W) xi
  double collinear_mixed;    // non-xi components of R(Z,V) Phi(W)
  double ricci_contraction;  // the contraction of the curvature action
  bool fd_used = false;
};

ConditionReport verify_conditions(const CompatibleStructure& cs, const RunConfig& config);

/// Residual of R(Z, d_a) s over the basis sections s in {xi, Phi(E_i), eta}.
/// Vanishing characterizes geometries that are locally bundles of scales of
/// a Riemannian conformal structure.
double scale_bundle_residual(const CompatibleStructure& cs, const RunConfig& config,
                             bool* fd_used = nullptr);

/// Max component residual of R(V,W)s over all coordinate pairs and basis
/// sections; zero exactly for the flat model.
double full_curvature_residual(const CompatibleStructure& cs, const RunConfig& config,
                               bool* fd_used = nullptr);

struct NormalizationResult {
  bool homothetic_ok = false;
  bool completed = false;  // pipeline ran to the end (requires m >= 3)
  std::optional<CompatibleStructure> structure;
  std::vector<Expr> dz;
  double dz_residual = 0.0;
  ExprMatrix ric;
  Expr scalar = Expr::constant(0.0);
  ConditionReport conditions;
  Report report;

  std::string to_json(const LightlikeStructure& s) const;
};

/// The full pipeline: homothetic gate, Koszul connection, D(Z), Ricci and
/// Schouten-type morphism, assembly, condition verification. Stages refuse
/// cleanly (recorded in the report) instead of producing bogus data.
NormalizationResult normalize_structure(std::shared_ptr<const ScreenForm> tau0,
                                        const RunConfig& config);

}  // namespace lightcone

#endif
