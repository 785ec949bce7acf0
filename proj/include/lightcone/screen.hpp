#ifndef LIGHTCONE_SCREEN_HPP
#define LIGHTCONE_SCREEN_HPP

#include "lightcone/structure.hpp"

namespace lightcone {

/// A 1-form tau with tau(Z) = 1 together with an h-orthonormal frame
/// (E_1..E_m) of its annihilator An(tau). The frame is built once,
/// symbolically, so that downstream objects stay differentiable.
class ScreenForm {
 public:
  ScreenForm(StructurePtr s, OneForm tau, std::vector<VectorField> frame);

  const LightlikeStructure& structure() const { return *structure_; }
  const StructurePtr& structure_ptr() const { return structure_; }
  const OneForm& tau() const { return tau_; }
  const std::vector<VectorField>& frame() const { return frame_; }
  int m() const { return static_cast<int>(frame_.size()); }

  Expr operator()(const VectorField& v) const { return tau_(v); }

  /// P^tau(v) = v - tau(v) Z.
  VectorField project(const VectorField& v) const;

  /// Frame components h(V, E_i) of the screen projection of V.
  std::vector<Expr> frame_components(const VectorField& v) const;

  /// Reassemble sum_i c_i E_i as a coordinate vector field.
  VectorField from_frame_components(const std::vector<Expr>& c) const;

 private:
  StructurePtr structure_;
  OneForm tau_;
  std::vector<VectorField> frame_;
};

/// Builds the orthonormal frame by projecting coordinate fields with P^tau
/// and Gram-Schmidt orthonormalizing against h. Pivot order is coordinate
/// index ascending unless `pivot_order` overrides it; candidates whose
/// residual h-norm^2 at the chart center falls below `pivot_tol` are
/// skipped. Throws if tau(Z) != 1 at samples or if fewer than m independent
/// directions survive.
std::shared_ptr<const ScreenForm> make_screen(StructurePtr s, OneForm tau,
                                              const RunConfig& config,
                                              double pivot_tol = 1e-12,
                                              std::vector<int> pivot_order = {});

/// Deterministic smooth perturbation of a base screen form: tau0 plus a
/// small 1-form corrected to keep tau(Z) = 1. Used by the identity suites to
/// exercise the transformation laws away from the base.
std::shared_ptr<const ScreenForm> screen_variant(const ScreenForm& base, std::uint64_t k,
                                                 const RunConfig& config);

/// L_{tau,taubar} = sum_i tau(Ebar_i) Ebar_i over the frame of An(taubar).
VectorField L_field(const ScreenForm& tau, const ScreenForm& taubar);

/// K_{tau,taubar} = L - h(L,L)/2 Z; satisfies h(W,K) = tau(W) - taubar(W).
VectorField K_field(const ScreenForm& tau, const ScreenForm& taubar);

}  // namespace lightcone

#endif
