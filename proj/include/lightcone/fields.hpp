#ifndef LIGHTCONE_FIELDS_HPP
#define LIGHTCONE_FIELDS_HPP

#include <vector>

#include "lightcone/chart.hpp"
#include "lightcone/expr.hpp"

namespace lightcone {

/// Vector field in the coordinate basis of a chart.
struct VectorField {
  ChartPtr chart;
  std::vector<Expr> comp;  // comp.size() == chart->dim()

  VectorField() = default;
  VectorField(ChartPtr c, std::vector<Expr> comps);

  /// Directional derivative V(f) = sum_a V^a d_a f.
  Expr apply(Expr f) const;

  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField scaled(Expr f) const;
};

/// 1-form in the coordinate dual basis.
struct OneForm {
  ChartPtr chart;
  std::vector<Expr> comp;

  OneForm() = default;
  OneForm(ChartPtr c, std::vector<Expr> comps);

  Expr operator()(const VectorField& v) const;
};

/// Symmetric (0,2)-tensor; only the lower triangle is stored.
class MetricField {
 public:
  MetricField() = default;
  MetricField(ChartPtr chart, std::vector<std::vector<Expr>> lower);

  static MetricField zero(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }
  Expr operator()(int i, int j) const;
  void set(int i, int j, Expr e);

  /// h(V, W) as an expression.
  Expr pair(const VectorField& v, const VectorField& w) const;

 private:
  ChartPtr chart_;
  std::vector<std::vector<Expr>> lower_;  // lower_[i][j] for j <= i
};

VectorField zero_vector(ChartPtr chart);
VectorField coordinate_vector(ChartPtr chart, int a);

/// Symbolic inverse of a small matrix of expressions via the adjugate.
std::vector<std::vector<Expr>> symbolic_inverse(const std::vector<std::vector<Expr>>& a);

/// Christoffel symbols Gamma[k][i][j] of a non-degenerate symmetric metric
/// given as a full matrix of expressions. Used by builders that start from a
/// Riemannian metric; the degenerate metrics of the library never pass
/// through here.
std::vector<std::vector<std::vector<Expr>>> christoffel_symbols(
    const std::vector<std::vector<Expr>>& g, const ChartPtr& chart);

/// [V,W]^k = sum_a (V^a d_a W^k - W^a d_a V^k).
VectorField lie_bracket(const VectorField& v, const VectorField& w);

/// (L_Z h)_{ab} = Z^c d_c h_{ab} + h_{cb} d_a Z^c + h_{ac} d_b Z^c.
MetricField lie_derivative_metric(const MetricField& h, const VectorField& z);

/// d-omega(V,W) = V(omega(W)) - W(omega(V)) - omega([V,W]).
Expr two_form_d(const OneForm& omega, const VectorField& v, const VectorField& w);

}  // namespace lightcone

#endif
