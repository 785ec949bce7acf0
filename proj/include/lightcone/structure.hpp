#ifndef LIGHTCONE_STRUCTURE_HPP
#define LIGHTCONE_STRUCTURE_HPP

#include <Eigen/Dense>

#include "lightcone/fields.hpp"
#include "lightcone/report.hpp"

namespace lightcone {

/// A chart together with a degenerate metric h and a radical generator Z.
/// The validity conditions — h(Z,.) = 0, h positive semidefinite of rank
/// exactly m = dim-1, Z nonvanishing — are checked numerically at sample
/// points by `validate`.
struct LightlikeStructure {
  ChartPtr chart;
  MetricField h;
  VectorField Z;

  int n() const { return chart->dim(); }
  int m() const { return chart->dim() - 1; }

  Eigen::MatrixXd metric_at(std::span<const double> point) const;
};

using StructurePtr = std::shared_ptr<const LightlikeStructure>;

/// Runs the structural checks at `config.samples` points. `rank_tol` decides
/// which eigenvalues count as zero when verifying the one-dimensional radical.
Report validate_structure(const LightlikeStructure& s, const RunConfig& config,
                          double rank_tol = 1e-9);

class ScreenForm;  // defined in screen.hpp

/// Matrix of A_Z on the screen frame of tau: M_ij = (L_Z h)(E_i, E_j) / 2.
/// A_Z is the endomorphism of TN/Rad(h) induced by the Lie derivative of h.
std::vector<std::vector<Expr>> radical_endomorphism(const LightlikeStructure& s,
                                                    const ScreenForm& tau);

}  // namespace lightcone

#endif
