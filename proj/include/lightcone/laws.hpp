#ifndef LIGHTCONE_LAWS_HPP
#define LIGHTCONE_LAWS_HPP

#include "lightcone/models.hpp"
#include "lightcone/normalize.hpp"

namespace lightcone {

/// Structure validation plus the A_Z profile (residual against 0 and Id,
/// self-adjointness, eigenvalue stability across screen choices).
Report run_validate(const Geometry& g, const RunConfig& config);

/// Screen-level identities: frame quality, the difference fields L and K
/// with their defining relations, sum rules and frame independence.
Report run_screen_identities(const Geometry& g, const RunConfig& config);

/// Splitting and connection identities for the compatible structure:
/// transition cocycle and isometry, connection form in the splitting, metric
/// compatibility, transformation-law closure between derived screens,
/// Galilean identities, curvature component matches and J_sym = A_Z. Checks
/// needing a compatible structure are skipped (with a note) when absent.
Report run_structure_laws(const Geometry& g, const RunConfig& config);

/// Curvature-level reports: torsion-type invariant, collinearity profile,
/// the scale-bundle criterion and the full curvature table.
Report run_curvature_suite(const Geometry& g, const RunConfig& config);

}  // namespace lightcone

#endif
