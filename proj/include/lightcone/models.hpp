#ifndef LIGHTCONE_MODELS_HPP
#define LIGHTCONE_MODELS_HPP

#include <optional>
#include <string>

#include "lightcone/tractor.hpp"

namespace lightcone {

/// A loaded or built geometry: the lightlike structure, optionally a base
/// screen form and a compatible structure relative to it.
struct Geometry {
  std::string name;
  StructurePtr structure;
  std::shared_ptr<const ScreenForm> tau0;          // may be null
  std::optional<CompatibleStructure> compat;       // may be absent
};

/// Future cone over the round sphere in stereographic coordinates
/// (t, u_1..u_m): h = e^{2t} (2/(1+|u|^2))^2 sum du_i^2, Z = d/dt, tau0 = dt.
/// The radial field is homothetic: L_Z h = 2h.
Geometry cone(int m, const RunConfig& config);

/// Degenerate hyperplane (r_0..r_m): h = sum_{i>=1} dr_i^2, Z = d/dr_0,
/// tau0 = dr_0, flat screen connection and D = screen projection.
Geometry hyperplane(int m, const RunConfig& config);

/// The standard contact structure on R^{2n+1} with coordinates
/// (x_1..x_n, y_1..y_n, z): eta = (dz - sum y_i dx_i)/2, Z = 2 d/dz,
/// g = eta (x) eta + (sum dx_i^2 + dy_i^2)/4. The builder derives
/// phi = -nabla^g Z, validates the defining axioms numerically and only then
/// assembles h = g - eta (x) eta with the Tanaka-type screen connection and
/// D = phi. A failed axiom aborts with the axiom named.
Geometry sasakian(int n, const RunConfig& config);

/// Embedding cross-check for the cone chart: pull the ambient Lorentzian
/// product back through (t,u) -> e^t (sigma(u), 1) and compare with h.
double cone_embedding_residual(const Geometry& g, const RunConfig& config);

/// Geometry spec files (JSON): name, dim, coords, metric (lower triangle of
/// expression strings), Z, optional tau0, optional structure {Gamma, D0},
/// domain, seed, spec_version.
Geometry load_spec(const std::string& path, const RunConfig& config);
Geometry load_spec_json(const std::string& text, const RunConfig& config);
std::string to_spec_json(const Geometry& g);

}  // namespace lightcone

#endif
