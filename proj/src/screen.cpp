#include "lightcone/screen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace lightcone {

ScreenForm::ScreenForm(StructurePtr s, OneForm tau, std::vector<VectorField> frame)
    : structure_(std::move(s)), tau_(std::move(tau)), frame_(std::move(frame)) {
  if (static_cast<int>(frame_.size()) != structure_->m())
    throw std::invalid_argument("screen frame must have m fields");
}

VectorField ScreenForm::project(const VectorField& v) const {
  Expr tv = tau_(v);
  return v - structure_->Z.scaled(tv);
}

std::vector<Expr> ScreenForm::frame_components(const VectorField& v) const {
  std::vector<Expr> c(frame_.size());
  for (std::size_t i = 0; i < frame_.size(); ++i) c[i] = structure_->h.pair(v, frame_[i]);
  return c;
}

VectorField ScreenForm::from_frame_components(const std::vector<Expr>& c) const {
  VectorField out = zero_vector(structure_->chart);
  for (std::size_t i = 0; i < frame_.size(); ++i) out = out + frame_[i].scaled(c[i]);
  return out;
}

std::shared_ptr<const ScreenForm> make_screen(StructurePtr sp, OneForm tau,
                                              const RunConfig& config, double pivot_tol,
                                              std::vector<int> pivot_order) {
  const LightlikeStructure& s = *sp;
  // precondition: tau(Z) = 1 at samples
  Expr tz = tau(s.Z);
  double worst = 0.0;
  for (const auto& p : s.chart->samples(config.samples))
    worst = std::max(worst, std::abs(tz.eval(p) - 1.0));
  if (worst > 1e-9)
    throw std::invalid_argument("make_screen: tau(Z) != 1 (max deviation " +
                                format_sci(worst) + ")");

  auto center = s.chart->center();
  int n = s.n(), m = s.m();
  if (pivot_order.empty())
    for (int a = 0; a < n; ++a) pivot_order.push_back(a);
  std::vector<VectorField> frame;
  for (std::size_t idx = 0; idx < pivot_order.size() && static_cast<int>(frame.size()) < m;
       ++idx) {
    int a = pivot_order[idx];
    VectorField v = coordinate_vector(s.chart, a);
    Expr tv = tau(v);
    VectorField w = v - s.Z.scaled(tv);  // P^tau(v)
    for (const auto& e : frame) {
      Expr c = s.h.pair(w, e);
      w = w - e.scaled(c);
    }
    Expr norm2 = s.h.pair(w, w);
    double at_center = norm2.eval(center);
    if (at_center < pivot_tol) continue;  // degenerate or dependent direction
    frame.push_back(w.scaled(Expr::constant(1.0) / sqrt(norm2)));
  }
  if (static_cast<int>(frame.size()) != m)
    throw std::runtime_error("make_screen: Gram-Schmidt found only " +
                             std::to_string(frame.size()) + " of " + std::to_string(m) +
                             " screen directions");
  return std::make_shared<const ScreenForm>(std::move(sp), std::move(tau), std::move(frame));
}

VectorField L_field(const ScreenForm& tau, const ScreenForm& taubar) {
  VectorField out = zero_vector(taubar.structure().chart);
  for (const auto& e : taubar.frame()) out = out + e.scaled(tau(e));
  return out;
}

VectorField K_field(const ScreenForm& tau, const ScreenForm& taubar) {
  VectorField L = L_field(tau, taubar);
  Expr half_norm = Expr::constant(0.5) * tau.structure().h.pair(L, L);
  return L - tau.structure().Z.scaled(half_norm);
}

std::shared_ptr<const ScreenForm> screen_variant(const ScreenForm& base, std::uint64_t k,
                                                 const RunConfig& config) {
  const LightlikeStructure& s = base.structure();
  int n = s.n();
  std::mt19937_64 rng(s.chart->seed() ^ (0xc2b2ae3d27d4eb4full * (k + 1)));
  std::uniform_real_distribution<double> amp(-0.4, 0.4);
  std::uniform_int_distribution<int> pick_coord(0, n - 1);
  std::uniform_int_distribution<int> pick_kind(0, 2);

  // sigma = sum_a c_a f_a dx^a with bounded smooth f_a, then corrected along
  // tau0 so that the result still pairs to 1 with Z
  std::vector<Expr> sigma(static_cast<std::size_t>(n), Expr::constant(0.0));
  for (int a = 0; a < n; ++a) {
    Expr f;
    int c = pick_coord(rng);
    switch (pick_kind(rng)) {
      case 0: f = sin(Expr::coord(c)); break;
      case 1: f = cos(Expr::coord(c)); break;
      default: f = Expr::coord(c); break;
    }
    sigma[static_cast<std::size_t>(a)] = Expr::constant(amp(rng)) * f;
  }
  OneForm sig(s.chart, sigma);
  Expr sz = sig(s.Z);
  std::vector<Expr> comps(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a)
    comps[static_cast<std::size_t>(a)] = base.tau().comp[static_cast<std::size_t>(a)] +
                                         sigma[static_cast<std::size_t>(a)] -
                                         sz * base.tau().comp[static_cast<std::size_t>(a)];
  return make_screen(base.structure_ptr(), OneForm(s.chart, comps), config);
}

}  // namespace lightcone
