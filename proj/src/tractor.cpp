#include "lightcone/tractor.hpp"

#include <stdexcept>

namespace lightcone {

ExprMatrix expr_matrix(int rows, int cols) {
  return ExprMatrix(static_cast<std::size_t>(rows),
                    std::vector<Expr>(static_cast<std::size_t>(cols), Expr::constant(0.0)));
}

namespace {

bool same_screen(const ScreenForm& a, const ScreenForm& b) {
  if (&a == &b) return true;
  if (a.m() != b.m()) return false;
  for (int i = 0; i < a.m() + 1; ++i)
    if (!(a.tau().comp[static_cast<std::size_t>(i)] ==
          b.tau().comp[static_cast<std::size_t>(i)]))
      return false;
  return true;
}

}  // namespace

DerivedStructure::DerivedStructure(const CompatibleStructure& cs,
                                   std::shared_ptr<const ScreenForm> tau)
    : tau_(std::move(tau)) {
  const ScreenForm& base = *cs.tau0;
  const LightlikeStructure& s = base.structure();
  int n = cs.n(), m = cs.m();

  if (same_screen(base, *tau_)) {
    gamma_ = cs.Gamma;
    dcomp_ = cs.D0;
    return;
  }

  // nabla^{tau0}_V X for X in An(tau0), via the stored coefficients
  auto nabla0 = [&](const VectorField& v, const VectorField& x) {
    std::vector<Expr> xc = base.frame_components(x);
    VectorField out = zero_vector(s.chart);
    for (int j = 0; j < m; ++j) {
      Expr cj = v.apply(xc[static_cast<std::size_t>(j)]);
      for (int i = 0; i < m; ++i) {
        Expr g = Expr::constant(0.0);
        for (int a = 0; a < n; ++a)
          g = g + v.comp[static_cast<std::size_t>(a)] *
                      cs.Gamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
                              [static_cast<std::size_t>(j)];
        cj = cj + xc[static_cast<std::size_t>(i)] * g;
      }
      out = out + base.frame()[static_cast<std::size_t>(j)].scaled(cj);
    }
    return out;
  };

  auto d0_of = [&](const VectorField& v) {
    VectorField out = zero_vector(s.chart);
    for (int j = 0; j < m; ++j) {
      Expr c = Expr::constant(0.0);
      for (int a = 0; a < n; ++a)
        c = c + v.comp[static_cast<std::size_t>(a)] *
                    cs.D0[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
      out = out + base.frame()[static_cast<std::size_t>(j)].scaled(c);
    }
    return out;
  };

  VectorField L = L_field(base, *tau_);
  Expr hLL = s.h.pair(L, L);

  // derived connection: for Y in An(tau) with preimage X = P^{tau0}(Y),
  // nabla^tau_V Y = P^tau( nabla^{tau0}_V X - tau(X) V ) - h(X,V) L
  auto nabla_tau = [&](const VectorField& v, const VectorField& y) {
    VectorField x = base.project(y);
    VectorField inner = nabla0(v, x) - v.scaled(tau_->tau()(x));
    return tau_->project(inner) - L.scaled(s.h.pair(x, v));
  };

  gamma_.assign(static_cast<std::size_t>(n), expr_matrix(m, m));
  for (int a = 0; a < n; ++a) {
    VectorField da = coordinate_vector(s.chart, a);
    for (int i = 0; i < m; ++i) {
      VectorField nab = nabla_tau(da, tau_->frame()[static_cast<std::size_t>(i)]);
      for (int j = 0; j < m; ++j)
        gamma_[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
              [static_cast<std::size_t>(j)] =
                  s.h.pair(nab, tau_->frame()[static_cast<std::size_t>(j)]);
    }
  }

  // derived morphism:
  // D^tau(V) = P^tau( D^{tau0}(V) + h(L,L)/2 V ) - tau0(V) L - nabla^tau_V L
  dcomp_ = expr_matrix(n, m);
  for (int a = 0; a < n; ++a) {
    VectorField da = coordinate_vector(s.chart, a);
    VectorField inner = d0_of(da) + da.scaled(Expr::constant(0.5) * hLL);
    VectorField dv = tau_->project(inner) - L.scaled(base.tau()(da)) - nabla_tau(da, L);
    for (int j = 0; j < m; ++j)
      dcomp_[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] =
          s.h.pair(dv, tau_->frame()[static_cast<std::size_t>(j)]);
  }
}

std::vector<Expr> DerivedStructure::d_components(const VectorField& v) const {
  int mm = m();
  std::vector<Expr> out(static_cast<std::size_t>(mm), Expr::constant(0.0));
  for (int j = 0; j < mm; ++j) {
    Expr c = Expr::constant(0.0);
    for (int a = 0; a < n(); ++a)
      c = c + v.comp[static_cast<std::size_t>(a)] *
                  dcomp_[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(j)] = c;
  }
  return out;
}

std::vector<Expr> DerivedStructure::nabla_components(const VectorField& v,
                                                     const std::vector<Expr>& x) const {
  int mm = m();
  std::vector<Expr> out(static_cast<std::size_t>(mm), Expr::constant(0.0));
  for (int j = 0; j < mm; ++j) {
    Expr c = v.apply(x[static_cast<std::size_t>(j)]);
    for (int i = 0; i < mm; ++i) {
      Expr g = Expr::constant(0.0);
      for (int a = 0; a < n(); ++a)
        g = g + v.comp[static_cast<std::size_t>(a)] *
                    gamma_[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
                          [static_cast<std::size_t>(j)];
      c = c + x[static_cast<std::size_t>(i)] * g;
    }
    out[static_cast<std::size_t>(j)] = c;
  }
  return out;
}

VectorField DerivedStructure::nabla(const VectorField& v, const VectorField& y) const {
  return tau_->from_frame_components(nabla_components(v, tau_->frame_components(y)));
}

VectorField DerivedStructure::d_of(const VectorField& v) const {
  return tau_->from_frame_components(d_components(v));
}

TractorSection TractorSection::xi(int m) {
  return {Expr::constant(1.0), std::vector<Expr>(static_cast<std::size_t>(m), Expr::constant(0.0)),
          Expr::constant(0.0)};
}

TractorSection TractorSection::eta(int m) {
  return {Expr::constant(0.0), std::vector<Expr>(static_cast<std::size_t>(m), Expr::constant(0.0)),
          Expr::constant(1.0)};
}

TractorSection TractorSection::frame_basis(int m, int i) {
  TractorSection s{Expr::constant(0.0),
                   std::vector<Expr>(static_cast<std::size_t>(m), Expr::constant(0.0)),
                   Expr::constant(0.0)};
  s.x[static_cast<std::size_t>(i)] = Expr::constant(1.0);
  return s;
}

Expr tractor_metric(const TractorSection& s1, const TractorSection& s2) {
  if (s1.x.size() != s2.x.size())
    throw std::invalid_argument("tractor_metric: sections from different splittings");
  Expr out = s1.alpha * s2.beta + s1.beta * s2.alpha;
  for (std::size_t i = 0; i < s1.x.size(); ++i) out = out + s1.x[i] * s2.x[i];
  return out;
}

TractorSection transition(const ScreenForm& tau, const ScreenForm& taubar,
                          const TractorSection& s) {
  const LightlikeStructure& st = tau.structure();
  VectorField L = L_field(tau, taubar);
  Expr hLL = st.h.pair(L, L);
  VectorField X = tau.from_frame_components(s.x);

  TractorSection out;
  out.alpha = s.alpha + taubar.tau()(X) - Expr::constant(0.5) * hLL * s.beta;
  out.x = taubar.frame_components(X);  // frame components of P^{taubar}(X)
  std::vector<Expr> lc = taubar.frame_components(L);
  for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] = out.x[i] + s.beta * lc[i];
  out.beta = s.beta;
  return out;
}

TractorSection tractor_connection(const DerivedStructure& ds, const VectorField& w,
                                  const TractorSection& s) {
  const ScreenForm& scr = ds.screen();
  Expr tw = scr(w);
  std::vector<Expr> dw = ds.d_components(w);
  std::vector<Expr> pw = scr.frame_components(w);
  std::vector<Expr> nab = ds.nabla_components(w, s.x);

  TractorSection out;
  Expr hxd = Expr::constant(0.0), hxw = Expr::constant(0.0);
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    hxd = hxd + s.x[i] * dw[i];
    hxw = hxw + s.x[i] * pw[i];
  }
  out.alpha = w.apply(s.alpha) + s.alpha * tw - hxd;
  out.x.resize(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i)
    out.x[i] = s.alpha * pw[i] + s.beta * dw[i] + nab[i];
  out.beta = w.apply(s.beta) - s.beta * tw - hxw;
  return out;
}

TractorSection phi(const DerivedStructure& ds, const VectorField& w) {
  TractorSection out;
  out.alpha = ds.screen()(w);
  out.x = ds.screen().frame_components(w);
  out.beta = Expr::constant(0.0);
  return out;
}

TractorSection tractor_curvature(const DerivedStructure& ds, const VectorField& v,
                                 const VectorField& w, const TractorSection& s,
                                 std::int64_t node_budget) {
  auto start = static_cast<std::int64_t>(pool::size());
  auto guard = [&](const char* where) {
    if (static_cast<std::int64_t>(pool::size()) - start > node_budget)
      throw BudgetExceeded(std::string("tractor_curvature: node budget exceeded in ") + where);
  };
  TractorSection vw = tractor_connection(ds, v, tractor_connection(ds, w, s));
  guard("nabla_V nabla_W");
  TractorSection wv = tractor_connection(ds, w, tractor_connection(ds, v, s));
  guard("nabla_W nabla_V");
  TractorSection br = tractor_connection(ds, lie_bracket(v, w), s);
  guard("nabla_[V,W]");

  TractorSection out;
  out.alpha = vw.alpha - wv.alpha - br.alpha;
  out.beta = vw.beta - wv.beta - br.beta;
  out.x.resize(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) out.x[i] = vw.x[i] - wv.x[i] - br.x[i];
  return out;
}

std::vector<double> tractor_curvature_fd(const DerivedStructure& ds, const VectorField& v,
                                         const VectorField& w, const TractorSection& s,
                                         std::span<const double> point, double step) {
  const ScreenForm& scr = ds.screen();
  int mm = ds.m(), nn = ds.n();

  // Evaluates all components of nabla_U t at a point; the inner derivative
  // is symbolic (one connection application), the outer one below is
  // numeric.
  auto connection_at = [&](const VectorField& u, const TractorSection& t,
                           std::span<const double> p) {
    TractorSection r = tractor_connection(ds, u, t);
    Evaluator ev(p);
    std::vector<double> vals(static_cast<std::size_t>(mm) + 2);
    vals[0] = ev(r.alpha);
    for (int i = 0; i < mm; ++i) vals[static_cast<std::size_t>(i) + 1] = ev(r.x[static_cast<std::size_t>(i)]);
    vals[static_cast<std::size_t>(mm) + 1] = ev(r.beta);
    return vals;
  };

  // outer covariant derivative of the section field t = nabla_inner s,
  // evaluated numerically at `point`
  auto outer = [&](const VectorField& dir, const VectorField& inner) {
    TractorSection t = tractor_connection(ds, inner, s);
    Evaluator ev(point);

    // directional derivative of each component of t along dir
    std::vector<double> dt(static_cast<std::size_t>(mm) + 2, 0.0);
    for (int a = 0; a < nn; ++a) {
      double da = ev(dir.comp[static_cast<std::size_t>(a)]);
      if (da == 0.0) continue;
      std::vector<double> pp(point.begin(), point.end()), pm(point.begin(), point.end());
      pp[static_cast<std::size_t>(a)] += step;
      pm[static_cast<std::size_t>(a)] -= step;
      Evaluator evp(pp), evm(pm);
      auto comp_at = [&](Evaluator& e, int k) {
        if (k == 0) return e(t.alpha);
        if (k == mm + 1) return e(t.beta);
        return e(t.x[static_cast<std::size_t>(k - 1)]);
      };
      for (int k = 0; k < mm + 2; ++k)
        dt[static_cast<std::size_t>(k)] += da * (comp_at(evp, k) - comp_at(evm, k)) / (2 * step);
    }

    // remaining (zeroth-order) terms of the connection formula at `point`
    double tau_dir = ev(scr(dir));
    std::vector<double> dvals(static_cast<std::size_t>(mm)), pvals(static_cast<std::size_t>(mm));
    {
      std::vector<Expr> dc = ds.d_components(dir);
      std::vector<Expr> pc = scr.frame_components(dir);
      for (int i = 0; i < mm; ++i) {
        dvals[static_cast<std::size_t>(i)] = ev(dc[static_cast<std::size_t>(i)]);
        pvals[static_cast<std::size_t>(i)] = ev(pc[static_cast<std::size_t>(i)]);
      }
    }
    double alpha = ev(t.alpha), beta = ev(t.beta);
    std::vector<double> xs(static_cast<std::size_t>(mm));
    for (int i = 0; i < mm; ++i) xs[static_cast<std::size_t>(i)] = ev(t.x[static_cast<std::size_t>(i)]);

    // gamma contraction at the point
    std::vector<double> gx(static_cast<std::size_t>(mm), 0.0);
    for (int j = 0; j < mm; ++j) {
      double acc = 0.0;
      for (int i = 0; i < mm; ++i) {
        double g = 0.0;
        for (int a = 0; a < nn; ++a)
          g += ev(dir.comp[static_cast<std::size_t>(a)]) *
               ev(ds.gamma()[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
                            [static_cast<std::size_t>(j)]);
        acc += xs[static_cast<std::size_t>(i)] * g;
      }
      gx[static_cast<std::size_t>(j)] = acc;
    }

    std::vector<double> out(static_cast<std::size_t>(mm) + 2);
    double hxd = 0.0, hxw = 0.0;
    for (int i = 0; i < mm; ++i) {
      hxd += xs[static_cast<std::size_t>(i)] * dvals[static_cast<std::size_t>(i)];
      hxw += xs[static_cast<std::size_t>(i)] * pvals[static_cast<std::size_t>(i)];
    }
    out[0] = dt[0] + alpha * tau_dir - hxd;
    for (int i = 0; i < mm; ++i)
      out[static_cast<std::size_t>(i) + 1] = alpha * pvals[static_cast<std::size_t>(i)] +
                                             beta * dvals[static_cast<std::size_t>(i)] +
                                             dt[static_cast<std::size_t>(i) + 1] +
                                             gx[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(mm) + 1] = dt[static_cast<std::size_t>(mm) + 1] - beta * tau_dir - hxw;
    return out;
  };

  std::vector<double> a = outer(v, w);
  std::vector<double> b = outer(w, v);
  std::vector<double> c = connection_at(lie_bracket(v, w), s, point);
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k] - c[k];
  return out;
}

CurvatureValues::CurvatureValues(const DerivedStructure& ds, VectorField v, VectorField w,
                                 TractorSection s, const RunConfig& config)
    : ds_(ds), v_(std::move(v)), w_(std::move(w)), s_(std::move(s)) {
  try {
    symbolic_ = tractor_curvature(ds_, v_, w_, s_, config.node_budget);
  } catch (const BudgetExceeded&) {
    if (!config.fd_fallback) throw;
  }
}

std::vector<double> CurvatureValues::at(std::span<const double> point) const {
  if (symbolic_) {
    Evaluator ev(point);
    std::vector<double> out;
    out.reserve(symbolic_->x.size() + 2);
    out.push_back(ev(symbolic_->alpha));
    for (const auto& c : symbolic_->x) out.push_back(ev(c));
    out.push_back(ev(symbolic_->beta));
    return out;
  }
  return tractor_curvature_fd(ds_, v_, w_, s_, point);
}

VectorField galilean_extend(const DerivedStructure& ds, const VectorField& v,
                            const VectorField& w) {
  const ScreenForm& scr = ds.screen();
  const LightlikeStructure& s = scr.structure();
  Expr tw = scr(w);
  VectorField out = s.Z.scaled(v.apply(tw));
  out = out + scr.project(v).scaled(tw);
  out = out + scr.from_frame_components(ds.nabla_components(v, scr.frame_components(w)));
  return out;
}

VectorField galilean_torsion(const DerivedStructure& ds, const VectorField& v,
                             const VectorField& w) {
  return galilean_extend(ds, v, w) - galilean_extend(ds, w, v) - lie_bracket(v, w);
}

VectorField torsion_invariant(const DerivedStructure& ds, const VectorField& v,
                              const VectorField& w) {
  const ScreenForm& scr = ds.screen();
  const LightlikeStructure& s = scr.structure();
  VectorField tor = galilean_torsion(ds, v, w);
  Expr dtau = two_form_d(scr.tau(), v, w);
  Expr theta = s.h.pair(v, ds.d_of(w)) - s.h.pair(w, ds.d_of(v));
  return scr.project(tor) + s.Z.scaled(dtau + theta);
}

ExprMatrix j_endomorphism(const DerivedStructure& ds) {
  const ScreenForm& scr = ds.screen();
  const LightlikeStructure& s = scr.structure();
  int mm = ds.m();
  ExprMatrix J = expr_matrix(mm, mm);
  for (int i = 0; i < mm; ++i) {
    const VectorField& Ei = scr.frame()[static_cast<std::size_t>(i)];
    VectorField nab = ds.nabla(s.Z, Ei);
    VectorField br = lie_bracket(s.Z, Ei);
    VectorField Jv = nab - br;
    for (int j = 0; j < mm; ++j)
      J[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          s.h.pair(Jv, scr.frame()[static_cast<std::size_t>(j)]);
  }
  return J;
}

}  // namespace lightcone
