#include "lightcone/laws.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace lightcone {

namespace {

struct Sampler {
  const LightlikeStructure& s;
  std::vector<std::vector<double>> pts;
  int skipped = 0;

  Sampler(const LightlikeStructure& st, const RunConfig& cfg)
      : s(st), pts(st.chart->samples(cfg.samples)) {}

  double max_expr(const std::vector<Expr>& exprs) {
    double worst = 0.0;
    for (const auto& p : pts) {
      try {
        Evaluator ev(p);
        for (const auto& e : exprs) worst = std::max(worst, std::abs(ev(e)));
      } catch (const EvalDomainError&) {
        ++skipped;
      }
    }
    return worst;
  }

  double max_vf(const VectorField& v) { return max_expr(v.comp); }
};

std::vector<Expr> section_residual(const TractorSection& a, const TractorSection& b) {
  std::vector<Expr> out{a.alpha - b.alpha, a.beta - b.beta};
  for (std::size_t i = 0; i < a.x.size(); ++i) out.push_back(a.x[i] - b.x[i]);
  return out;
}

TractorSection expression_section(const ChartPtr& chart, int m) {
  TractorSection s;
  s.alpha = sin(Expr::coord(0)) + Expr::constant(0.5);
  s.x.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    s.x[static_cast<std::size_t>(i)] =
        Expr::constant(0.3) * Expr::coord((i + 1) % chart->dim()) + Expr::constant(0.1 * (i + 1));
  s.beta = cos(Expr::coord(chart->dim() - 1)) - Expr::constant(0.25);
  return s;
}

/// Direction pool for curvature-type checks: the coordinate fields plus, on
/// request, fields with random low-degree polynomial coefficients.
std::vector<VectorField> direction_pool(const ChartPtr& chart, const RunConfig& config) {
  std::vector<VectorField> dirs;
  int n = chart->dim();
  for (int a = 0; a < n; ++a) dirs.push_back(coordinate_vector(chart, a));
  std::mt19937_64 rng(chart->seed() ^ 0x5bd1e995u);
  std::uniform_real_distribution<double> amp(-0.6, 0.6);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < config.random_fields; ++k) {
    std::vector<Expr> comps(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      Expr c = Expr::constant(amp(rng));
      c = c + Expr::constant(amp(rng)) * Expr::coord(pick(rng));
      c = c + Expr::constant(amp(rng)) * Expr::coord(pick(rng)) * Expr::coord(pick(rng));
      comps[static_cast<std::size_t>(a)] = c;
    }
    dirs.emplace_back(chart, std::move(comps));
  }
  return dirs;
}

Eigen::MatrixXd eval_matrix(const ExprMatrix& M, std::span<const double> p) {
  Eigen::MatrixXd out(M.size(), M.empty() ? 0 : M[0].size());
  Evaluator ev(p);
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M[i].size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ev(M[i][j]);
  return out;
}

std::vector<std::complex<double>> sorted_eigs(const Eigen::MatrixXd& M) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(M);
  std::vector<std::complex<double>> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    out.push_back(es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

}  // namespace

Report run_validate(const Geometry& g, const RunConfig& config) {
  const LightlikeStructure& s = *g.structure;
  Report report = validate_structure(s, config);

  if (!g.tau0) {
    CheckRecord rec;
    rec.name = "radical endomorphism profile";
    rec.anchor = "plumbing";
    rec.passed = true;
    rec.tolerance = 0;
    rec.notes = "skipped: no tau0 in the geometry";
    report.add(rec);
    return report;
  }

  Sampler smp(s, config);
  int m = s.m();
  auto az = radical_endomorphism(s, *g.tau0);

  std::vector<Expr> sym, vs_id, vs_zero;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (j < i)
        sym.push_back(az[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                      az[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
      vs_id.push_back(az[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                      Expr::constant(i == j ? 1.0 : 0.0));
      vs_zero.push_back(az[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  report.check("A_Z self-adjoint", "symmetry of the radical endomorphism", smp.max_expr(sym),
               1e-9, config.samples);

  double rid = smp.max_expr(vs_id), rzero = smp.max_expr(vs_zero);
  std::string profile = rid < 1e-9    ? "A_Z = Id (homothetic Z)"
                        : rzero < 1e-9 ? "A_Z = 0 (Killing-type Z)"
                                       : "A_Z generic";
  CheckRecord rec;
  rec.name = "A_Z profile";
  rec.anchor = "radical endomorphism";
  rec.samples = config.samples;
  rec.max_residual = std::min(rid, rzero);
  rec.tolerance = std::numeric_limits<double>::infinity();
  rec.passed = true;
  rec.notes = profile + "; |A_Z - Id| = " + format_sci(rid) + ", |A_Z| = " + format_sci(rzero);
  report.add(rec);

  // eigenvalue multiset is independent of the screen used to express A_Z
  auto taubar = screen_variant(*g.tau0, 17, config);
  auto az2 = radical_endomorphism(s, *taubar);
  double eig_res = 0.0;
  for (const auto& p : smp.pts) {
    Eigen::MatrixXd m1 = eval_matrix(az, p), m2 = eval_matrix(az2, p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(0.5 * (m1 + m1.transpose()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e2(0.5 * (m2 + m2.transpose()));
    eig_res = std::max(eig_res, (e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff());
  }
  report.check("A_Z eigenvalues independent of the screen", "frame covariance of A_Z", eig_res,
               1e-7, config.samples);
  return report;
}

Report run_screen_identities(const Geometry& g, const RunConfig& config) {
  Report report("screen identities", config);
  const LightlikeStructure& s = *g.structure;
  if (!g.tau0) {
    CheckRecord rec;
    rec.name = "screen identities";
    rec.anchor = "plumbing";
    rec.passed = true;
    rec.notes = "skipped: no tau0 in the geometry";
    report.add(rec);
    return report;
  }
  Sampler smp(s, config);
  int n = s.n(), m = s.m();

  auto tau = g.tau0;
  auto taubar = screen_variant(*tau, 1, config);
  auto tauhat = screen_variant(*tau, 2, config);
  auto alpha = screen_variant(*tau, 3, config);

  // frame quality for each screen
  for (const auto& [label, scr] :
       std::vector<std::pair<std::string, std::shared_ptr<const ScreenForm>>>{
           {"base", tau}, {"variant", taubar}}) {
    std::vector<Expr> defects;
    for (int i = 0; i < m; ++i) {
      defects.push_back((*scr)(scr->frame()[static_cast<std::size_t>(i)]));
      for (int j = 0; j <= i; ++j)
        defects.push_back(s.h.pair(scr->frame()[static_cast<std::size_t>(i)],
                                   scr->frame()[static_cast<std::size_t>(j)]) -
                          Expr::constant(i == j ? 1.0 : 0.0));
    }
    report.check("frame orthonormal and tau-annihilating (" + label + ")",
                 "screen frame construction", smp.max_expr(defects), 1e-9, config.samples);
  }

  // projector properties
  {
    std::vector<Expr> defects;
    VectorField pz = tau->project(s.Z);
    defects.insert(defects.end(), pz.comp.begin(), pz.comp.end());
    for (int a = 0; a < n; ++a) {
      VectorField v = coordinate_vector(s.chart, a);
      defects.push_back((*tau)(tau->project(v)));
      VectorField pp = tau->project(tau->project(v)) - tau->project(v);
      defects.insert(defects.end(), pp.comp.begin(), pp.comp.end());
    }
    report.check("screen projector annihilates tau and is idempotent", "projector identities",
                 smp.max_expr(defects), 1e-9, config.samples);
  }

  // self-difference fields vanish
  {
    std::vector<Expr> defects;
    VectorField l = L_field(*tau, *tau), k = K_field(*tau, *tau);
    defects.insert(defects.end(), l.comp.begin(), l.comp.end());
    defects.insert(defects.end(), k.comp.begin(), k.comp.end());
    report.check("L and K vanish for equal screens", "difference fields", smp.max_expr(defects),
                 1e-9, config.samples);
  }

  VectorField L = L_field(*tau, *taubar);
  VectorField K = K_field(*tau, *taubar);
  Expr hLL = s.h.pair(L, L);

  // pairing identity: h(W, K) = tau(W) - taubar(W)
  {
    std::vector<Expr> defects;
    for (int a = 0; a < n; ++a) {
      VectorField w = coordinate_vector(s.chart, a);
      defects.push_back(s.h.pair(w, K) - (*tau)(w) + (*taubar)(w));
    }
    report.check("h(W,K) recovers the screen difference", "difference field pairing",
                 smp.max_expr(defects), 1e-9, config.samples);
  }

  // tau(K) + taubar(K) = 0
  report.check("dual pairing of K is antisymmetric", "difference field duality",
               smp.max_expr({(*tau)(K) + (*taubar)(K)}), 1e-9, config.samples);

  // L_{tau,taubar} + L_{taubar,tau} = h(L,L) Z
  {
    VectorField sum = L + L_field(*taubar, *tau) - s.Z.scaled(hLL);
    report.check("L sum rule", "two-screen sum identity", smp.max_vf(sum), 1e-9, config.samples);
  }

  // L_{alpha,tau} + L_{tau,taubar} = L_{alpha,taubar} - h(L_{alpha,tau}, L_{tau,taubar}) Z,
  // equivalent to additivity of the K fields after projection
  {
    VectorField lat = L_field(*alpha, *tau);
    VectorField lab = L_field(*alpha, *taubar);
    VectorField lhs = lat + L - lab + s.Z.scaled(s.h.pair(lat, L));
    report.check("L cocycle rule", "three-screen sum identity", smp.max_vf(lhs), 1e-9,
                 config.samples);

    // K fields are additive on the nose
    VectorField kdiff = K_field(*alpha, *tau) + K_field(*tau, *taubar) - K_field(*alpha, *taubar);
    report.check("K additivity", "difference field additivity", smp.max_vf(kdiff), 1e-9,
                 config.samples);
  }

  // h(L,L) = h(K,K) = -2 taubar(K)
  report.check("norm identities of L and K", "difference field norms",
               smp.max_expr({hLL - s.h.pair(K, K), hLL + Expr::constant(2.0) * (*taubar)(K)}),
               1e-9, config.samples);

  // frame independence of L: rebuild the taubar frame with reversed pivots
  {
    std::vector<int> reversed;
    for (int a = n - 1; a >= 0; --a) reversed.push_back(a);
    auto taubar_rev = make_screen(g.structure, taubar->tau(), config, 1e-12, reversed);
    VectorField diff = L - L_field(*tau, *taubar_rev);
    report.check("L independent of the frame choice", "well-definedness of L", smp.max_vf(diff),
                 1e-9, config.samples);
  }
  return report;
}

Report run_structure_laws(const Geometry& g, const RunConfig& config) {
  Report report("structure transformation laws", config);
  const LightlikeStructure& s = *g.structure;
  if (!g.compat) {
    CheckRecord rec;
    rec.name = "transformation laws";
    rec.anchor = "plumbing";
    rec.passed = true;
    rec.notes = "skipped: no compatible structure in the geometry";
    report.add(rec);
    return report;
  }
  Sampler smp(s, config);
  const CompatibleStructure& cs = *g.compat;
  int n = s.n(), m = s.m();

  auto tau = cs.tau0;
  auto taubar = screen_variant(*tau, 1, config);
  auto tauhat = screen_variant(*tau, 2, config);

  DerivedStructure ds0(cs, tau);
  DerivedStructure dsb(cs, taubar);
  DerivedStructure dsh(cs, tauhat);

  std::vector<TractorSection> sections{TractorSection::xi(m), TractorSection::eta(m)};
  for (int i = 0; i < m; ++i) sections.push_back(TractorSection::frame_basis(m, i));
  sections.push_back(expression_section(s.chart, m));

  // transition for equal screens is the identity
  {
    std::vector<Expr> defects;
    for (const auto& sec : sections) {
      auto r = section_residual(transition(*tau, *tau, sec), sec);
      defects.insert(defects.end(), r.begin(), r.end());
    }
    report.check("transition at equal screens is the identity", "splitting transition",
                 smp.max_expr(defects), 1e-9, config.samples);
  }

  // canonical section is preserved: F(xi) = xi
  {
    auto r = section_residual(transition(*tau, *taubar, TractorSection::xi(m)),
                              TractorSection::xi(m));
    report.check("canonical lightlike section is transition-invariant",
                 "canonical section invariance", smp.max_expr(r), 1e-9, config.samples);
  }

  // transition isometry
  {
    std::vector<Expr> defects;
    for (std::size_t i = 0; i < sections.size(); ++i)
      for (std::size_t j = i; j < sections.size(); ++j) {
        TractorSection fi = transition(*tau, *taubar, sections[i]);
        TractorSection fj = transition(*tau, *taubar, sections[j]);
        defects.push_back(tractor_metric(fi, fj) - tractor_metric(sections[i], sections[j]));
      }
    report.check("transition preserves the tractor metric", "splitting isometry",
                 smp.max_expr(defects), 1e-9, config.samples);
  }

  // cocycle relation
  {
    std::vector<Expr> defects;
    for (const auto& sec : sections) {
      TractorSection via = transition(*taubar, *tauhat, transition(*tau, *taubar, sec));
      TractorSection direct = transition(*tau, *tauhat, sec);
      auto r = section_residual(via, direct);
      defects.insert(defects.end(), r.begin(), r.end());
    }
    report.check("transition cocycle", "gluing consistency", smp.max_expr(defects), 1e-9,
                 config.samples);
  }

  // covariant derivative of the canonical sections
  {
    std::vector<Expr> defects;
    for (int a = 0; a < n; ++a) {
      VectorField w = coordinate_vector(s.chart, a);
      TractorSection dxi = tractor_connection(ds0, w, TractorSection::xi(m));
      TractorSection want = phi(ds0, w);
      auto r1 = section_residual(dxi, want);
      defects.insert(defects.end(), r1.begin(), r1.end());

      TractorSection deta = tractor_connection(ds0, w, TractorSection::eta(m));
      TractorSection want2{Expr::constant(0.0), ds0.d_components(w), -(*tau)(w)};
      auto r2 = section_residual(deta, want2);
      defects.insert(defects.end(), r2.begin(), r2.end());
    }
    report.check("connection on the canonical sections", "splitting form of the connection",
                 smp.max_expr(defects), 1e-9, config.samples);
  }

  // embedding of the tangent bundle: isometry and radical mapping
  {
    std::vector<Expr> defects;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b <= a; ++b) {
        VectorField va = coordinate_vector(s.chart, a), vb = coordinate_vector(s.chart, b);
        defects.push_back(tractor_metric(phi(ds0, va), phi(ds0, vb)) - s.h.pair(va, vb));
      }
    auto r = section_residual(phi(ds0, s.Z), TractorSection::xi(m));
    defects.insert(defects.end(), r.begin(), r.end());
    report.check("tangent embedding is isometric and sends Z to xi", "embedding identities",
                 smp.max_expr(defects), 1e-9, config.samples);
  }

  // injectivity of the embedding at sample points
  {
    double worst = 1.0;
    for (const auto& p : smp.pts) {
      Evaluator ev(p);
      for (int a = 0; a < n; ++a) {
        TractorSection pw = phi(ds0, coordinate_vector(s.chart, a));
        double nrm = std::abs(ev(pw.alpha));
        for (const auto& c : pw.x) nrm = std::max(nrm, std::abs(ev(c)));
        worst = std::min(worst, nrm);
      }
    }
    CheckRecord rec;
    rec.name = "tangent embedding injective at samples";
    rec.anchor = "embedding rank";
    rec.samples = config.samples;
    rec.max_residual = worst;
    rec.tolerance = 0.0;
    rec.passed = worst > 1e-9;
    rec.notes = "minimum component norm of the embedded coordinate fields";
    report.add(rec);
  }

  std::vector<VectorField> dirs = direction_pool(s.chart, config);

  // metric compatibility of the tractor connection
  {
    std::vector<Expr> defects;
    for (const VectorField& w : dirs) {
      for (std::size_t i = 0; i < sections.size(); ++i)
        for (std::size_t j = i; j < sections.size(); ++j) {
          Expr lhs = w.apply(tractor_metric(sections[i], sections[j]));
          Expr rhs = tractor_metric(tractor_connection(ds0, w, sections[i]), sections[j]) +
                     tractor_metric(sections[i], tractor_connection(ds0, w, sections[j]));
          defects.push_back(lhs - rhs);
        }
    }
    report.check("tractor connection is metric", "metric compatibility", smp.max_expr(defects),
                 1e-9, config.samples);
  }

  // naturality of the transition with respect to the connection
  {
    std::vector<Expr> defects;
    for (const VectorField& w : dirs) {
      for (const auto& sec : sections) {
        TractorSection lhs = transition(*tau, *taubar, tractor_connection(ds0, w, sec));
        TractorSection rhs = tractor_connection(dsb, w, transition(*tau, *taubar, sec));
        auto r = section_residual(lhs, rhs);
        defects.insert(defects.end(), r.begin(), r.end());
      }
    }
    report.check("connection commutes with transitions", "naturality of the splitting change",
                 smp.max_expr(defects), 1e-8, config.samples);
  }

  // transformation-law closure between two derived screens
  {
    VectorField L = L_field(*taubar, *tauhat);
    std::vector<Expr> defects;
    for (int a = 0; a < n; ++a) {
      VectorField w = coordinate_vector(s.chart, a);
      for (int i = 0; i < m; ++i) {
        const VectorField& X = taubar->frame()[static_cast<std::size_t>(i)];
        VectorField lhs = dsh.nabla(w, tauhat->project(X));
        VectorField inner = dsb.nabla(w, X) - w.scaled((*tauhat)(X));
        VectorField rhs = tauhat->project(inner) - L.scaled(s.h.pair(X, w));
        VectorField diff = lhs - rhs;
        defects.insert(defects.end(), diff.comp.begin(), diff.comp.end());
      }
    }
    report.check("connection change law between derived screens", "first transformation law",
                 smp.max_expr(defects), 1e-8, config.samples);
  }
  {
    VectorField L = L_field(*taubar, *tauhat);
    Expr hLL = s.h.pair(L, L);
    std::vector<Expr> defects;
    for (int a = 0; a < n; ++a) {
      VectorField w = coordinate_vector(s.chart, a);
      VectorField lhs = dsh.d_of(w);
      VectorField inner = dsb.d_of(w) + w.scaled(Expr::constant(0.5) * hLL);
      VectorField rhs = tauhat->project(inner) - L.scaled((*taubar)(w)) - dsh.nabla(w, L);
      VectorField diff = lhs - rhs;
      defects.insert(defects.end(), diff.comp.begin(), diff.comp.end());
    }
    report.check("morphism change law between derived screens", "second transformation law",
                 smp.max_expr(defects), 1e-8, config.samples);
  }

  // consistency identities derived from the change laws
  {
    VectorField L = L_field(*tau, *taubar);
    Expr hLL = s.h.pair(L, L);
    std::vector<Expr> defects;
    for (int a = 0; a < n; ++a) {
      VectorField w = coordinate_vector(s.chart, a);
      for (int i = 0; i < m; ++i) {
        const VectorField& X = tau->frame()[static_cast<std::size_t>(i)];
        Expr lhs = s.h.pair(X, dsb.d_of(w));
        Expr rhs = s.h.pair(X, ds0.d_of(w)) + (*taubar)(X) * (*taubar)(w) -
                   Expr::constant(0.5) * hLL * s.h.pair(X, w) -
                   s.h.pair(X, ds0.nabla(w, tau->project(L)));
        defects.push_back(lhs - rhs);
      }
      Expr lhs2 = (*tau)(dsb.d_of(w)) + (*taubar)(ds0.d_of(w));
      Expr rhs2 = Expr::constant(-0.5) * w.apply(hLL) -
                  Expr::constant(0.5) * ((*tau)(w) + (*taubar)(w)) * hLL;
      defects.push_back(lhs2 - rhs2);
    }
    report.check("pairing consistency of the change laws", "derived consistency identities",
                 smp.max_expr(defects), 1e-8, config.samples);
  }

  // Galilean reformulation of the first change law
  {
    VectorField L = L_field(*tau, *taubar);
    std::vector<Expr> defects;
    for (const VectorField& v : dirs)
      for (const VectorField& w : dirs) {
        VectorField lhs = galilean_extend(dsb, v, w);
        VectorField rhs = taubar->project(galilean_extend(ds0, v, w)) +
                          s.Z.scaled(v.apply((*taubar)(w))) - L.scaled(s.h.pair(v, w));
        VectorField diff = lhs - rhs;
        defects.insert(defects.end(), diff.comp.begin(), diff.comp.end());
      }
    report.check("Galilean form of the connection change law", "extended connection change",
                 smp.max_expr(defects), 1e-8, config.samples);
  }

  // Galilean axioms of the extension
  for (const auto& [label, scr, dsp] :
       std::vector<std::tuple<std::string, std::shared_ptr<const ScreenForm>,
                              const DerivedStructure*>>{{"base", tau, &ds0},
                                                        {"variant", taubar, &dsb}}) {
    std::vector<Expr> defects;
    // clock form is parallel
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        VectorField v = coordinate_vector(s.chart, a), w = coordinate_vector(s.chart, b);
        defects.push_back(v.apply((*scr)(w)) - (*scr)(galilean_extend(*dsp, v, w)));
      }
    // vanishing gravitational field
    VectorField gz = galilean_extend(*dsp, s.Z, s.Z);
    defects.insert(defects.end(), gz.comp.begin(), gz.comp.end());
    // zero vorticity along Z
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j) {
        const VectorField& X = scr->frame()[static_cast<std::size_t>(i)];
        const VectorField& Y = scr->frame()[static_cast<std::size_t>(j)];
        defects.push_back(s.h.pair(galilean_extend(*dsp, X, s.Z), Y) -
                          s.h.pair(X, galilean_extend(*dsp, Y, s.Z)));
      }
    // clock component of the torsion is the exterior derivative
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < a; ++b) {
        VectorField v = coordinate_vector(s.chart, a), w = coordinate_vector(s.chart, b);
        defects.push_back((*scr)(galilean_torsion(*dsp, v, w)) -
                          two_form_d(scr->tau(), v, w));
      }
    // screen metric compatibility
    for (int a = 0; a < n; ++a) {
      VectorField v = coordinate_vector(s.chart, a);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j) {
          const VectorField& X = scr->frame()[static_cast<std::size_t>(i)];
          const VectorField& Y = scr->frame()[static_cast<std::size_t>(j)];
          defects.push_back(v.apply(s.h.pair(X, Y)) -
                            s.h.pair(galilean_extend(*dsp, v, X), Y) -
                            s.h.pair(X, galilean_extend(*dsp, v, Y)));
        }
    }
    report.check("Galilean axioms (" + label + ")", "clock-compatible extension",
                 smp.max_expr(defects), 1e-9, config.samples);
  }

  // curvature of the canonical section: component match and vanishing third slot
  {
    std::vector<Expr> first_defects, second_defects, third;
    for (std::size_t ia = 0; ia < dirs.size(); ++ia)
      for (std::size_t ib = 0; ib < ia; ++ib) {
        const VectorField& v = dirs[ia];
        const VectorField& w = dirs[ib];
        TractorSection r =
            tractor_curvature(ds0, v, w, TractorSection::xi(m), config.node_budget);
        Expr theta = s.h.pair(v, ds0.d_of(w)) - s.h.pair(w, ds0.d_of(v));
        VectorField tor = galilean_torsion(ds0, v, w);
        first_defects.push_back(r.alpha - (*tau)(tor) - theta);
        auto torc = tau->frame_components(tor);
        for (int i = 0; i < m; ++i)
          second_defects.push_back(r.x[static_cast<std::size_t>(i)] -
                                   torc[static_cast<std::size_t>(i)]);
        third.push_back(r.beta);
      }
    report.check("curvature of the canonical section: clock component",
                 "torsion form of the curvature", smp.max_expr(first_defects), 1e-8,
                 config.samples);
    report.check("curvature of the canonical section: screen component",
                 "torsion form of the curvature", smp.max_expr(second_defects), 1e-8,
                 config.samples);
    report.check("curvature of the canonical section: radical component vanishes",
                 "degenerate slot of the curvature", smp.max_expr(third), 1e-9, config.samples);
  }

  // skew-adjointness of the curvature operator
  {
    std::vector<Expr> defects;
    for (std::size_t ia = 0; ia < dirs.size(); ++ia)
      for (std::size_t ib = 0; ib < ia; ++ib) {
        const VectorField& v = dirs[ia];
        const VectorField& w = dirs[ib];
        for (std::size_t i = 0; i + 1 < sections.size(); ++i)
          for (std::size_t j = i; j + 1 < sections.size(); ++j) {
            TractorSection ri = tractor_curvature(ds0, v, w, sections[i], config.node_budget);
            TractorSection rj = tractor_curvature(ds0, v, w, sections[j], config.node_budget);
            defects.push_back(tractor_metric(ri, sections[j]) +
                              tractor_metric(sections[i], rj));
          }
      }
    report.check("curvature operator is metric-skew", "skew-adjointness", smp.max_expr(defects),
                 1e-8, config.samples);
  }

  // torsion-type invariant: antisymmetric and independent of the screen
  {
    std::vector<Expr> defects, indep;
    for (std::size_t ia = 0; ia < dirs.size(); ++ia)
      for (std::size_t ib = 0; ib < ia; ++ib) {
        const VectorField& v = dirs[ia];
        const VectorField& w = dirs[ib];
        VectorField t0 = torsion_invariant(ds0, v, w);
        VectorField anti = t0 + torsion_invariant(ds0, w, v);
        defects.insert(defects.end(), anti.comp.begin(), anti.comp.end());
        VectorField tb = torsion_invariant(dsb, v, w);
        VectorField diff = t0 - tb;
        indep.insert(indep.end(), diff.comp.begin(), diff.comp.end());
      }
    report.check("torsion invariant is antisymmetric", "torsion tensor", smp.max_expr(defects),
                 1e-9, config.samples);
    report.check("torsion invariant is screen-independent", "invariance of the torsion tensor",
                 smp.max_expr(indep), 1e-8, config.samples);
  }

  // intrinsic shape operator: symmetric part reproduces A_Z, spectrum stable
  {
    auto J0 = j_endomorphism(ds0);
    auto az = radical_endomorphism(s, *tau);
    std::vector<Expr> defects;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        defects.push_back(
            Expr::constant(0.5) * (J0[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                   J0[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) -
            az[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    report.check("symmetric part of the radial shape operator is A_Z",
                 "intrinsic part of the screen connection", smp.max_expr(defects), 1e-8,
                 config.samples);

    auto Jb = j_endomorphism(dsb);
    double eig_res = 0.0;
    for (const auto& p : smp.pts) {
      auto e0 = sorted_eigs(eval_matrix(J0, p));
      auto e1 = sorted_eigs(eval_matrix(Jb, p));
      for (std::size_t i = 0; i < e0.size(); ++i)
        eig_res = std::max(eig_res, std::abs(e0[i] - e1[i]));
    }
    report.check("radial shape operator has screen-independent spectrum",
                 "invariance of the shape operator", eig_res, 1e-7, config.samples);
  }

  return report;
}

Report run_curvature_suite(const Geometry& g, const RunConfig& config) {
  Report report("curvature suite", config);
  const LightlikeStructure& s = *g.structure;
  if (!g.compat) {
    CheckRecord rec;
    rec.name = "curvature suite";
    rec.anchor = "plumbing";
    rec.passed = true;
    rec.notes = "skipped: no compatible structure in the geometry";
    report.add(rec);
    return report;
  }
  Sampler smp(s, config);
  const CompatibleStructure& cs = *g.compat;
  int n = s.n(), m = s.m();
  DerivedStructure ds0(cs, cs.tau0);

  // table of curvature magnitudes per section class
  std::vector<std::pair<std::string, TractorSection>> secs;
  secs.emplace_back("canonical", TractorSection::xi(m));
  for (int i = 0; i < m; ++i)
    secs.emplace_back("screen_" + std::to_string(i + 1), TractorSection::frame_basis(m, i));
  secs.emplace_back("dual", TractorSection::eta(m));
  std::vector<VectorField> dirs = direction_pool(s.chart, config);
  for (const auto& [label, sec] : secs) {
    std::vector<Expr> comps;
    for (std::size_t ia = 0; ia < dirs.size(); ++ia)
      for (std::size_t ib = 0; ib < ia; ++ib) {
        TractorSection r = tractor_curvature(ds0, dirs[ia], dirs[ib], sec,
                                             config.node_budget);
        comps.push_back(r.alpha);
        comps.push_back(r.beta);
        comps.insert(comps.end(), r.x.begin(), r.x.end());
      }
    CheckRecord rec;
    rec.name = "curvature magnitude on " + label + " section";
    rec.anchor = "curvature table";
    rec.samples = config.samples;
    rec.max_residual = smp.max_expr(comps);
    rec.tolerance = std::numeric_limits<double>::infinity();
    rec.passed = true;
    rec.notes = "informational";
    report.add(rec);
  }

  // collinearity profile of R(V,W) xi
  {
    std::vector<Expr> noncanonical;
    for (std::size_t ia = 0; ia < dirs.size(); ++ia)
      for (std::size_t ib = 0; ib < ia; ++ib) {
        TractorSection r =
            tractor_curvature(ds0, dirs[ia], dirs[ib], TractorSection::xi(m),
                              config.node_budget);
        noncanonical.insert(noncanonical.end(), r.x.begin(), r.x.end());
        noncanonical.push_back(r.beta);
      }
    CheckRecord rec;
    rec.name = "collinearity defect of the canonical curvature";
    rec.anchor = "first normalization condition";
    rec.samples = config.samples;
    rec.max_residual = smp.max_expr(noncanonical);
    rec.tolerance = std::numeric_limits<double>::infinity();
    rec.passed = true;
    rec.notes = "informational; vanishes for normalized structures";
    report.add(rec);
  }

  // torsion invariant magnitude and screen independence
  {
    auto taubar = screen_variant(*cs.tau0, 1, config);
    DerivedStructure dsb(cs, taubar);
    std::vector<Expr> mag, indep;
    for (std::size_t ia = 0; ia < dirs.size(); ++ia)
      for (std::size_t ib = 0; ib < ia; ++ib) {
        const VectorField& v = dirs[ia];
        const VectorField& w = dirs[ib];
        VectorField t0 = torsion_invariant(ds0, v, w);
        mag.insert(mag.end(), t0.comp.begin(), t0.comp.end());
        VectorField diff = t0 - torsion_invariant(dsb, v, w);
        indep.insert(indep.end(), diff.comp.begin(), diff.comp.end());
      }
    CheckRecord rec;
    rec.name = "torsion invariant magnitude";
    rec.anchor = "torsion tensor";
    rec.samples = config.samples;
    rec.max_residual = smp.max_expr(mag);
    rec.tolerance = std::numeric_limits<double>::infinity();
    rec.passed = true;
    rec.notes = "informational";
    report.add(rec);
    report.check("torsion invariant independent of the screen", "invariance of the torsion tensor",
                 smp.max_expr(indep), 1e-8, config.samples);
  }

  // scale-bundle criterion
  {
    bool fd = false;
    double r = scale_bundle_residual(cs, config, &fd);
    report.check("scale-bundle criterion: radial curvature vanishes",
                 "bundle-of-scales characterization", r, fd ? config.fd_tol : config.tol,
                 config.samples, fd ? "finite-difference fallback engaged" : "");
  }

  // full curvature residual
  {
    bool fd = false;
    double r = full_curvature_residual(cs, config, &fd);
    CheckRecord rec;
    rec.name = "full curvature residual";
    rec.anchor = "flat model comparison";
    rec.samples = config.samples;
    rec.max_residual = r;
    rec.tolerance = std::numeric_limits<double>::infinity();
    rec.passed = true;
    rec.notes = "informational; zero exactly for the flat model";
    report.add(rec);
  }
  return report;
}

}  // namespace lightcone
