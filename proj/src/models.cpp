#include "lightcone/models.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace lightcone {

namespace {

Expr sum_of_squares(const std::vector<Expr>& v) {
  Expr s = Expr::constant(0.0);
  for (const auto& e : v) s = s + e * e;
  return s;
}

}  // namespace

Geometry cone(int m, const RunConfig& config) {
  if (m < 2) throw std::invalid_argument("cone: m >= 2 required");
  std::vector<std::string> names{"t"};
  std::vector<std::pair<double, double>> box{{-1.0, 1.0}};
  for (int i = 1; i <= m; ++i) {
    names.push_back("u" + std::to_string(i));
    box.emplace_back(-2.0, 2.0);
  }
  ChartPtr chart = make_chart(names, box, config.seed ? config.seed : 20250801);
  int n = m + 1;

  std::vector<Expr> us;
  for (int i = 1; i <= m; ++i) us.push_back(Expr::coord(i));
  Expr t = Expr::coord(0);
  Expr denom = Expr::constant(1.0) + sum_of_squares(us);
  Expr conf = exp(Expr::constant(2.0) * t) * (Expr::constant(2.0) / denom).pow(2);

  MetricField h = MetricField::zero(chart);
  for (int i = 1; i < n; ++i) h.set(i, i, conf);

  std::vector<Expr> zc(static_cast<std::size_t>(n), Expr::constant(0.0));
  zc[0] = Expr::constant(1.0);
  VectorField Z(chart, zc);

  auto structure = std::make_shared<const LightlikeStructure>(LightlikeStructure{chart, h, Z});

  std::vector<Expr> tc(static_cast<std::size_t>(n), Expr::constant(0.0));
  tc[0] = Expr::constant(1.0);
  auto tau0 = make_screen(structure, OneForm(chart, tc), config);

  return {"cone", structure, tau0, std::nullopt};
}

double cone_embedding_residual(const Geometry& g, const RunConfig& config) {
  const LightlikeStructure& s = *g.structure;
  int n = s.n(), m = s.m();
  Expr t = Expr::coord(0);
  std::vector<Expr> us;
  for (int i = 1; i <= m; ++i) us.push_back(Expr::coord(i));
  Expr denom = Expr::constant(1.0) + sum_of_squares(us);

  // ambient map v(t,u) = e^t (sigma(u), 1) with sigma the inverse
  // stereographic parametrization of the unit sphere
  std::vector<Expr> v;
  Expr et = exp(t);
  for (int i = 0; i < m; ++i) v.push_back(et * (Expr::constant(2.0) * us[static_cast<std::size_t>(i)] / denom));
  v.push_back(et * ((Expr::constant(1.0) - sum_of_squares(us)) / denom));
  v.push_back(et);

  // pullback of sum dv_i^2 - dv_last^2
  std::vector<Expr> defects;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b <= a; ++b) {
      Expr acc = Expr::constant(0.0);
      for (std::size_t k = 0; k < v.size(); ++k) {
        Expr term = v[k].diff(a) * v[k].diff(b);
        acc = (k + 1 == v.size()) ? acc - term : acc + term;
      }
      defects.push_back(acc - s.h(a, b));
    }
  }
  double worst = 0.0;
  for (const auto& p : s.chart->samples(config.samples)) {
    Evaluator ev(p);
    for (const auto& d : defects) worst = std::max(worst, std::abs(ev(d)));
  }
  return worst;
}

Geometry hyperplane(int m, const RunConfig& config) {
  if (m < 2) throw std::invalid_argument("hyperplane: m >= 2 required");
  std::vector<std::string> names;
  std::vector<std::pair<double, double>> box;
  for (int i = 0; i <= m; ++i) {
    names.push_back("r" + std::to_string(i));
    box.emplace_back(-1.0, 1.0);
  }
  ChartPtr chart = make_chart(names, box, config.seed ? config.seed : 20250802);
  int n = m + 1;

  MetricField h = MetricField::zero(chart);
  for (int i = 1; i < n; ++i) h.set(i, i, Expr::constant(1.0));
  std::vector<Expr> zc(static_cast<std::size_t>(n), Expr::constant(0.0));
  zc[0] = Expr::constant(1.0);
  VectorField Z(chart, zc);
  auto structure = std::make_shared<const LightlikeStructure>(LightlikeStructure{chart, h, Z});

  std::vector<Expr> tc(static_cast<std::size_t>(n), Expr::constant(0.0));
  tc[0] = Expr::constant(1.0);
  auto tau0 = make_screen(structure, OneForm(chart, tc), config);

  // flat screen connection; D is the screen projection
  std::vector<ExprMatrix> gamma(static_cast<std::size_t>(n), expr_matrix(m, m));
  ExprMatrix d0 = expr_matrix(n, m);
  for (int a = 0; a < n; ++a) {
    VectorField da = coordinate_vector(chart, a);
    auto pc = tau0->frame_components(da);
    for (int j = 0; j < m; ++j) d0[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] = pc[static_cast<std::size_t>(j)];
  }
  CompatibleStructure cs{tau0, std::move(gamma), std::move(d0)};
  return {"hyperplane", structure, tau0, std::move(cs)};
}

Geometry sasakian(int ncontact, const RunConfig& config) {
  if (ncontact < 1) throw std::invalid_argument("sasakian: n >= 1 required");
  int dim = 2 * ncontact + 1;
  std::vector<std::string> names;
  std::vector<std::pair<double, double>> box;
  for (int i = 1; i <= ncontact; ++i) {
    names.push_back("x" + std::to_string(i));
    box.emplace_back(-1.0, 1.0);
  }
  for (int i = 1; i <= ncontact; ++i) {
    names.push_back("y" + std::to_string(i));
    box.emplace_back(-1.0, 1.0);
  }
  names.push_back("z");
  box.emplace_back(-1.0, 1.0);
  ChartPtr chart = make_chart(names, box, config.seed ? config.seed : 20250803);

  // eta = (dz - sum y_i dx_i)/2, Z = 2 d/dz
  std::vector<Expr> etac(static_cast<std::size_t>(dim), Expr::constant(0.0));
  for (int i = 0; i < ncontact; ++i)
    etac[static_cast<std::size_t>(i)] =
        Expr::constant(-0.5) * Expr::coord(ncontact + i);
  etac[static_cast<std::size_t>(dim - 1)] = Expr::constant(0.5);
  OneForm eta(chart, etac);

  std::vector<Expr> zc(static_cast<std::size_t>(dim), Expr::constant(0.0));
  zc[static_cast<std::size_t>(dim - 1)] = Expr::constant(2.0);
  VectorField Z(chart, zc);

  // g = eta (x) eta + (dx^2 + dy^2)/4
  std::vector<std::vector<Expr>> g(static_cast<std::size_t>(dim),
                                   std::vector<Expr>(static_cast<std::size_t>(dim)));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          etac[static_cast<std::size_t>(a)] * etac[static_cast<std::size_t>(b)];
  for (int a = 0; a < dim - 1; ++a)
    g[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] =
        g[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] + Expr::constant(0.25);

  auto christoffel = christoffel_symbols(g, chart);

  auto cov = [&](const VectorField& v, const VectorField& w) {
    std::vector<Expr> out(static_cast<std::size_t>(dim), Expr::constant(0.0));
    for (int k = 0; k < dim; ++k) {
      Expr acc = v.apply(w.comp[static_cast<std::size_t>(k)]);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          acc = acc + christoffel[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]
                                 [static_cast<std::size_t>(b)] *
                          v.comp[static_cast<std::size_t>(a)] * w.comp[static_cast<std::size_t>(b)];
      out[static_cast<std::size_t>(k)] = acc;
    }
    return VectorField(chart, out);
  };

  auto gpair = [&](const VectorField& v, const VectorField& w) {
    Expr acc = Expr::constant(0.0);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b)
        acc = acc + g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
                        v.comp[static_cast<std::size_t>(a)] * w.comp[static_cast<std::size_t>(b)];
    return acc;
  };

  // phi = -nabla^g Z, as a column table phi(d_a)
  std::vector<VectorField> phi_of;
  for (int a = 0; a < dim; ++a) {
    VectorField c = cov(coordinate_vector(chart, a), Z);
    std::vector<Expr> neg(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k)
      neg[static_cast<std::size_t>(k)] = Expr::constant(-1.0) * c.comp[static_cast<std::size_t>(k)];
    phi_of.emplace_back(chart, std::move(neg));
  }
  auto phi = [&](const VectorField& v) {
    VectorField out = zero_vector(chart);
    for (int a = 0; a < dim; ++a)
      out = out + phi_of[static_cast<std::size_t>(a)].scaled(v.comp[static_cast<std::size_t>(a)]);
    return out;
  };

  // validate the defining axioms before emitting anything
  auto pts = chart->samples(config.samples);
  auto check = [&](const std::vector<Expr>& defects, const std::string& which) {
    double worst = 0.0;
    for (const auto& p : pts) {
      Evaluator ev(p);
      for (const auto& d : defects) worst = std::max(worst, std::abs(ev(d)));
    }
    if (worst > 1e-8)
      throw std::runtime_error("sasakian: axiom '" + which + "' fails with residual " +
                               format_sci(worst));
  };

  check({gpair(Z, Z) - Expr::constant(1.0)}, "unit radical generator");
  {
    std::vector<Expr> d;
    // Killing: Z(g(V,W)) - g([Z,V],W) - g(V,[Z,W]) for coordinate fields
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b <= a; ++b) {
        VectorField va = coordinate_vector(chart, a), vb = coordinate_vector(chart, b);
        d.push_back(Z.apply(gpair(va, vb)) - gpair(lie_bracket(Z, va), vb) -
                    gpair(va, lie_bracket(Z, vb)));
      }
    check(d, "Killing field");
  }
  {
    std::vector<Expr> d;
    for (int a = 0; a < dim; ++a) {
      VectorField va = coordinate_vector(chart, a);
      VectorField pp = phi(phi(va));
      Expr ev_ = eta(va);
      for (int k = 0; k < dim; ++k)
        d.push_back(pp.comp[static_cast<std::size_t>(k)] + va.comp[static_cast<std::size_t>(k)] -
                    ev_ * Z.comp[static_cast<std::size_t>(k)]);
    }
    check(d, "phi^2 = -Id + eta (x) Z");
  }
  {
    std::vector<Expr> d;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        VectorField va = coordinate_vector(chart, a), vb = coordinate_vector(chart, b);
        VectorField lhs = cov(va, phi(vb)) - phi(cov(va, vb));
        Expr gvw = gpair(va, vb), gwz = gpair(vb, Z);
        for (int k = 0; k < dim; ++k)
          d.push_back(lhs.comp[static_cast<std::size_t>(k)] -
                      gvw * Z.comp[static_cast<std::size_t>(k)] +
                      gwz * va.comp[static_cast<std::size_t>(k)]);
      }
    check(d, "covariant derivative of phi");
  }
  {
    // derived relations: d-eta(V,W) = 2 g(V, phi(W)) and g(V,W) =
    // g(phi V, phi W) + eta(V) eta(W)
    std::vector<Expr> d;
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        VectorField va = coordinate_vector(chart, a), vb = coordinate_vector(chart, b);
        d.push_back(two_form_d(eta, va, vb) - Expr::constant(2.0) * gpair(va, phi(vb)));
        d.push_back(gpair(va, vb) - gpair(phi(va), phi(vb)) - eta(va) * eta(vb));
      }
    check(d, "derived contact relations");
  }

  // h = g - eta (x) eta
  MetricField h = MetricField::zero(chart);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b <= a; ++b)
      h.set(a, b,
            g[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] -
                etac[static_cast<std::size_t>(a)] * etac[static_cast<std::size_t>(b)]);

  auto structure = std::make_shared<const LightlikeStructure>(LightlikeStructure{chart, h, Z});
  auto tau0 = make_screen(structure, eta, config);
  int m = dim - 1;

  // screen connection from the Tanaka-type formula restricted to An(eta):
  // nabla_V X = nabla^g_V X + eta(V) phi(X) + g(V, phi(X)) Z
  std::vector<ExprMatrix> gamma(static_cast<std::size_t>(dim), expr_matrix(m, m));
  for (int a = 0; a < dim; ++a) {
    VectorField da = coordinate_vector(chart, a);
    for (int i = 0; i < m; ++i) {
      const VectorField& Ei = tau0->frame()[static_cast<std::size_t>(i)];
      VectorField nab = cov(da, Ei) + phi(Ei).scaled(eta(da)) + Z.scaled(gpair(da, phi(Ei)));
      for (int j = 0; j < m; ++j)
        gamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
             [static_cast<std::size_t>(j)] = h.pair(nab, tau0->frame()[static_cast<std::size_t>(j)]);
    }
  }
  // D = phi
  ExprMatrix d0 = expr_matrix(dim, m);
  for (int a = 0; a < dim; ++a) {
    VectorField pa = phi(coordinate_vector(chart, a));
    for (int j = 0; j < m; ++j)
      d0[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)] =
          h.pair(pa, tau0->frame()[static_cast<std::size_t>(j)]);
  }

  CompatibleStructure cs{tau0, std::move(gamma), std::move(d0)};
  return {"sasakian", structure, tau0, std::move(cs)};
}

namespace {

using nlohmann::ordered_json;

std::string expr_str(const Expr& e, const ChartPtr& chart) { return e.str(chart->names()); }

}  // namespace

std::string to_spec_json(const Geometry& g) {
  const LightlikeStructure& s = *g.structure;
  const ChartPtr& chart = s.chart;
  int n = s.n();
  ordered_json j;
  j["spec_version"] = 1;
  j["name"] = g.name;
  j["dim"] = n;
  j["coords"] = chart->names();
  ordered_json metric = ordered_json::array();
  for (int i = 0; i < n; ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k <= i; ++k) row.push_back(expr_str(s.h(i, k), chart));
    metric.push_back(std::move(row));
  }
  j["metric"] = std::move(metric);
  ordered_json z = ordered_json::array();
  for (const auto& c : s.Z.comp) z.push_back(expr_str(c, chart));
  j["Z"] = std::move(z);
  if (g.tau0) {
    ordered_json tc = ordered_json::array();
    for (const auto& c : g.tau0->tau().comp) tc.push_back(expr_str(c, chart));
    j["tau0"] = std::move(tc);
  }
  if (g.compat) {
    ordered_json st;
    ordered_json gm = ordered_json::array();
    for (const auto& ga : g.compat->Gamma) {
      ordered_json rows = ordered_json::array();
      for (const auto& row : ga) {
        ordered_json r = ordered_json::array();
        for (const auto& e : row) r.push_back(expr_str(e, chart));
        rows.push_back(std::move(r));
      }
      gm.push_back(std::move(rows));
    }
    st["Gamma"] = std::move(gm);
    ordered_json d0 = ordered_json::array();
    for (const auto& row : g.compat->D0) {
      ordered_json r = ordered_json::array();
      for (const auto& e : row) r.push_back(expr_str(e, chart));
      d0.push_back(std::move(r));
    }
    st["D0"] = std::move(d0);
    j["structure"] = std::move(st);
  }
  ordered_json dom = ordered_json::array();
  for (const auto& [lo, hi] : chart->box()) dom.push_back(ordered_json::array({lo, hi}));
  j["domain"] = std::move(dom);
  j["seed"] = chart->seed();
  return j.dump(2);
}

Geometry load_spec_json(const std::string& text, const RunConfig& config) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("spec parse error: ") + e.what());
  }

  auto need = [&](const char* key) -> const ordered_json& {
    if (!j.contains(key)) throw std::runtime_error(std::string("spec: missing key '") + key + "'");
    return j.at(key);
  };

  if (j.contains("spec_version") && j["spec_version"].get<int>() != 1)
    throw std::runtime_error("spec: unsupported spec_version");

  int n = need("dim").get<int>();
  if (n < 3) throw std::runtime_error("spec: dim must be at least 3 (m >= 2)");
  std::vector<std::string> names = need("coords").get<std::vector<std::string>>();
  if (static_cast<int>(names.size()) != n)
    throw std::runtime_error("spec: coords length != dim");
  auto domj = need("domain");
  if (static_cast<int>(domj.size()) != n) throw std::runtime_error("spec: domain length != dim");
  std::vector<std::pair<double, double>> box;
  for (const auto& iv : domj) box.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
  std::uint64_t seed = j.value("seed", static_cast<std::uint64_t>(1));
  if (config.seed) seed = config.seed;
  ChartPtr chart = make_chart(names, box, seed);

  auto parse_entry = [&](const std::string& text_, const std::string& where) {
    try {
      return parse_expr(text_, names);
    } catch (const ParseError& e) {
      throw std::runtime_error("spec: bad expression in " + where + ": " + e.what());
    }
  };

  auto metj = need("metric");
  if (static_cast<int>(metj.size()) != n) throw std::runtime_error("spec: metric rows != dim");
  MetricField h = MetricField::zero(chart);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(metj.at(static_cast<std::size_t>(i)).size()) != i + 1)
      throw std::runtime_error("spec: metric must list the lower triangle");
    for (int k = 0; k <= i; ++k)
      h.set(i, k,
            parse_entry(metj.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<std::string>(),
                        "metric[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
  }

  auto zj = need("Z");
  if (static_cast<int>(zj.size()) != n) throw std::runtime_error("spec: Z length != dim");
  std::vector<Expr> zc;
  for (int i = 0; i < n; ++i)
    zc.push_back(parse_entry(zj.at(static_cast<std::size_t>(i)).get<std::string>(),
                             "Z[" + std::to_string(i) + "]"));
  VectorField Z(chart, zc);

  auto structure = std::make_shared<const LightlikeStructure>(LightlikeStructure{chart, h, Z});

  Geometry out{j.value("name", std::string("geometry")), structure, nullptr, std::nullopt};

  if (j.contains("tau0")) {
    auto tj = j["tau0"];
    if (static_cast<int>(tj.size()) != n) throw std::runtime_error("spec: tau0 length != dim");
    std::vector<Expr> tc;
    for (int i = 0; i < n; ++i)
      tc.push_back(parse_entry(tj.at(static_cast<std::size_t>(i)).get<std::string>(),
                               "tau0[" + std::to_string(i) + "]"));
    out.tau0 = make_screen(structure, OneForm(chart, tc), config);
  }

  if (j.contains("structure")) {
    if (!out.tau0) throw std::runtime_error("spec: structure requires tau0");
    int m = n - 1;
    const auto& st = j["structure"];
    auto gj = st.at("Gamma");
    if (static_cast<int>(gj.size()) != n) throw std::runtime_error("spec: Gamma needs dim blocks");
    std::vector<ExprMatrix> gamma(static_cast<std::size_t>(n), expr_matrix(m, m));
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
          gamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
               [static_cast<std::size_t>(k)] = parse_entry(
                   gj.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<std::string>(),
                   "Gamma");
    // antisymmetry of the stored connection coefficients is structural
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < m; ++i)
        for (int k = 0; k <= i; ++k) {
          Expr anti = Expr::constant(0.5) *
                      (gamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
                            [static_cast<std::size_t>(k)] -
                       gamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)]
                            [static_cast<std::size_t>(i)]);
          gamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]
               [static_cast<std::size_t>(k)] = anti;
          gamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)]
               [static_cast<std::size_t>(i)] = Expr::constant(-1.0) * anti;
        }
    auto dj = st.at("D0");
    if (static_cast<int>(dj.size()) != n) throw std::runtime_error("spec: D0 needs dim rows");
    ExprMatrix d0 = expr_matrix(n, m);
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < m; ++k)
        d0[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] = parse_entry(
            dj.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(k)).get<std::string>(), "D0");
    out.compat = CompatibleStructure{out.tau0, std::move(gamma), std::move(d0)};
  }
  return out;
}

Geometry load_spec(const std::string& path, const RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_spec_json(ss.str(), config);
}

}  // namespace lightcone
