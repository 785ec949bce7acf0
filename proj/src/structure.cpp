#include "lightcone/structure.hpp"

#include <cmath>

#include "lightcone/screen.hpp"

namespace lightcone {

Eigen::MatrixXd LightlikeStructure::metric_at(std::span<const double> point) const {
  int nn = n();
  Eigen::MatrixXd M(nn, nn);
  Evaluator ev(point);
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j <= i; ++j) {
      double v = ev(h(i, j));
      M(i, j) = v;
      M(j, i) = v;
    }
  return M;
}

Report validate_structure(const LightlikeStructure& s, const RunConfig& config,
                          double rank_tol) {
  Report report("lightlike structure validation", config);
  auto pts = s.chart->samples(config.samples);
  int nn = s.n();

  double rad_res = 0.0, z_min = std::numeric_limits<double>::infinity();
  int psd_bad = 0, rank_bad = 0;
  int used = 0, domain_violations = 0;
  for (const auto& p : pts) {
    try {
      Evaluator ev(p);
      // h(Z, d_a) = 0 for every coordinate direction
      for (int a = 0; a < nn; ++a) {
        Expr acc = Expr::constant(0.0);
        for (int c = 0; c < nn; ++c) acc = acc + s.h(a, c) * s.Z.comp[static_cast<std::size_t>(c)];
        rad_res = std::max(rad_res, std::abs(ev(acc)));
      }
      double zn = 0.0;
      for (int a = 0; a < nn; ++a) {
        double v = ev(s.Z.comp[static_cast<std::size_t>(a)]);
        zn += v * v;
      }
      z_min = std::min(z_min, std::sqrt(zn));

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.metric_at(p));
      int zero_count = 0;
      for (int i = 0; i < nn; ++i) {
        double lambda = es.eigenvalues()(i);
        if (std::abs(lambda) < rank_tol) {
          ++zero_count;
        } else if (lambda < 0.0) {
          ++psd_bad;
        }
      }
      if (zero_count != 1) ++rank_bad;
      ++used;
    } catch (const EvalDomainError&) {
      ++domain_violations;
    }
  }

  std::string notes = domain_violations
                          ? std::to_string(domain_violations) + " sample(s) skipped (domain)"
                          : "";
  report.check("h(Z,.) = 0", "radical condition", rad_res, 1e-9, used, notes);
  report.check("h positive semidefinite", "signature", static_cast<double>(psd_bad), 0.5, used);
  report.check("rank(h) = m", "one-dimensional radical", static_cast<double>(rank_bad), 0.5,
               used, "eigenvalue count with |lambda| < " + format_sci(rank_tol));
  auto& zrec = report.check("Z nonvanishing", "radical generator", 0.0, 1.0, used);
  zrec.max_residual = z_min;
  zrec.passed = z_min > 1e-9;
  zrec.notes = "minimum |Z| over samples";
  return report;
}

std::vector<std::vector<Expr>> radical_endomorphism(const LightlikeStructure& s,
                                                    const ScreenForm& tau) {
  MetricField lzh = lie_derivative_metric(s.h, s.Z);
  int m = tau.m();
  std::vector<std::vector<Expr>> M(static_cast<std::size_t>(m),
                                   std::vector<Expr>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Expr::constant(0.5) *
          lzh.pair(tau.frame()[static_cast<std::size_t>(i)],
                   tau.frame()[static_cast<std::size_t>(j)]);
  return M;
}

}  // namespace lightcone
