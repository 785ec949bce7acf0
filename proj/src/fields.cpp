#include "lightcone/fields.hpp"

#include <stdexcept>

namespace lightcone {

namespace {
void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a != b) throw std::invalid_argument("fields live on different charts");
}
}  // namespace

VectorField::VectorField(ChartPtr c, std::vector<Expr> comps)
    : chart(std::move(c)), comp(std::move(comps)) {
  if (static_cast<int>(comp.size()) != chart->dim())
    throw std::invalid_argument("vector field: component count != chart dimension");
}

Expr VectorField::apply(Expr f) const {
  Expr out = Expr::constant(0.0);
  for (int a = 0; a < chart->dim(); ++a) out = out + comp[static_cast<std::size_t>(a)] * f.diff(a);
  return out;
}

VectorField VectorField::operator+(const VectorField& o) const {
  require_same_chart(chart, o.chart);
  std::vector<Expr> c(comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) c[i] = comp[i] + o.comp[i];
  return {chart, std::move(c)};
}

VectorField VectorField::operator-(const VectorField& o) const {
  require_same_chart(chart, o.chart);
  std::vector<Expr> c(comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) c[i] = comp[i] - o.comp[i];
  return {chart, std::move(c)};
}

VectorField VectorField::scaled(Expr f) const {
  std::vector<Expr> c(comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) c[i] = f * comp[i];
  return {chart, std::move(c)};
}

OneForm::OneForm(ChartPtr c, std::vector<Expr> comps)
    : chart(std::move(c)), comp(std::move(comps)) {
  if (static_cast<int>(comp.size()) != chart->dim())
    throw std::invalid_argument("one-form: component count != chart dimension");
}

Expr OneForm::operator()(const VectorField& v) const {
  require_same_chart(chart, v.chart);
  Expr out = Expr::constant(0.0);
  for (std::size_t a = 0; a < comp.size(); ++a) out = out + comp[a] * v.comp[a];
  return out;
}

MetricField::MetricField(ChartPtr chart, std::vector<std::vector<Expr>> lower)
    : chart_(std::move(chart)), lower_(std::move(lower)) {
  int n = chart_->dim();
  if (static_cast<int>(lower_.size()) != n)
    throw std::invalid_argument("metric: row count != chart dimension");
  for (int i = 0; i < n; ++i)
    if (static_cast<int>(lower_[static_cast<std::size_t>(i)].size()) != i + 1)
      throw std::invalid_argument("metric: expected lower-triangular rows");
}

MetricField MetricField::zero(ChartPtr chart) {
  int n = chart->dim();
  std::vector<std::vector<Expr>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    rows[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), Expr::constant(0.0));
  return {std::move(chart), std::move(rows)};
}

Expr MetricField::operator()(int i, int j) const {
  if (j > i) std::swap(i, j);
  return lower_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

void MetricField::set(int i, int j, Expr e) {
  if (j > i) std::swap(i, j);
  lower_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
}

Expr MetricField::pair(const VectorField& v, const VectorField& w) const {
  require_same_chart(chart_, v.chart);
  require_same_chart(chart_, w.chart);
  int n = chart_->dim();
  Expr out = Expr::constant(0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Expr hij = (*this)(i, j);
      if (hij.is_zero()) continue;
      out = out + hij * v.comp[static_cast<std::size_t>(i)] * w.comp[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

VectorField zero_vector(ChartPtr chart) {
  std::vector<Expr> c(static_cast<std::size_t>(chart->dim()), Expr::constant(0.0));
  return {std::move(chart), std::move(c)};
}

VectorField coordinate_vector(ChartPtr chart, int a) {
  std::vector<Expr> c(static_cast<std::size_t>(chart->dim()), Expr::constant(0.0));
  c[static_cast<std::size_t>(a)] = Expr::constant(1.0);
  return {std::move(chart), std::move(c)};
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  require_same_chart(v.chart, w.chart);
  int n = v.chart->dim();
  std::vector<Expr> c(static_cast<std::size_t>(n), Expr::constant(0.0));
  for (int k = 0; k < n; ++k) {
    Expr s = Expr::constant(0.0);
    for (int a = 0; a < n; ++a) {
      s = s + v.comp[static_cast<std::size_t>(a)] * w.comp[static_cast<std::size_t>(k)].diff(a) -
          w.comp[static_cast<std::size_t>(a)] * v.comp[static_cast<std::size_t>(k)].diff(a);
    }
    c[static_cast<std::size_t>(k)] = s;
  }
  return {v.chart, std::move(c)};
}

MetricField lie_derivative_metric(const MetricField& h, const VectorField& z) {
  require_same_chart(h.chart(), z.chart);
  int n = z.chart->dim();
  MetricField out = MetricField::zero(z.chart);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b <= a; ++b) {
      Expr s = Expr::constant(0.0);
      for (int c = 0; c < n; ++c) {
        s = s + z.comp[static_cast<std::size_t>(c)] * h(a, b).diff(c) +
            h(c, b) * z.comp[static_cast<std::size_t>(c)].diff(a) +
            h(a, c) * z.comp[static_cast<std::size_t>(c)].diff(b);
      }
      out.set(a, b, s);
    }
  }
  return out;
}

Expr two_form_d(const OneForm& omega, const VectorField& v, const VectorField& w) {
  return v.apply(omega(w)) - w.apply(omega(v)) - omega(lie_bracket(v, w));
}

namespace {

Expr determinant(const std::vector<std::vector<Expr>>& a) {
  std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Expr det = Expr::constant(0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<Expr>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Expr> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    Expr term = a[0][j] * determinant(minor);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace

std::vector<std::vector<Expr>> symbolic_inverse(const std::vector<std::vector<Expr>>& a) {
  std::size_t n = a.size();
  Expr det = determinant(a);
  std::vector<std::vector<Expr>> inv(n, std::vector<Expr>(n, Expr::constant(0.0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<Expr>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::vector<Expr> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      Expr cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = Expr::constant(-1.0) * cof;
      inv[j][i] = cof / det;  // transpose of the cofactor matrix
    }
  }
  return inv;
}

std::vector<std::vector<std::vector<Expr>>> christoffel_symbols(
    const std::vector<std::vector<Expr>>& g, const ChartPtr& chart) {
  int n = chart->dim();
  auto ginv = symbolic_inverse(g);
  std::vector<std::vector<std::vector<Expr>>> gamma(
      static_cast<std::size_t>(n),
      std::vector<std::vector<Expr>>(static_cast<std::size_t>(n),
                                     std::vector<Expr>(static_cast<std::size_t>(n),
                                                       Expr::constant(0.0))));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Expr acc = Expr::constant(0.0);
        for (int l = 0; l < n; ++l) {
          Expr term = g[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)].diff(i) +
                      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)].diff(j) -
                      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].diff(l);
          acc = acc + ginv[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] * term;
        }
        gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
             [static_cast<std::size_t>(j)] = Expr::constant(0.5) * acc;
      }
  return gamma;
}

}  // namespace lightcone
