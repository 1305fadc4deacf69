#include "arnold/forms.hpp"

#include <cmath>

#include "arnold/errors.hpp"

namespace arnold {

namespace {

std::size_t width(int degree) { return (degree == 0 || degree == 3) ? 1 : 3; }

void same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a.get() != b.get()) throw PreconditionError("forms live on different charts");
}

// coefficient i of the cross product a x b
Expr cross(const std::vector<Expr>& a, const std::vector<Expr>& b, int i) {
  const int j = (i + 1) % 3, k = (i + 2) % 3;
  return a[j] * b[k] - a[k] * b[j];
}

std::vector<Expr> vec(const std::array<Expr, 3>& v) { return {v[0], v[1], v[2]}; }

// deterministic points on the seam face of a twisted chart
std::vector<Point> seam_points(const Chart& ch, int n) {
  std::vector<Point> pts;
  if (!ch.deck) return pts;
  const int s = ch.deck->seam;
  const int a = (s + 1) % 3, b = (s + 2) % 3;
  const double g = 0.6180339887498949;
  for (int i = 0; pts.size() < static_cast<std::size_t>(n) && i < 50 * n; ++i) {
    Point p{};
    p[s] = ch.domain[s].hi;
    p[a] = ch.domain[a].lo + ch.domain[a].length() * std::fmod((i + 0.5) / n, 1.0);
    p[b] = ch.domain[b].lo + ch.domain[b].length() * std::fmod(0.5 + i * g, 1.0);
    if (ch.contains(p) && ch.contains(ch.apply_deck(p))) pts.push_back(p);
  }
  return pts;
}

}  // namespace

std::array<double, 3> VectorField::at(const Point& p) const {
  return {expr::eval(c[0], p), expr::eval(c[1], p), expr::eval(c[2], p)};
}

std::vector<double> KForm::at(const Point& p) const {
  std::vector<double> v;
  for (const auto& e : c) v.push_back(expr::eval(e, p));
  return v;
}

KForm KForm::zero(ChartPtr chart, int degree) {
  if (degree < 0 || degree > 3) throw DegreeError("form degree must be 0..3");
  return KForm{std::move(chart), degree, std::vector<Expr>(width(degree), Expr(0.0))};
}
KForm KForm::function(ChartPtr chart, Expr f) { return KForm{std::move(chart), 0, {std::move(f)}}; }
KForm KForm::one(ChartPtr chart, Expr a0, Expr a1, Expr a2) {
  return KForm{std::move(chart), 1, {std::move(a0), std::move(a1), std::move(a2)}};
}
KForm KForm::two(ChartPtr chart, Expr w0, Expr w1, Expr w2) {
  return KForm{std::move(chart), 2, {std::move(w0), std::move(w1), std::move(w2)}};
}
KForm KForm::volume(ChartPtr chart, Expr rho) { return KForm{std::move(chart), 3, {std::move(rho)}}; }

KForm exterior_d(const KForm& f) {
  using expr::diff;
  const auto& c = f.c;
  switch (f.degree) {
    case 0:
      return KForm::one(f.chart, diff(c[0], 0), diff(c[0], 1), diff(c[0], 2));
    case 1:
      return KForm::two(f.chart, diff(c[2], 1) - diff(c[1], 2), diff(c[0], 2) - diff(c[2], 0),
                        diff(c[1], 0) - diff(c[0], 1));
    case 2:
      return KForm::volume(f.chart, expr::sum({diff(c[0], 0), diff(c[1], 1), diff(c[2], 2)}));
    default:
      throw DegreeError("exterior derivative of a 3-form on a 3-chart");
  }
}

KForm interior(const VectorField& v, const KForm& f) {
  same_chart(v.chart, f.chart);
  const auto& c = f.c;
  switch (f.degree) {
    case 1:
      return KForm::function(f.chart, expr::sum({v.c[0] * c[0], v.c[1] * c[1], v.c[2] * c[2]}));
    case 2: {
      // interior of w0 dc1^dc2 + w1 dc2^dc0 + w2 dc0^dc1 is the cross product w x v
      auto vv = vec(v.c);
      return KForm::one(f.chart, cross(c, vv, 0), cross(c, vv, 1), cross(c, vv, 2));
    }
    case 3:
      return KForm::two(f.chart, c[0] * v.c[0], c[0] * v.c[1], c[0] * v.c[2]);
    default:
      throw DegreeError("interior product of a 0-form");
  }
}

KForm wedge(const KForm& a, const KForm& b) {
  same_chart(a.chart, b.chart);
  if (a.degree + b.degree > 3) throw DegreeError("wedge degree exceeds 3");
  if (a.degree == 0) return scale(a.c[0], b);
  if (b.degree == 0) return scale(b.c[0], a);
  if (a.degree == 1 && b.degree == 1)
    return KForm::two(a.chart, cross(a.c, b.c, 0), cross(a.c, b.c, 1), cross(a.c, b.c, 2));
  // 1 ^ 2 and 2 ^ 1 agree (even degree commutes)
  const auto& one = a.degree == 1 ? a.c : b.c;
  const auto& two = a.degree == 1 ? b.c : a.c;
  return KForm::volume(a.chart, expr::sum({one[0] * two[0], one[1] * two[1], one[2] * two[2]}));
}

KForm add(const KForm& a, const KForm& b) {
  same_chart(a.chart, b.chart);
  if (a.degree != b.degree) throw DegreeError("adding forms of different degree");
  KForm r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

KForm scale(const Expr& s, const KForm& f) {
  KForm r = f;
  for (auto& e : r.c) e = s * e;
  return r;
}

KForm simplify(const KForm& f) {
  KForm r = f;
  for (auto& e : r.c) e = expr::simplify(e);
  return r;
}

VectorField simplify(const VectorField& v) {
  VectorField r = v;
  for (auto& e : r.c) e = expr::simplify(e);
  return r;
}

void require_nonvanishing(const KForm& mu) {
  if (mu.degree != 3) throw DegreeError("volume form must have degree 3");
  const Chart& ch = *mu.chart;
  int sign = 0;
  const int n = 9;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Point p{ch.domain[0].lo + ch.domain[0].length() * i / (n - 1),
                ch.domain[1].lo + ch.domain[1].length() * j / (n - 1),
                ch.domain[2].lo + ch.domain[2].length() * k / (n - 1)};
        if (!ch.contains(p)) continue;
        const double r = expr::eval(mu.c[0], p);
        const int s = r > 1e-14 ? 1 : (r < -1e-14 ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign))
          throw SingularVolumeError("volume coefficient vanishes on chart " + ch.name);
        sign = s;
      }
}

VectorField curl(const KForm& alpha, const KForm& mu) {
  if (alpha.degree != 1 || mu.degree != 3) throw DegreeError("curl needs a 1-form and a volume form");
  same_chart(alpha.chart, mu.chart);
  require_nonvanishing(mu);
  KForm da = exterior_d(alpha);
  const Expr& rho = mu.c[0];
  VectorField y{alpha.chart, {da.c[0], da.c[1], da.c[2]}};
  if (!rho.is_const(1.0)) {
    Expr inv = rho.is_const() ? Expr(1.0 / rho.value()) : expr::pow(rho, -1);
    for (auto& e : y.c) e = e * inv;
  }
  return y;
}

KForm divergence(const VectorField& v, const KForm& mu) {
  if (mu.degree != 3) throw DegreeError("divergence needs a volume form");
  same_chart(v.chart, mu.chart);
  require_nonvanishing(mu);
  KForm flux = exterior_d(interior(v, mu));
  const Expr& rho = mu.c[0];
  if (rho.is_const(1.0)) return KForm::function(v.chart, flux.c[0]);
  Expr inv = rho.is_const() ? Expr(1.0 / rho.value()) : expr::pow(rho, -1);
  return KForm::function(v.chart, flux.c[0] * inv);
}

double deck_residual(const VectorField& v, int n) {
  const Chart& ch = *v.chart;
  double worst = 0.0;
  for (const auto& p : seam_points(ch, n)) {
    const Point q = ch.apply_deck(p);
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, std::abs(expr::eval(v.c[i], q) - ch.deck->signs[i] * expr::eval(v.c[i], p)));
  }
  return worst;
}

double deck_residual(const KForm& f, int n) {
  const Chart& ch = *f.chart;
  double worst = 0.0;
  for (const auto& p : seam_points(ch, n)) {
    const Point q = ch.apply_deck(p);
    const auto& s = ch.deck->signs;
    const double det = ch.deck->det();
    for (std::size_t i = 0; i < f.c.size(); ++i) {
      double factor = 1.0;
      if (f.degree == 1) factor = s[i];
      if (f.degree == 2) factor = det * s[i];
      if (f.degree == 3) factor = det;
      worst = std::max(worst, std::abs(expr::eval(f.c[i], q) - factor * expr::eval(f.c[i], p)));
    }
  }
  return worst;
}

}  // namespace arnold
