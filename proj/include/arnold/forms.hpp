#pragma once

#include <array>
#include <vector>

#include "arnold/chart.hpp"
#include "arnold/expr.hpp"

namespace arnold {

using expr::Expr;

struct VectorField {
  ChartPtr chart;
  std::array<Expr, 3> c;

  std::array<double, 3> at(const Point& p) const;
};

// Coefficients: degree 0 {1}; degree 1 {dc0, dc1, dc2}; degree 2 {dc1^dc2, dc2^dc0, dc0^dc1};
// degree 3 {dc0^dc1^dc2}.
struct KForm {
  ChartPtr chart;
  int degree = 0;
  std::vector<Expr> c;

  static KForm zero(ChartPtr chart, int degree);
  static KForm function(ChartPtr chart, Expr f);
  static KForm one(ChartPtr chart, Expr a0, Expr a1, Expr a2);
  static KForm two(ChartPtr chart, Expr w0, Expr w1, Expr w2);
  static KForm volume(ChartPtr chart, Expr rho);

  std::vector<double> at(const Point& p) const;
};

KForm exterior_d(const KForm& f);
KForm interior(const VectorField& v, const KForm& f);
KForm wedge(const KForm& a, const KForm& b);
KForm add(const KForm& a, const KForm& b);
KForm scale(const Expr& s, const KForm& f);
KForm simplify(const KForm& f);
VectorField simplify(const VectorField& v);

// Y with interior(Y, mu) = d alpha. Throws SingularVolumeError if rho vanishes on the chart.
VectorField curl(const KForm& alpha, const KForm& mu);
// delta with d(interior(v, mu)) = delta * mu.
KForm divergence(const VectorField& v, const KForm& mu);

// Sampling checks of the volume coefficient; throws SingularVolumeError on a zero or sign change.
void require_nonvanishing(const KForm& mu);

// Largest deviation from deck invariance over `n` seam samples (0 if the chart is untwisted).
double deck_residual(const VectorField& v, int n = 64);
double deck_residual(const KForm& f, int n = 64);

}  // namespace arnold
