#pragma once

#include <array>
#include <vector>

#include "arnold/chart.hpp"
#include "arnold/expr.hpp"

namespace arnold {

using Vec2 = std::array<double, 2>;

// f(c0, c1) with its gradient and Hessian compiled together.
class PlaneFunction {
 public:
  explicit PlaneFunction(const expr::Expr& f);

  const expr::Expr& expr() const { return f_; }
  double value(const Vec2& p) const;
  // f, fx, fy, fxx, fxy, fyy
  std::array<double, 6> jet(const Vec2& p) const;
  // Newton projection onto {f = level} along the gradient.
  Vec2 project(Vec2 p, double level) const;

 private:
  expr::Expr f_;
  expr::Tape tape_;
};

// Closed polyline on a level set, counterclockwise, vertices projected onto the level.
struct LevelCurve {
  double level = 0.0;
  std::vector<Vec2> pts;
  std::vector<double> cum;  // cumulative length, size pts.size() + 1

  double length() const { return cum.back(); }
  Vec2 centroid() const;
  double signed_area() const;
  // Point at normalized arclength a in [0, 2pi), before projection.
  Vec2 raw_point(double a) const;
  Vec2 raw_direction(double a) const;
};

// Marching squares on an nx by ny cell grid, loops linked and projected.
// Throws PreconditionError if a component reaches the box boundary.
std::vector<LevelCurve> level_curves(const PlaneFunction& f, Interval x, Interval y, double level, int nx, int ny);

// Exact point and tangent d/da on the curve, a in [0, 2pi).
struct CurveSample {
  Vec2 p;
  Vec2 tangent;
};
CurveSample sample_curve(const PlaneFunction& f, const LevelCurve& c, double a);

struct PlaneCritical {
  Vec2 p;
  double value = 0.0;
  double hxx = 0.0, hxy = 0.0, hyy = 0.0;
  double det() const { return hxx * hyy - hxy * hxy; }
};

// Grid search plus Newton; points within `merge` of each other are reported once.
std::vector<PlaneCritical> plane_critical_points(const PlaneFunction& f, Interval x, Interval y, int n = 96,
                                                 double merge = 1e-6);

}  // namespace arnold
