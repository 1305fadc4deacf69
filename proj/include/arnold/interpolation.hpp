#pragma once

#include <string>
#include <vector>

#include "arnold/blocks.hpp"

namespace arnold {

// Linear torus data: X = A d/dtheta + B d/dphi, one-form C dtheta + D dphi.
struct Trace {
  double A = 1, B = 0, C = 1, D = 0;
  double pairing() const { return A * C + B * D; }
};

// Fields on T^2 x [t0, t1], coordinates (t, theta, phi); alpha = t * alpha_core.
struct CollarRealization {
  std::string name;
  ChartPtr chart;
  VectorField X;
  KForm alpha_core;
  KForm alpha;
  KForm beta;
  KForm h;   // B = h, i_X d alpha = -dh
  KForm mu;  // dt ^ dtheta ^ dphi
  bool mirrored = false;  // BD branch: theta and phi roles exchanged
  Trace start, end;
  std::vector<double> breaks;  // junction times, including both ends
};

// One run of the seven-interval construction over [a, b]. Forward: canonical trace at a, `trace` at b.
// Reversed: `trace` at a, canonical at b.
struct CollarSegment {
  double a = 1, b = 2;
  Trace trace;
  bool reversed = false;
};

// Consecutive segments; X is multiplied by sigma(t); h(t0) = h0.
CollarRealization build_collar(const std::string& name, const std::vector<CollarSegment>& segments,
                               const Expr& sigma = Expr(1.0), double h0 = 1.0);

// Canonical collar over [1, 2] ending at the face trace.
CollarRealization interpolate(const Trace& face);
CollarRealization interpolate(const BoundaryFace& face);

// h with a sampled check h' > 0.
KForm collar_h(const CollarRealization& c);
KForm collar_beta(const CollarRealization& c);

// Interval i (1..7) of [1, 2].
Interval collar_interval(int i);

}  // namespace arnold
