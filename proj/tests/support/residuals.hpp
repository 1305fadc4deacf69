#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "arnold/blocks.hpp"
#include "arnold/forms.hpp"

namespace arnold::testing {

struct Residuals {
  double euler = 0;      // |i_X d alpha + dB|
  double div = 0;        // |div_mu X|
  double min_ax = 1e300;  // alpha(X)
  double min_bx = 1e300;  // beta(X)
  double ixdb = 0;       // |i_X d beta|
  double bY = 0;         // |beta(curl alpha)|
  int n = 0;
};

inline Point random_point(const Chart& c, std::mt19937_64& rng) {
  for (int tries = 0; tries < 100000; ++tries) {
    Point p;
    for (int i = 0; i < 3; ++i)
      p[i] = std::uniform_real_distribution<double>(c.domain[i].lo, c.domain[i].hi)(rng);
    if (c.contains(p)) return p;
  }
  return {c.domain[0].lo, c.domain[1].lo, c.domain[2].lo};
}

// Direct symbolic evaluation of the Euler and beta contracts on random chart points.
inline Residuals patch_residuals(const Patch& P, int n, unsigned seed = 1) {
  const KForm e = add(interior(P.X, exterior_d(P.alpha)), exterior_d(P.B));
  const KForm dv = divergence(P.X, P.mu);
  const KForm ax = interior(P.X, P.alpha);
  const KForm bx = interior(P.X, P.beta);
  const KForm ib = interior(P.X, exterior_d(P.beta));
  const VectorField Y = curl(P.alpha, P.mu);
  const KForm by = interior(Y, P.beta);
  const expr::Tape tape({e.c[0], e.c[1], e.c[2], dv.c[0], ax.c[0], bx.c[0], ib.c[0], ib.c[1], ib.c[2], by.c[0]});
  std::mt19937_64 rng(seed);
  std::vector<double> scratch, out(tape.outputs());
  Residuals r;
  for (int k = 0; k < n; ++k) {
    const Point p = random_point(*P.chart, rng);
    tape.eval(p, scratch, out.data());
    r.euler = std::max({r.euler, std::abs(out[0]), std::abs(out[1]), std::abs(out[2])});
    r.div = std::max(r.div, std::abs(out[3]));
    r.min_ax = std::min(r.min_ax, out[4]);
    r.min_bx = std::min(r.min_bx, out[5]);
    r.ixdb = std::max({r.ixdb, std::abs(out[6]), std::abs(out[7]), std::abs(out[8])});
    r.bY = std::max(r.bY, std::abs(out[9]));
    ++r.n;
  }
  return r;
}

}  // namespace arnold::testing
