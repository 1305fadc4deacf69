#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "arnold/interpolation.hpp"

namespace arnold::testing {

struct CollarResiduals {
  double euler = 0, div = 0, ixdb = 0, bY = 0;
  double min_ax = 1e300, min_bx = 1e300, min_dh = 1e300;
};

// Sampled on an nt x na x na grid of the collar chart.
inline CollarResiduals collar_residuals(const CollarRealization& c, int nt, int na) {
  const KForm e = add(interior(c.X, exterior_d(c.alpha)), exterior_d(c.h));
  const KForm dv = divergence(c.X, c.mu);
  const KForm ax = interior(c.X, c.alpha_core);
  const KForm bx = interior(c.X, c.beta);
  const KForm ib = interior(c.X, exterior_d(c.beta));
  const KForm by = interior(curl(c.alpha, c.mu), c.beta);
  const expr::Tape tape({e.c[0], e.c[1], e.c[2], dv.c[0], ax.c[0], bx.c[0], ib.c[0], ib.c[1], ib.c[2], by.c[0],
                         expr::diff(c.h.c[0], 0)});
  std::vector<double> scratch, out(tape.outputs());
  const Interval T = c.chart->domain[0];
  CollarResiduals r;
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < na; ++k) {
        const Point p{T.lo + T.length() * i / (nt - 1), 2 * std::numbers::pi * j / na, 2 * std::numbers::pi * k / na};
        tape.eval(p, scratch, out.data());
        r.euler = std::max({r.euler, std::abs(out[0]), std::abs(out[1]), std::abs(out[2])});
        r.div = std::max(r.div, std::abs(out[3]));
        r.min_ax = std::min(r.min_ax, out[4]);
        r.min_bx = std::min(r.min_bx, out[5]);
        r.ixdb = std::max({r.ixdb, std::abs(out[6]), std::abs(out[7]), std::abs(out[8])});
        r.bY = std::max(r.bY, std::abs(out[9]));
        r.min_dh = std::min(r.min_dh, out[10]);
      }
  return r;
}

inline Trace random_trace(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (;;) {
    const double A = u(rng), B = u(rng), C = u(rng);
    if (std::abs(B) < 1e-3) continue;
    const double D = (1.0 - A * C) / B;
    if (std::abs(D) > 3.0) continue;
    return {A, B, C, D};
  }
}

}  // namespace arnold::testing
