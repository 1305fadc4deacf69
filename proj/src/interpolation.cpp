#include "arnold/interpolation.hpp"

#include <array>
#include <cmath>

#include "arnold/errors.hpp"
#include "blocks_internal.hpp"

namespace arnold {

using namespace detail;

namespace {

constexpr double kPairingTol = 1e-9;

// Xtheta, Xphi, alpha_theta, alpha_phi on one interval.
using Branch = std::array<Expr, 4>;

void check_trace(const Trace& tr) {
  if (std::abs(tr.pairing() - 1.0) > kPairingTol)
    throw PreconditionError("boundary trace is not normalized: AC + BD = " + std::to_string(tr.pairing()));
  if (tr.A * tr.C <= 0.0 && tr.B * tr.D <= 0.0) throw PreconditionError("AC <= 0 and BD <= 0");
}

// Interval i (1..7) in terms of its cutoff H.
Branch standard_branch(int i, const Trace& tr, const Expr& H) {
  const double A = tr.A, B = tr.B, Cc = tr.C, D = tr.D;
  switch (i) {
    case 1: return {C(1), C(0), C(1), H};
    case 2: return {C(1), H, C(1), C(1)};
    case 3: return {C(1) - H, C(1), C(1), C(1)};
    case 4: return {C(0), C(1), C(1) + (Cc - 1) * H, C(1)};
    case 5: return {A * H, C(1) - H, C(Cc), C(1)};
    case 6: return {C(A), C(0), C(Cc), C(1) + (D - 1) * H};
    default: return {C(A), B * H, C(Cc), C(D)};
  }
}

// theta and phi exchanged from interval 4 on; intervals 1-3 only reach dtheta + dphi.
Branch mirrored_branch(int i, const Trace& tr, const Expr& H) {
  const double A = tr.A, B = tr.B, Cc = tr.C, D = tr.D;
  switch (i) {
    case 1: return {C(1), C(0), C(1), H};
    case 2:
    case 3: return {C(1), C(0), C(1), C(1)};
    case 4: return {C(1), C(0), C(1), C(1) + (D - 1) * H};
    case 5: return {C(1) - H, B * H, C(1), C(D)};
    case 6: return {C(0), C(B), C(1) + (Cc - 1) * H, C(D)};
    default: return {A * H, C(B), C(Cc), C(D)};
  }
}

}  // namespace

Interval collar_interval(int i) { return {1.0 + (i - 1) / 7.0, 1.0 + i / 7.0}; }

CollarRealization build_collar(const std::string& name, const std::vector<CollarSegment>& segments,
                               const Expr& sigma, double h0) {
  if (segments.empty()) throw PreconditionError("collar needs at least one segment");
  CollarRealization out;
  out.name = name;
  std::vector<double> breaks{segments.front().a};
  std::array<std::vector<Expr>, 4> br;
  const Expr t = coord(0);
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const CollarSegment& sg = segments[k];
    if (!(sg.b > sg.a)) throw PreconditionError("collar segment has empty range");
    if (std::abs(sg.a - breaks.back()) > 1e-12) throw PreconditionError("collar segments are not contiguous");
    check_trace(sg.trace);
    const bool mirrored = sg.trace.A * sg.trace.C <= 0.0;
    if (k == 0) out.mirrored = mirrored;
    const double L = sg.b - sg.a;
    // construction parameter s in [1, 2]
    const Expr s = sg.reversed ? C(2.0 + sg.a / L) - t / L : C(1.0 - sg.a / L) + t / L;
    for (int j = 1; j <= 7; ++j) {
      const int i = sg.reversed ? 8 - j : j;
      const Expr H = bump(7.0 * s - (6.0 + i));
      const Branch b = mirrored ? mirrored_branch(i, sg.trace, H) : standard_branch(i, sg.trace, H);
      for (int c = 0; c < 4; ++c) br[c].push_back(b[c]);
      breaks.push_back(j == 7 ? sg.b : sg.a + L * j / 7.0);
    }
  }
  const double lo = breaks.front(), hi = breaks.back();
  out.breaks = breaks;
  const CollarSegment& first = segments.front();
  const CollarSegment& last = segments.back();
  out.start = first.reversed ? first.trace : Trace{};
  out.end = last.reversed ? Trace{} : last.trace;

  Chart ch;
  ch.name = name;
  ch.names = {"t", "theta", "phi"};
  ch.domain = {Interval{lo, hi}, Interval{0.0, kTwoPi}, Interval{0.0, kTwoPi}};
  ch.periodic = {false, true, true};
  out.chart = make_chart(ch);

  std::array<Expr, 4> pw;
  for (int c = 0; c < 4; ++c) pw[c] = expr::piecewise(0, breaks, br[c]);
  out.X = simplify(VectorField{out.chart, {C(0), sigma * pw[0], sigma * pw[1]}});
  out.alpha_core = simplify(KForm::one(out.chart, C(0), pw[2], pw[3]));
  out.alpha = simplify(KForm::one(out.chart, C(0), t * pw[2], t * pw[3]));
  out.beta = simplify(KForm::one(out.chart, C(0), expr::diff(t * pw[2], 0), expr::diff(t * pw[3], 0)));
  const Expr g = expr::simplify(out.beta.c[1] * out.X.c[1] + out.beta.c[2] * out.X.c[2]);
  out.h = KForm::function(out.chart, expr::antiderivative(g, 0, lo, hi, h0, breaks));
  out.mu = KForm::volume(out.chart, C(1));
  return out;
}

CollarRealization interpolate(const Trace& face) { return build_collar("collar", {CollarSegment{1.0, 2.0, face, false}}); }

CollarRealization interpolate(const BoundaryFace& face) {
  return interpolate(Trace{face.A, face.B, face.C, face.D});
}

KForm collar_h(const CollarRealization& c) {
  const Expr dh = expr::diff(c.h.c[0], 0);
  const expr::Tape tape({dh});
  std::vector<double> scratch;
  double v = 0.0;
  const Interval I = c.chart->domain[0];
  for (int k = 0; k <= 2048; ++k) {
    tape.eval({I.lo + I.length() * k / 2048.0, 0.0, 0.0}, scratch, &v);
    if (!(v > 0.0)) throw Error("collar " + c.name + ": h' is not positive");
  }
  return c.h;
}

KForm collar_beta(const CollarRealization& c) { return c.beta; }

}  // namespace arnold
