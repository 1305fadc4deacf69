#include <algorithm>
#include <cmath>

#include "arnold/blocks.hpp"
#include "arnold/errors.hpp"
#include "blocks_internal.hpp"

namespace arnold {

using namespace detail;

namespace detail {

Patch fiber_patch(std::string name, ChartPtr chart, const Expr& v, const Expr& B, const Expr& rho) {
  Patch p;
  p.name = std::move(name);
  p.chart = chart;
  p.X = VectorField{chart, {C(0), C(0), C(1)}};
  p.alpha = KForm::one(chart, C(0), C(0), v);
  p.B = KForm::function(chart, B);
  p.beta = KForm::one(chart, C(0), C(0), C(1));
  p.mu = KForm::volume(chart, rho);
  return p;
}

double wrap_angle(double a, double period) {
  double r = std::fmod(a, period);
  if (r < 0) r += period;
  return r;
}

namespace {

double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

BoundaryFace read_face(const BlockRealization& b, const BoundaryFace& f) {
  BoundaryFace out = f;
  const FacePoint fp = f.sample(0.3, 0.7);
  const Patch& P = b.patches.at(static_cast<std::size_t>(fp.patch));
  const auto X = P.X.at(fp.p);
  const auto a = P.alpha.at(fp.p);
  const auto dB = exterior_d(P.B).at(fp.p);
  // least squares X = A e1 + B e2
  const double g11 = dot(fp.e1, fp.e1), g12 = dot(fp.e1, fp.e2), g22 = dot(fp.e2, fp.e2);
  const double r1 = dot(X, fp.e1), r2 = dot(X, fp.e2);
  const double det = g11 * g22 - g12 * g12;
  out.A = (g22 * r1 - g12 * r2) / det;
  out.B = (g11 * r2 - g12 * r1) / det;
  const std::array<double, 3> av{a[0], a[1], a[2]};
  double c = dot(av, fp.e1), d = dot(av, fp.e2);
  const double pairing = out.A * c + out.B * d;
  if (!(pairing > 0)) throw StructuralError("face pairing alpha(X) is not positive");
  out.C = c / pairing;
  out.D = d / pairing;
  auto snap = [](double& v) {
    const double r = std::round(v * 2.0) / 2.0;
    if (std::abs(v - r) < 1e-12) v = r;
  };
  snap(out.A);
  snap(out.B);
  snap(out.C);
  snap(out.D);
  out.bernoulli = P.B.at(fp.p)[0];
  out.upper = dB[0] * fp.normal[0] + dB[1] * fp.normal[1] + dB[2] * fp.normal[2] > 0;
  return out;
}

}  // namespace

void finalize(BlockRealization& b) {
  double lo = INFINITY, hi = -INFINITY;
  for (auto& f : b.faces) {
    f = read_face(b, f);
    lo = std::min(lo, f.bernoulli);
    hi = std::max(hi, f.bernoulli);
  }
  for (const auto& c : b.critical) {
    lo = std::min(lo, c.level);
    hi = std::max(hi, c.level);
  }
  b.range = Interval{lo, hi};
}

}  // namespace detail

namespace {

ChartPtr annulus_chart() {
  Chart c;
  c.name = "annulus";
  c.names = {"r", "phi", "theta"};
  c.domain = {Interval{0.4, 1.0}, Interval{0.0, kTwoPi}, Interval{0.0, kTwoPi}};
  c.periodic = {false, true, true};
  return make_chart(c);
}

ChartPtr core_chart() {
  Chart c;
  c.name = "core";
  c.names = {"x", "y", "theta"};
  c.domain = {Interval{-0.45, 0.45}, Interval{-0.45, 0.45}, Interval{0.0, kTwoPi}};
  c.periodic = {false, false, true};
  return make_chart(c);
}

Expr window(const Expr& s, double a, double b) { return expr::bump((s - C(a)) / C(b - a)); }

void require_extremal(Polarity p, const char* what) {
  if (p == Polarity::None) throw PreconditionError(std::string(what) + " needs a min or max polarity");
}


}  // namespace

BlockRealization realize_I(Polarity polarity, double eps) {
  require_extremal(polarity, "type I");
  if (!(eps > 0)) throw PreconditionError("epsilon must be positive");
  const ChartPtr core = core_chart(), ann = annulus_chart();
  const Expr x = coord(0), y = coord(1), r = coord(0);
  const Expr q_core = expr::pow(x, 2) + expr::pow(y, 2);
  const Expr q_ann = expr::pow(r, 2);
  Expr v_core, v_ann, base;
  if (polarity == Polarity::Min) {
    const double e1 = std::max(0.0, eps - 0.5);
    auto inner = [&](const Expr& q) {
      const Expr h1 = window(q, 0.0225, 0.09);
      return std::pair{h1, C(eps) + q};
    };
    auto mid = [&](const Expr& q) { return C(eps + 0.1) + C(0.1) * q; };
    {
      auto [h1, f0] = inner(q_core);
      v_core = (C(1) - h1) * f0 + h1 * mid(q_core);
    }
    {
      auto [h1, f0] = inner(q_ann);
      const Expr h2 = window(r, 0.7, 0.9);
      v_ann = (C(1) - h1) * f0 + h1 * ((C(1) - h2) * mid(q_ann) + h2 * (r + C(e1)));
    }
    base = C(eps);
  } else {
    v_core = C(1 + eps) - q_core;
    const Expr h2 = window(r, 0.7, 0.9);
    v_ann = (C(1) - h2) * (C(1 + eps) - q_ann) + h2 * (C(1 + eps) - r);
    base = C(1 + eps);
  }
  BlockRealization b;
  b.kind = Kind::I;
  b.polarity = polarity;
  b.patches.push_back(fiber_patch("core", core, v_core, v_core - base, C(1)));
  b.patches.push_back(fiber_patch("annulus", ann, v_ann, v_ann - base, r));
  BoundaryFace f;
  f.slot = 0;
  f.sample = [](double p1, double p2) {
    FacePoint fp;
    fp.patch = 1;
    fp.p = {1.0, wrap_angle(p2), wrap_angle(p1)};
    fp.e1 = {0, 0, 1};
    fp.e2 = {0, 1, 0};
    fp.normal = {1, 0, 0};
    return fp;
  };
  b.faces.push_back(f);
  b.critical.push_back(CriticalSet{"core circle", 1, false, polarity, 0, 0.0,
                                   [](const Point& p) { return std::hypot(p[0], p[1]); }});
  finalize(b);
  return b;
}

BlockRealization realize_II(Polarity polarity, double eps) {
  require_extremal(polarity, "type II");
  if (!(eps > 0)) throw PreconditionError("epsilon must be positive");
  Chart c;
  c.name = "thick torus";
  c.names = {"t", "phi", "theta"};
  c.domain = {Interval{1.0, 2.0}, Interval{0.0, kTwoPi}, Interval{0.0, kTwoPi}};
  c.periodic = {false, true, true};
  const ChartPtr ch = make_chart(c);
  const Expr t = coord(0);
  const Expr s = expr::pow(t - C(1.5), 2);
  const bool min = polarity == Polarity::Min;
  const Expr v = min ? C(eps) + s : C(eps + 0.25) - s;
  const Expr B = min ? expr::pow(t, 2) - C(3) * t : C(3) * t - expr::pow(t, 2);
  BlockRealization b;
  b.kind = Kind::II;
  b.polarity = polarity;
  b.patches.push_back(fiber_patch("thick torus", ch, v, B, C(1)));
  for (int slot = 0; slot < 2; ++slot) {
    BoundaryFace f;
    f.slot = slot;
    const double tf = slot == 0 ? 1.0 : 2.0;
    const double n = slot == 0 ? -1.0 : 1.0;
    f.sample = [tf, n](double p1, double p2) {
      FacePoint fp;
      fp.p = {tf, wrap_angle(p2), wrap_angle(p1)};
      fp.e1 = {0, 0, 1};
      fp.e2 = {0, 1, 0};
      fp.normal = {n, 0, 0};
      return fp;
    };
    b.faces.push_back(f);
  }
  b.critical.push_back(CriticalSet{"critical torus", 2, false, polarity, 0, min ? -2.25 : 2.25,
                                   [](const Point& p) { return std::abs(p[0] - 1.5); }});
  finalize(b);
  return b;
}

BlockRealization realize_V(Polarity polarity, double eps) {
  require_extremal(polarity, "type V");
  if (!(eps > 0)) throw PreconditionError("epsilon must be positive");
  Chart c;
  c.name = "klein collar";
  c.names = {"phi", "r", "theta"};
  c.domain = {Interval{0.0, kTwoPi}, Interval{-1.0, 1.0}, Interval{0.0, std::numbers::pi}};
  c.periodic = {true, false, true};
  c.deck = Deck{{-1.0, -1.0, 1.0}, 2};
  const ChartPtr ch = make_chart(c);
  const Expr q = expr::pow(coord(1), 2);
  Expr v, base;
  if (polarity == Polarity::Min) {
    const double e1 = std::max(0.0, eps - 0.5);
    const Expr h1 = window(q, 0.0225, 0.09), h2 = window(q, 0.69, 0.94);
    const Expr mid = C(eps + 0.1) + C(0.1) * q;
    v = (C(1) - h1) * (C(eps) + q) + h1 * ((C(1) - h2) * mid + h2 * (q + C(e1)));
    base = C(eps);
  } else {
    v = C(1 + eps) - q;
    base = C(1 + eps);
  }
  BlockRealization b;
  b.kind = Kind::V;
  b.polarity = polarity;
  b.twisted = true;
  b.patches.push_back(fiber_patch("klein collar", ch, v, v - base, C(1)));
  BoundaryFace f;
  f.slot = 0;
  f.sample = [](double p1, double p2) {
    FacePoint fp;
    const double u = wrap_angle(p1);
    fp.e1 = {0, 0, 1};
    if (u < std::numbers::pi) {
      fp.p = {wrap_angle(p2), 1.0, u};
      fp.e2 = {1, 0, 0};
      fp.normal = {0, 1, 0};
    } else {
      fp.p = {wrap_angle(-p2), -1.0, u - std::numbers::pi};
      fp.e2 = {-1, 0, 0};
      fp.normal = {0, -1, 0};
    }
    return fp;
  };
  b.faces.push_back(f);
  b.critical.push_back(CriticalSet{"core Klein bottle", 2, true, polarity, 0, 0.0,
                                   [](const Point& p) { return std::abs(p[1]); }});
  finalize(b);
  return b;
}

BlockRealization realize_atom(const Atom& atom, const std::vector<int>& dirs) {
  auto dir = [&](int slot) { return static_cast<std::size_t>(slot) < dirs.size() ? dirs[slot] : 0; };
  BlockRealization b;
  switch (atom.kind) {
    case Kind::I: b = realize_I(atom.polarity); break;
    case Kind::II: b = realize_II(atom.polarity); break;
    case Kind::V: b = realize_V(atom.polarity); break;
    case Kind::III: b = realize_III(dir(0) > 0 ? Pattern::Merge : Pattern::Split); break;
    case Kind::IV: b = realize_IV(dir(0) > 0 ? Pattern::Merge : Pattern::Split); break;
    case Kind::G: {
      if (!atom.generic) throw PreconditionError("generic atom " + atom.id + " has no function");
      b = realize_generic(*atom.generic, 1);
      const bool flip = b.polarity == Polarity::None
                            ? dir(0) < 0
                            : (atom.polarity != Polarity::None && atom.polarity != b.polarity);
      if (flip) b = realize_generic(*atom.generic, -1);
      if (atom.polarity != Polarity::None && atom.polarity != b.polarity)
        throw PreconditionError("generic atom " + atom.id + " polarity does not match its function");
      break;
    }
  }
  b.atom_id = atom.id;
  for (std::size_t s = 0; s < b.faces.size(); ++s) {
    const int d = dir(static_cast<int>(s));
    if (d != 0 && (d > 0) != b.faces[s].upper)
      throw PreconditionError("atom " + atom.id + " slot " + std::to_string(s) +
                              " direction disagrees with its Bernoulli function");
  }
  return b;
}

BoundaryFace boundary_trace(const BlockRealization& b, int slot) {
  if (slot < 0 || static_cast<std::size_t>(slot) >= b.faces.size())
    throw PreconditionError("invalid slot " + std::to_string(slot));
  BlockRealization tmp;
  tmp.patches = b.patches;
  tmp.faces = {b.faces[static_cast<std::size_t>(slot)]};
  finalize(tmp);
  return tmp.faces[0];
}

BlockRealization level_map(const BlockRealization& b, double kappa, double shift, double K) {
  if (!(kappa > 0)) throw PreconditionError("level map needs a positive scale");
  BlockRealization out = b;
  for (auto& p : out.patches) {
    const Expr Bn = expr::simplify(C(kappa) * p.B.c[0] + C(shift));
    p.B = KForm::function(p.chart, Bn);
    p.alpha = KForm::one(p.chart, C(0), C(0), expr::simplify(Bn + C(K)));
  }
  for (auto& f : out.faces) f.bernoulli = kappa * f.bernoulli + shift;
  for (auto& c : out.critical) c.level = kappa * c.level + shift;
  out.range = Interval{kappa * b.range.lo + shift, kappa * b.range.hi + shift};
  return out;
}

}  // namespace arnold
