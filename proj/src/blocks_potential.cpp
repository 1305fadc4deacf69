#include <algorithm>
#include <cmath>
#include <memory>

#include "arnold/blocks.hpp"
#include "arnold/errors.hpp"
#include "arnold/level_curves.hpp"
#include "blocks_internal.hpp"

namespace arnold {

using namespace detail;

namespace {

constexpr const char* kDuffingText = "1/4*(y^2 - x^2 + 1/2*x^4)";
const Interval kDuffingX{-1.6, 1.6};
const Interval kDuffingY{-1.0, 1.0};
constexpr int kCurveCells = 128;

struct Face2 {
  double level = 0.0;
  LevelCurve curve;
  bool invariant = true;  // twisted only: the curve is its own image
  bool pair = false;      // twisted only: curve and its image form one face
};

std::array<double, 3> gradient_normal(const PlaneFunction& f, const Vec2& p, double s) {
  const auto j = f.jet(p);
  return {s * j[1], s * j[2], 0.0};
}

void check_symmetric(const PlaneFunction& f, Interval x, Interval y) {
  if (std::abs(x.lo + x.hi) > 1e-12 || std::abs(y.lo + y.hi) > 1e-12)
    throw PreconditionError("twisted generic atom needs a domain symmetric about the origin");
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const Vec2 p{x.lo + x.length() * i / 20.0, y.lo + y.length() * j / 20.0};
      const double a = f.value(p), b = f.value({-p[0], -p[1]});
      if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a)))
        throw PreconditionError("twisted generic atom: f is not invariant under rotation by pi");
    }
  }
}

BlockRealization build_potential(Kind kind, const GenericSpec& g, int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
  auto pf = std::make_shared<const PlaneFunction>(g.f);
  if (g.twisted) check_symmetric(*pf, g.x, g.y);

  const auto crit = plane_critical_points(*pf, g.x, g.y);
  if (crit.empty()) throw PreconditionError("f has no critical point on the domain");
  for (const auto& c : crit)
    if (std::abs(c.det()) < 1e-8) throw PreconditionError("f is not Morse on the domain");

  std::vector<double> saddles, minima, maxima;
  for (const auto& c : crit) {
    if (c.det() < 0)
      saddles.push_back(c.value);
    else if (c.hxx > 0)
      minima.push_back(c.value);
    else
      maxima.push_back(c.value);
  }
  // f-polarity of the block: None for saddle blocks.
  Polarity fpol;
  double cstar;
  if (!saddles.empty()) {
    fpol = Polarity::None;
    cstar = saddles[0];
    for (double s : saddles)
      if (std::abs(s - cstar) > 1e-9) throw PreconditionError("more than one critical value among saddles");
  } else if (!minima.empty() && maxima.empty()) {
    fpol = Polarity::Min;
    cstar = *std::min_element(minima.begin(), minima.end());
  } else if (!maxima.empty() && minima.empty()) {
    fpol = Polarity::Max;
    cstar = *std::max_element(maxima.begin(), maxima.end());
  } else {
    throw PreconditionError("f mixes minima and maxima without a saddle");
  }
  double gap = INFINITY;
  for (const auto& c : crit)
    if (std::abs(c.value - cstar) > 1e-9) gap = std::min(gap, std::abs(c.value - cstar));
  const double delta = std::min(1.0 / 16.0, gap / 2.0);
  double flo = cstar - delta, fhi = cstar + delta;
  if (fpol == Polarity::Min) flo = cstar;
  if (fpol == Polarity::Max) fhi = cstar;

  std::vector<double> levels;
  if (fpol != Polarity::Max) levels.push_back(cstar + delta);
  if (fpol != Polarity::Min) levels.push_back(cstar - delta);

  std::vector<Face2> faces;
  for (double lv : levels) {
    auto curves = level_curves(*pf, g.x, g.y, lv, kCurveCells, kCurveCells);
    std::vector<bool> used(curves.size(), false);
    for (std::size_t i = 0; i < curves.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      Face2 f;
      f.level = lv;
      const Vec2 ci = curves[i].centroid();
      const double scale = std::sqrt(std::abs(curves[i].signed_area())) + 1e-12;
      if (g.twisted && std::hypot(ci[0], ci[1]) > 1e-6 * scale) {
        std::size_t partner = curves.size();
        for (std::size_t j = i + 1; j < curves.size(); ++j) {
          const Vec2 cj = curves[j].centroid();
          if (!used[j] && std::hypot(ci[0] + cj[0], ci[1] + cj[1]) < 1e-6 * scale) partner = j;
        }
        if (partner == curves.size()) throw PreconditionError("level curve has no partner under rotation by pi");
        used[partner] = true;
        // representative: the curve further left
        f.curve = curves[partner].centroid()[0] < ci[0] ? curves[partner] : curves[i];
        f.invariant = false;
        f.pair = true;
      } else {
        f.curve = curves[i];
      }
      faces.push_back(std::move(f));
    }
  }
  std::stable_sort(faces.begin(), faces.end(), [](const Face2& a, const Face2& b) {
    if (a.level != b.level) return a.level > b.level;
    return a.curve.centroid()[0] < b.curve.centroid()[0];
  });
  if (g.valence > 0 && static_cast<int>(faces.size()) != g.valence)
    throw PreconditionError("function gives " + std::to_string(faces.size()) + " boundary faces, expected " +
                            std::to_string(g.valence));

  Chart c;
  c.name = kind_name(kind);
  c.names = {"x", "y", "theta"};
  c.domain = {g.x, g.y, Interval{0.0, kTwoPi}};
  c.periodic = {false, false, true};
  if (g.twisted) c.deck = Deck{{-1.0, -1.0, 1.0}, 2};
  c.band = Band{g.f, flo == cstar && fpol == Polarity::Min ? cstar - 1.0 : flo,
                fhi == cstar && fpol == Polarity::Max ? cstar + 1.0 : fhi};
  const ChartPtr ch = make_chart(c);

  const double K = 1.0 + std::max(std::abs(flo), std::abs(fhi));
  const Expr sf = sign > 0 ? g.f : -g.f;
  BlockRealization b;
  b.kind = kind;
  b.twisted = g.twisted;
  b.polarity = fpol == Polarity::None ? Polarity::None
               : (fpol == Polarity::Min) == (sign > 0) ? Polarity::Min
                                                       : Polarity::Max;
  b.patches.push_back(fiber_patch(c.name, ch, C(K) + sf, sf, C(1)));

  for (std::size_t s = 0; s < faces.size(); ++s) {
    const Face2 f = faces[s];
    const double out = f.level > cstar ? 1.0 : -1.0;  // outward along +grad f above c*
    BoundaryFace bf;
    bf.slot = static_cast<int>(s);
    if (!g.twisted) {
      bf.sample = [pf, f, out](double p1, double p2) {
        const CurveSample cs = sample_curve(*pf, f.curve, p2);
        FacePoint fp;
        fp.p = {cs.p[0], cs.p[1], wrap_angle(p1)};
        fp.e1 = {0, 0, 1};
        fp.e2 = {cs.tangent[0], cs.tangent[1], 0};
        fp.normal = gradient_normal(*pf, cs.p, out);
        return fp;
      };
    } else if (f.invariant) {
      bf.sample = [pf, f, out](double p1, double p2) {
        const double th = wrap_angle(2.0 * p1 + p2, 2.0 * kTwoPi);
        const double a = 0.5 * wrap_angle(p2);
        const bool first = th < kTwoPi;
        const CurveSample cs = sample_curve(*pf, f.curve, first ? a : a + std::numbers::pi);
        FacePoint fp;
        fp.p = {cs.p[0], cs.p[1], first ? th : th - kTwoPi};
        fp.e1 = {0, 0, 2};
        fp.e2 = {0.5 * cs.tangent[0], 0.5 * cs.tangent[1], 1};
        fp.normal = gradient_normal(*pf, cs.p, out);
        return fp;
      };
    } else {
      bf.sample = [pf, f, out](double p1, double p2) {
        const double th = wrap_angle(2.0 * p1, 2.0 * kTwoPi);
        const bool first = th < kTwoPi;
        const CurveSample cs = sample_curve(*pf, f.curve, p2);
        const double s = first ? 1.0 : -1.0;
        FacePoint fp;
        fp.p = {s * cs.p[0], s * cs.p[1], first ? th : th - kTwoPi};
        fp.e1 = {0, 0, 2};
        fp.e2 = {s * cs.tangent[0], s * cs.tangent[1], 0};
        fp.normal = gradient_normal(*pf, {fp.p[0], fp.p[1]}, out);
        return fp;
      };
    }
    b.faces.push_back(bf);
  }

  for (const auto& cp : crit) {
    if (std::abs(cp.value - cstar) > 1e-9) continue;
    if (g.twisted) {
      const bool dup = std::any_of(b.critical.begin(), b.critical.end(), [&](const CriticalSet& s) {
        return s.distance({-cp.p[0], -cp.p[1], 0.0}) < 1e-6;
      });
      if (dup) continue;
    }
    CriticalSet cs;
    cs.name = "critical circle over (" + std::to_string(cp.p[0]) + ", " + std::to_string(cp.p[1]) + ")";
    cs.dimension = 1;
    const double hs = sign * cp.hxx;
    cs.polarity = cp.det() < 0 ? Polarity::None : hs > 0 ? Polarity::Min : Polarity::Max;
    cs.level = sign * cp.value;
    const Vec2 c0 = cp.p;
    const bool tw = g.twisted;
    cs.distance = [c0, tw](const Point& p) {
      double d = std::hypot(p[0] - c0[0], p[1] - c0[1]);
      if (tw) d = std::min(d, std::hypot(p[0] + c0[0], p[1] + c0[1]));
      return d;
    };
    b.critical.push_back(cs);
  }
  finalize(b);
  return b;
}

GenericSpec duffing_spec(bool twisted, int valence) {
  GenericSpec g;
  g.text = kDuffingText;
  g.f = duffing_potential();
  g.x = kDuffingX;
  g.y = kDuffingY;
  g.twisted = twisted;
  g.valence = valence;
  return g;
}

}  // namespace

expr::Expr duffing_potential() { return expr::parse_expr(kDuffingText, {"x", "y"}); }

BlockRealization realize_III(Pattern pattern) {
  return build_potential(Kind::III, duffing_spec(false, 3), pattern == Pattern::Merge ? 1 : -1);
}

BlockRealization realize_IV(Pattern pattern) {
  return build_potential(Kind::IV, duffing_spec(true, 2), pattern == Pattern::Merge ? 1 : -1);
}

BlockRealization realize_generic(const GenericSpec& g, int sign) { return build_potential(Kind::G, g, sign); }

}  // namespace arnold
