#include "doctest.h"

#include <cmath>
#include <random>

#include "arnold/errors.hpp"
#include "arnold/interpolation.hpp"
#include "support/collar_checks.hpp"

using namespace arnold;
using testing::collar_residuals;
using testing::random_trace;

namespace {

double H(int i, double t) { return expr::bump_derivative(0, 7.0 * (t - 1.0) - (i - 1)); }

void check_endpoints(const CollarRealization& c, double t0, const Trace& a, double t1, const Trace& b) {
  const Point p0{t0, 0.4, 1.3}, p1{t1, 2.2, 5.0};
  const auto x0 = c.X.at(p0), x1 = c.X.at(p1);
  const auto a0 = c.alpha_core.at(p0), a1 = c.alpha_core.at(p1);
  CHECK(x0[0] == doctest::Approx(0.0));
  CHECK(x0[1] == doctest::Approx(a.A).epsilon(1e-12));
  CHECK(x0[2] == doctest::Approx(a.B).epsilon(1e-12));
  CHECK(a0[1] == doctest::Approx(a.C).epsilon(1e-12));
  CHECK(a0[2] == doctest::Approx(a.D).epsilon(1e-12));
  CHECK(x1[1] == doctest::Approx(b.A).epsilon(1e-12));
  CHECK(x1[2] == doctest::Approx(b.B).epsilon(1e-12));
  CHECK(a1[1] == doctest::Approx(b.C).epsilon(1e-12));
  CHECK(a1[2] == doctest::Approx(b.D).epsilon(1e-12));
}

}  // namespace

TEST_CASE("identity face: endpoints and interval coefficients") {
  const CollarRealization c = interpolate(Trace{1, 0, 1, 0});
  CHECK_FALSE(c.mirrored);
  check_endpoints(c, 1.0, Trace{}, 2.0, Trace{});
  const Expr dh = expr::diff(c.h.c[0], 0);
  for (int i = 1; i <= 7; ++i) {
    for (double f : {0.1, 0.37, 0.5, 0.81}) {
      const double t = 1.0 + (i - 1 + f) / 7.0;
      double want = 1.0;
      if (i == 2) want = 1.0 + H(2, t);
      if (i == 3) want = 2.0 - H(3, t);
      CHECK(expr::eval(dh, {t, 0, 0}) == doctest::Approx(want).epsilon(1e-12));
    }
  }
  const double h1 = expr::eval(c.h.c[0], {1.0, 0, 0}), h2 = expr::eval(c.h.c[0], {2.0, 0, 0});
  CHECK(h1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(h2 - h1 > 1.0);
  // beta at t = 1 is dtheta
  const auto b = c.beta.at({1.0, 0.3, 0.3});
  CHECK(b[1] == doctest::Approx(1.0));
  CHECK(b[2] == doctest::Approx(0.0));
  const auto r = collar_residuals(c, 64, 4);
  CHECK(r.euler < 1e-9);
  CHECK(r.bY < 1e-9);
  CHECK(r.ixdb < 1e-9);
  CHECK(r.min_dh >= 1.0 - 1e-12);
  CHECK_NOTHROW(collar_h(c));
}

TEST_CASE("face (2,1,1,-1): last interval pairing and final beta") {
  const Trace tr{2, 1, 1, -1};
  const CollarRealization c = interpolate(tr);
  CHECK_FALSE(c.mirrored);
  check_endpoints(c, 1.0, Trace{}, 2.0, tr);
  const KForm ax = interior(c.X, c.alpha_core);
  for (double f : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const double t = 1.0 + (6.0 + f) / 7.0;
    const double v = ax.at({t, 0, 0})[0];
    CHECK(v == doctest::Approx(2.0 - H(7, t)).epsilon(1e-12));
    CHECK(v >= 1.0 - 1e-12);
  }
  const auto b = collar_beta(c).at({2.0, 1.0, 1.0});
  CHECK(b[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b[2] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("first interval beta annihilates the curl") {
  const CollarRealization c = interpolate(Trace{1, 0, 1, 0});
  const VectorField Y = curl(c.alpha, c.mu);
  for (double f : {0.2, 0.5, 0.7}) {
    const double t = 1.0 + f / 7.0;
    const double w = t * 7.0 * expr::bump_derivative(1, 7.0 * (t - 1.0)) + H(1, t);
    const auto y = Y.at({t, 0, 0});
    const auto b = c.beta.at({t, 0, 0});
    CHECK(y[1] == doctest::Approx(-w).epsilon(1e-12));
    CHECK(y[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(b[2] == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("precondition errors") {
  CHECK_THROWS_AS(interpolate(Trace{1, 1, 1, 1}), PreconditionError);
  CHECK_THROWS_AS(interpolate(Trace{0, 0, 0, 0}), PreconditionError);
  BoundaryFace bf;
  bf.A = 2;
  bf.C = 2;
  CHECK_THROWS_AS(interpolate(bf), PreconditionError);
  CHECK_THROWS_AS(build_collar("x", {}), PreconditionError);
  CHECK_THROWS_AS(build_collar("x", {CollarSegment{1, 2, {}, false}, CollarSegment{2.5, 3, {}, false}}),
                  PreconditionError);
}

TEST_CASE("random normalized faces satisfy the collar contracts") {
  std::mt19937_64 rng(20261016);
  int mirrored = 0;
  for (int n = 0; n < 200; ++n) {
    const Trace tr = random_trace(rng);
    const CollarRealization c = interpolate(tr);
    mirrored += c.mirrored;
    check_endpoints(c, 1.0, Trace{}, 2.0, tr);
    const auto r = collar_residuals(c, 64, 2);
    CHECK(r.euler < 1e-9);
    CHECK(r.div < 1e-9);
    CHECK(r.ixdb < 1e-9);
    CHECK(r.bY < 1e-9);
    CHECK(r.min_ax > 0.0);
    CHECK(r.min_bx > 0.0);
    const double ac = tr.A * tr.C;
    const double bound = c.mirrored ? std::min({1.0, tr.B * tr.D}) : std::min({1.0, ac, ac + tr.B * tr.D});
    CHECK(r.min_dh >= bound - 1e-12);
  }
  CHECK(mirrored > 20);
  CHECK(mirrored < 180);
}

TEST_CASE("junctions match in value and first derivative") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 20; ++n) {
    const CollarRealization c = interpolate(random_trace(rng));
    const std::vector<Expr> comps{c.X.c[1], c.X.c[2], c.alpha.c[1], c.alpha.c[2], c.beta.c[1], c.beta.c[2]};
    for (const Expr& e : comps) {
      const Expr de = expr::diff(e, 0);
      for (std::size_t k = 1; k + 1 < c.breaks.size(); ++k) {
        const double b = c.breaks[k];
        const Point l{b - 1e-13, 0, 0}, r{b + 1e-13, 0, 0};
        CHECK(std::abs(expr::eval(e, l) - expr::eval(e, r)) < 1e-9);
        CHECK(std::abs(expr::eval(de, l) - expr::eval(de, r)) < 1e-9);
      }
    }
  }
}

TEST_CASE("mirrored branch is the relabeled construction from the fourth interval on") {
  const std::vector<Trace> faces{{1, 2, -1, 1}, {0, 1, 3, 1}, {-2, 0.5, 0.25, 3}};
  for (const Trace& tr : faces) {
    const CollarRealization m = interpolate(tr);
    const CollarRealization s = interpolate(Trace{tr.B, tr.A, tr.D, tr.C});
    CHECK(m.mirrored);
    CHECK_FALSE(s.mirrored);
    for (int k = 0; k <= 40; ++k) {
      const Point p{1.0 + 3.0 / 7.0 + (4.0 / 7.0) * k / 40.0, 0.5, 0.5};
      const auto xm = m.X.at(p), xs = s.X.at(p);
      const auto am = m.alpha_core.at(p), as = s.alpha_core.at(p);
      CHECK(xm[1] == doctest::Approx(xs[2]).epsilon(1e-14));
      CHECK(xm[2] == doctest::Approx(xs[1]).epsilon(1e-14));
      CHECK(am[1] == doctest::Approx(as[2]).epsilon(1e-14));
      CHECK(am[2] == doctest::Approx(as[1]).epsilon(1e-14));
    }
    // start stays canonical
    check_endpoints(m, 1.0, Trace{}, 2.0, tr);
  }
}

TEST_CASE("reversed and two-part collars on a physical range") {
  const Trace tr{1, 1, 2, -1};
  const CollarRealization r = build_collar("rev", {CollarSegment{3.0, 5.0, tr, true}}, Expr(1.0), 7.0);
  check_endpoints(r, 3.0, tr, 5.0, Trace{});
  CHECK(expr::eval(r.h.c[0], {3.0, 0, 0}) == doctest::Approx(7.0));
  auto res = collar_residuals(r, 64, 2);
  CHECK(res.euler < 1e-9);
  CHECK(res.ixdb < 1e-9);
  CHECK(res.bY < 1e-9);
  CHECK(res.min_dh > 0.0);

  const Trace t2{0, 1, 5, 1};
  const Expr t = Expr::coord(0);
  const Expr sigma = 1.0 + 0.5 * expr::bump(10.0 * (t - 3.0)) * expr::bump(10.0 * (5.0 - t));
  const CollarRealization two = build_collar("two", {CollarSegment{3.0, 4.0, tr, true}, CollarSegment{4.0, 5.0, t2, false}},
                                             sigma, 0.0);
  check_endpoints(two, 3.0, tr, 5.0, t2);
  res = collar_residuals(two, 128, 2);
  CHECK(res.euler < 1e-9);
  CHECK(res.div < 1e-9);
  CHECK(res.ixdb < 1e-9);
  CHECK(res.bY < 1e-9);
  CHECK(res.min_bx > 0.0);
  CHECK_NOTHROW(collar_h(two));
}
