#include <cmath>
#include <random>

#include "arnold/errors.hpp"
#include "arnold/forms.hpp"
#include "doctest.h"

using namespace arnold;
using expr::eval;

namespace {

const Expr C0 = Expr::coord(0), C1 = Expr::coord(1), C2 = Expr::coord(2);

ChartPtr box_chart(double lo = -1, double hi = 1) {
  Chart c;
  c.name = "box";
  c.names = {"t", "theta", "phi"};
  c.domain = {Interval{lo, hi}, Interval{lo, hi}, Interval{lo, hi}};
  return make_chart(c);
}

ChartPtr torus3() {
  Chart c;
  c.name = "T3";
  c.names = {"theta1", "theta2", "theta3"};
  c.domain = {Interval{0, 2 * M_PI}, Interval{0, 2 * M_PI}, Interval{0, 2 * M_PI}};
  c.periodic = {true, true, true};
  return make_chart(c);
}

// Gaussian elimination for a 3x3 system, independent of the forms code.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> r) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int i = c + 1; i < 3; ++i)
      if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
    std::swap(m[c], m[piv]);
    std::swap(r[c], r[piv]);
    for (int i = c + 1; i < 3; ++i) {
      const double f = m[i][c] / m[c][c];
      for (int j = c; j < 3; ++j) m[i][j] -= f * m[c][j];
      r[i] -= f * r[c];
    }
  }
  std::array<double, 3> x{};
  for (int i = 2; i >= 0; --i) {
    double s = r[i];
    for (int j = i + 1; j < 3; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

Expr random_field(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  return Expr(u(rng)) * expr::sin(Expr(u(rng)) * C0 + C1 * C2) + Expr(u(rng)) * C0 * C1 * C1 +
         expr::cos(C2 * Expr(u(rng))) * C0 + Expr(u(rng)) * expr::bump(Expr(0.5) + Expr(0.4) * C1);
}

}  // namespace

TEST_CASE("exterior derivative examples") {
  auto ch = box_chart();
  KForm a = KForm::one(ch, 0, C0, 0);
  KForm da = exterior_d(a);
  CHECK(expr::simplify(da.c[0]).is_const(0.0));
  CHECK(expr::simplify(da.c[1]).is_const(0.0));
  CHECK(expr::simplify(da.c[2]).is_const(1.0));
  CHECK(expr::simplify(exterior_d(KForm::function(ch, 4.0)).c[1]).is_const(0.0));

  auto t3 = torus3();
  KForm alpha = KForm::one(t3, expr::pow(expr::sin(C2), 2), expr::cos(C2), 0);
  KForm d = exterior_d(alpha);
  for (double th : {0.3, 1.2, 2.9, 4.4}) {
    Point p{0.1, 0.2, th};
    // -sin dth3^dth2 = +sin dth2^dth3 ; 2 sin cos dth3^dth1
    CHECK(eval(d.c[0], p) == doctest::Approx(std::sin(th)).epsilon(1e-14));
    CHECK(eval(d.c[1], p) == doctest::Approx(2 * std::sin(th) * std::cos(th)).epsilon(1e-14));
    CHECK(eval(d.c[2], p) == 0.0);
  }
  CHECK_THROWS_AS(exterior_d(KForm::volume(ch, 1.0)), DegreeError);
}

TEST_CASE("interior product examples") {
  auto ch = box_chart();
  VectorField dtheta{ch, {0, 1, 0}};
  KForm i = interior(dtheta, KForm::two(ch, 0, 0, 1));  // dt^dtheta
  CHECK(expr::simplify(i.c[0]).is_const(-1.0));
  CHECK(expr::simplify(i.c[1]).is_const(0.0));
  KForm iv = interior(dtheta, KForm::volume(ch, 1.0));
  CHECK(expr::simplify(iv.c[1]).is_const(1.0));  // dphi^dt
  CHECK(expr::simplify(iv.c[0]).is_const(0.0));
  CHECK_THROWS_AS(interior(dtheta, KForm::function(ch, 1.0)), DegreeError);

  auto t3 = torus3();
  VectorField x{t3, {expr::pow(expr::sin(C2), 2), expr::cos(C2), 0}};
  KForm alpha = KForm::one(t3, x.c[0], x.c[1], 0);
  KForm b = KForm::function(t3, Expr(0.5) * (expr::pow(expr::sin(C2), 4) + expr::pow(expr::cos(C2), 2)));
  KForm lhs = interior(x, exterior_d(alpha));
  KForm db = exterior_d(b);
  for (double th : {0.4, 1.0, 2.2, 5.1}) {
    Point p{0.7, 0.1, th};
    const double s = std::sin(th), c = std::cos(th);
    CHECK(eval(lhs.c[2], p) == doctest::Approx(-2 * s * s * s * c + s * c).epsilon(1e-13));
    CHECK(std::abs(eval(lhs.c[2], p) + eval(db.c[2], p)) < 1e-14);
    CHECK(std::abs(eval(lhs.c[0], p)) < 1e-15);
  }
}

TEST_CASE("wedge examples") {
  auto ch = box_chart();
  KForm w = wedge(KForm::one(ch, 0, 1, 0), KForm::one(ch, 0, 0, 1));
  CHECK(expr::simplify(w.c[0]).is_const(1.0));
  KForm alpha = KForm::one(ch, 0, C0, 0);
  KForm vol = wedge(alpha, exterior_d(alpha));
  CHECK(expr::simplify(vol.c[0]).is_const(0.0));
  KForm f = KForm::function(ch, C0), g = KForm::function(ch, expr::sin(C1));
  Point p{0.3, 0.4, 0.5};
  CHECK(eval(wedge(f, g).c[0], p) == eval(wedge(g, f).c[0], p));
  CHECK_THROWS_AS(wedge(exterior_d(alpha), exterior_d(alpha)), DegreeError);
}

TEST_CASE("curl examples") {
  auto t3 = torus3();
  KForm mu = KForm::volume(t3, 1.0);
  KForm alpha = KForm::one(t3, expr::pow(expr::sin(C2), 2), expr::cos(C2), 0);
  VectorField y = curl(alpha, mu);
  for (double th : {0.2, 1.5707963267948966, 3.7}) {
    Point p{1, 2, th};
    auto v = y.at(p);
    CHECK(v[0] == doctest::Approx(std::sin(th)).epsilon(1e-14));
    CHECK(v[1] == doctest::Approx(2 * std::sin(th) * std::cos(th)).epsilon(1e-14));
    CHECK(v[2] == 0.0);
  }

  // alpha = t dtheta: compare against a direct solve of interior(Y, mu) = d alpha
  auto ch = box_chart(0.5, 1.5);
  KForm mu2 = KForm::volume(ch, C0 * C0 + Expr(1.0));
  KForm a2 = KForm::one(ch, C1 * C2, C0, expr::sin(C0 * C1));
  VectorField y2 = curl(a2, mu2);
  KForm da2 = exterior_d(a2);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  for (int k = 0; k < 10; ++k) {
    Point p{u(rng), u(rng), u(rng)};
    std::array<std::array<double, 3>, 3> m{};
    for (int j = 0; j < 3; ++j) {
      VectorField e{ch, {0, 0, 0}};
      e.c[j] = 1.0;
      auto col = interior(e, mu2).at(p);
      for (int i = 0; i < 3; ++i) m[i][j] = col[i];
    }
    auto rhs = da2.at(p);
    auto sol = solve3(m, {rhs[0], rhs[1], rhs[2]});
    auto v = y2.at(p);
    for (int i = 0; i < 3; ++i) CHECK(v[i] == doctest::Approx(sol[i]).epsilon(1e-12));
  }
  VectorField y3 = curl(KForm::one(ch, 0, C0, 0), KForm::volume(ch, 1.0));
  CHECK(expr::simplify(y3.c[2]).is_const(1.0));
  VectorField y4 = curl(exterior_d(KForm::function(ch, C0 * C1)), KForm::volume(ch, 1.0));
  for (auto& e : y4.c) CHECK(expr::simplify(e).is_const(0.0));
  auto ch0 = box_chart(-1, 1);
  CHECK_THROWS_AS(curl(KForm::one(ch0, 0, 1, 0), KForm::volume(ch0, C0)), SingularVolumeError);
}

TEST_CASE("divergence examples") {
  auto ch = box_chart(1, 2);
  KForm mu = KForm::volume(ch, 1.0);
  CHECK(expr::simplify(divergence(VectorField{ch, {0, 1, 0}}, mu).c[0]).is_const(0.0));
  VectorField lin{ch, {0, expr::sin(C0), C0 * C0}};
  CHECK(expr::simplify(divergence(lin, mu).c[0]).is_const(0.0));
  VectorField radial{ch, {C0, 0, 0}};
  Expr div = divergence(radial, mu).c[0];
  // flux of t d/dt through a small box divided by its volume
  const double h = 1e-3;
  Point p{1.4, 0.2, 0.3};
  const double flux = ((p[0] + h) - (p[0] - h)) * (2 * h) * (2 * h);
  CHECK(eval(div, p) == doctest::Approx(flux / std::pow(2 * h, 3)).epsilon(1e-9));
  CHECK(eval(div, p) == doctest::Approx(1.0));
}

TEST_CASE("calculus identities on random forms") {
  auto ch = box_chart(0.5, 1.5);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  KForm mu = KForm::volume(ch, C0 + Expr(0.5) * C1);
  double dd0 = 0, dd1 = 0, curl_res = 0, cartan = 0, div_res = 0;
  for (int n = 0; n < 5; ++n) {
    KForm f = KForm::function(ch, random_field(rng));
    KForm a = KForm::one(ch, random_field(rng), random_field(rng), random_field(rng));
    VectorField v{ch, {random_field(rng), random_field(rng), random_field(rng)}};
    KForm ddf = exterior_d(exterior_d(f));
    KForm dda = exterior_d(exterior_d(a));
    VectorField y = curl(a, mu);
    KForm iy = interior(y, mu), da = exterior_d(a);
    KForm vf = interior(v, exterior_d(f));
    KForm dv = divergence(v, mu);
    KForm flux = exterior_d(interior(v, mu));
    expr::Tape tape({ddf.c[0], ddf.c[1], ddf.c[2], dda.c[0], iy.c[0] - da.c[0], iy.c[1] - da.c[1],
                     iy.c[2] - da.c[2], vf.c[0], dv.c[0] * mu.c[0] - flux.c[0]});
    for (int k = 0; k < 2000; ++k) {
      Point p{u(rng), u(rng), u(rng)};
      auto r = tape.eval(p);
      dd0 = std::max({dd0, std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
      dd1 = std::max(dd1, std::abs(r[3]));
      curl_res = std::max({curl_res, std::abs(r[4]), std::abs(r[5]), std::abs(r[6])});
      div_res = std::max(div_res, std::abs(r[8]));
      if (k < 200) {
        // directional derivative of f along v by central differences
        const double h = 1e-4;
        auto vv = v.at(p);
        Point a1 = p, b1 = p;
        for (int i = 0; i < 3; ++i) {
          a1[i] -= h * vv[i];
          b1[i] += h * vv[i];
        }
        const double fd = (eval(f.c[0], b1) - eval(f.c[0], a1)) / (2 * h);
        cartan = std::max(cartan, std::abs(fd - r[7]));
      }
    }
  }
  CHECK(dd0 < 1e-10);
  CHECK(dd1 < 1e-10);
  CHECK(curl_res < 1e-10);
  CHECK(cartan < 1e-5);
  CHECK(div_res < 1e-10);
}

TEST_CASE("deck invariance residuals") {
  Chart c;
  c.name = "twisted";
  c.names = {"x", "y", "theta"};
  c.domain = {Interval{-1, 1}, Interval{-1, 1}, Interval{0, 2 * M_PI}};
  c.periodic = {false, false, true};
  c.deck = Deck{{-1, -1, 1}, 2};
  auto ch = make_chart(c);
  VectorField even{ch, {0, 0, C0 * C0 + C1 * C1}};
  VectorField rot{ch, {-C1, C0, 1}};
  VectorField bad{ch, {0, 0, C0}};
  CHECK(deck_residual(even) == 0.0);
  CHECK(deck_residual(rot) == 0.0);
  CHECK(deck_residual(bad) > 0.1);
  CHECK(deck_residual(KForm::one(ch, C1, -C0, C0 * C1)) == 0.0);
  CHECK(deck_residual(KForm::volume(ch, 1.0)) == 0.0);
}
