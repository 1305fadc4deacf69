#include <cmath>
#include <numbers>

#include "arnold/blocks.hpp"
#include "arnold/errors.hpp"
#include "arnold/level_curves.hpp"
#include "doctest.h"
#include "support/residuals.hpp"

using namespace arnold;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

void check_contracts(const BlockRealization& b, int n = 10000) {
  for (const auto& P : b.patches) {
    INFO("patch " << P.name);
    const auto r = testing::patch_residuals(P, n);
    CHECK(r.euler < 1e-10);
    CHECK(r.div < 1e-10);
    CHECK(r.min_ax > 0);
    CHECK(r.min_bx > 0);
    CHECK(r.ixdb < 1e-10);
    CHECK(r.bY < 1e-10);
  }
}

void check_faces(const BlockRealization& b) {
  for (const auto& f : b.faces) {
    INFO("slot " << f.slot);
    CHECK(f.A * f.C + f.B * f.D == Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) {
        const FacePoint fp = f.sample(2 * kPi * i / 12 + 0.05, 2 * kPi * j / 12 + 0.11);
        const Patch& P = b.patches.at(static_cast<std::size_t>(fp.patch));
        CHECK(P.chart->in_box(fp.p, 1e-9));
        CHECK(P.B.at(fp.p)[0] == Approx(f.bernoulli).epsilon(1e-11));
        const auto dB = exterior_d(P.B).at(fp.p);
        CHECK(std::hypot(dB[0], dB[1], dB[2]) > 1e-6);
        const auto X = P.X.at(fp.p);
        // X = A e1 + B e2 at every face point
        for (int k = 0; k < 3; ++k) CHECK(X[k] == Approx(f.A * fp.e1[k] + f.B * fp.e2[k]).epsilon(1e-9));
      }
    }
  }
}

double field(const Patch& P, const KForm& k, Point p, int i = 0) {
  (void)P;
  return k.at(p)[static_cast<std::size_t>(i)];
}

}  // namespace

TEST_CASE("type I minimum") {
  const BlockRealization b = realize_I(Polarity::Min, 0.5);
  REQUIRE(b.patches.size() == 2);
  const Patch& core = b.patches[0];
  const Patch& ann = b.patches[1];
  CHECK(field(core, core.B, {0, 0, 1}) == 0.0);
  CHECK(field(core, core.alpha, {0, 0, 1}, 2) == Approx(0.5));
  CHECK(field(ann, ann.alpha, {1.0, 0.3, 0.2}, 2) == Approx(1.0));  // v(1) = 1
  CHECK(field(ann, ann.alpha, {0.95, 0.3, 0.2}, 2) == Approx(0.95));  // v = r near the face
  // the two charts agree on the overlap
  for (double r : {0.41, 0.5, 0.6}) {
    const double x = r * std::cos(0.7), y = r * std::sin(0.7);
    CHECK(field(core, core.B, {x, y, 0.1}) == Approx(field(ann, ann.B, {r, 0.7, 0.1})).epsilon(1e-14));
  }
  check_contracts(b);
  REQUIRE(b.faces.size() == 1);
  const auto& f = b.faces[0];
  CHECK(f.A == 1.0);
  CHECK(f.B == 0.0);
  CHECK(f.C == 1.0);
  CHECK(f.D == 0.0);
  CHECK(f.upper);
  CHECK(f.bernoulli == Approx(0.5));
  check_faces(b);
  CHECK(b.range.lo == 0.0);
  CHECK(b.range.hi == Approx(0.5));
  // dv/dr > 0 away from the core
  const KForm dB = exterior_d(ann.B);
  for (int i = 0; i <= 600; ++i) CHECK(dB.at({0.4 + 0.6 * i / 600.0, 0, 0})[0] > 0);
  const KForm dBc = exterior_d(core.B);
  for (int i = 1; i <= 300; ++i) CHECK(dBc.at({0.45 * i / 300.0, 0, 0})[0] > 0);
  CHECK_THROWS_AS(realize_I(Polarity::Min, 0.0), PreconditionError);
  CHECK_THROWS_AS(realize_I(Polarity::None), PreconditionError);
}

TEST_CASE("type I maximum and other epsilon") {
  const BlockRealization b = realize_I(Polarity::Max, 0.5);
  CHECK(b.patches[0].B.at({0, 0, 0})[0] == 0.0);
  CHECK(b.patches[1].alpha.at({0.95, 0, 0})[2] == Approx(1.5 - 0.95));
  CHECK_FALSE(b.faces[0].upper);
  CHECK(b.faces[0].bernoulli == Approx(-1.0));
  check_contracts(b, 4000);
  check_faces(b);
  const BlockRealization e = realize_I(Polarity::Min, 0.8);
  check_contracts(e, 4000);
  CHECK(e.patches[0].alpha.at({0, 0, 0})[2] == Approx(0.8));
}

TEST_CASE("type II") {
  const BlockRealization b = realize_II(Polarity::Min);
  const Patch& P = b.patches[0];
  for (double t : {1.0, 1.2, 1.5, 1.9, 2.0}) CHECK(P.B.at({t, 0.4, 0.2})[0] == Approx(t * t - 3 * t).epsilon(1e-15));
  const KForm dB = exterior_d(P.B);
  CHECK(dB.at({1.5, 0, 0})[0] == 0.0);
  CHECK(dB.at({1.5 + 1e-3, 0, 0})[0] > 0);
  CHECK(P.B.at({2, 0, 0})[0] - P.B.at({1, 0, 0})[0] == 0.0);
  for (int i = 0; i <= 100; ++i) CHECK(P.alpha.at({1 + i / 100.0, 0, 0})[2] >= 0.5);
  check_contracts(b);
  REQUIRE(b.faces.size() == 2);
  for (const auto& f : b.faces) {
    CHECK(f.A == 1.0);
    CHECK(f.B == 0.0);
    CHECK(f.C == 1.0);
    CHECK(f.D == 0.0);
    CHECK(f.upper);
    CHECK(f.bernoulli == -2.0);
  }
  check_faces(b);
  CHECK(b.critical.at(0).dimension == 2);
  const BlockRealization m = realize_II(Polarity::Max);
  CHECK(m.patches[0].B.at({1.25, 0, 0})[0] == Approx(-1.25 * 1.25 + 3 * 1.25));
  CHECK_FALSE(m.faces[0].upper);
  CHECK_FALSE(m.faces[1].upper);
  check_contracts(m, 4000);
}

TEST_CASE("Duffing potential critical points") {
  const PlaneFunction f(duffing_potential());
  const auto crit = plane_critical_points(f, Interval{-1.6, 1.6}, Interval{-1, 1});
  REQUIRE(crit.size() == 3);
  CHECK(crit[0].p[0] == Approx(-1.0));
  CHECK(crit[1].p[0] == Approx(0.0));
  CHECK(crit[2].p[0] == Approx(1.0));
  for (const auto& c : crit) CHECK(std::abs(c.p[1]) < 1e-12);
  CHECK(crit[0].value - crit[1].value == Approx(-0.125));
  CHECK(crit[1].det() < 0);
  CHECK(crit[0].det() > 0);
}

TEST_CASE("type III merge and split") {
  const BlockRealization b = realize_III(Pattern::Merge);
  const Patch& P = b.patches[0];
  CHECK(P.B.at({1, 0, 0})[0] - P.B.at({0, 0, 0})[0] == Approx(-0.125));
  CHECK(P.B.at({-1, 0, 0})[0] - P.B.at({0, 0, 0})[0] == Approx(-0.125));
  CHECK(P.alpha.at({0, 0, 0})[2] == Approx(1.0 + 1.0 / 16));
  // i_X d alpha + dB is identically zero
  const KForm e = simplify(add(interior(P.X, exterior_d(P.alpha)), exterior_d(P.B)));
  for (const auto& c : e.c) CHECK(c.is_const(0.0));
  check_contracts(b);
  REQUIRE(b.faces.size() == 3);
  CHECK(b.faces[0].upper);
  CHECK_FALSE(b.faces[1].upper);
  CHECK_FALSE(b.faces[2].upper);
  CHECK(b.faces[0].bernoulli == Approx(1.0 / 16));
  CHECK(b.faces[1].bernoulli == Approx(-1.0 / 16));
  // slot 1 is the left hole
  CHECK(b.faces[1].sample(0, 0).p[0] < 0);
  CHECK(b.faces[2].sample(0, 0).p[0] > 0);
  for (const auto& f : b.faces) {
    CHECK(f.A == 1.0);
    CHECK(f.B == 0.0);
    CHECK(f.C == 1.0);
    CHECK(f.D == 0.0);
  }
  check_faces(b);
  REQUIRE(b.critical.size() == 1);
  CHECK(b.critical[0].polarity == Polarity::None);
  CHECK(b.critical[0].distance({0, 0, 1}) < 1e-12);

  const BlockRealization s = realize_III(Pattern::Split);
  CHECK_FALSE(s.faces[0].upper);
  CHECK(s.faces[1].upper);
  CHECK(s.faces[2].upper);
  check_contracts(s, 4000);
}

TEST_CASE("type IV") {
  const BlockRealization b = realize_IV();
  CHECK(b.twisted);
  const Patch& P = b.patches[0];
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    const double x = -1.6 + 3.2 * i / 199.0, y = std::sin(i * 0.37);
    worst = std::max(worst, std::abs(P.alpha.at({x, y, 0})[2] - P.alpha.at({-x, -y, 0})[2]));
  }
  CHECK(worst == 0.0);
  CHECK(deck_residual(P.X) == 0.0);
  CHECK(deck_residual(P.alpha) == 0.0);
  CHECK(deck_residual(P.B) == 0.0);
  CHECK(deck_residual(P.beta) == 0.0);
  check_contracts(b);
  REQUIRE(b.faces.size() == 2);
  CHECK(b.faces[0].A == 0.5);
  CHECK(b.faces[0].B == 0.0);
  CHECK(b.faces[0].C == 2.0);
  CHECK(b.faces[0].D == 1.0);
  CHECK(b.faces[1].A == 0.5);
  CHECK(b.faces[1].C == 2.0);
  CHECK(b.faces[1].D == 0.0);
  CHECK(b.faces[0].upper);
  CHECK_FALSE(b.faces[1].upper);
  check_faces(b);
  REQUIRE(b.critical.size() == 1);
  const BlockRealization s = realize_IV(Pattern::Split);
  CHECK_FALSE(s.faces[0].upper);
  CHECK(s.faces[1].upper);
}

TEST_CASE("type V") {
  for (Polarity pol : {Polarity::Min, Polarity::Max}) {
    const BlockRealization b = realize_V(pol);
    const Patch& P = b.patches[0];
    CHECK(deck_residual(P.X) == 0.0);
    CHECK(deck_residual(P.alpha) == 0.0);
    CHECK(deck_residual(P.B) == 0.0);
    CHECK(deck_residual(P.mu) == 0.0);
    check_contracts(b);
    REQUIRE(b.faces.size() == 1);
    CHECK(b.faces[0].A == 1.0);
    CHECK(b.faces[0].C == 1.0);
    CHECK(b.faces[0].D == 0.0);
    CHECK(b.faces[0].upper == (pol == Polarity::Min));
    check_faces(b);
    CHECK(P.B.at({0.3, 0, 0.2})[0] == 0.0);
    CHECK(b.critical[0].klein);
    CHECK(b.critical[0].dimension == 2);
  }
  const Patch P = realize_V(Polarity::Min).patches[0];
  CHECK(P.alpha.at({0, 0.1, 0})[2] == Approx(0.5 + 0.01));
  CHECK(P.alpha.at({0, 0.99, 0})[2] == Approx(0.99 * 0.99));
  const KForm dB = exterior_d(P.B);
  for (int i = 1; i <= 500; ++i) CHECK(dB.at({0, i / 500.0, 0})[1] > 0);
}

TEST_CASE("generic atoms") {
  GenericSpec g;
  g.text = "1/4*(y^2 - x^2 + 1/2*x^4)";
  g.f = expr::parse_expr(g.text, {"x", "y"});
  g.x = Interval{-1.6, 1.6};
  g.y = Interval{-1, 1};
  g.valence = 3;
  const BlockRealization gen = realize_generic(g);
  const BlockRealization iii = realize_III(Pattern::Merge);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Point p = testing::random_point(*iii.patches[0].chart, rng);
    CHECK(gen.patches[0].alpha.at(p)[2] == iii.patches[0].alpha.at(p)[2]);
    CHECK(gen.patches[0].B.at(p)[0] == iii.patches[0].B.at(p)[0]);
  }
  CHECK(gen.faces.size() == 3);

  GenericSpec disk;
  disk.text = "x^2 + y^2";
  disk.f = expr::parse_expr(disk.text, {"x", "y"});
  disk.x = Interval{-1, 1};
  disk.y = Interval{-1, 1};
  disk.valence = 1;
  const BlockRealization d = realize_generic(disk);
  CHECK(d.polarity == Polarity::Min);
  REQUIRE(d.critical.size() == 1);
  CHECK(d.critical[0].dimension == 1);
  CHECK(d.critical[0].polarity == Polarity::Min);
  CHECK(d.faces.size() == 1);
  CHECK(d.faces[0].upper);
  check_contracts(d, 4000);
  check_faces(d);

  GenericSpec tw = disk;
  tw.text = "x^2 + y^2 + x";
  tw.f = expr::parse_expr(tw.text, {"x", "y"});
  tw.twisted = true;
  CHECK_THROWS_AS(realize_generic(tw), PreconditionError);

  GenericSpec flat = disk;
  flat.f = expr::parse_expr("x^4 + y^2", {"x", "y"});
  CHECK_THROWS_AS(realize_generic(flat), PreconditionError);

  GenericSpec wrong = g;
  wrong.valence = 2;
  CHECK_THROWS_AS(realize_generic(wrong), PreconditionError);
}

TEST_CASE("boundary_trace and level_map") {
  const BlockRealization b = realize_I(Polarity::Min);
  const BoundaryFace f = boundary_trace(b, 0);
  CHECK(f.A == 1.0);
  CHECK(f.C == 1.0);
  CHECK_THROWS_AS(boundary_trace(b, 1), PreconditionError);
  const BlockRealization m = level_map(b, 2.0, 4.0, 0.5);
  CHECK(m.range.lo == 4.0);
  CHECK(m.range.hi == Approx(5.0));
  CHECK(m.faces[0].bernoulli == Approx(5.0));
  CHECK(m.patches[1].alpha.at({1, 0, 0})[2] == Approx(5.5));
  check_contracts(m, 2000);
  const BoundaryFace g = boundary_trace(m, 0);
  CHECK(g.C == 1.0);
  CHECK(g.bernoulli == Approx(5.0));
  CHECK_THROWS_AS(level_map(b, 0.0, 0.0, 0.5), PreconditionError);
}

TEST_CASE("realize_atom follows slot directions") {
  Atom a{"s", Kind::III, Polarity::None, std::nullopt};
  CHECK(realize_atom(a, {1, -1, -1}).faces[0].upper);
  CHECK_FALSE(realize_atom(a, {-1, 1, 1}).faces[0].upper);
  Atom i{"i", Kind::I, Polarity::Min, std::nullopt};
  CHECK(realize_atom(i, {1}).atom_id == "i");
  CHECK_THROWS_AS(realize_atom(i, {-1}), PreconditionError);
}
