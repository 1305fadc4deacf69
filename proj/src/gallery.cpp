#include "arnold/gallery.hpp"

#include <algorithm>
#include <numbers>

#include "arnold/errors.hpp"

namespace arnold {

namespace {

using expr::Expr;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Expr C(double v) { return Expr(v); }

// Steady flow on T^3 whose Bernoulli function has critical tori where X and its curl are parallel.
GalleryItem t3_parallel() {
  Chart c;
  c.name = "T3";
  c.names = {"theta1", "theta2", "theta3"};
  c.domain = {Interval{0.0, kTwoPi}, Interval{0.0, kTwoPi}, Interval{0.0, kTwoPi}};
  c.periodic = {true, true, true};
  const ChartPtr ch = make_chart(c);
  const Expr s = expr::sin(Expr::coord(2)), co = expr::cos(Expr::coord(2));
  Patch p;
  p.name = "T3";
  p.chart = ch;
  p.X = VectorField{ch, {expr::pow(s, 2), co, C(0.0)}};
  p.alpha = KForm::one(ch, expr::pow(s, 2), co, C(0.0));
  p.B = KForm::function(ch, C(0.5) * (expr::pow(s, 4) + expr::pow(co, 2)));
  p.beta = p.alpha;  // no admissible beta exists; the dual form stands in
  p.mu = KForm::volume(ch, C(1.0));

  GalleryItem it;
  it.name = "t3-parallel";
  it.description = "X = sin^2(theta3) d/dtheta1 + cos(theta3) d/dtheta2 on the flat three-torus";
  it.patches = {p};
  it.expected.steady = true;
  it.expected.beta_exists = false;
  it.expected.obstructed = true;
  it.expected.euler_residual = 1e-15;
  it.expected.why =
      "on the critical tori theta3 = pi/2, 3pi/2 and sin^2 = 1/2 the curl Y is nonzero and parallel to X, "
      "so no beta with beta(X) > 0 and beta(Y) = 0 exists; at theta3 = 0, pi the curl vanishes";
  return it;
}

// Solid torus with a plateau twist near the core: B = x^2 + y^2 but the curl does not vanish on the core.
GalleryItem twisted_solid_torus() {
  constexpr double eps = 0.5, delta = 0.25;
  Chart c;
  c.name = "solid-torus";
  c.names = {"x", "y", "theta"};
  c.domain = {Interval{-1.0, 1.0}, Interval{-1.0, 1.0}, Interval{0.0, kTwoPi}};
  c.periodic = {false, false, true};
  const Expr x = Expr::coord(0), y = Expr::coord(1);
  const Expr s = expr::pow(x, 2) + expr::pow(y, 2);
  c.band = Band{s, 0.0, 1.0};
  const ChartPtr ch = make_chart(c);
  // 1 for s <= delta/2, 0 for s >= delta
  const Expr plateau = C(1.0) - expr::bump((s - C(0.5 * delta)) / C(0.5 * delta));
  Patch p;
  p.name = "solid-torus";
  p.chart = ch;
  p.X = VectorField{ch, {C(0.0), C(0.0), C(1.0)}};
  p.alpha = KForm::one(ch, C(0.0), plateau * x, s + C(eps));
  p.B = KForm::function(ch, s);
  p.beta = KForm::one(ch, C(0.0), C(0.0), C(1.0));  // d theta: fails beta(Y) = 0 near the core
  p.mu = KForm::volume(ch, C(1.0));

  GalleryItem it;
  it.name = "twisted-solid-torus";
  it.description = "alpha = (x^2+y^2+1/2) dtheta + phi(x^2+y^2) x dy, X = d/dtheta, plateau width 1/4";
  it.patches = {p};
  it.expected.steady = true;
  it.expected.beta_exists = false;
  it.expected.obstructed = true;
  it.expected.euler_residual = 1e-15;
  it.expected.why = "B = x^2 + y^2 is Morse-Bott but the curl on the core circle is d/dtheta, parallel to X";
  return it;
}

GalleryItem assembled(const std::string& name, const SeifertData& s, const std::string& description) {
  GalleryItem it;
  it.name = name;
  it.description = description;
  it.flow = assemble(seifert_to_molecule(s));
  it.patches = all_patches(*it.flow);
  it.expected.steady = true;
  it.expected.beta_exists = true;
  it.expected.obstructed = false;
  it.expected.euler_residual = 5e-15;
  it.expected.why = "beta is built with the flow, so the curl vanishes on every critical set";
  return it;
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"t3-parallel", "twisted-solid-torus", "fig3-molecule", "lens-2-1"};
}

GalleryItem gallery_item(const std::string& name) {
  if (name == "t3-parallel") return t3_parallel();
  if (name == "twisted-solid-torus") return twisted_solid_torus();
  if (name == "fig3-molecule")
    return assembled(name, SeifertData{2, 1, {{2, 1}, {3, 1}}},
                     "ten-atom molecule of genus 2 with one cross-cap and exceptional fibers (2,1), (3,1)");
  if (name == "lens-2-1") return assembled(name, SeifertData{0, 0, {{2, 1}}}, "two solid tori glued by (2,1)");
  throw PreconditionError("unknown gallery item '" + name + "'");
}

GalleryCheck check_gallery_item(const GalleryItem& item, const SuiteOptions& o) {
  GalleryCheck g;
  g.steady = true;
  g.beta_exists = true;
  for (const Patch& p : item.patches) {
    const ChartReport r = check_patch(p, o);
    g.euler_residual = std::max(g.euler_residual, r.euler);
    g.steady = g.steady && r.euler < o.tol && r.divergence < o.tol && r.positivity > 0.0;
    g.beta_exists = g.beta_exists && r.ixdb < o.tol && r.beta_curl < o.tol && r.min_beta_x > 0.0;
  }
  g.obstruction = obstruction_check(item.patches, o.tol);
  g.obstructed = g.obstruction.obstructed;
  const GalleryExpectation& e = item.expected;
  if (g.steady != e.steady) g.problems.push_back(std::string("steady: expected ") + (e.steady ? "pass" : "fail"));
  if (g.beta_exists != e.beta_exists)
    g.problems.push_back(std::string("beta: expected ") + (e.beta_exists ? "pass" : "fail"));
  if (g.obstructed != e.obstructed)
    g.problems.push_back(std::string("obstruction: expected ") + (e.obstructed ? "present" : "absent"));
  if (g.euler_residual > 10.0 * e.euler_residual)
    g.problems.push_back("Euler residual drifted beyond 10x the recorded value");
  g.matches = g.problems.empty();
  return g;
}

}  // namespace arnold
