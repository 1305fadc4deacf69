#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "criteria.hpp"
#include "support/random_molecule.hpp"

using namespace arnold;

namespace acceptance {

namespace {

struct FlowCheck {
  bool suite = false, critical = false, iso = false;
};

FlowCheck check_flow(const AssembledFlow& f, const Molecule& m) {
  const VerificationReport r = run_suite(f);
  return {r.pass, r.critical.pass, isomorphic(reconstruct_molecule(f), m)};
}

std::string failures(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += " " + n;
  return names.empty() ? "" : "; failing:" + s;
}

}  // namespace

Outcome end_to_end(Context& ctx) {
  std::vector<std::pair<std::string, Molecule>> mols{{"ten-atom", seifert_to_molecule(SeifertData{2, 1, {{2, 1}, {3, 1}}})}};
  std::mt19937_64 rng(2026);
  for (int k = 0; k < 10; ++k) mols.push_back({"random-" + std::to_string(k), testing::random_molecule(rng, 8)});
  std::vector<std::string> bad;
  std::size_t largest = 0;
  for (const auto& [name, m] : mols) {
    largest = std::max(largest, m.atoms.size());
    if (!validate(m).empty() || m.atoms.size() > 8 && name != "ten-atom") {
      bad.push_back(name + "(invalid)");
      continue;
    }
    const AssembledFlow f = assemble(m);
    const FlowCheck c = check_flow(f, m);
    if (!c.suite || !c.critical || !c.iso) bad.push_back(name);
    ctx.flows.push_back({name, f});
  }
  return {bad.empty(), std::to_string(mols.size()) + " molecules (up to " + std::to_string(largest) +
                           " atoms) pass run_suite at 1e-9 and round-trip" + failures(bad)};
}

Outcome seifert_front_end(Context& ctx) {
  std::mt19937_64 rng(515);
  std::vector<std::string> bad;
  for (int k = 0; k < 20; ++k) {
    const SeifertData s = testing::random_seifert(rng);
    const std::string name = "seifert-" + std::to_string(k);
    const Molecule m = seifert_to_molecule(s);
    if (!validate(m).empty()) {
      bad.push_back(name + "(invalid)");
      continue;
    }
    const AssembledFlow f = assemble(m);
    const FlowCheck c = check_flow(f, m);
    if (!c.suite || !c.critical) bad.push_back(name);
    ctx.flows.push_back({name, f});
  }
  const Molecule lens = seifert_to_molecule(SeifertData{0, 0, {{2, 1}}});
  const bool lens_ok = lens.atoms.size() == 2 && lens.edges.size() == 1 && lens.atoms[0].kind == Kind::I &&
                       lens.atoms[1].kind == Kind::I && lens.edges[0].g == GluingMatrix{2, 1, 1, 1};
  if (!lens_ok) bad.push_back("lens");
  ctx.flows.push_back({"lens-2-1", assemble(lens)});
  return {bad.empty(), "20 random Seifert data validate, assemble and pass; {g=0, (2,1)} gives I(min) -(2 1; 1 1)-> I(max)" +
                           failures(bad)};
}

Outcome symplectization(Context& ctx) {
  double reeb = 0, curl = 0, commute = 0, pf = 0, eps = 1.0;
  long fewest = -1;
  std::vector<std::string> bad;
  std::string smallest;
  for (const auto& [name, f] : ctx.flows) {
    const std::vector<Patch> patches = all_patches(f);
    SymplecticExtension s = build_omega(patches);
    const double e = nondegeneracy_radius(s, 2000);
    if (e < eps) {
      eps = e;
      smallest = name;
    }
    const HamiltonianReport h = hamiltonian_check(s, 10000);
    reeb = std::max(reeb, h.reeb);
    curl = std::max(curl, h.curl);
    commute = std::max(commute, h.commute);
    const long per_chart = h.samples / static_cast<long>(s.slices.size());
    fewest = fewest < 0 ? per_chart : std::min(fewest, per_chart);
    if (!h.pass) bad.push_back(name);
    // Pfaffian at t = 0 against beta(X) rho
    std::mt19937_64 rng(7);
    for (std::size_t i = 0; i < s.slices.size(); ++i) {
      const OmegaSlice& sl = s.slices[i];
      const Chart& ch = *sl.chart;
      for (int k = 0; k < 200; ++k) {
        Point p;
        for (int j = 0; j < 3; ++j) p[j] = std::uniform_real_distribution<double>(ch.domain[j].lo, ch.domain[j].hi)(rng);
        if (!ch.contains(p)) continue;
        const auto W = omega_matrix(sl, p, 0.0);
        const double pfaff = W[0][1] * W[2][3] - W[0][2] * W[1][3] + W[0][3] * W[1][2];
        const auto b = sl.beta.at(p);
        const auto x = sl.X.at(p);
        const double target = (b[0] * x[0] + b[1] * x[1] + b[2] * x[2]) * patches[i].mu.at(p)[0];
        pf = std::max(pf, std::abs(pfaff - target) / std::max(1.0, std::abs(target)));
      }
    }
  }
  const bool identities = bad.empty() && reeb < 1e-9 && curl < 1e-9 && commute < 1e-9 && pf < 1e-9 && fewest >= 10000;
  return {identities && eps >= 0.05,
          std::to_string(ctx.flows.size()) + " flows, >= " + std::to_string(fewest) + " samples per chart; reeb " +
              fmt(reeb) + ", curl " + fmt(curl) + ", commute " + fmt(commute) + ", Pf(t=0) - beta(X) rho " + fmt(pf) +
              "; identities " + (identities ? "pass" : "FAIL") + "; smallest radius " + fmt(eps) + " (" + smallest +
              ") vs required 0.05" + failures(bad)};
}

Outcome counterexample_gallery(Context& ctx) {
  ctx.gallery = {gallery_item("t3-parallel"), gallery_item("twisted-solid-torus")};
  SuiteOptions o;
  o.grid = 24;
  const GalleryItem& t3 = ctx.gallery[0];
  const Patch& p = t3.patches[0];
  const double euler = check_patch(p, o).euler;
  const VectorField Y = curl(p.alpha, p.mu);
  std::mt19937_64 rng(3);
  double curl_err = 0;
  for (int k = 0; k < 10000; ++k) {
    Point q;
    for (int j = 0; j < 3; ++j) q[j] = std::uniform_real_distribution<double>(0.0, 2 * std::numbers::pi)(rng);
    const auto y = Y.at(q);
    const double s = std::sin(q[2]), c = std::cos(q[2]);
    curl_err = std::max({curl_err, std::abs(y[0] - s), std::abs(y[1] - 2 * s * c), std::abs(y[2])});
  }
  const ObstructionReport ob = obstruction_check(t3.patches);
  bool half_pi = false;
  for (const ObstructionPoint& q : ob.points)
    if (std::abs(q.p[2] - std::numbers::pi / 2) < 1e-6)
      half_pi = half_pi || (q.obstructed && std::abs(q.lambda - 1.0) < 1e-9);

  const GalleryItem& st = ctx.gallery[1];
  const VectorField Ys = curl(st.patches[0].alpha, st.patches[0].mu);
  double core_err = 0;
  for (double th : {0.0, 1.0, 2.5, 4.0}) {
    const auto y = Ys.at({0.0, 0.0, th});
    // d/dphi vanishes on the core, so 2 d/dphi + d/dtheta = (0, 0, 1) there
    core_err = std::max({core_err, std::abs(y[0]), std::abs(y[1]), std::abs(y[2] - 1.0)});
  }
  const bool st_fires = obstruction_check(st.patches).obstructed;

  std::vector<std::string> fired;
  for (const auto& [name, f] : ctx.flows)
    if (obstruction_check(f).obstructed) fired.push_back(name);
  const bool pass = euler < 1e-10 && curl_err < 1e-10 && ob.obstructed && half_pi && core_err < 1e-10 && st_fires &&
                    fired.empty();
  return {pass, "t3 euler " + fmt(euler) + ", curl error " + fmt(curl_err) + ", lambda = 1 at pi/2 " +
                    (half_pi ? "yes" : "no") + "; solid torus core curl error " + fmt(core_err) + ", fires " +
                    (st_fires ? "yes" : "no") + "; assembled flows firing: " + std::to_string(fired.size()) + "/" +
                    std::to_string(ctx.flows.size())};
}

Outcome fd_consistency(Context& ctx) {
  double worst = 0;
  std::string where;
  long comparisons = 0;
  auto take = [&](const FdReport& r) {
    comparisons += r.comparisons;
    if (r.max_discrepancy > worst) {
      worst = r.max_discrepancy;
      where = r.worst;
    }
  };
  for (const auto& [name, b] : ctx.blocks) take(fd_crosscheck(b.patches, 1000, 11));
  std::vector<Patch> collars;
  for (const CollarRealization& c : ctx.collars) collars.push_back(collar_patch(c));
  take(fd_crosscheck(collars, 1000, 12));
  for (const auto& [name, f] : ctx.flows) take(fd_crosscheck(f, 1000, 13));
  for (const GalleryItem& g : ctx.gallery) take(fd_crosscheck(g.patches, 1000, 14));
  return {worst < 1e-5, std::to_string(comparisons) + " derivative comparisons; max discrepancy " + fmt(worst) +
                            (where.empty() ? "" : " (" + where + ")")};
}

}  // namespace acceptance
