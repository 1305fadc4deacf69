#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>

#include "arnold/errors.hpp"
#include "arnold/verify.hpp"

namespace arnold {

namespace {

struct Found {
  Point p;
  double B = 0;
  Eigen::Vector3d eig;  // ascending by absolute value
};

std::string format_point(const Chart& c, const Point& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s=%.6g, %s=%.6g, %s=%.6g", c.names[0].c_str(), p[0], c.names[1].c_str(), p[1],
                c.names[2].c_str(), p[2]);
  return buf;
}

// Newton with the Hessian pseudo-inverse from a grid of seeds; keeps points where |dB| < tol.
std::vector<Found> newton_critical(const Patch& P, double tol, int seeds) {
  const Chart& ch = *P.chart;
  std::vector<Expr> outs{P.B.c[0]};
  for (int i = 0; i < 3; ++i) outs.push_back(expr::diff(P.B.c[0], i));
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) outs.push_back(expr::diff(outs[1 + i], j));
  const expr::Tape tape(outs);
  std::vector<double> scratch, v(tape.outputs());
  auto hessian = [&]() {
    Eigen::Matrix3d H;
    H << v[4], v[5], v[6], v[5], v[7], v[8], v[6], v[8], v[9];
    return H;
  };
  std::vector<Found> found;
  for (int a = 0; a < seeds; ++a)
    for (int b = 0; b < seeds; ++b)
      for (int c = 0; c < seeds; ++c) {
        Point p{ch.domain[0].lo + ch.domain[0].length() * (a + 0.5) / seeds,
                ch.domain[1].lo + ch.domain[1].length() * (b + 0.5) / seeds,
                ch.domain[2].lo + ch.domain[2].length() * (c + 0.5) / seeds};
        if (!ch.contains(p)) continue;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
          tape.eval(p, scratch, v.data());
          const Eigen::Vector3d g(v[1], v[2], v[3]);
          if (g.norm() < tol) {
            ok = true;
            break;
          }
          Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(hessian());
          const auto& lam = es.eigenvalues();
          const double cut = 1e-8 * lam.cwiseAbs().maxCoeff();
          Eigen::Vector3d step = Eigen::Vector3d::Zero();
          for (int k = 0; k < 3; ++k)
            if (std::abs(lam[k]) > cut) step -= es.eigenvectors().col(k) * (es.eigenvectors().col(k).dot(g) / lam[k]);
          if (!step.allFinite() || step.norm() == 0.0) break;
          double scale = 1.0;
          for (int k = 0; k < 3; ++k) scale = std::min(scale, 0.25 * ch.domain[k].length() / std::abs(step[k] + 1e-300));
          for (int k = 0; k < 3; ++k) p[k] += scale * step[k];
          p = ch.wrap(p);
          if (!ch.in_box(p, 1e-6)) break;
        }
        if (!ok || !ch.contains(p, 1e-6)) continue;
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(hessian());
        Eigen::Vector3d lam = es.eigenvalues();
        std::sort(lam.data(), lam.data() + 3, [](double x, double y) { return std::abs(x) < std::abs(y); });
        found.push_back({p, v[0], lam});
      }
  return found;
}

void detect(const Patch& P, const std::vector<const CriticalSet*>& declared, int atom, double tol, int seeds,
            CriticalReport& rep) {
  const auto pts = newton_critical(P, tol, seeds);
  const double match = std::sqrt(tol);
  std::vector<std::vector<const Found*>> hits(declared.size());
  for (const Found& f : pts) {
    std::size_t k = 0;
    while (k < declared.size() && !(declared[k]->distance(f.p) < match)) ++k;
    if (k == declared.size()) {
      rep.problems.push_back("undeclared critical point in chart " + P.name + " at " + format_point(*P.chart, f.p));
      continue;
    }
    hits[k].push_back(&f);
  }
  for (std::size_t k = 0; k < declared.size(); ++k) {
    const CriticalSet& cs = *declared[k];
    if (hits[k].empty()) {
      rep.problems.push_back("declared critical set '" + cs.name + "' in chart " + P.name + " was not detected");
      continue;
    }
    CriticalComponent c;
    c.chart = P.name;
    c.declared = cs.name;
    c.atom = atom;
    c.dimension = cs.dimension;
    c.type = cs.dimension == 1 ? "circle" : cs.klein ? "Klein bottle" : "torus";
    c.level = cs.level;
    c.points = static_cast<int>(hits[k].size());
    c.location = format_point(*P.chart, hits[k].front()->p);
    c.eig_min = INFINITY;
    c.eig_max = -INFINITY;
    int neg = 0, pos = 0;
    for (const Found* f : hits[k]) {
      for (int i = 0; i < cs.dimension; ++i)
        if (std::abs(f->eig[i]) > 1e-6)
          rep.problems.push_back("set '" + cs.name + "' has a non-degenerate tangential Hessian direction");
      for (int i = cs.dimension; i < 3; ++i) {
        const double l = f->eig[i];
        if (std::abs(l) < 1e-6) rep.problems.push_back("set '" + cs.name + "' is degenerate transversally");
        c.eig_min = std::min(c.eig_min, l);
        c.eig_max = std::max(c.eig_max, l);
        (l > 0 ? pos : neg)++;
      }
      if (std::abs(f->B - cs.level) > 1e-8 * std::max(1.0, std::abs(cs.level)))
        rep.problems.push_back("set '" + cs.name + "' detected off its declared level");
    }
    c.polarity = neg == 0 ? Polarity::Min : pos == 0 ? Polarity::Max : Polarity::None;
    if (c.polarity != cs.polarity)
      rep.problems.push_back("set '" + cs.name + "' has Hessian signature " + polarity_name(c.polarity) +
                             ", declared " + polarity_name(cs.polarity));
    rep.components.push_back(c);
  }
}

void detect_block(const BlockRealization& b, int atom, double tol, int seeds, CriticalReport& rep) {
  for (std::size_t pi = 0; pi < b.patches.size(); ++pi) {
    std::vector<const CriticalSet*> decl;
    for (const auto& cs : b.critical)
      if (cs.patch == static_cast<int>(pi)) decl.push_back(&cs);
    Patch p = b.patches[pi];
    p.name = (b.atom_id.empty() ? std::string(kind_name(b.kind)) : b.atom_id) + "/" + p.name;
    detect(p, decl, atom, tol, seeds, rep);
  }
}

}  // namespace

std::vector<Point> find_critical_points(const Patch& p, double tol, int seeds) {
  std::vector<Point> out;
  for (const Found& f : newton_critical(p, tol, seeds)) out.push_back(f.p);
  return out;
}

CriticalReport critical_set_report(const BlockRealization& b, double tol, int seeds) {
  CriticalReport rep;
  detect_block(b, 0, tol, seeds, rep);
  rep.pass = rep.problems.empty();
  return rep;
}

CriticalReport critical_set_report(const AssembledFlow& f, double tol, int seeds) {
  CriticalReport rep;
  for (std::size_t a = 0; a < f.blocks.size(); ++a) detect_block(f.blocks[a], static_cast<int>(a), tol, seeds, rep);
  for (const auto& c : f.collars) detect(collar_patch(c), {}, -1, tol, seeds, rep);
  rep.pass = rep.problems.empty();
  return rep;
}

}  // namespace arnold
