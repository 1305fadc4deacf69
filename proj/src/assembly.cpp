#include "arnold/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "arnold/errors.hpp"
#include "blocks_internal.hpp"

namespace arnold {

using namespace detail;

std::array<long, 4> dehn_frame(const GluingMatrix& g) {
  const long d = g.det();
  if (d != 1 && d != -1) throw PreconditionError("gluing matrix is not unimodular (det " + std::to_string(d) + ")");
  return {d * g.p, -d * g.m, -d * g.q, d * g.n};
}

BoundaryFace dehn_boundary_data(const BoundaryFace& face, const GluingMatrix& g) {
  const auto M = dehn_frame(g);
  const double det = static_cast<double>(M[0] * M[3] - M[1] * M[2]);
  BoundaryFace out = face;
  out.A = M[0] * face.A + M[1] * face.B;
  out.B = M[2] * face.A + M[3] * face.B;
  // forms transform by the inverse transpose
  out.C = (M[3] * face.C - M[2] * face.D) / det;
  out.D = (-M[1] * face.C + M[0] * face.D) / det;
  out.sample = nullptr;
  return out;
}

LevelTable stack_levels(const Molecule& m) {
  const int n = static_cast<int>(m.atoms.size());
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const Edge& e : m.edges) {
    if (e.source < 0 || e.source >= n || e.target < 0 || e.target >= n)
      throw ValidationError("edge refers to a missing atom");
    out[e.source].push_back(e.target);
    ++indeg[e.target];
  }
  LevelTable t;
  t.layer.assign(n, 0);
  std::vector<int> queue;
  for (int i = 0; i < n; ++i)
    if (indeg[i] == 0) queue.push_back(i);
  std::size_t done = 0;
  while (done < queue.size()) {
    const int u = queue[done++];
    for (int v : out[u]) {
      t.layer[v] = std::max(t.layer[v], t.layer[u] + 1);
      if (--indeg[v] == 0) queue.push_back(v);
    }
  }
  if (static_cast<int>(queue.size()) != n) throw ValidationError("molecule graph has a directed cycle");
  for (int i = 0; i < n; ++i) t.atom_range.push_back({2.0 * t.layer[i], 2.0 * t.layer[i] + 1.0});
  for (const Edge& e : m.edges) t.edge_range.push_back({t.atom_range[e.source].hi, t.atom_range[e.target].lo});
  return t;
}

Point TransitionMap::apply(double psi1, double psi2) const {
  return {t, wrap_angle(M[0] * psi1 + M[1] * psi2), wrap_angle(M[2] * psi1 + M[3] * psi2)};
}

namespace {

bool canonical(const Trace& tr) {
  return std::abs(tr.A - 1) < 1e-12 && std::abs(tr.B) < 1e-12 && std::abs(tr.C - 1) < 1e-12 && std::abs(tr.D) < 1e-12;
}

Trace trace_of(const BoundaryFace& f) { return {f.A, f.B, f.C, f.D}; }

double collar_end_value(const CollarRealization& c) { return expr::eval(c.h.c[0], {c.chart->domain[0].hi, 0, 0}); }

// Collar from source trace (target frame) to target trace, with X scaled so B climbs from b0 to b1.
CollarRealization edge_collar(const std::string& name, const Trace& src, const Trace& dst, double t0, double t1,
                              double b0, double b1) {
  std::vector<CollarSegment> segs;
  if (canonical(dst)) {
    segs.push_back({t0, t1, src, true});
  } else {
    const double mid = 0.5 * (t0 + t1);
    segs.push_back({t0, mid, src, true});
    segs.push_back({mid, t1, dst, false});
  }
  const CollarRealization plain = build_collar(name, segs, Expr(1.0), b0);
  const Expr g = expr::simplify(interior(plain.X, plain.alpha_core).c[0]);
  const expr::Tape tape({g});
  std::vector<double> scratch;
  double gmax = 0.0, v = 0.0;
  for (int k = 0; k <= 4096; ++k) {
    tape.eval({t0 + (t1 - t0) * k / 4096.0, 0, 0}, scratch, &v);
    gmax = std::max(gmax, v);
  }
  const double L = t1 - t0;
  const Expr t = coord(0);
  const double G = collar_end_value(plain) - b0;
  // widest ramp that keeps sigma >= 0.05; narrow ramps make sigma needlessly steep
  Expr P;
  double m = -1.0;
  for (double frac : {0.25, 0.2, 0.15, 0.1, 0.05, std::min(0.05, 0.25 / gmax)}) {
    const double delta = L * frac;
    P = bump((t - t0) / delta) * bump((C(t1) - t) / delta);
    std::vector<double> knots = plain.breaks;
    knots.push_back(t0 + delta);
    knots.push_back(t1 - delta);
    const double PG = expr::eval(expr::antiderivative(expr::simplify(P * g), 0, t0, t1, 0.0, knots), {t1, 0, 0});
    m = (b1 - b0 - G) / PG;
    if (m >= -0.95) break;
  }
  if (!(m > -1.0)) throw PreconditionError("collar " + name + " cannot reach its Bernoulli range");
  return build_collar(name, segs, C(1.0) + m * P, b0);
}

}  // namespace

AssembledFlow assemble(const Molecule& m) {
  const auto viol = validate(m);
  if (!viol.empty()) {
    std::string msg = "molecule is invalid:";
    for (const auto& v : viol) msg += std::string(" [") + violation_name(v.kind) + " " + v.where + ": " + v.message + "]";
    throw ValidationError(msg);
  }
  AssembledFlow f;
  f.molecule = m;
  f.levels = stack_levels(m);
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    const BlockRealization raw = realize_atom(m.atoms[i], slot_directions(m, static_cast<int>(i)));
    const Interval want = f.levels.atom_range[i];
    const double kappa = want.length() / raw.range.length();
    BlockRealization b = level_map(raw, kappa, want.lo - kappa * raw.range.lo, f.K);
    b.atom_id = m.atoms[i].id;
    f.blocks.push_back(std::move(b));
  }
  for (std::size_t k = 0; k < m.edges.size(); ++k) {
    const Edge& e = m.edges[k];
    const BoundaryFace& fs = f.blocks[e.source].faces[e.source_slot];
    const BoundaryFace& ft = f.blocks[e.target].faces[e.target_slot];
    if (!fs.upper || ft.upper) throw PreconditionError("edge " + std::to_string(k) + " runs against the Bernoulli function");
    const Trace src = trace_of(dehn_boundary_data(fs, e.g));
    const double t0 = fs.bernoulli + f.K, t1 = ft.bernoulli + f.K;
    const std::string name = m.atoms[e.source].id + "->" + m.atoms[e.target].id + "#" + std::to_string(k);
    f.collars.push_back(edge_collar(name, src, trace_of(ft), t0, t1, fs.bernoulli, ft.bernoulli));

    TransitionMap ts;
    ts.edge = static_cast<int>(k);
    ts.atom = e.source;
    ts.slot = e.source_slot;
    ts.source_side = true;
    ts.t = t0;
    ts.M = dehn_frame(e.g);
    f.transitions.push_back(ts);
    TransitionMap tt = ts;
    tt.atom = e.target;
    tt.slot = e.target_slot;
    tt.source_side = false;
    tt.t = t1;
    tt.M = {1, 0, 0, 1};
    f.transitions.push_back(tt);
  }
  return f;
}

Patch collar_patch(const CollarRealization& c) {
  return Patch{c.name, c.chart, c.X, c.alpha, c.h, c.beta, c.mu};
}

std::vector<Patch> all_patches(const AssembledFlow& f) {
  std::vector<Patch> out;
  for (const auto& b : f.blocks)
    for (const auto& p : b.patches) {
      Patch q = p;
      q.name = b.atom_id + "/" + p.name;
      out.push_back(q);
    }
  for (const auto& c : f.collars) out.push_back(collar_patch(c));
  return out;
}

}  // namespace arnold
