#include <cmath>
#include <map>
#include <numbers>

#include "arnold/errors.hpp"
#include "arnold/verify.hpp"

namespace arnold {

namespace {

GluingMatrix matrix_from_frame(const std::array<long, 4>& M) {
  const long d = M[0] * M[3] - M[1] * M[2];
  return GluingMatrix{d * M[0], -d * M[2], -d * M[1], d * M[3]};
}

// B continuity across a transition map on a few face samples.
bool joined(const AssembledFlow& f, const TransitionMap& tm) {
  const BlockRealization& b = f.blocks[static_cast<std::size_t>(tm.atom)];
  const CollarRealization& c = f.collars[static_cast<std::size_t>(tm.edge)];
  const auto& face = b.faces[static_cast<std::size_t>(tm.slot)];
  for (int k = 0; k < 5; ++k) {
    const double a = 2.0 * std::numbers::pi * (k + 0.3) / 5.0, s = 2.0 * std::numbers::pi * (0.7 * k + 0.1) / 5.0;
    const FacePoint fp = face.sample(a, s);
    const double vb = b.patches[static_cast<std::size_t>(fp.patch)].B.at(fp.p)[0];
    const double vc = c.h.at(tm.apply(a, s))[0];
    if (std::abs(vb - vc) > 1e-9) return false;
  }
  return true;
}

}  // namespace

Molecule reconstruct_molecule(const AssembledFlow& f) {
  const CriticalReport rep = critical_set_report(f);
  if (!rep.pass) throw StructuralError("critical set report failed: " + rep.problems.front());
  std::map<int, std::vector<const CriticalComponent*>> by_atom;
  for (const auto& c : rep.components) by_atom[c.atom].push_back(&c);

  Molecule m;
  m.name = f.molecule.name;
  for (std::size_t a = 0; a < f.blocks.size(); ++a) {
    const auto it = by_atom.find(static_cast<int>(a));
    if (it == by_atom.end()) throw StructuralError("block " + f.blocks[a].atom_id + " has no critical component");
    const auto& comps = it->second;
    const BlockRealization& b = f.blocks[a];
    const CriticalComponent& c = *comps.front();
    Atom at;
    at.id = b.atom_id;
    const bool twisted = b.patches[0].chart->deck.has_value();
    if (comps.size() > 1 || b.kind == Kind::G) {
      // several critical circles on one level: keep the block's own function
      at.kind = Kind::G;
      at.generic = f.molecule.atoms[a].generic;
      at.polarity = f.molecule.atoms[a].polarity;
    } else if (c.type == "Klein bottle") {
      at.kind = Kind::V;
      at.polarity = c.polarity;
    } else if (c.type == "torus") {
      at.kind = Kind::II;
      at.polarity = c.polarity;
    } else if (c.polarity != Polarity::None) {
      at.kind = Kind::I;
      at.polarity = c.polarity;
    } else {
      at.kind = twisted ? Kind::IV : Kind::III;
    }
    if (at.kind != Kind::G && at.valence() != static_cast<int>(b.faces.size()))
      throw StructuralError("block " + b.atom_id + ": component type does not match its boundary count");
    m.atoms.push_back(at);
  }
  for (std::size_t k = 0; k + 1 < f.transitions.size(); k += 2) {
    const TransitionMap& s = f.transitions[k];
    const TransitionMap& t = f.transitions[k + 1];
    if (!s.source_side || t.source_side || s.edge != t.edge) throw StructuralError("transition maps are not paired");
    if (!joined(f, s) || !joined(f, t)) throw StructuralError("ambiguous connectivity across collar " + std::to_string(s.edge));
    const CollarRealization& c = f.collars[static_cast<std::size_t>(s.edge)];
    const double b0 = c.h.at({c.chart->domain[0].lo, 0, 0})[0], b1 = c.h.at({c.chart->domain[0].hi, 0, 0})[0];
    if (!(b1 > b0)) throw StructuralError("collar " + c.name + " does not climb");
    m.edges.push_back(Edge{s.atom, s.slot, t.atom, t.slot, matrix_from_frame(s.M)});
  }
  return m;
}

}  // namespace arnold
