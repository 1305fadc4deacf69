#include "arnold/assembly.hpp"
#include "arnold/errors.hpp"

namespace arnold {

namespace {

// +1 when the free slot must carry an outgoing edge, -1 incoming.
int required_direction(const Molecule& m, int atom, int slot) {
  const Atom& a = m.atoms[static_cast<std::size_t>(atom)];
  if (slot < 0 || slot >= a.valence())
    throw PreconditionError("atom " + a.id + " has no slot " + std::to_string(slot));
  const auto dirs = slot_directions(m, atom);
  if (dirs[static_cast<std::size_t>(slot)] != 0)
    throw PreconditionError("slot " + std::to_string(slot) + " of atom " + a.id + " is already used");
  switch (a.kind) {
    case Kind::I:
    case Kind::II:
    case Kind::V: return a.polarity == Polarity::Min ? 1 : -1;
    case Kind::III:
    case Kind::IV: {
      // Merge: slot 0 out, the others in. Split: the reverse.
      int merge = 0;
      for (std::size_t s = 0; s < dirs.size(); ++s) {
        if (dirs[s] == 0) continue;
        merge = (s == 0) == (dirs[s] > 0) ? 1 : -1;
        break;
      }
      if (merge == 0) merge = 1;
      return (slot == 0) == (merge > 0) ? 1 : -1;
    }
    case Kind::G: {
      if (!a.generic) throw PreconditionError("generic atom " + a.id + " has no function");
      for (int sign : {1, -1}) {
        const BlockRealization b = realize_generic(*a.generic, sign);
        if (a.polarity != Polarity::None && b.polarity != a.polarity) continue;
        bool ok = true;
        for (std::size_t s = 0; s < dirs.size() && s < b.faces.size(); ++s)
          if (dirs[s] != 0 && (dirs[s] > 0) != b.faces[s].upper) ok = false;
        if (ok) return b.faces[static_cast<std::size_t>(slot)].upper ? 1 : -1;
      }
      throw PreconditionError("generic atom " + a.id + " admits no orientation");
    }
  }
  return 1;
}

std::string fresh_id(const Molecule& m, const std::string& id) {
  std::string out = id;
  for (int k = 2; m.atom_index(out) >= 0; ++k) out = id + "_" + std::to_string(k);
  return out;
}

}  // namespace

Molecule glue_molecules(const Molecule& m1, const FaceRef& face1, const Molecule& m2, const FaceRef& face2,
                        const GluingMatrix& g) {
  const long d = g.det();
  if (d != 1 && d != -1) throw PreconditionError("gluing matrix is not unimodular");
  const int a1 = m1.atom_index(face1.atom), a2 = m2.atom_index(face2.atom);
  if (a1 < 0) throw PreconditionError("no atom " + face1.atom + " in the first molecule");
  if (a2 < 0) throw PreconditionError("no atom " + face2.atom + " in the second molecule");
  const int d1 = required_direction(m1, a1, face1.slot);
  const int d2 = required_direction(m2, a2, face2.slot);
  if (d1 != d2) throw PreconditionError("orientation conflict: one face flows into the gluing torus, the other out of it");

  Molecule out;
  out.name = m1.name.empty() && m2.name.empty() ? "glued" : m1.name + "+" + m2.name;
  out.atoms = m1.atoms;
  out.edges = m1.edges;
  const int off = static_cast<int>(out.atoms.size());
  std::vector<std::string> ids;
  for (const Atom& a : m2.atoms) {
    Atom b = a;
    b.id = fresh_id(out, a.id);
    ids.push_back(b.id);
    out.atoms.push_back(b);
  }
  for (Edge e : m2.edges) {
    e.source += off;
    e.target += off;
    out.edges.push_back(e);
  }
  // both faces outgoing: the torus is a maximum of B; both incoming: a minimum
  Atom torus;
  torus.id = fresh_id(out, "glue");
  torus.kind = Kind::II;
  torus.polarity = d1 > 0 ? Polarity::Max : Polarity::Min;
  out.atoms.push_back(torus);
  const int t = static_cast<int>(out.atoms.size()) - 1;
  const int b2 = a2 + off;
  if (d1 > 0) {
    out.edges.push_back(Edge{a1, face1.slot, t, 0, g});
    out.edges.push_back(Edge{b2, face2.slot, t, 1, GluingMatrix{}});
  } else {
    out.edges.push_back(Edge{t, 0, a1, face1.slot, g});
    out.edges.push_back(Edge{t, 1, b2, face2.slot, GluingMatrix{}});
  }
  return out;
}

}  // namespace arnold
