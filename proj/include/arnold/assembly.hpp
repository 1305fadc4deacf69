#pragma once

#include <array>
#include <string>
#include <vector>

#include "arnold/blocks.hpp"
#include "arnold/interpolation.hpp"
#include "arnold/molecule.hpp"

namespace arnold {

// Torus frame change of a gluing matrix (normalized to det +1):
// d/dpsi1 -> p d/dtheta - q d/dphi, d/dpsi2 -> -m d/dtheta + n d/dphi.
std::array<long, 4> dehn_frame(const GluingMatrix& g);

// Source-face trace expressed in the target frame. Throws PreconditionError unless |det| = 1.
BoundaryFace dehn_boundary_data(const BoundaryFace& face, const GluingMatrix& g);

struct LevelTable {
  std::vector<int> layer;            // per atom
  std::vector<Interval> atom_range;  // [2 layer, 2 layer + 1]
  std::vector<Interval> edge_range;  // source top to target bottom
};

LevelTable stack_levels(const Molecule& m);

// Block face (psi1, psi2) -> collar point (t, M psi mod 2 pi).
struct TransitionMap {
  int edge = 0;
  int atom = 0;
  int slot = 0;
  bool source_side = true;
  double t = 0.0;
  std::array<long, 4> M{1, 0, 0, 1};  // row-major

  Point apply(double psi1, double psi2) const;
};

struct AssembledFlow {
  Molecule molecule;
  LevelTable levels;
  std::vector<BlockRealization> blocks;    // per atom
  std::vector<CollarRealization> collars;  // per edge
  std::vector<TransitionMap> transitions;  // two per edge
  double K = 0.5;                          // alpha(X) = B + K on block faces
};

// Throws ValidationError when validate(m) is not empty.
AssembledFlow assemble(const Molecule& m);

// Block patches and collars as one list of charts.
std::vector<Patch> all_patches(const AssembledFlow& f);
Patch collar_patch(const CollarRealization& c);

struct FaceMismatch {
  double X = 0, alpha = 0, beta = 0, B = 0;
  int samples = 0;
  bool orientation_consistent = true;
};

// Block versus collar fields across one transition map on an n x n face grid.
FaceMismatch face_mismatch(const AssembledFlow& f, const TransitionMap& tm, int n = 32);

struct FaceRef {
  std::string atom;
  int slot = 0;
};

// Joins m1 and m2 through a new type II atom; g sits on the edge at face1.
Molecule glue_molecules(const Molecule& m1, const FaceRef& face1, const Molecule& m2, const FaceRef& face2,
                        const GluingMatrix& g);

}  // namespace arnold
