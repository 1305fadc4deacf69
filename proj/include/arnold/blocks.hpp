#pragma once

#include <functional>
#include <string>
#include <vector>

#include "arnold/forms.hpp"
#include "arnold/molecule.hpp"

namespace arnold {

// One chart of a flow with its Euler data. X, alpha, B, beta, mu live on `chart`.
struct Patch {
  std::string name;
  ChartPtr chart;
  VectorField X;
  KForm alpha;
  KForm B;
  KForm beta;
  KForm mu;
};

// A point of a boundary torus with the torus frame pushed into chart coordinates.
struct FacePoint {
  int patch = 0;
  Point p{};
  std::array<double, 3> e1{};  // d/dpsi1
  std::array<double, 3> e2{};  // d/dpsi2
  std::array<double, 3> normal{};  // outward, not normalized
};

// X|face = A e1 + B e2, alpha|face proportional to C dpsi1 + D dpsi2 with AC + BD = 1.
struct BoundaryFace {
  int slot = 0;
  double A = 1, B = 0, C = 1, D = 0;
  double bernoulli = 0.0;
  bool upper = false;  // B increases outward
  std::function<FacePoint(double psi1, double psi2)> sample;
};

struct CriticalSet {
  std::string name;
  int dimension = 1;  // 1 circle, 2 torus or Klein bottle
  bool klein = false;
  Polarity polarity = Polarity::None;  // None for saddles
  int patch = 0;
  double level = 0.0;
  std::function<double(const Point&)> distance;  // chart distance to the set
};

struct BlockRealization {
  std::string atom_id;
  Kind kind = Kind::I;
  Polarity polarity = Polarity::None;
  bool twisted = false;
  std::vector<Patch> patches;
  std::vector<BoundaryFace> faces;  // indexed by slot
  std::vector<CriticalSet> critical;
  Interval range;  // Bernoulli values over the block
};

// Merge: two lower faces feed one upper face. Split: the reverse.
enum class Pattern { Merge, Split };

constexpr double kDefaultEpsilon = 0.5;

BlockRealization realize_I(Polarity polarity, double eps = kDefaultEpsilon);
BlockRealization realize_II(Polarity polarity, double eps = kDefaultEpsilon);
BlockRealization realize_III(Pattern pattern);
BlockRealization realize_IV(Pattern pattern = Pattern::Merge);
BlockRealization realize_V(Polarity polarity, double eps = kDefaultEpsilon);
// sign = +1 gives B = f; -1 gives B = -f (used when the highest face of f is incoming).
BlockRealization realize_generic(const GenericSpec& g, int sign = 1);

// Atom realization with the orientation implied by its slot directions (+1 out, -1 in).
BlockRealization realize_atom(const Atom& atom, const std::vector<int>& slot_dirs);

// Trace read off from the fields at a face sample, normalized so AC + BD = 1.
BoundaryFace boundary_trace(const BlockRealization& b, int slot);

// B -> kappa B + shift and alpha -> (B + K) dtheta on every patch.
BlockRealization level_map(const BlockRealization& b, double kappa, double shift, double K);

// The polynomial 1/4 (y^2 - x^2 + x^4 / 2).
expr::Expr duffing_potential();

}  // namespace arnold
