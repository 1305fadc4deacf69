#pragma once

#include <string>
#include <vector>

#include "arnold/verify.hpp"

namespace arnold {

// omega = dt ^ beta + t d beta + i_X mu on chart x (-eps, eps); t is the extra coordinate.
struct OmegaSlice {
  std::string name;
  ChartPtr chart;
  VectorField X;
  VectorField Y;  // curl of alpha
  KForm B;
  KForm beta;
  KForm dbeta;
  KForm ixmu;
};

struct SymplecticExtension {
  std::vector<OmegaSlice> slices;
  double epsilon = 0.0;  // set by nondegeneracy_radius
};

// Refuses (PreconditionError) unless beta ^ i_X mu > 0 and i_X d beta = 0 on samples.
SymplecticExtension build_omega(const std::vector<Patch>& patches);
SymplecticExtension build_omega(const AssembledFlow& f);

// 4x4 matrix of omega at (t, p); index 0 is the extra coordinate.
std::array<std::array<double, 4>, 4> omega_matrix(const OmegaSlice& s, const Point& p, double t);

// Largest eps in [0, 1] (bisection to 1e-3, relative 1e-3 below that) with omega ^ omega > 0 for |t| <= eps at all samples.
double nondegeneracy_radius(SymplecticExtension& s, int samples = 2000);

struct HamiltonianReport {
  double reeb = 0;        // sup |i_R omega + dt|, R = X / beta(X), t in [-eps, eps]
  double curl = 0;        // sup |i_Y omega - dB| at t = 0
  double commute = 0;     // sup |omega(X, Y_ext)| at t = 0, i_{Y_ext} omega = dB
  double flat_fraction = 0;  // fraction of samples with |dB| < 1e-9
  long samples = 0;
  bool pass = false;
};

HamiltonianReport hamiltonian_check(const SymplecticExtension& s, int samples = 10000, double tol = 1e-9);

struct ObstructionPoint {
  std::string chart;
  Point p{};
  double x_norm = 0, y_norm = 0;
  double defect = 0;  // |X x Y|
  double lambda = 0;  // Y = lambda X when parallel
  bool parallel = false;
  bool obstructed = false;
};

struct ObstructionReport {
  std::vector<ObstructionPoint> points;
  bool obstructed = false;  // some critical point has Y != 0 parallel to X
};

ObstructionReport obstruction_check(const std::vector<Patch>& patches, double tol = 1e-9, int seeds = 12);
ObstructionReport obstruction_check(const AssembledFlow& f, double tol = 1e-9, int seeds = 12);

}  // namespace arnold
