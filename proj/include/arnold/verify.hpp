#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arnold/assembly.hpp"

namespace arnold {

struct SuiteOptions {
  int grid = 48;          // per axis, per chart
  int samples = 10000;    // extra Halton points per chart
  std::uint64_t seed = 0;  // Halton offset
  double tol = 1e-9;
};

struct ChartReport {
  std::string name;
  double euler = 0;       // sup |i_X d alpha + dB|
  double positivity = 0;  // min alpha(X)
  double divergence = 0;  // sup |d i_X mu| coefficient
  double ixdb = 0;        // sup |i_X d beta|
  double beta_curl = 0;   // sup |beta(Y)|
  double min_beta_x = 0;  // min beta(X)
  long samples = 0;
  bool pass = false;
};

struct CriticalComponent {
  std::string chart;
  std::string declared;  // matched block critical set
  int atom = -1;         // block index in the flow
  int dimension = 1;
  std::string type;      // circle, torus, Klein bottle
  Polarity polarity = Polarity::None;
  double level = 0;
  double eig_min = 0, eig_max = 0;  // transverse Hessian eigenvalues
  int points = 0;
  std::string location;
};

struct CriticalReport {
  std::vector<CriticalComponent> components;
  std::vector<std::string> problems;  // unmatched points, missing sets, degenerate Hessians
  bool pass = false;
};

struct VerificationReport {
  std::vector<ChartReport> charts;
  ChartReport global;
  CriticalReport critical;
  SuiteOptions options;
  bool pass = false;
};

ChartReport check_patch(const Patch& p, const SuiteOptions& o);
VerificationReport run_suite(const AssembledFlow& f, const SuiteOptions& o = {});

// Points with |dB| < tol reached by Newton steps (Hessian pseudo-inverse) from a seeds^3 grid.
std::vector<Point> find_critical_points(const Patch& p, double tol = 1e-9, int seeds = 12);

// Newton search for dB = 0 from a grid of seeds in every chart; matched to declared sets.
CriticalReport critical_set_report(const AssembledFlow& f, double tol = 1e-9, int seeds = 12);
CriticalReport critical_set_report(const BlockRealization& b, double tol = 1e-9, int seeds = 12);

// Reeb-type graph of the detected components, connected through collars and transition maps.
Molecule reconstruct_molecule(const AssembledFlow& f);

using DiffRule = std::function<Expr(const Expr&, int)>;

struct FdReport {
  double max_discrepancy = 0;
  std::string worst;  // chart and field of the largest discrepancy
  long comparisons = 0;
  bool pass = false;
};

// Symbolic first derivatives of every field against a sixth-order central difference (h = 1e-4).
FdReport fd_crosscheck(const std::vector<Patch>& patches, int n, std::uint64_t seed = 1, const DiffRule& rule = {});
FdReport fd_crosscheck(const AssembledFlow& f, int n, std::uint64_t seed = 1, const DiffRule& rule = {});

}  // namespace arnold
