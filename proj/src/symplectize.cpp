#include "arnold/symplectize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "arnold/errors.hpp"

namespace arnold {

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;

// Field values of a slice at one point.
struct SliceValues {
  double beta[3], dbeta[3], ixmu[3], X[3], Y[3], dB[3], ixdb[3];
};

class SliceTape {
 public:
  explicit SliceTape(const OmegaSlice& s) : tape_(outputs(s)) {}
  SliceValues operator()(const Point& p) {
    out_.resize(tape_.outputs());
    tape_.eval(p, scratch_, out_.data());
    SliceValues v;
    double* dst[] = {v.beta, v.dbeta, v.ixmu, v.X, v.Y, v.dB, v.ixdb};
    for (int k = 0; k < 7; ++k)
      for (int i = 0; i < 3; ++i) dst[k][i] = out_[3 * k + i];
    return v;
  }

 private:
  static std::vector<Expr> outputs(const OmegaSlice& s) {
    const KForm dB = exterior_d(s.B);
    const KForm ixdb = interior(s.X, s.dbeta);
    std::vector<Expr> o;
    for (const auto* c : {&s.beta.c, &s.dbeta.c, &s.ixmu.c})
      for (int i = 0; i < 3; ++i) o.push_back((*c)[i]);
    for (int i = 0; i < 3; ++i) o.push_back(s.X.c[i]);
    for (int i = 0; i < 3; ++i) o.push_back(s.Y.c[i]);
    for (int i = 0; i < 3; ++i) o.push_back(dB.c[i]);
    for (int i = 0; i < 3; ++i) o.push_back(ixdb.c[i]);
    return o;
  }
  expr::Tape tape_;
  std::vector<double> scratch_, out_;
};

Mat4 matrix_from(const SliceValues& v, double t) {
  Mat4 W{};
  double w[3];
  for (int i = 0; i < 3; ++i) {
    W[0][i + 1] = v.beta[i];
    W[i + 1][0] = -v.beta[i];
    w[i] = t * v.dbeta[i] + v.ixmu[i];
  }
  // basis (dc1^dc2, dc2^dc0, dc0^dc1)
  W[2][3] = w[0];
  W[3][2] = -w[0];
  W[3][1] = w[1];
  W[1][3] = -w[1];
  W[1][2] = w[2];
  W[2][1] = -w[2];
  return W;
}

double dot3(const double* a, const double* b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

std::vector<Point> sample_points(const Chart& c, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts;
  for (int tries = 0; static_cast<int>(pts.size()) < n && tries < 100 * n; ++tries) {
    Point p;
    for (int i = 0; i < 3; ++i) p[i] = std::uniform_real_distribution<double>(c.domain[i].lo, c.domain[i].hi)(rng);
    if (c.contains(p)) pts.push_back(p);
  }
  return pts;
}

}  // namespace

std::array<std::array<double, 4>, 4> omega_matrix(const OmegaSlice& s, const Point& p, double t) {
  SliceTape tape(s);
  return matrix_from(tape(p), t);
}

SymplecticExtension build_omega(const std::vector<Patch>& patches) {
  SymplecticExtension ext;
  for (const Patch& P : patches) {
    OmegaSlice s;
    s.name = P.name;
    s.chart = P.chart;
    s.X = P.X;
    s.Y = curl(P.alpha, P.mu);
    s.B = P.B;
    s.beta = P.beta;
    s.dbeta = exterior_d(P.beta);
    s.ixmu = interior(P.X, P.mu);
    SliceTape tape(s);
    for (const Point& p : sample_points(*P.chart, 2000, 11)) {
      const SliceValues v = tape(p);
      if (!(dot3(v.beta, v.ixmu) > 0.0))
        throw PreconditionError("refusing to build omega on " + P.name + ": beta ^ i_X mu is not positive");
      if (std::max({std::abs(v.ixdb[0]), std::abs(v.ixdb[1]), std::abs(v.ixdb[2])}) > 1e-9)
        throw PreconditionError("refusing to build omega on " + P.name + ": i_X d beta does not vanish");
    }
    ext.slices.push_back(std::move(s));
  }
  return ext;
}

SymplecticExtension build_omega(const AssembledFlow& f) { return build_omega(all_patches(f)); }

double nondegeneracy_radius(SymplecticExtension& s, int samples) {
  // Pfaffian of omega is a + t b with a = beta ^ i_X mu, b = beta ^ d beta
  std::vector<std::pair<double, double>> ab;
  for (const OmegaSlice& sl : s.slices) {
    SliceTape tape(sl);
    for (const Point& p : sample_points(*sl.chart, samples, 23)) {
      const SliceValues v = tape(p);
      ab.push_back({dot3(v.beta, v.ixmu), dot3(v.beta, v.dbeta)});
    }
  }
  auto ok = [&](double t) {
    return std::all_of(ab.begin(), ab.end(), [t](const auto& q) { return q.first + t * q.second > 0 && q.first - t * q.second > 0; });
  };
  double eps = 0.0;
  if (ok(1.0)) {
    eps = 1.0;
  } else if (ok(0.0)) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-3) {
      const double mid = 0.5 * (lo + hi);
      (ok(mid) ? lo : hi) = mid;
    }
    // below the absolute resolution: keep halving so a positive radius is still reported
    while (lo == 0.0 && hi > 1e-12) {
      hi *= 0.5;
      if (ok(hi)) lo = hi;
    }
    if (lo > 0.0 && lo < 1e-3) {
      hi = 2.0 * lo;
      while (hi - lo > 1e-3 * lo) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
      }
    }
    eps = lo;
  }
  s.epsilon = eps;
  return eps;
}

HamiltonianReport hamiltonian_check(const SymplecticExtension& s, int samples, double tol) {
  HamiltonianReport r;
  long flat = 0;
  for (const OmegaSlice& sl : s.slices) {
    SliceTape tape(sl);
    for (const Point& p : sample_points(*sl.chart, samples, 37)) {
      const SliceValues v = tape(p);
      const double bx = dot3(v.beta, v.X);
      for (double t : {-s.epsilon, 0.0, s.epsilon}) {
        const Mat4 W = matrix_from(v, t);
        for (int j = 0; j < 4; ++j) {
          double c = 0.0;
          for (int i = 0; i < 3; ++i) c += v.X[i] / bx * W[i + 1][j];
          r.reeb = std::max(r.reeb, std::abs(c + (j == 0 ? 1.0 : 0.0)));
        }
      }
      const Mat4 W = matrix_from(v, 0.0);
      Eigen::Matrix4d M;
      Eigen::Vector4d rhs(0.0, v.dB[0], v.dB[1], v.dB[2]);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M(i, j) = W[j][i];  // transpose: (i_V omega)_j = sum_i V_i W_ij
      for (int j = 0; j < 4; ++j) {
        double c = 0.0;
        for (int i = 0; i < 3; ++i) c += v.Y[i] * W[i + 1][j];
        r.curl = std::max(r.curl, std::abs(c - rhs[j]));
      }
      const Eigen::Vector4d V = M.partialPivLu().solve(rhs);
      double w = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) w += v.X[i] * W[i + 1][j] * V[j];
      r.commute = std::max(r.commute, std::abs(w));
      if (std::sqrt(dot3(v.dB, v.dB)) < 1e-9) ++flat;
      ++r.samples;
    }
  }
  r.flat_fraction = r.samples ? static_cast<double>(flat) / r.samples : 0.0;
  r.pass = r.samples > 0 && r.reeb < tol && r.curl < tol && r.commute < tol && r.flat_fraction < 0.01;
  return r;
}

ObstructionReport obstruction_check(const std::vector<Patch>& patches, double tol, int seeds) {
  ObstructionReport rep;
  for (const Patch& P : patches) {
    const VectorField Y = curl(P.alpha, P.mu);
    const expr::Tape tape({P.X.c[0], P.X.c[1], P.X.c[2], Y.c[0], Y.c[1], Y.c[2]});
    std::vector<double> scratch, v(6);
    for (const Point& p : find_critical_points(P, tol, seeds)) {
      tape.eval(p, scratch, v.data());
      const Eigen::Vector3d x(v[0], v[1], v[2]), y(v[3], v[4], v[5]);
      ObstructionPoint o;
      o.chart = P.name;
      o.p = p;
      o.x_norm = x.norm();
      o.y_norm = y.norm();
      o.defect = x.cross(y).norm();
      o.parallel = o.defect < 1e-9 * std::max(1.0, o.x_norm * o.y_norm);
      o.lambda = o.x_norm > 0 ? x.dot(y) / x.squaredNorm() : 0.0;
      o.obstructed = o.parallel && o.y_norm > 1e-9;
      rep.obstructed = rep.obstructed || o.obstructed;
      rep.points.push_back(o);
    }
  }
  return rep;
}

ObstructionReport obstruction_check(const AssembledFlow& f, double tol, int seeds) {
  return obstruction_check(all_patches(f), tol, seeds);
}

}  // namespace arnold
