#include <algorithm>
#include <cmath>

#include "arnold/assembly.hpp"
#include "arnold/errors.hpp"
#include "blocks_internal.hpp"

namespace arnold {

using namespace detail;

namespace {

using V3 = std::array<double, 3>;

double dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double det3(const V3& a, const V3& b, const V3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// Coefficients (a, b) of v in span(e1, e2) and the distance of v from that span.
std::array<double, 3> frame_coefficients(const V3& v, const V3& e1, const V3& e2) {
  const double g11 = dot(e1, e1), g12 = dot(e1, e2), g22 = dot(e2, e2);
  const double r1 = dot(v, e1), r2 = dot(v, e2);
  const double det = g11 * g22 - g12 * g12;
  const double a = (g22 * r1 - g12 * r2) / det, b = (g11 * r2 - g12 * r1) / det;
  double off = 0.0;
  for (int i = 0; i < 3; ++i) off = std::max(off, std::abs(v[i] - a * e1[i] - b * e2[i]));
  return {a, b, off};
}

V3 form_at(const KForm& f, const Point& p) {
  const auto v = f.at(p);
  return {v[0], v[1], v[2]};
}

}  // namespace

FaceMismatch face_mismatch(const AssembledFlow& f, const TransitionMap& tm, int n) {
  const BlockRealization& b = f.blocks[static_cast<std::size_t>(tm.atom)];
  const BoundaryFace& face = b.faces[static_cast<std::size_t>(tm.slot)];
  const CollarRealization& c = f.collars[static_cast<std::size_t>(tm.edge)];
  const auto& M = tm.M;
  const double detM = static_cast<double>(M[0] * M[3] - M[1] * M[2]);
  FaceMismatch r;
  bool first = true, orient = true;
  double sign0 = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double psi1 = kTwoPi * (i + 0.5) / n, psi2 = kTwoPi * (j + 0.5) / n;
      const FacePoint fp = face.sample(psi1, psi2);
      const Patch& P = b.patches[static_cast<std::size_t>(fp.patch)];
      const Point q = tm.apply(psi1, psi2);

      // X in the face frame on both sides
      const auto xb = frame_coefficients(P.X.at(fp.p), fp.e1, fp.e2);
      const auto xc = c.X.at(q);
      const double ca = (M[3] * xc[1] - M[1] * xc[2]) / detM, cb = (-M[2] * xc[1] + M[0] * xc[2]) / detM;
      r.X = std::max({r.X, std::abs(xb[0] - ca), std::abs(xb[1] - cb), xb[2], std::abs(xc[0])});

      // one-forms pulled back to the face torus
      auto pull_block = [&](const KForm& w) {
        const V3 v = form_at(w, fp.p);
        return std::array<double, 2>{dot(v, fp.e1), dot(v, fp.e2)};
      };
      auto pull_collar = [&](const KForm& w) {
        const V3 v = form_at(w, q);
        return std::array<double, 2>{M[0] * v[1] + M[2] * v[2], M[1] * v[1] + M[3] * v[2]};
      };
      const auto ab = pull_block(P.alpha), ac = pull_collar(c.alpha);
      r.alpha = std::max({r.alpha, std::abs(ab[0] - ac[0]), std::abs(ab[1] - ac[1])});
      const auto bb = pull_block(P.beta), bc = pull_collar(c.beta);
      r.beta = std::max({r.beta, std::abs(bb[0] - bc[0]), std::abs(bb[1] - bc[1])});
      r.B = std::max(r.B, std::abs(P.B.at(fp.p)[0] - c.h.at(q)[0]));

      // orientation: (outward normal, e1, e2) in the block against (+-dt, M e1, M e2) in the collar
      const double sb = P.mu.at(fp.p)[0] * det3(fp.normal, fp.e1, fp.e2);
      const double sc = (tm.source_side ? 1.0 : -1.0) * detM;
      const double s = (sb > 0) == (sc > 0) ? 1.0 : -1.0;
      if (first) sign0 = s;
      orient = orient && s == sign0 && s > 0;
      first = false;
      ++r.samples;
    }
  }
  r.orientation_consistent = orient;
  return r;
}

}  // namespace arnold
