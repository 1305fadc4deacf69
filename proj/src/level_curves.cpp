#include "arnold/level_curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "arnold/errors.hpp"

namespace arnold {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Point lift(const Vec2& p) { return {p[0], p[1], 0.0}; }

}  // namespace

PlaneFunction::PlaneFunction(const expr::Expr& f) : f_(f) {
  using expr::diff;
  const expr::Expr fx = diff(f, 0), fy = diff(f, 1);
  tape_ = expr::Tape({f, fx, fy, diff(fx, 0), diff(fx, 1), diff(fy, 1)});
}

double PlaneFunction::value(const Vec2& p) const { return jet(p)[0]; }

std::array<double, 6> PlaneFunction::jet(const Vec2& p) const {
  thread_local std::vector<double> scratch;
  std::array<double, 6> out{};
  tape_.eval(lift(p), scratch, out.data());
  return out;
}

Vec2 PlaneFunction::project(Vec2 p, double level) const {
  for (int it = 0; it < 40; ++it) {
    const auto j = jet(p);
    const double r = j[0] - level;
    const double g2 = j[1] * j[1] + j[2] * j[2];
    if (g2 == 0.0) break;
    p[0] -= r * j[1] / g2;
    p[1] -= r * j[2] / g2;
    if (std::abs(r) < 1e-15 * std::max(1.0, std::abs(level))) break;
  }
  return p;
}

Vec2 LevelCurve::centroid() const {
  Vec2 c{0.0, 0.0};
  for (const auto& p : pts) {
    c[0] += p[0];
    c[1] += p[1];
  }
  c[0] /= static_cast<double>(pts.size());
  c[1] /= static_cast<double>(pts.size());
  return c;
}

double LevelCurve::signed_area() const {
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    s += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * s;
}

namespace {

std::size_t segment_at(const LevelCurve& c, double s) {
  auto it = std::upper_bound(c.cum.begin(), c.cum.end(), s);
  std::size_t i = static_cast<std::size_t>(it - c.cum.begin());
  i = i == 0 ? 0 : i - 1;
  return std::min(i, c.pts.size() - 1);
}

}  // namespace

Vec2 LevelCurve::raw_point(double a) const {
  double s = std::fmod(a, kTwoPi);
  if (s < 0) s += kTwoPi;
  s = s / kTwoPi * length();
  const std::size_t i = segment_at(*this, s);
  const Vec2& p = pts[i];
  const Vec2& q = pts[(i + 1) % pts.size()];
  const double len = cum[i + 1] - cum[i];
  const double u = len > 0 ? (s - cum[i]) / len : 0.0;
  return {p[0] + u * (q[0] - p[0]), p[1] + u * (q[1] - p[1])};
}

Vec2 LevelCurve::raw_direction(double a) const {
  double s = std::fmod(a, kTwoPi);
  if (s < 0) s += kTwoPi;
  s = s / kTwoPi * length();
  std::size_t i = segment_at(*this, s);
  for (std::size_t k = 0; k < pts.size(); ++k, i = (i + 1) % pts.size()) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % pts.size()];
    if (q[0] != p[0] || q[1] != p[1]) return {q[0] - p[0], q[1] - p[1]};
  }
  return {1.0, 0.0};
}

std::vector<LevelCurve> level_curves(const PlaneFunction& f, Interval x, Interval y, double level, int nx, int ny) {
  const double hx = x.length() / nx, hy = y.length() / ny;
  std::vector<double> v(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  auto node = [&](int i, int j) { return static_cast<std::size_t>(j * (nx + 1) + i); };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) v[node(i, j)] = f.value({x.lo + i * hx, y.lo + j * hy}) - level;

  // edge keys: horizontal (i,j)-(i+1,j) -> 2*node, vertical (i,j)-(i,j+1) -> 2*node+1
  std::unordered_map<long, Vec2> where;
  std::unordered_map<long, std::vector<long>> adj;
  auto crossing = [&](long key) -> long {
    if (where.count(key)) return key;
    const std::size_t n = static_cast<std::size_t>(key / 2);
    const int i = static_cast<int>(n % static_cast<std::size_t>(nx + 1));
    const int j = static_cast<int>(n / static_cast<std::size_t>(nx + 1));
    const bool vertical = key % 2 == 1;
    const double a = v[node(i, j)];
    const double b = vertical ? v[node(i, j + 1)] : v[node(i + 1, j)];
    const double u = a / (a - b);
    where[key] = vertical ? Vec2{x.lo + i * hx, y.lo + (j + u) * hy} : Vec2{x.lo + (i + u) * hx, y.lo + j * hy};
    return key;
  };
  auto link = [&](long a, long b) {
    adj[crossing(a)].push_back(crossing(b));
    adj[crossing(b)].push_back(crossing(a));
  };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const long bottom = 2 * static_cast<long>(node(i, j));
      const long top = 2 * static_cast<long>(node(i, j + 1));
      const long left = 2 * static_cast<long>(node(i, j)) + 1;
      const long right = 2 * static_cast<long>(node(i + 1, j)) + 1;
      const bool c0 = v[node(i, j)] > 0, c1 = v[node(i + 1, j)] > 0;
      const bool c2 = v[node(i + 1, j + 1)] > 0, c3 = v[node(i, j + 1)] > 0;
      std::vector<long> e;
      if (c0 != c1) e.push_back(bottom);
      if (c1 != c2) e.push_back(right);
      if (c2 != c3) e.push_back(top);
      if (c3 != c0) e.push_back(left);
      if (e.size() == 2) {
        link(e[0], e[1]);
      } else if (e.size() == 4) {
        const double center =
            0.25 * (v[node(i, j)] + v[node(i + 1, j)] + v[node(i + 1, j + 1)] + v[node(i, j + 1)]);
        // corners 0 and 2 share sign; join around whichever pair the center separates
        if ((center > 0) == c0) {
          link(bottom, right);
          link(top, left);
        } else {
          link(bottom, left);
          link(right, top);
        }
      }
    }
  }

  std::vector<LevelCurve> out;
  std::unordered_map<long, bool> seen;
  std::vector<long> keys;
  for (const auto& [k, _] : adj) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (long start : keys) {
    if (seen[start]) continue;
    if (adj[start].size() != 2) throw PreconditionError("level curve leaves the domain");
    LevelCurve c;
    c.level = level;
    long prev = -1, cur = start;
    for (;;) {
      seen[cur] = true;
      c.pts.push_back(f.project(where[cur], level));
      const auto& nb = adj[cur];
      if (nb.size() != 2) throw PreconditionError("level curve leaves the domain");
      const long next = nb[0] != prev ? nb[0] : nb[1];
      prev = cur;
      cur = next;
      if (cur == start) break;
    }
    if (c.signed_area() < 0) std::reverse(c.pts.begin(), c.pts.end());
    c.cum.assign(c.pts.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.pts.size(); ++k) {
      const Vec2& p = c.pts[k];
      const Vec2& q = c.pts[(k + 1) % c.pts.size()];
      c.cum[k + 1] = c.cum[k] + std::hypot(q[0] - p[0], q[1] - p[1]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

CurveSample sample_curve(const PlaneFunction& f, const LevelCurve& c, double a) {
  CurveSample s;
  s.p = f.project(c.raw_point(a), c.level);
  const auto j = f.jet(s.p);
  Vec2 t{-j[2], j[1]};
  const Vec2 d = c.raw_direction(a);
  if (t[0] * d[0] + t[1] * d[1] < 0) t = {-t[0], -t[1]};
  const double n = std::hypot(t[0], t[1]);
  const double scale = n > 0 ? c.length() / kTwoPi / n : 0.0;
  s.tangent = {t[0] * scale, t[1] * scale};
  return s;
}

std::vector<PlaneCritical> plane_critical_points(const PlaneFunction& f, Interval x, Interval y, int n,
                                                 double merge) {
  const double hx = x.length() / n, hy = y.length() / n;
  std::vector<double> g2(static_cast<std::size_t>((n + 1) * (n + 1)));
  auto id = [&](int i, int j) { return static_cast<std::size_t>(j * (n + 1) + i); };
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const auto jt = f.jet({x.lo + i * hx, y.lo + j * hy});
      g2[id(i, j)] = jt[1] * jt[1] + jt[2] * jt[2];
    }
  }
  std::vector<PlaneCritical> out;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const double g = g2[id(i, j)];
      bool local_min = true;
      for (int dj = -1; dj <= 1 && local_min; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int a = i + di, b = j + dj;
          if ((di || dj) && a >= 0 && a <= n && b >= 0 && b <= n && g2[id(a, b)] < g) {
            local_min = false;
            break;
          }
        }
      if (!local_min) continue;
      Vec2 p{x.lo + i * hx, y.lo + j * hy};
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        const auto jt = f.jet(p);
        const double det = jt[3] * jt[5] - jt[4] * jt[4];
        if (std::abs(det) < 1e-300) break;
        const double dx = (jt[5] * jt[1] - jt[4] * jt[2]) / det;
        const double dy = (-jt[4] * jt[1] + jt[3] * jt[2]) / det;
        p[0] -= dx;
        p[1] -= dy;
        if (std::hypot(dx, dy) < 1e-14) {
          ok = true;
          break;
        }
      }
      if (!ok) continue;
      if (p[0] < x.lo - 1e-12 || p[0] > x.hi + 1e-12 || p[1] < y.lo - 1e-12 || p[1] > y.hi + 1e-12) continue;
      const auto jt = f.jet(p);
      if (std::hypot(jt[1], jt[2]) > 1e-10) continue;
      const bool dup = std::any_of(out.begin(), out.end(), [&](const PlaneCritical& c) {
        return std::hypot(c.p[0] - p[0], c.p[1] - p[1]) < merge;
      });
      if (!dup) out.push_back(PlaneCritical{p, jt[0], jt[3], jt[4], jt[5]});
    }
  }
  std::sort(out.begin(), out.end(), [](const PlaneCritical& a, const PlaneCritical& b) {
    return a.p[0] != b.p[0] ? a.p[0] < b.p[0] : a.p[1] < b.p[1];
  });
  return out;
}

}  // namespace arnold
