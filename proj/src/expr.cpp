#include "arnold/expr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <unordered_map>

#include "arnold/errors.hpp"

namespace arnold::expr {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_double(double d) {
  if (d == 0.0) d = 0.0;  // fold -0
  return std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(d));
}

std::shared_ptr<const Node> finish(Node n) {
  std::size_t h = mix(static_cast<std::size_t>(n.op) * 1315423911ULL, hash_double(n.value));
  h = mix(h, static_cast<std::size_t>(n.index + 1000));
  unsigned mask = 0;
  std::size_t size = 1;
  for (const auto& a : n.args) {
    h = mix(h, a.hash());
    mask |= a.coords();
    size += a.size();
  }
  for (double b : n.breaks) h = mix(h, hash_double(b));
  if (n.op == Op::Coord) mask |= 1u << n.index;
  if (n.op == Op::Piecewise || n.op == Op::Integral) mask |= 1u << n.index;
  if (n.table) h = mix(h, std::hash<const void*>{}(n.table.get()));
  n.hash = h;
  n.coords = mask;
  n.size = size;
  return std::make_shared<const Node>(std::move(n));
}

Node leaf(Op op) {
  Node n;
  n.op = op;
  return n;
}

Expr unary(Op op, const Expr& a, int index = 0) {
  Node n = leaf(op);
  n.index = index;
  n.args = {a};
  return Expr::make(std::move(n));
}

// 10-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGLx = {0.14887433898163122, 0.43339539412924721, 0.67940956829902444,
                                        0.86506336668898454, 0.97390652851717174};
constexpr std::array<double, 5> kGLw = {0.29552422471475298, 0.26926671930999652, 0.21908636251598201,
                                        0.14945134915058036, 0.066671344308688069};

double gauss10(const std::function<double(double)>& f, double a, double b) {
  const double m = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 5; ++i) s += kGLw[i] * (f(m - r * kGLx[i]) + f(m + r * kGLx[i]));
  return s * r;
}

}  // namespace

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double c) {
  Node n = leaf(Op::Const);
  n.value = c == 0.0 ? 0.0 : c;
  n_ = finish(std::move(n));
}

Expr Expr::coord(int i) {
  if (i < 0 || i > 2) throw PreconditionError("coordinate index out of range");
  Node n = leaf(Op::Coord);
  n.index = i;
  return make(std::move(n));
}

Expr Expr::make(Node n) {
  Expr e;
  e.n_ = finish(std::move(n));
  return e;
}

// ---------------------------------------------------------------- smart constructors

Expr sum(const std::vector<Expr>& terms) {
  std::vector<Expr> keep;
  double c = 0.0;
  for (const auto& t : terms) {
    if (t.is_const()) {
      c += t.value();
    } else if (t.op() == Op::Add) {
      for (const auto& u : t.args()) {
        if (u.is_const())
          c += u.value();
        else
          keep.push_back(u);
      }
    } else {
      keep.push_back(t);
    }
  }
  if (c != 0.0) keep.push_back(Expr(c));
  if (keep.empty()) return Expr(0.0);
  if (keep.size() == 1) return keep[0];
  Node n = leaf(Op::Add);
  n.args = std::move(keep);
  return Expr::make(std::move(n));
}

Expr product(const std::vector<Expr>& factors) {
  std::vector<Expr> keep;
  double c = 1.0;
  for (const auto& f : factors) {
    if (f.is_const()) {
      c *= f.value();
    } else if (f.op() == Op::Mul) {
      for (const auto& u : f.args()) {
        if (u.is_const())
          c *= u.value();
        else
          keep.push_back(u);
      }
    } else {
      keep.push_back(f);
    }
  }
  if (c == 0.0) return Expr(0.0);
  if (keep.empty()) return Expr(c);
  if (c == -1.0) {
    Expr inner = keep.size() == 1 ? keep[0] : product(keep);
    return unary(Op::Neg, inner);
  }
  if (c != 1.0) keep.insert(keep.begin(), Expr(c));
  if (keep.size() == 1) return keep[0];
  Node n = leaf(Op::Mul);
  n.args = std::move(keep);
  return Expr::make(std::move(n));
}

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, -b}); }

Expr operator-(const Expr& a) {
  if (a.is_const()) return Expr(-a.value());
  if (a.op() == Op::Neg) return a.args()[0];
  return unary(Op::Neg, a);
}

Expr pow(const Expr& a, int k) {
  if (k == 0) return Expr(1.0);
  if (k == 1) return a;
  if (a.is_const()) return Expr(std::pow(a.value(), k));
  if (k < -2) return product({unary(Op::Pow, a, -2), pow(a, k + 2)});
  return unary(Op::Pow, a, k);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_const()) {
    if (b.value() == 0.0) throw DomainError("division by constant zero");
    return a * Expr(1.0 / b.value());
  }
  return a * pow(b, -1);
}

Expr sin(const Expr& a) {
  if (a.is_const()) return Expr(std::sin(a.value()));
  return unary(Op::Sin, a);
}

Expr cos(const Expr& a) {
  if (a.is_const()) return Expr(std::cos(a.value()));
  return unary(Op::Cos, a);
}

Expr bump(const Expr& a, int order) {
  if (order < 0 || order > kMaxBumpOrder) throw PreconditionError("bump derivative order out of range");
  if (a.is_const()) return Expr(bump_derivative(order, a.value()));
  return unary(Op::Bump, a, order);
}

Expr piecewise_unchecked(int coord, std::vector<double> breaks, std::vector<Expr> branches) {
  if (branches.empty() || breaks.size() != branches.size() + 1)
    throw StructuralError("piecewise: need one more breakpoint than branches");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1])) throw StructuralError("piecewise: breakpoints not increasing");
  if (branches.size() == 1) return branches[0];
  bool all_same = true;
  for (std::size_t i = 1; i < branches.size(); ++i) all_same = all_same && equal(branches[i], branches[0]);
  if (all_same) return branches[0];
  Node n = leaf(Op::Piecewise);
  n.index = coord;
  n.breaks = std::move(breaks);
  n.args = std::move(branches);
  return Expr::make(std::move(n));
}

Expr piecewise(int coord, std::vector<double> breaks, std::vector<Expr> branches) {
  if (coord < 0 || coord > 2) throw PreconditionError("piecewise: coordinate index out of range");
  Expr e = piecewise_unchecked(coord, breaks, branches);
  // junction check at a few values of the other coordinates
  static constexpr std::array<double, 2> others = {0.37, 1.13};
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i) {
    const Expr& l = branches[i - 1];
    const Expr& r = branches[i];
    Expr dl = diff(l, coord), dr = diff(r, coord);
    for (double u : others)
      for (double w : others) {
        Point p{u, w, u};
        p[coord] = breaks[i];
        if (coord == 0) p = {breaks[i], u, w};
        if (coord == 1) p = {u, breaks[i], w};
        if (coord == 2) p = {u, w, breaks[i]};
        const double v0 = eval(l, p), v1 = eval(r, p);
        const double d0 = eval(dl, p), d1 = eval(dr, p);
        const double sv = std::max(1.0, std::abs(v0)), sd = std::max(1.0, std::abs(d0));
        if (std::abs(v0 - v1) > 1e-9 * sv || std::abs(d0 - d1) > 1e-9 * sd)
          throw StructuralError("piecewise: branches disagree at breakpoint " + std::to_string(breaks[i]));
      }
  }
  return e;
}

// ---------------------------------------------------------------- antiderivative

double IntegralTable::value(double x) const {
  const double lo = edges.front(), hi = edges.back();
  const double slack = 1e-12 * std::max(1.0, hi - lo);
  if (x < lo - slack || x > hi + slack) throw DomainError("antiderivative evaluated outside its table");
  x = std::clamp(x, lo, hi);
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  std::size_t cell = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
  if (cell + 1 >= edges.size()) cell = edges.size() - 2;
  const double a = edges[cell];
  Point p{0.0, 0.0, 0.0};
  auto f = [&](double s) {
    p[coord] = s;
    return expr::eval(integrand, p);
  };
  return base + cumulative[cell] + (x > a ? gauss10(f, a, x) : 0.0);
}

Expr antiderivative(const Expr& integrand, int coord, double lo, double hi, double base,
                    const std::vector<double>& knots) {
  if (coord < 0 || coord > 2) throw PreconditionError("antiderivative: coordinate index out of range");
  if ((integrand.coords() & ~(1u << coord)) != 0)
    throw PreconditionError("antiderivative: integrand depends on other coordinates");
  if (!(hi > lo)) throw PreconditionError("antiderivative: empty interval");
  std::vector<double> segs{lo, hi};
  for (double k : knots)
    if (k > lo && k < hi) segs.push_back(k);
  std::sort(segs.begin(), segs.end());
  segs.erase(std::unique(segs.begin(), segs.end()), segs.end());

  Point p{0.0, 0.0, 0.0};
  auto f = [&](double s) {
    p[coord] = s;
    return eval(integrand, p);
  };
  auto table = std::make_shared<IntegralTable>();
  table->integrand = integrand;
  table->coord = coord;
  table->base = base;
  table->edges.push_back(lo);
  table->cumulative.push_back(0.0);
  double acc = 0.0;
  for (std::size_t s = 0; s + 1 < segs.size(); ++s) {
    const double a = segs[s], b = segs[s + 1];
    // refine until doubling the cell count changes the segment integral by < 1e-14 relative
    int n = 8;
    std::vector<double> parts;
    auto integrate = [&](int cells, std::vector<double>& out) {
      out.assign(cells, 0.0);
      double tot = 0.0;
      for (int c = 0; c < cells; ++c) {
        out[c] = gauss10(f, a + (b - a) * c / cells, a + (b - a) * (c + 1) / cells);
        tot += out[c];
      }
      return tot;
    };
    double prev = integrate(n, parts);
    for (;;) {
      std::vector<double> finer;
      const double next = integrate(2 * n, finer);
      n *= 2;
      parts = std::move(finer);
      if (std::abs(next - prev) < 1e-14 * std::max(1.0, std::abs(next)) || n >= 4096) break;
      prev = next;
    }
    for (int c = 0; c < n; ++c) {
      acc += parts[c];
      table->edges.push_back(c + 1 == n ? b : a + (b - a) * (c + 1) / n);
      table->cumulative.push_back(acc);
    }
  }
  Node node = leaf(Op::Integral);
  node.index = coord;
  node.table = std::move(table);
  return Expr::make(std::move(node));
}

// ---------------------------------------------------------------- bump

namespace {

double logistic(double u) {
  if (u >= 0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

// H^(k)(s) for s in (0, 1/2], via truncated Taylor series of L(u(s)), u = 1/(1-s) - 1/s.
double bump_jet(int k, double s) {
  std::array<double, kMaxBumpOrder + 1> uj{};  // Taylor coefficients of u - u(s) in (x - s)
  const double a = 1.0 / (1.0 - s), b = 1.0 / s;
  double pa = a, pb = b;
  for (int j = 1; j <= k; ++j) {
    pa *= a;
    pb *= b;
    uj[j] = pa - ((j % 2 == 0) ? pb : -pb);
  }
  const double u0 = a - b;
  // Taylor coefficients of L around u0: y' = y(1-y)
  std::array<double, kMaxBumpOrder + 1> y{};
  y[0] = logistic(u0);
  for (int n = 0; n < k; ++n) {
    double conv = 0.0;
    for (int i = 0; i <= n; ++i) conv += y[i] * y[n - i];
    y[n + 1] = (y[n] - conv) / (n + 1);
  }
  // compose: sum_n y_n * delta^n, delta = sum_{j>=1} uj x^j, keep coefficient of x^k
  std::array<double, kMaxBumpOrder + 1> pw{};  // delta^n
  pw[0] = 1.0;
  double coef = k == 0 ? y[0] : 0.0;
  for (int n = 1; n <= k; ++n) {
    std::array<double, kMaxBumpOrder + 1> nx{};
    for (int i = 0; i <= k; ++i) {
      if (pw[i] == 0.0) continue;
      for (int j = 1; i + j <= k; ++j) nx[i + j] += pw[i] * uj[j];
    }
    pw = nx;
    coef += y[n] * pw[k];
  }
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return coef * fact;
}

}  // namespace

double bump_derivative(int k, double s) {
  if (k < 0 || k > kMaxBumpOrder) throw PreconditionError("bump derivative order out of range");
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return k == 0 ? 1.0 : 0.0;
  if (s <= 0.5) return bump_jet(k, s);
  // H(s) = 1 - H(1-s)
  const double r = bump_jet(k, 1.0 - s);
  if (k == 0) return 1.0 - r;
  return (k % 2 == 1) ? r : -r;
}

// ---------------------------------------------------------------- eval

namespace {

std::size_t piece_index(const std::vector<double>& br, double x) {
  const double span = br.back() - br.front();
  const double slack = 1e-9 * std::max(1.0, span);
  if (x < br.front() - slack || x > br.back() + slack)
    throw StructuralError("piecewise gap: coordinate value " + std::to_string(x) + " outside all branches");
  auto it = std::upper_bound(br.begin() + 1, br.end() - 1, x);
  return static_cast<std::size_t>(it - (br.begin() + 1));
}

}  // namespace

std::size_t piecewise_branch(const std::vector<double>& breaks, double x) { return piece_index(breaks, x); }

double eval(const Expr& e, const Point& p) {
  switch (e.op()) {
    case Op::Const:
      return e.value();
    case Op::Coord:
      return p[e.index()];
    case Op::Add: {
      double s = 0.0;
      for (const auto& a : e.args()) s += eval(a, p);
      return s;
    }
    case Op::Mul: {
      double s = 1.0;
      for (const auto& a : e.args()) s *= eval(a, p);
      return s;
    }
    case Op::Neg:
      return -eval(e.args()[0], p);
    case Op::Pow: {
      const double v = eval(e.args()[0], p);
      const int k = e.index();
      if (k == 2) return v * v;
      if (k == 3) return v * v * v;
      if (k == -1) return 1.0 / v;
      if (k == -2) return 1.0 / (v * v);
      return std::pow(v, k);
    }
    case Op::Sin:
      return std::sin(eval(e.args()[0], p));
    case Op::Cos:
      return std::cos(eval(e.args()[0], p));
    case Op::Bump:
      return bump_derivative(e.index(), eval(e.args()[0], p));
    case Op::Piecewise:
      return eval(e.args()[piece_index(e.breaks(), p[e.index()])], p);
    case Op::Integral:
      return e.table()->value(p[e.index()]);
  }
  return 0.0;
}

// ---------------------------------------------------------------- equality

bool equal(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (a.hash() != b.hash() || a.op() != b.op() || a.index() != b.index() || a.size() != b.size()) return false;
  if (a.op() == Op::Const) return a.value() == b.value();
  if (a.table() != b.table()) return false;
  if (a.breaks() != b.breaks() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!equal(a.args()[i], b.args()[i])) return false;
  return true;
}

// ---------------------------------------------------------------- diff

namespace {

struct Differ {
  int i;
  std::unordered_map<const Node*, Expr> memo;

  Expr run(const Expr& e) {
    if (!e.depends_on(i)) return Expr(0.0);
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    Expr r = rule(e);
    memo.emplace(e.get(), r);
    return r;
  }

  Expr rule(const Expr& e) {
    const auto& a = e.args();
    switch (e.op()) {
      case Op::Const:
        return Expr(0.0);
      case Op::Coord:
        return Expr(e.index() == i ? 1.0 : 0.0);
      case Op::Add: {
        std::vector<Expr> t;
        for (const auto& x : a) t.push_back(run(x));
        return sum(t);
      }
      case Op::Mul: {
        std::vector<Expr> terms;
        for (std::size_t k = 0; k < a.size(); ++k) {
          Expr dk = run(a[k]);
          if (dk.is_const(0.0)) continue;
          std::vector<Expr> f;
          for (std::size_t j = 0; j < a.size(); ++j) f.push_back(j == k ? dk : a[j]);
          terms.push_back(product(f));
        }
        return sum(terms);
      }
      case Op::Neg:
        return -run(a[0]);
      case Op::Pow: {
        const int k = e.index();
        return product({Expr(static_cast<double>(k)), pow(a[0], k - 1), run(a[0])});
      }
      case Op::Sin:
        return product({cos(a[0]), run(a[0])});
      case Op::Cos:
        return -product({sin(a[0]), run(a[0])});
      case Op::Bump:
        return product({bump(a[0], e.index() + 1), run(a[0])});
      case Op::Piecewise: {
        std::vector<Expr> br;
        for (const auto& x : a) br.push_back(run(x));
        return piecewise_unchecked(e.index(), e.breaks(), br);
      }
      case Op::Integral:
        return e.index() == i ? e.table()->integrand : Expr(0.0);
    }
    return Expr(0.0);
  }
};

}  // namespace

Expr diff(const Expr& e, int i) {
  if (i < 0 || i > 2) throw PreconditionError("diff: coordinate index out of range");
  Differ d{i, {}};
  return d.run(e);
}

// ---------------------------------------------------------------- simplify

namespace {

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};
struct ExprEq {
  bool operator()(const Expr& a, const Expr& b) const { return equal(a, b); }
};

// split a product into constant coefficient and the rest
std::pair<double, Expr> split_coef(const Expr& t) {
  if (t.is_const()) return {t.value(), Expr(1.0)};
  if (t.op() == Op::Neg) {
    auto [c, r] = split_coef(t.args()[0]);
    return {-c, r};
  }
  if (t.op() == Op::Mul && t.args()[0].is_const()) {
    std::vector<Expr> rest(t.args().begin() + 1, t.args().end());
    return {t.args()[0].value(), product(rest)};
  }
  return {1.0, t};
}

struct Simplifier {
  std::unordered_map<const Node*, Expr> memo;

  Expr run(const Expr& e) {
    if (e.op() == Op::Const || e.op() == Op::Coord) return e;
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    Expr r = rule(e);
    memo.emplace(e.get(), r);
    return r;
  }

  Expr collect_sum(const std::vector<Expr>& raw) {
    std::vector<Expr> flat;
    for (const auto& t : raw) {
      if (t.op() == Op::Add)
        flat.insert(flat.end(), t.args().begin(), t.args().end());
      else
        flat.push_back(t);
    }
    std::vector<Expr> order;
    std::unordered_map<Expr, double, ExprHash, ExprEq> coef;
    double c = 0.0;
    for (const auto& t : flat) {
      auto [k, base] = split_coef(t);
      if (base.is_const()) {
        c += k * base.value();
        continue;
      }
      auto [pos, fresh] = coef.emplace(base, 0.0);
      if (fresh) order.push_back(base);
      pos->second += k;
    }
    std::vector<Expr> out;
    for (const auto& b : order) {
      const double k = coef[b];
      if (k != 0.0) out.push_back(product({Expr(k), b}));
    }
    if (c != 0.0) out.push_back(Expr(c));
    return sum(out);
  }

  Expr collect_product(const std::vector<Expr>& raw) {
    std::vector<Expr> flat;
    double c = 1.0;
    for (const auto& f0 : raw) {
      Expr f = f0;
      while (f.op() == Op::Neg) {
        c = -c;
        f = f.args()[0];
      }
      if (f.op() == Op::Mul) {
        for (auto g : f.args()) {
          while (g.op() == Op::Neg) {
            c = -c;
            g = g.args()[0];
          }
          if (g.is_const())
            c *= g.value();
          else
            flat.push_back(g);
        }
      } else if (f.is_const()) {
        c *= f.value();
      } else {
        flat.push_back(f);
      }
    }
    if (c == 0.0) return Expr(0.0);
    std::vector<Expr> order;
    std::unordered_map<Expr, int, ExprHash, ExprEq> expo;
    for (const auto& f : flat) {
      Expr base = f;
      int k = 1;
      if (f.op() == Op::Pow) {
        base = f.args()[0];
        k = f.index();
      }
      auto [pos, fresh] = expo.emplace(base, 0);
      if (fresh) order.push_back(base);
      pos->second += k;
    }
    std::vector<Expr> out{Expr(c)};
    for (const auto& b : order) {
      const int k = expo[b];
      if (k != 0) out.push_back(pow(b, k));
    }
    return product(out);
  }

  Expr rule(const Expr& e) {
    std::vector<Expr> a;
    for (const auto& x : e.args()) a.push_back(run(x));
    switch (e.op()) {
      case Op::Add:
        return collect_sum(a);
      case Op::Mul:
        return collect_product(a);
      case Op::Neg:
        return collect_product({Expr(-1.0), a[0]});
      case Op::Pow: {
        if (a[0].op() == Op::Pow) {
          const int k = a[0].index() * e.index();
          if (k >= -2) return pow(a[0].args()[0], k);
        }
        return collect_product({pow(a[0], e.index())});
      }
      case Op::Sin:
        return sin(a[0]);
      case Op::Cos:
        return cos(a[0]);
      case Op::Bump:
        return bump(a[0], e.index());
      case Op::Piecewise:
        return piecewise_unchecked(e.index(), e.breaks(), a);
      default:
        return e;
    }
  }
};

}  // namespace

Expr simplify(const Expr& e) {
  Simplifier s;
  return s.run(e);
}

// ---------------------------------------------------------------- printing

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // prefer the shortest representation that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char s[40];
    std::snprintf(s, sizeof s, "%.*g", prec, v);
    if (std::strtod(s, nullptr) == v) return s;
  }
  return buf;
}

void print(const Expr& e, const std::array<std::string, 3>& names, std::string& out) {
  const auto& a = e.args();
  auto join = [&](const char* sep) {
    out += "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) out += sep;
      print(a[i], names, out);
    }
    out += ")";
  };
  switch (e.op()) {
    case Op::Const:
      if (e.value() < 0)
        out += "(" + num(e.value()) + ")";
      else
        out += num(e.value());
      break;
    case Op::Coord:
      out += names[e.index()];
      break;
    case Op::Add:
      join(" + ");
      break;
    case Op::Mul:
      join(" * ");
      break;
    case Op::Neg:
      out += "(-";
      print(a[0], names, out);
      out += ")";
      break;
    case Op::Pow:
      out += "(";
      print(a[0], names, out);
      out += ")^" + std::to_string(e.index());
      break;
    case Op::Sin:
      out += "sin";
      join(", ");
      break;
    case Op::Cos:
      out += "cos";
      join(", ");
      break;
    case Op::Bump:
      out += e.index() == 0 ? "bump" : "dbump" + std::to_string(e.index());
      join(", ");
      break;
    case Op::Piecewise:
      out += "piecewise[" + names[e.index()] + "]";
      join(" | ");
      break;
    case Op::Integral:
      out += "integral[" + names[e.index()] + "](";
      print(e.table()->integrand, names, out);
      out += ")";
      break;
  }
}

}  // namespace

std::string to_string(const Expr& e, const std::array<std::string, 3>& names) {
  std::string out;
  print(e, names, out);
  return out;
}

}  // namespace arnold::expr
