#include <algorithm>
#include <cmath>
#include <random>

#include "arnold/verify.hpp"

namespace arnold {

namespace {

double halton(std::uint64_t i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
  }
  return r;
}

// Grid points of the chart box followed by Halton points, filtered by the chart band.
template <class F>
void for_each_sample(const Chart& c, const SuiteOptions& o, F&& fn) {
  const int n = std::max(2, o.grid);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Point p{c.domain[0].lo + c.domain[0].length() * i / (n - 1),
                      c.domain[1].lo + c.domain[1].length() * j / (n - 1),
                      c.domain[2].lo + c.domain[2].length() * k / (n - 1)};
        if (c.contains(p)) fn(p);
      }
  const std::uint64_t start = 1 + o.seed * 1000003ULL;
  for (int s = 0; s < o.samples; ++s) {
    const std::uint64_t idx = start + static_cast<std::uint64_t>(s);
    const Point p{c.domain[0].lo + c.domain[0].length() * halton(idx, 2),
                  c.domain[1].lo + c.domain[1].length() * halton(idx, 3),
                  c.domain[2].lo + c.domain[2].length() * halton(idx, 5)};
    if (c.contains(p)) fn(p);
  }
}

}  // namespace

ChartReport check_patch(const Patch& P, const SuiteOptions& o) {
  const KForm e = add(interior(P.X, exterior_d(P.alpha)), exterior_d(P.B));
  const KForm dv = divergence(P.X, P.mu);
  const KForm ax = interior(P.X, P.alpha);
  const KForm bx = interior(P.X, P.beta);
  const KForm ib = interior(P.X, exterior_d(P.beta));
  const KForm by = interior(curl(P.alpha, P.mu), P.beta);
  const expr::Tape tape({e.c[0], e.c[1], e.c[2], dv.c[0], ax.c[0], bx.c[0], ib.c[0], ib.c[1], ib.c[2], by.c[0]});
  std::vector<double> scratch, out(tape.outputs());
  ChartReport r;
  r.name = P.name;
  r.positivity = INFINITY;
  r.min_beta_x = INFINITY;
  for_each_sample(*P.chart, o, [&](const Point& p) {
    tape.eval(p, scratch, out.data());
    r.euler = std::max({r.euler, std::abs(out[0]), std::abs(out[1]), std::abs(out[2])});
    r.divergence = std::max(r.divergence, std::abs(out[3]));
    r.positivity = std::min(r.positivity, out[4]);
    r.min_beta_x = std::min(r.min_beta_x, out[5]);
    r.ixdb = std::max({r.ixdb, std::abs(out[6]), std::abs(out[7]), std::abs(out[8])});
    r.beta_curl = std::max(r.beta_curl, std::abs(out[9]));
    ++r.samples;
  });
  r.pass = r.samples > 0 && r.euler < o.tol && r.divergence < o.tol && r.ixdb < o.tol && r.beta_curl < o.tol &&
           r.positivity > 0 && r.min_beta_x > 0;
  return r;
}

VerificationReport run_suite(const AssembledFlow& f, const SuiteOptions& o) {
  VerificationReport rep;
  rep.options = o;
  rep.global.name = "global";
  rep.global.positivity = INFINITY;
  rep.global.min_beta_x = INFINITY;
  rep.global.pass = true;
  for (const Patch& p : all_patches(f)) {
    ChartReport c = check_patch(p, o);
    ChartReport& g = rep.global;
    g.euler = std::max(g.euler, c.euler);
    g.divergence = std::max(g.divergence, c.divergence);
    g.ixdb = std::max(g.ixdb, c.ixdb);
    g.beta_curl = std::max(g.beta_curl, c.beta_curl);
    g.positivity = std::min(g.positivity, c.positivity);
    g.min_beta_x = std::min(g.min_beta_x, c.min_beta_x);
    g.samples += c.samples;
    g.pass = g.pass && c.pass;
    rep.charts.push_back(std::move(c));
  }
  rep.critical = critical_set_report(f, o.tol);
  rep.pass = rep.global.pass;
  return rep;
}

FdReport fd_crosscheck(const std::vector<Patch>& patches, int n, std::uint64_t seed, const DiffRule& rule) {
  constexpr double h = 1e-4;
  const DiffRule d = rule ? rule : DiffRule([](const Expr& e, int i) { return expr::diff(e, i); });
  FdReport rep;
  std::mt19937_64 rng(seed);
  for (const Patch& P : patches) {
    const KForm xmu = interior(P.X, P.mu);
    std::vector<std::pair<std::string, Expr>> fields{{"B", P.B.c[0]}};
    const char* names[] = {"alpha", "beta", "i_X mu"};
    const KForm* forms[] = {&P.alpha, &P.beta, &xmu};
    for (int k = 0; k < 3; ++k)
      for (int c = 0; c < 3; ++c) fields.push_back({std::string(names[k]) + "[" + std::to_string(c) + "]", forms[k]->c[c]});
    std::vector<Expr> values, derivs;
    for (const auto& fl : fields) values.push_back(fl.second);
    for (const auto& fl : fields)
      for (int i = 0; i < 3; ++i) derivs.push_back(d(fl.second, i));
    const expr::Tape tv(values), td(derivs);
    std::vector<double> scratch, v(tv.outputs()), dv(td.outputs());
    std::array<std::vector<double>, 6> side;
    for (auto& s : side) s.resize(tv.outputs());
    const Chart& ch = *P.chart;
    int done = 0;
    for (int tries = 0; done < n && tries < 100 * n; ++tries) {
      Point p;
      for (int i = 0; i < 3; ++i) {
        const Interval I = ch.domain[i];
        p[i] = std::uniform_real_distribution<double>(I.lo + 3 * h, I.hi - 3 * h)(rng);
      }
      if (!ch.contains(p)) continue;
      ++done;
      td.eval(p, scratch, dv.data());
      for (int i = 0; i < 3; ++i) {
        const double off[6] = {-3 * h, -2 * h, -h, h, 2 * h, 3 * h};
        for (int s = 0; s < 6; ++s) {
          Point q = p;
          q[i] += off[s];
          tv.eval(q, scratch, side[s].data());
        }
        for (std::size_t fi = 0; fi < fields.size(); ++fi) {
          const double fd = (-side[0][fi] + 9 * side[1][fi] - 45 * side[2][fi] + 45 * side[3][fi] - 9 * side[4][fi] +
                             side[5][fi]) /
                            (60 * h);
          const double err = std::abs(fd - dv[fi * 3 + i]) / std::max(1.0, std::abs(fd));
          ++rep.comparisons;
          if (err > rep.max_discrepancy) {
            rep.max_discrepancy = err;
            rep.worst = P.name + " d" + ch.names[i] + " " + fields[fi].first;
          }
        }
      }
    }
  }
  rep.pass = rep.max_discrepancy < 1e-5;
  return rep;
}

FdReport fd_crosscheck(const AssembledFlow& f, int n, std::uint64_t seed, const DiffRule& rule) {
  return fd_crosscheck(all_patches(f), n, seed, rule);
}

}  // namespace arnold
