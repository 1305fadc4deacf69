#include "arnold/chart.hpp"

#include <cmath>

#include "arnold/errors.hpp"

namespace arnold {

bool Chart::in_box(const Point& p, double slack) const {
  for (int i = 0; i < 3; ++i) {
    const double s = slack * std::max(1.0, domain[i].length());
    if (p[i] < domain[i].lo - s || p[i] > domain[i].hi + s) return false;
  }
  return true;
}

bool Chart::contains(const Point& p, double slack) const {
  if (!in_box(p, slack)) return false;
  if (!band) return true;
  const double g = expr::eval(band->g, p);
  return g >= band->lo - slack && g <= band->hi + slack;
}

Point Chart::wrap(const Point& p) const {
  Point q = p;
  for (int i = 0; i < 3; ++i) {
    if (!periodic[i]) continue;
    const double L = domain[i].length();
    double x = std::fmod(q[i] - domain[i].lo, L);
    if (x < 0) x += L;
    q[i] = domain[i].lo + x;
  }
  return q;
}

Point Chart::apply_deck(const Point& p) const {
  if (!deck) throw PreconditionError("chart " + name + " has no deck map");
  Point q = p;
  for (int i = 0; i < 3; ++i) {
    if (i == deck->seam) {
      q[i] = p[i] - domain[i].length();
    } else {
      q[i] = deck->signs[i] * p[i];
      if (periodic[i]) {
        const double L = domain[i].length();
        double x = std::fmod(q[i] - domain[i].lo, L);
        if (x < 0) x += L;
        q[i] = domain[i].lo + x;
      }
    }
  }
  return q;
}

ChartPtr make_chart(Chart c) {
  for (int i = 0; i < 3; ++i) {
    if (!(c.domain[i].hi >= c.domain[i].lo)) throw PreconditionError("chart " + c.name + ": empty interval");
    if (c.periodic[i] && !(c.domain[i].length() > 0))
      throw PreconditionError("chart " + c.name + ": periodic coordinate with zero length");
  }
  if (c.deck) {
    const Deck& d = *c.deck;
    if (d.seam < 0 || d.seam > 2 || !c.periodic[d.seam])
      throw PreconditionError("chart " + c.name + ": deck seam must be a periodic coordinate");
    for (int i = 0; i < 3; ++i) {
      if (std::abs(std::abs(d.signs[i]) - 1.0) > 0) throw PreconditionError("chart " + c.name + ": deck is not an involution");
      if (i == d.seam || c.periodic[i] || d.signs[i] > 0) continue;
      // a sign flip must preserve a non-periodic interval
      if (std::abs(c.domain[i].lo + c.domain[i].hi) > 1e-12)
        throw PreconditionError("chart " + c.name + ": deck does not preserve the domain");
    }
    if (d.signs[d.seam] != 1.0) throw PreconditionError("chart " + c.name + ": deck must fix the seam direction");
  }
  return std::make_shared<const Chart>(std::move(c));
}

double eval(const expr::Expr& e, const Chart& chart, const Point& p) {
  if (!chart.in_box(p)) throw DomainError("point outside chart " + chart.name);
  return expr::eval(e, p);
}

}  // namespace arnold
