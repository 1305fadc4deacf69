#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "arnold/expr.hpp"

namespace arnold {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Linear involution applied when crossing the seam of a periodic coordinate:
// q_j = signs[j] * p_j for j != seam, q_seam = p_seam - period.
struct Deck {
  std::array<double, 3> signs{1.0, 1.0, 1.0};
  int seam = 2;
  double det() const { return signs[0] * signs[1] * signs[2]; }
};

// Sample region {lo <= g <= hi} inside the coordinate box.
struct Band {
  expr::Expr g;
  double lo = 0.0;
  double hi = 0.0;
};

struct Chart {
  std::string name;
  std::array<std::string, 3> names;
  std::array<Interval, 3> domain;
  std::array<bool, 3> periodic{false, false, false};
  std::optional<Deck> deck;
  std::optional<Band> band;

  bool in_box(const Point& p, double slack = 1e-12) const;
  bool contains(const Point& p, double slack = 1e-12) const;  // box and band
  Point apply_deck(const Point& p) const;                     // requires deck
  Point wrap(const Point& p) const;                           // periodic coordinates into domain
};

using ChartPtr = std::shared_ptr<const Chart>;

// Validates: positive periodic lengths, deck is an involution preserving the domain.
ChartPtr make_chart(Chart c);

// Evaluate with a domain check; throws DomainError outside the chart box.
double eval(const expr::Expr& e, const Chart& chart, const Point& p);

}  // namespace arnold
