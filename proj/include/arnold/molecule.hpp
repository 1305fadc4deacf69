#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arnold/chart.hpp"
#include "arnold/expr.hpp"

namespace arnold {

enum class Kind { I, II, III, IV, V, G };
enum class Polarity { None, Min, Max };

const char* kind_name(Kind k);
const char* polarity_name(Polarity p);

struct GenericSpec {
  std::string text;  // source text of f, in the variables x and y
  expr::Expr f;      // f(c0, c1)
  Interval x;
  Interval y;
  bool twisted = false;
  int valence = 0;
};

struct Atom {
  std::string id;
  Kind kind = Kind::I;
  Polarity polarity = Polarity::None;
  std::optional<GenericSpec> generic;

  int valence() const;
};

// mu1 -> p mu + q lambda, lambda1 -> m mu + n lambda.
struct GluingMatrix {
  long p = 1, q = 0, m = 0, n = 1;

  long det() const { return p * n - q * m; }
  // sign fixed so that det = +1 (the (m, n) row is negated when det = -1)
  GluingMatrix normalized() const;
  bool operator==(const GluingMatrix&) const = default;
};

struct Edge {
  int source = 0;
  int source_slot = 0;
  int target = 0;
  int target_slot = 0;
  GluingMatrix g;
};

struct Molecule {
  std::string name;
  std::vector<Atom> atoms;
  std::vector<Edge> edges;

  int atom_index(const std::string& id) const;  // -1 if absent
};

Molecule parse_molecule(std::string_view text);
std::string serialize(const Molecule& m);

enum class ViolationKind { Empty, Valence, Slot, Unimodular, Acyclic, Polarity, Direction, Symmetry };
const char* violation_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string where;  // atom id or edge description
  std::string message;
};

std::vector<Violation> validate(const Molecule& m);

// Direction of each slot of an atom: +1 outgoing, -1 incoming, 0 unused.
std::vector<int> slot_directions(const Molecule& m, int atom);

bool isomorphic(const Molecule& a, const Molecule& b);

struct SeifertData {
  int genus = 0;      // negative genus means |genus| cross-caps
  int crosscaps = 0;  // additional cross-caps
  std::vector<std::pair<long, long>> pairs;

  SeifertData normalized() const;  // genus >= 0, cross-caps collected
};

// (m, n) with alpha n - beta m = 1 and m the smallest nonnegative solution.
std::pair<long, long> framing_complement(long alpha, long beta);

Molecule seifert_to_molecule(const SeifertData& s);

}  // namespace arnold
