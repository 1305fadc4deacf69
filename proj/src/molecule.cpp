#include "arnold/molecule.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "arnold/errors.hpp"

namespace arnold {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::I:
      return "I";
    case Kind::II:
      return "II";
    case Kind::III:
      return "III";
    case Kind::IV:
      return "IV";
    case Kind::V:
      return "V";
    case Kind::G:
      return "G";
  }
  return "?";
}

const char* polarity_name(Polarity p) {
  switch (p) {
    case Polarity::Min:
      return "min";
    case Polarity::Max:
      return "max";
    default:
      return "saddle";
  }
}

const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Empty:
      return "empty";
    case ViolationKind::Valence:
      return "valence";
    case ViolationKind::Slot:
      return "slot";
    case ViolationKind::Unimodular:
      return "unimodular";
    case ViolationKind::Acyclic:
      return "acyclic";
    case ViolationKind::Polarity:
      return "polarity";
    case ViolationKind::Direction:
      return "direction";
    case ViolationKind::Symmetry:
      return "symmetry";
  }
  return "?";
}

int Atom::valence() const {
  switch (kind) {
    case Kind::I:
    case Kind::V:
      return 1;
    case Kind::II:
    case Kind::IV:
      return 2;
    case Kind::III:
      return 3;
    case Kind::G:
      return generic ? generic->valence : 0;
  }
  return 0;
}

GluingMatrix GluingMatrix::normalized() const {
  if (det() == -1) return GluingMatrix{p, q, -m, -n};
  return *this;
}

int Molecule::atom_index(const std::string& id) const {
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i].id == id) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------- parser

namespace {

struct Piece {
  std::string text;
  int column;  // 1-based column of text[0] in its line
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Split on `sep` outside quotes, parentheses and brackets. Whitespace separators when sep == ' '.
std::vector<Piece> split(const std::string& s, int base_col, char sep) {
  std::vector<Piece> out;
  int depth = 0;
  bool quote = false;
  std::string cur;
  int start = -1;
  auto flush = [&] {
    if (start >= 0) {
      std::string t = sep == ' ' ? cur : trim(cur);
      if (!t.empty()) {
        int lead = 0;
        while (lead < static_cast<int>(cur.size()) && std::isspace(static_cast<unsigned char>(cur[lead]))) ++lead;
        out.push_back({t, base_col + start + (sep == ' ' ? 0 : lead)});
      }
    }
    cur.clear();
    start = -1;
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool is_sep = !quote && depth == 0 && (sep == ' ' ? std::isspace(static_cast<unsigned char>(c)) : c == sep);
    if (is_sep) {
      flush();
      continue;
    }
    if (c == '"') quote = !quote;
    if (!quote && (c == '(' || c == '[')) ++depth;
    if (!quote && (c == ')' || c == ']')) --depth;
    if (start < 0) start = static_cast<int>(i);
    cur += c;
  }
  flush();
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

class Cursor {
 public:
  Cursor(const std::string& s, int line, int col) : s_(s), line_(line), col_(col) {}
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_ + static_cast<int>(i_), msg); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  void expect(const std::string& tok) {
    skip();
    if (s_.compare(i_, tok.size(), tok) != 0) fail("expected '" + tok + "'");
    i_ += tok.size();
  }
  std::string ident() {
    skip();
    const std::size_t a = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (a == i_) fail("expected identifier");
    return s_.substr(a, i_ - a);
  }
  long integer() {
    skip();
    const std::size_t a = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    const std::size_t d = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (d == i_) {
      i_ = a;
      fail("expected integer");
    }
    return std::strtol(s_.substr(a, i_ - a).c_str(), nullptr, 10);
  }
  void end() {
    skip();
    if (i_ != s_.size()) fail("unexpected trailing text");
  }
  int column() const { return col_ + static_cast<int>(i_); }

 private:
  const std::string& s_;
  int line_;
  int col_;
  std::size_t i_ = 0;
};

double number(const std::string& s, int line, int col) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw ParseError(line, col, "bad number '" + s + "'");
  return v;
}

// [a,b]x[c,d]
std::pair<Interval, Interval> parse_domain(const std::string& s, int line, int col) {
  const auto x = s.find("]x[");
  if (s.size() < 7 || s.front() != '[' || s.back() != ']' || x == std::string::npos)
    throw ParseError(line, col, "domain must read [a,b]x[c,d]");
  auto interval = [&](const std::string& body, int c) {
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ParseError(line, c, "interval needs a comma");
    Interval iv{number(trim(body.substr(0, comma)), line, c), number(trim(body.substr(comma + 1)), line, c)};
    if (!(iv.hi > iv.lo)) throw ParseError(line, c, "empty interval");
    return iv;
  };
  return {interval(s.substr(1, x - 1), col + 1), interval(s.substr(x + 3, s.size() - x - 4), col + static_cast<int>(x) + 3)};
}

Atom parse_atom(const std::vector<Piece>& tok, int line) {
  if (tok.size() < 3) throw ParseError(line, tok[0].column, "atom needs an id and a kind");
  Atom a;
  a.id = tok[1].text;
  if (!is_identifier(a.id)) throw ParseError(line, tok[1].column, "bad atom id '" + a.id + "'");
  static const std::map<std::string, Kind> kinds = {{"I", Kind::I},   {"II", Kind::II}, {"III", Kind::III},
                                                    {"IV", Kind::IV}, {"V", Kind::V},   {"G", Kind::G}};
  auto k = kinds.find(tok[2].text);
  if (k == kinds.end()) throw ParseError(line, tok[2].column, "unknown atom kind '" + tok[2].text + "'");
  a.kind = k->second;
  GenericSpec g;
  bool has_f = false, has_domain = false, has_valence = false;
  for (std::size_t i = 3; i < tok.size(); ++i) {
    const std::string& t = tok[i].text;
    const int col = tok[i].column;
    if (t == "min" || t == "max") {
      if (a.polarity != Polarity::None) throw ParseError(line, col, "polarity given twice");
      a.polarity = t == "min" ? Polarity::Min : Polarity::Max;
    } else if (t.rfind("f=", 0) == 0) {
      if (t.size() < 4 || t[2] != '"' || t.back() != '"') throw ParseError(line, col, "f must be quoted");
      g.text = t.substr(3, t.size() - 4);
      try {
        g.f = expr::parse_expr(g.text, {"x", "y"});
      } catch (const ParseError& e) {
        throw ParseError(line, col + 2 + e.column(), std::string("in f: ") + e.what());
      }
      has_f = true;
    } else if (t.rfind("domain=", 0) == 0) {
      std::tie(g.x, g.y) = parse_domain(t.substr(7), line, col + 7);
      has_domain = true;
    } else if (t == "twisted") {
      g.twisted = true;
    } else if (t.rfind("valence=", 0) == 0) {
      char* end = nullptr;
      const long v = std::strtol(t.c_str() + 8, &end, 10);
      if (end == t.c_str() + 8 || *end != '\0' || v < 1) throw ParseError(line, col, "bad valence");
      g.valence = static_cast<int>(v);
      has_valence = true;
    } else {
      throw ParseError(line, col, "unexpected atom attribute '" + t + "'");
    }
  }
  if (a.kind == Kind::G) {
    if (!has_f || !has_domain || !has_valence)
      throw ParseError(line, tok[0].column, "generic atom needs f, domain and valence");
    a.generic = g;
  } else if (has_f || has_domain || has_valence || g.twisted) {
    throw ParseError(line, tok[0].column, "f/domain/twisted/valence only apply to kind G");
  }
  return a;
}

}  // namespace

Molecule parse_molecule(std::string_view text) {
  Molecule m;
  std::set<std::pair<int, int>> used;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    // strip comment outside quotes
    bool quote = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') quote = !quote;
      if (raw[i] == '#' && !quote) {
        raw.resize(i);
        break;
      }
    }
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    for (const Piece& st : split(raw, 1, ';')) {
      auto tok = split(st.text, st.column, ' ');
      if (tok.empty()) continue;
      const std::string& kw = tok[0].text;
      if (kw == "molecule") {
        std::string name = trim(st.text.substr(8));
        if (name.size() >= 2 && name.front() == '"' && name.back() == '"') name = name.substr(1, name.size() - 2);
        m.name = name;
      } else if (kw == "atom") {
        Atom a = parse_atom(tok, line);
        if (m.atom_index(a.id) >= 0) throw ParseError(line, tok[1].column, "duplicate atom id '" + a.id + "'");
        m.atoms.push_back(std::move(a));
      } else if (kw == "edge") {
        Cursor c(st.text, line, st.column);
        c.expect("edge");
        Edge e;
        const int src_col = c.column() + 1;
        const std::string s = c.ident();
        c.expect(".");
        e.source_slot = static_cast<int>(c.integer());
        c.expect("->");
        const int dst_col = c.column() + 1;
        const std::string d = c.ident();
        c.expect(".");
        e.target_slot = static_cast<int>(c.integer());
        c.expect("(");
        const int mat_col = c.column();
        e.g.p = c.integer();
        e.g.q = c.integer();
        c.expect(";");
        e.g.m = c.integer();
        e.g.n = c.integer();
        c.expect(")");
        c.end();
        e.source = m.atom_index(s);
        e.target = m.atom_index(d);
        if (e.source < 0) throw ParseError(line, src_col, "unknown atom '" + s + "'");
        if (e.target < 0) throw ParseError(line, dst_col, "unknown atom '" + d + "'");
        if (e.source_slot < 0 || e.target_slot < 0) throw ParseError(line, src_col, "negative slot");
        if (std::abs(e.g.det()) != 1)
          throw ParseError(line, mat_col, "gluing matrix is not unimodular (det " + std::to_string(e.g.det()) + ")");
        if (!used.insert({e.source, e.source_slot}).second)
          throw ParseError(line, src_col, "duplicate slot " + s + "." + std::to_string(e.source_slot));
        if (!used.insert({e.target, e.target_slot}).second)
          throw ParseError(line, dst_col, "duplicate slot " + d + "." + std::to_string(e.target_slot));
        m.edges.push_back(e);
      } else {
        throw ParseError(line, tok[0].column, "unknown statement '" + kw + "'");
      }
    }
  }
  return m;
}

namespace {
std::string shortest(double v) {
  for (int prec = 1; prec <= 17; ++prec) {
    char s[40];
    std::snprintf(s, sizeof s, "%.*g", prec, v);
    if (std::strtod(s, nullptr) == v) return s;
  }
  return std::to_string(v);
}
}  // namespace

std::string serialize(const Molecule& m) {
  std::ostringstream o;
  o << "molecule " << (m.name.empty() ? "unnamed" : m.name) << "\n";
  for (const auto& a : m.atoms) {
    o << "atom " << a.id << " " << kind_name(a.kind);
    if (a.polarity != Polarity::None) o << " " << polarity_name(a.polarity);
    if (a.generic) {
      const auto& g = *a.generic;
      o << " f=\"" << g.text << "\" domain=[" << shortest(g.x.lo) << "," << shortest(g.x.hi) << "]x["
        << shortest(g.y.lo) << "," << shortest(g.y.hi) << "]";
      if (g.twisted) o << " twisted";
      o << " valence=" << g.valence;
    }
    o << "\n";
  }
  for (const auto& e : m.edges) {
    o << "edge " << m.atoms[e.source].id << "." << e.source_slot << " -> " << m.atoms[e.target].id << "."
      << e.target_slot << " (" << e.g.p << " " << e.g.q << " ; " << e.g.m << " " << e.g.n << ")\n";
  }
  return o.str();
}

// ---------------------------------------------------------------- validation

std::vector<int> slot_directions(const Molecule& m, int atom) {
  std::vector<int> dir(std::max(0, m.atoms[atom].valence()), 0);
  auto put = [&](int slot, int d) {
    if (slot >= 0 && slot < static_cast<int>(dir.size())) dir[slot] = d;
  };
  for (const auto& e : m.edges) {
    if (e.source == atom) put(e.source_slot, +1);
    if (e.target == atom) put(e.target_slot, -1);
  }
  return dir;
}

std::vector<Violation> validate(const Molecule& m) {
  std::vector<Violation> v;
  auto add = [&](ViolationKind k, const std::string& where, const std::string& msg) { v.push_back({k, where, msg}); };
  if (m.atoms.empty()) add(ViolationKind::Empty, m.name, "molecule has no atoms");
  const int na = static_cast<int>(m.atoms.size());

  std::vector<std::map<int, int>> uses(na);  // slot -> count
  std::vector<int> degree(na, 0);
  for (std::size_t i = 0; i < m.edges.size(); ++i) {
    const Edge& e = m.edges[i];
    const std::string where = "edge " + std::to_string(i);
    if (e.source < 0 || e.source >= na || e.target < 0 || e.target >= na) {
      add(ViolationKind::Slot, where, "edge references a missing atom");
      continue;
    }
    if (std::abs(e.g.det()) != 1) add(ViolationKind::Unimodular, where, "gluing matrix determinant " + std::to_string(e.g.det()));
    uses[e.source][e.source_slot]++;
    uses[e.target][e.target_slot]++;
    degree[e.source]++;
    degree[e.target]++;
  }
  for (int a = 0; a < na; ++a) {
    const Atom& at = m.atoms[a];
    const int val = at.valence();
    if (degree[a] != val)
      add(ViolationKind::Valence, at.id,
          std::string(kind_name(at.kind)) + " atom has " + std::to_string(degree[a]) + " edges, valence is " +
              std::to_string(val));
    for (const auto& [slot, count] : uses[a]) {
      if (slot < 0 || slot >= val)
        add(ViolationKind::Slot, at.id, "slot " + std::to_string(slot) + " out of range");
      else if (count > 1)
        add(ViolationKind::Slot, at.id, "slot " + std::to_string(slot) + " used " + std::to_string(count) + " times");
    }
    for (int s = 0; s < val; ++s)
      if (!uses[a].count(s)) add(ViolationKind::Slot, at.id, "slot " + std::to_string(s) + " unused");

    const bool extremal_kind = at.kind == Kind::I || at.kind == Kind::II || at.kind == Kind::V;
    if (extremal_kind && at.polarity == Polarity::None) add(ViolationKind::Polarity, at.id, "polarity required");
    if ((at.kind == Kind::III || at.kind == Kind::IV) && at.polarity != Polarity::None)
      add(ViolationKind::Polarity, at.id, "saddle atoms carry no polarity");

    const auto dir = slot_directions(m, a);
    const bool complete = std::none_of(dir.begin(), dir.end(), [](int d) { return d == 0; });
    if (!complete || dir.empty()) continue;
    if (at.polarity != Polarity::None) {
      const int want = at.polarity == Polarity::Min ? +1 : -1;
      for (int s = 0; s < val; ++s)
        if (dir[s] != want)
          add(ViolationKind::Polarity, at.id,
              std::string(polarity_name(at.polarity)) + " atom has an " + (dir[s] > 0 ? "outgoing" : "incoming") +
                  " edge at slot " + std::to_string(s) + (at.polarity == Polarity::Min ? " (min must be a source)" : " (max must be a sink)"));
    } else if (at.kind == Kind::III) {
      if (dir[0] == dir[1] || dir[1] != dir[2])
        add(ViolationKind::Direction, at.id, "III needs slot 0 opposite to slots 1 and 2");
    } else if (at.kind == Kind::IV) {
      if (dir[0] == dir[1]) add(ViolationKind::Direction, at.id, "IV needs opposite directions at its two slots");
    } else if (at.kind == Kind::G) {
      const bool in = std::count(dir.begin(), dir.end(), -1) > 0, out = std::count(dir.begin(), dir.end(), 1) > 0;
      if (!in || !out) add(ViolationKind::Direction, at.id, "saddle generic atom needs edges on both sides");
    }
  }
  for (const auto& at : m.atoms) {
    if (!at.generic || !at.generic->twisted) continue;
    const auto& g = *at.generic;
    if (std::abs(g.x.lo + g.x.hi) > 1e-12 || std::abs(g.y.lo + g.y.hi) > 1e-12) {
      add(ViolationKind::Symmetry, at.id, "twisted domain must be symmetric under rotation by pi");
      continue;
    }
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double x = g.x.lo + g.x.length() * i / 20, y = g.y.lo + g.y.length() * j / 20;
        worst = std::max(worst, std::abs(expr::eval(g.f, {x, y, 0}) - expr::eval(g.f, {-x, -y, 0})));
      }
    if (worst > 1e-9) add(ViolationKind::Symmetry, at.id, "f is not invariant under rotation by pi");
  }

  // acyclicity (Kahn)
  std::vector<int> indeg(na, 0);
  std::vector<std::vector<int>> out(na);
  for (const auto& e : m.edges) {
    if (e.source < 0 || e.source >= na || e.target < 0 || e.target >= na) continue;
    out[e.source].push_back(e.target);
    indeg[e.target]++;
  }
  std::vector<int> queue;
  for (int a = 0; a < na; ++a)
    if (indeg[a] == 0) queue.push_back(a);
  std::size_t head = 0;
  while (head < queue.size()) {
    const int a = queue[head++];
    for (int b : out[a])
      if (--indeg[b] == 0) queue.push_back(b);
  }
  for (int a = 0; a < na; ++a)
    if (indeg[a] > 0) add(ViolationKind::Acyclic, m.atoms[a].id, "atom lies on a directed cycle");
  return v;
}

// ---------------------------------------------------------------- isomorphism

namespace {

int slot_class(const Atom& a, int slot) {
  switch (a.kind) {
    case Kind::III:
      return slot == 0 ? 0 : 1;
    case Kind::II:
    case Kind::I:
    case Kind::V:
      return 0;
    default:
      return slot;
  }
}

using Label = std::tuple<int, int, long, long, long, long>;

std::map<std::pair<int, int>, std::vector<Label>> edge_labels(const Molecule& m) {
  std::map<std::pair<int, int>, std::vector<Label>> r;
  for (const auto& e : m.edges) {
    const GluingMatrix g = e.g.normalized();
    r[{e.source, e.target}].push_back(
        {slot_class(m.atoms[e.source], e.source_slot), slot_class(m.atoms[e.target], e.target_slot), g.p, g.q, g.m, g.n});
  }
  for (auto& [k, v] : r) std::sort(v.begin(), v.end());
  return r;
}

}  // namespace

bool isomorphic(const Molecule& a, const Molecule& b) {
  const int n = static_cast<int>(a.atoms.size());
  if (n != static_cast<int>(b.atoms.size()) || a.edges.size() != b.edges.size()) return false;
  auto la = edge_labels(a), lb = edge_labels(b);
  auto signature = [](const Molecule& m, int i) {
    int in = 0, out = 0;
    for (const auto& e : m.edges) {
      if (e.source == i) ++out;
      if (e.target == i) ++in;
    }
    return std::tuple<Kind, Polarity, int, int, int>{m.atoms[i].kind, m.atoms[i].polarity, m.atoms[i].valence(), in, out};
  };
  auto labels = [](const std::map<std::pair<int, int>, std::vector<Label>>& l, int u, int v) {
    auto it = l.find({u, v});
    return it == l.end() ? std::vector<Label>{} : it->second;
  };
  std::vector<int> map(n, -1);
  std::vector<bool> taken(n, false);
  std::function<bool(int)> assign = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (taken[j] || signature(a, i) != signature(b, j)) continue;
      map[i] = j;
      bool ok = true;
      for (int k = 0; k <= i && ok; ++k) {
        ok = labels(la, i, k) == labels(lb, j, map[k]) && labels(la, k, i) == labels(lb, map[k], j);
      }
      if (ok) {
        taken[j] = true;
        if (assign(i + 1)) return true;
        taken[j] = false;
      }
      map[i] = -1;
    }
    return false;
  };
  return assign(0);
}

// ---------------------------------------------------------------- Seifert front end

SeifertData SeifertData::normalized() const {
  SeifertData s = *this;
  if (s.genus < 0) {
    s.crosscaps += -s.genus;
    s.genus = 0;
  }
  return s;
}

std::pair<long, long> framing_complement(long alpha, long beta) {
  // alpha n - beta m = 1, smallest m >= 0
  for (long m = 0; m < std::max(alpha, 1L) + 1; ++m) {
    const long num = 1 + beta * m;
    if (num % alpha == 0) return {m, num / alpha};
  }
  throw PreconditionError("no framing complement: gcd(alpha, beta) != 1");
}

Molecule seifert_to_molecule(const SeifertData& s0) {
  const SeifertData s = s0.normalized();
  if (s.crosscaps < 0) throw PreconditionError("negative cross-cap count");
  for (const auto& [a, b] : s.pairs) {
    if (!(0 < b && b < a)) throw PreconditionError("exceptional fiber needs 0 < beta < alpha");
    if (std::gcd(a, b) != 1) throw PreconditionError("exceptional fiber needs gcd(alpha, beta) = 1");
  }
  Molecule m;
  m.name = "seifert_g" + std::to_string(s0.genus);
  auto atom = [&](const std::string& id, Kind k, Polarity p) {
    m.atoms.push_back(Atom{id, k, p, std::nullopt});
    return static_cast<int>(m.atoms.size()) - 1;
  };
  // open outgoing slot (atom, slot) waiting for the next level
  std::vector<std::pair<int, int>> leaves;
  std::vector<GluingMatrix> leaf_matrix;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const int a = atom("e" + std::to_string(i + 1), Kind::I, Polarity::Min);
    const auto [mm, nn] = framing_complement(s.pairs[i].first, s.pairs[i].second);
    leaves.push_back({a, 0});
    leaf_matrix.push_back(GluingMatrix{s.pairs[i].first, s.pairs[i].second, mm, nn});
  }
  for (int i = 0; i < s.crosscaps; ++i) {
    leaves.push_back({atom("k" + std::to_string(i + 1), Kind::V, Polarity::Min), 0});
    leaf_matrix.push_back(GluingMatrix{});
  }
  if (leaves.empty()) {
    leaves.push_back({atom("bottom", Kind::I, Polarity::Min), 0});
    leaf_matrix.push_back(GluingMatrix{});
  }
  auto edge = [&](std::pair<int, int> from, int to, int to_slot, GluingMatrix g) {
    m.edges.push_back(Edge{from.first, from.second, to, to_slot, g});
  };
  std::pair<int, int> cur = leaves[0];
  GluingMatrix cur_g = leaf_matrix[0];
  for (std::size_t i = 1; i < leaves.size(); ++i) {
    const int j = atom("join" + std::to_string(i), Kind::III, Polarity::None);
    edge(cur, j, 1, cur_g);
    edge(leaves[i], j, 2, leaf_matrix[i]);
    cur = {j, 0};
    cur_g = GluingMatrix{};
  }
  for (int h = 0; h < s.genus; ++h) {
    const int split = atom("split" + std::to_string(h + 1), Kind::III, Polarity::None);
    const int merge = atom("merge" + std::to_string(h + 1), Kind::III, Polarity::None);
    edge(cur, split, 0, cur_g);
    edge({split, 1}, merge, 1, GluingMatrix{});
    edge({split, 2}, merge, 2, GluingMatrix{});
    cur = {merge, 0};
    cur_g = GluingMatrix{};
  }
  const int top = atom("top", Kind::I, Polarity::Max);
  edge(cur, top, 0, cur_g);
  return m;
}

}  // namespace arnold
