#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace arnold {

using Point = std::array<double, 3>;

namespace expr {

enum class Op : std::uint8_t {
  Const,
  Coord,
  Add,
  Mul,
  Neg,
  Pow,
  Sin,
  Cos,
  Bump,       // k-th derivative of the smooth step, k = index()
  Piecewise,  // branches over breakpoints of one coordinate
  Integral,   // tabulated antiderivative in one coordinate
};

class Expr;
struct IntegralTable;

struct Node {
  Op op;
  double value = 0.0;  // Const
  int index = 0;       // Coord index, Pow exponent, Bump order, Piecewise/Integral coordinate
  std::vector<Expr> args;
  std::vector<double> breaks;  // Piecewise breakpoints
  std::shared_ptr<const IntegralTable> table;
  std::size_t hash = 0;
  unsigned coords = 0;  // bit mask of coordinates the node depends on
  std::size_t size = 1;
};

// Immutable value handle around a shared AST node.
class Expr {
 public:
  Expr();
  Expr(double c);  // NOLINT: implicit constant
  Expr(int c) : Expr(static_cast<double>(c)) {}  // NOLINT

  static Expr coord(int i);
  static Expr make(Node n);

  Op op() const { return n_->op; }
  double value() const { return n_->value; }
  int index() const { return n_->index; }
  const std::vector<Expr>& args() const { return n_->args; }
  const std::vector<double>& breaks() const { return n_->breaks; }
  const IntegralTable* table() const { return n_->table.get(); }
  std::size_t hash() const { return n_->hash; }
  unsigned coords() const { return n_->coords; }
  std::size_t size() const { return n_->size; }
  const Node* get() const { return n_.get(); }

  bool is_const() const { return n_->op == Op::Const; }
  bool is_const(double c) const { return is_const() && n_->value == c; }
  bool depends_on(int i) const { return (n_->coords >> i) & 1u; }

 private:
  std::shared_ptr<const Node> n_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

Expr sum(const std::vector<Expr>& terms);
Expr product(const std::vector<Expr>& factors);
Expr pow(const Expr& a, int k);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr bump(const Expr& a, int order = 0);

// Branches over [breaks[i], breaks[i+1]] of coordinate `coord`. Values and first
// derivatives are checked for agreement at interior breakpoints (tol 1e-9).
Expr piecewise(int coord, std::vector<double> breaks, std::vector<Expr> branches);
// Same, without the junction check. Used by diff.
Expr piecewise_unchecked(int coord, std::vector<double> breaks, std::vector<Expr> branches);

// F(x) = base + integral_{lo}^{x} integrand, x in [lo, hi]; integrand may depend on `coord` only.
// `knots` are extra cell edges (breakpoints of the integrand).
Expr antiderivative(const Expr& integrand, int coord, double lo, double hi, double base,
                    const std::vector<double>& knots = {});

struct IntegralTable {
  Expr integrand;
  int coord = 0;
  double base = 0.0;
  std::vector<double> edges;       // cell edges, edges.front() = lo, edges.back() = hi
  std::vector<double> cumulative;  // integral from lo up to each edge
  double value(double x) const;
};

// Smooth step H(s) = e^{-1/s} / (e^{-1/s} + e^{-1/(1-s)}), 0 below 0, 1 above 1; k-th derivative.
double bump_derivative(int k, double s);
constexpr int kMaxBumpOrder = 12;

double eval(const Expr& e, const Point& p);
// Index of the branch selected for coordinate value x; throws StructuralError on a gap.
std::size_t piecewise_branch(const std::vector<double>& breaks, double x);
Expr diff(const Expr& e, int i);
Expr simplify(const Expr& e);
bool equal(const Expr& a, const Expr& b);  // structural

std::string to_string(const Expr& e, const std::array<std::string, 3>& names = {"c0", "c1", "c2"});

// Infix syntax: + - * / ^k (integer k, may be negative), sin(), cos(), bump(), numbers,
// and the given coordinate names. Throws ParseError with column (line 1).
Expr parse_expr(std::string_view text, const std::vector<std::string>& names);

// Flattened program evaluating many expressions at once with shared subexpressions.
// Piecewise branches are guarded so only the active branch is evaluated.
class Tape {
 public:
  Tape() = default;
  explicit Tape(const std::vector<Expr>& outputs);

  std::size_t outputs() const { return out_.size(); }
  std::size_t instructions() const { return code_.size(); }
  // scratch is resized as needed; out must hold outputs() values.
  void eval(const Point& p, std::vector<double>& scratch, double* out) const;
  std::vector<double> eval(const Point& p) const;

 private:
  enum class Code : std::uint8_t { Const, Coord, Add, Mul, Neg, Pow, Sin, Cos, Bump, Integral, Select, Guard, Join };
  struct Ins {
    Code op;
    int a = -1;
    int b = -1;
    int k = 0;
    double c = 0.0;
  };
  struct PieceInfo {
    std::vector<double> breaks;
    std::vector<int> slots;
  };
  std::vector<Ins> code_;
  std::vector<PieceInfo> pieces_;
  std::vector<std::shared_ptr<const IntegralTable>> tables_;
  std::vector<int> out_;
  friend class TapeBuilder;
};

}  // namespace expr
}  // namespace arnold
