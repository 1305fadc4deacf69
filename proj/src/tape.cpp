#include <cmath>
#include <unordered_map>

#include "arnold/expr.hpp"

namespace arnold::expr {

namespace {
struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};
struct ExprEq {
  bool operator()(const Expr& a, const Expr& b) const { return equal(a, b); }
};
}  // namespace

class TapeBuilder {
 public:
  explicit TapeBuilder(Tape& t) : t_(t) { scopes_.emplace_back(); }

  int emit(const Expr& e) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(e);
      if (f != it->end()) return f->second;
    }
    const int slot = build(e);
    scopes_.back().emplace(e, slot);
    return slot;
  }

 private:
  using Code = Tape::Code;
  Tape& t_;
  std::vector<std::unordered_map<Expr, int, ExprHash, ExprEq>> scopes_;

  int push(Tape::Ins ins) {
    t_.code_.push_back(ins);
    return static_cast<int>(t_.code_.size()) - 1;
  }

  int chain(Code op, const std::vector<Expr>& args) {
    int acc = emit(args[0]);
    for (std::size_t i = 1; i < args.size(); ++i) {
      const int r = emit(args[i]);
      acc = push({op, acc, r, 0, 0.0});
    }
    return acc;
  }

  int build(const Expr& e) {
    switch (e.op()) {
      case Op::Const:
        return push({Code::Const, -1, -1, 0, e.value()});
      case Op::Coord:
        return push({Code::Coord, -1, -1, e.index(), 0.0});
      case Op::Add:
        return chain(Code::Add, e.args());
      case Op::Mul:
        return chain(Code::Mul, e.args());
      case Op::Neg:
        return push({Code::Neg, emit(e.args()[0]), -1, 0, 0.0});
      case Op::Pow:
        return push({Code::Pow, emit(e.args()[0]), -1, e.index(), 0.0});
      case Op::Sin:
        return push({Code::Sin, emit(e.args()[0]), -1, 0, 0.0});
      case Op::Cos:
        return push({Code::Cos, emit(e.args()[0]), -1, 0, 0.0});
      case Op::Bump:
        return push({Code::Bump, emit(e.args()[0]), -1, e.index(), 0.0});
      case Op::Integral: {
        const int c = emit(Expr::coord(e.index()));
        t_.tables_.push_back(e.get()->table);
        return push({Code::Integral, c, -1, static_cast<int>(t_.tables_.size()) - 1, 0.0});
      }
      case Op::Piecewise: {
        const int c = emit(Expr::coord(e.index()));
        const int piece = static_cast<int>(t_.pieces_.size());
        t_.pieces_.push_back({e.breaks(), {}});
        const int sel = push({Code::Select, c, -1, piece, 0.0});
        std::vector<int> slots;
        for (std::size_t i = 0; i < e.args().size(); ++i) {
          const int g = push({Code::Guard, sel, 0, static_cast<int>(i), 0.0});
          scopes_.emplace_back();
          slots.push_back(emit(e.args()[i]));
          scopes_.pop_back();
          t_.code_[g].b = static_cast<int>(t_.code_.size()) - g - 1;
        }
        t_.pieces_[piece].slots = slots;
        return push({Code::Join, sel, -1, piece, 0.0});
      }
    }
    return push({Code::Const, -1, -1, 0, 0.0});
  }
};

Tape::Tape(const std::vector<Expr>& outputs) {
  TapeBuilder b(*this);
  for (const auto& e : outputs) out_.push_back(b.emit(e));
}

void Tape::eval(const Point& p, std::vector<double>& r, double* out) const {
  if (r.size() < code_.size()) r.resize(code_.size());
  const std::size_t n = code_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Ins& in = code_[i];
    double v = 0.0;
    switch (in.op) {
      case Code::Const:
        v = in.c;
        break;
      case Code::Coord:
        v = p[in.k];
        break;
      case Code::Add:
        v = r[in.a] + r[in.b];
        break;
      case Code::Mul:
        v = r[in.a] * r[in.b];
        break;
      case Code::Neg:
        v = -r[in.a];
        break;
      case Code::Pow: {
        const double x = r[in.a];
        switch (in.k) {
          case 2:
            v = x * x;
            break;
          case 3:
            v = x * x * x;
            break;
          case -1:
            v = 1.0 / x;
            break;
          case -2:
            v = 1.0 / (x * x);
            break;
          default:
            v = std::pow(x, in.k);
        }
        break;
      }
      case Code::Sin:
        v = std::sin(r[in.a]);
        break;
      case Code::Cos:
        v = std::cos(r[in.a]);
        break;
      case Code::Bump:
        v = bump_derivative(in.k, r[in.a]);
        break;
      case Code::Integral:
        v = tables_[in.k]->value(r[in.a]);
        break;
      case Code::Select:
        v = static_cast<double>(piecewise_branch(pieces_[in.k].breaks, r[in.a]));
        break;
      case Code::Guard:
        if (static_cast<int>(r[in.a]) != in.k) i += in.b;
        continue;
      case Code::Join:
        v = r[pieces_[in.k].slots[static_cast<std::size_t>(r[in.a])]];
        break;
    }
    r[i] = v;
  }
  for (std::size_t j = 0; j < out_.size(); ++j) out[j] = r[out_[j]];
}

std::vector<double> Tape::eval(const Point& p) const {
  std::vector<double> scratch, out(out_.size());
  eval(p, scratch, out.data());
  return out;
}

}  // namespace arnold::expr
