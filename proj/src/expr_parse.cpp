#include <cctype>
#include <cstdlib>

#include "arnold/errors.hpp"
#include "arnold/expr.hpp"

namespace arnold::expr {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const std::vector<std::string>& names) : s_(s), names_(names) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(1, static_cast<int>(pos_) + 1, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (eat('+'))
        e = e + term();
      else if (eat('-'))
        e = e - term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (eat('*'))
        e = e * unary();
      else if (eat('/'))
        e = e / unary();
      else
        return e;
    }
  }

  Expr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    int k = std::atoi(std::string(s_.substr(start, pos_ - start)).c_str());
    if (neg) k = -k;
    if (k < -2) fail("exponent below -2");
    return pow(base, k);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.data() + pos_;
      char* end = nullptr;
      const std::string tmp(s_.substr(pos_));
      const double v = std::strtod(tmp.c_str(), &end);
      const std::size_t used = static_cast<std::size_t>(end - tmp.c_str());
      (void)begin;
      if (used == 0) fail("bad number");
      pos_ += used;
      return Expr(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == id) return Expr::coord(static_cast<int>(i));
      if (id == "pi") return Expr(3.14159265358979323846);
      if (id == "sin" || id == "cos" || id == "bump") {
        if (!eat('(')) fail("expected '(' after " + id);
        Expr a = expr();
        if (!eat(')')) fail("expected ')'");
        if (id == "sin") return sin(a);
        if (id == "cos") return cos(a);
        return bump(a);
      }
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

Expr parse_expr(std::string_view text, const std::vector<std::string>& names) {
  if (names.size() > 3) throw PreconditionError("at most 3 coordinate names");
  Parser p(text, names);
  return p.parse();
}

}  // namespace arnold::expr
