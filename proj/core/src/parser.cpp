#include <cctype>
#include <charconv>
#include <string>
#include <system_error>

#include "kdv5/errors.hpp"
#include "kdv5/expr.hpp"

namespace kdv5 {

namespace {

// Recursive descent over
//   expr    := term (("+"|"-") term)*
//   term    := unary (("*"|"/") unary)*
//   unary   := "-" unary | power
//   power   := primary ("^" unary)?      // right-associative
//   primary := number | "t" | "x" | func "(" expr ")" | "(" expr ")"
// which realizes the precedence ^ > unary- > */ > +-. Rational literals
// "p/q" come out of the exact constant folding of div(p, q).
class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input", pos_);
    return e;
  }

 private:
  const std::string& src_;
  std::size_t pos_ = 0;

  [[noreturn]] static void fail(const std::string& msg, std::size_t at) {
    throw ParseError(msg, at);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (consume('+'))
        e = e + term();
      else if (consume('-'))
        e = e - term();
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (consume('*'))
        e = e * unary();
      else if (consume('/'))
        e = e / unary();
      else
        return e;
    }
  }

  Expr unary() {
    if (consume('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (consume('^')) return pow(std::move(base), unary());
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!consume(')')) fail("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number_literal();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected character '") + c + "'", pos_);
  }

  Expr number_literal() {
    std::size_t start = pos_;
    bool is_float = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      is_float = true;
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        is_float = true;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = mark;  // the 'e' starts an identifier, not an exponent
      }
    }
    if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
      fail("malformed number", start);
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    if (!is_float) {
      long long iv = 0;
      auto [p, ec] = std::from_chars(first, last, iv);
      if (ec == std::errc() && p == last) return number(Rational(iv));
      // fall through to double for out-of-range integer literals
    }
    double dv = 0.0;
    auto [p, ec] = std::from_chars(first, last, dv);
    if (ec != std::errc() || p != last) fail("malformed number", start);
    return number(dv);
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    if (name == "t") return var_t();
    if (name == "x") return var_x();
    UnaryOp op;
    if (name == "exp")
      op = UnaryOp::Exp;
    else if (name == "log")
      op = UnaryOp::Log;
    else if (name == "sin")
      op = UnaryOp::Sin;
    else if (name == "cos")
      op = UnaryOp::Cos;
    else if (name == "tan")
      op = UnaryOp::Tan;
    else if (name == "tanh")
      op = UnaryOp::Tanh;
    else if (name == "sech")
      op = UnaryOp::Sech;
    else if (name == "sqrt")
      op = UnaryOp::Sqrt;
    else
      fail("unknown identifier '" + name + "'", start);
    if (!consume('(')) fail("expected '(' after '" + name + "'", pos_);
    Expr arg = expr();
    if (peek_is(','))
      fail("arity mismatch: '" + name + "' takes exactly one argument", pos_);
    if (!consume(')')) fail("expected ')'", pos_);
    return make_unary(op, std::move(arg));
  }
};

}  // namespace

Expr parse(const std::string& source) { return Parser(source).run(); }

}  // namespace kdv5
