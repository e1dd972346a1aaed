#include "kdv5/expr.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "kdv5/errors.hpp"

namespace kdv5 {

struct Expr::Node {
  Kind kind = Kind::Number;
  std::variant<Rational, double> value = Rational(0);  // Number payload
  Var var = Var::t;
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  std::vector<Expr> kids;
};

namespace {

const std::shared_ptr<const Expr::Node>& zero_node() {
  static const auto node = std::make_shared<const Expr::Node>();
  return node;
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

Expr::Expr() : node_(zero_node()) {}

Expr::Kind Expr::kind() const { return node_->kind; }

bool Expr::is_rational() const {
  return is_number() && std::holds_alternative<Rational>(node_->value);
}

const Rational& Expr::rational() const { return std::get<Rational>(node_->value); }

double Expr::number_value() const {
  if (auto* r = std::get_if<Rational>(&node_->value)) return r->to_double();
  return std::get<double>(node_->value);
}

bool Expr::is_zero() const { return is_number() && number_value() == 0.0; }

bool Expr::is_one() const { return is_number() && number_value() == 1.0; }

Var Expr::var() const { return node_->var; }

UnaryOp Expr::unary_op() const { return node_->uop; }

const Expr& Expr::operand() const { return node_->kids[0]; }

BinaryOp Expr::binary_op() const { return node_->bop; }

const Expr& Expr::lhs() const { return node_->kids[0]; }

const Expr& Expr::rhs() const { return node_->kids[1]; }

bool Expr::depends_on(Var v) const {
  switch (kind()) {
    case Kind::Number:
      return false;
    case Kind::Variable:
      return node_->var == v;
    default:
      for (const Expr& k : node_->kids)
        if (k.depends_on(v)) return true;
      return false;
  }
}

int Expr::node_count() const {
  int n = 1;
  for (const Expr& k : node_->kids) n += k.node_count();
  return n;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Number:
      if (a.is_rational() != b.is_rational()) return false;
      if (a.is_rational()) return a.rational() == b.rational();
      return a.number_value() == b.number_value();
    case Expr::Kind::Variable:
      return a.var() == b.var();
    case Expr::Kind::Unary:
      return a.unary_op() == b.unary_op() && a.operand() == b.operand();
    case Expr::Kind::Binary:
      return a.binary_op() == b.binary_op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

Expr number(const Rational& r) {
  auto node = std::make_shared<Expr::Node>();
  node->kind = Expr::Kind::Number;
  node->value = r;
  return Expr(std::shared_ptr<const Expr::Node>(std::move(node)));
}

Expr number(double v) {
  auto node = std::make_shared<Expr::Node>();
  node->kind = Expr::Kind::Number;
  node->value = v;
  return Expr(std::shared_ptr<const Expr::Node>(std::move(node)));
}

Expr variable(Var v) {
  auto node = std::make_shared<Expr::Node>();
  node->kind = Expr::Kind::Variable;
  node->var = v;
  return Expr(std::shared_ptr<const Expr::Node>(std::move(node)));
}

namespace {

double apply_unary_numeric(UnaryOp op, double v) {
  switch (op) {
    case UnaryOp::Neg:
      return -v;
    case UnaryOp::Exp:
      return std::exp(v);
    case UnaryOp::Log:
      return std::log(v);
    case UnaryOp::Sin:
      return std::sin(v);
    case UnaryOp::Cos:
      return std::cos(v);
    case UnaryOp::Tan:
      return std::tan(v);
    case UnaryOp::Tanh:
      return std::tanh(v);
    case UnaryOp::Sech:
      return 1.0 / std::cosh(v);
    case UnaryOp::Sqrt:
      return std::sqrt(v);
  }
  return std::nan("");
}

double apply_binary_numeric(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add:
      return a + b;
    case BinaryOp::Sub:
      return a - b;
    case BinaryOp::Mul:
      return a * b;
    case BinaryOp::Div:
      return a / b;
    case BinaryOp::Pow:
      return std::pow(a, b);
  }
  return std::nan("");
}

}  // namespace

Expr make_unary(UnaryOp op, Expr a) {
  if (op == UnaryOp::Neg) {
    if (a.is_rational()) {
      if (auto r = a.rational().negated()) return number(*r);
    }
    if (a.is_number()) return number(-a.number_value());
    if (a.kind() == Expr::Kind::Unary && a.unary_op() == UnaryOp::Neg) return a.operand();
  } else if (a.is_number()) {
    double v = apply_unary_numeric(op, a.number_value());
    if (finite(v)) return number(v);
  }
  auto node = std::make_shared<Expr::Node>();
  node->kind = Expr::Kind::Unary;
  node->uop = op;
  node->kids.push_back(std::move(a));
  return Expr(std::shared_ptr<const Expr::Node>(std::move(node)));
}

Expr make_binary(BinaryOp op, Expr a, Expr b) {
  // Exact fold for rational operands.
  if (a.is_rational() && b.is_rational()) {
    const Rational &ra = a.rational(), &rb = b.rational();
    std::optional<Rational> r;
    switch (op) {
      case BinaryOp::Add:
        r = Rational::add(ra, rb);
        break;
      case BinaryOp::Sub:
        r = Rational::sub(ra, rb);
        break;
      case BinaryOp::Mul:
        r = Rational::mul(ra, rb);
        break;
      case BinaryOp::Div:
        if (rb.is_zero()) break;  // leave the pole in the tree
        r = Rational::div(ra, rb);
        break;
      case BinaryOp::Pow:
        if (rb.is_integer()) r = Rational::pow(ra, rb.num());
        break;
    }
    if (r) return number(*r);
  }
  // Fold any remaining constant pair in doubles (when the result is finite).
  if (a.is_number() && b.is_number()) {
    if (!(op == BinaryOp::Div && b.number_value() == 0.0)) {
      double v = apply_binary_numeric(op, a.number_value(), b.number_value());
      if (finite(v)) return number(v);
    }
  }
  switch (op) {
    case BinaryOp::Add:
      if (a.is_zero()) return b;
      if (b.is_zero()) return a;
      break;
    case BinaryOp::Sub:
      if (b.is_zero()) return a;
      if (a.is_zero()) return make_unary(UnaryOp::Neg, std::move(b));
      break;
    case BinaryOp::Mul:
      if (a.is_zero() || b.is_zero()) return Expr();
      if (a.is_one()) return b;
      if (b.is_one()) return a;
      break;
    case BinaryOp::Div:
      if (b.is_one()) return a;
      break;
    case BinaryOp::Pow:
      if (b.is_one()) return a;
      if (b.is_zero()) return number(Rational(1));
      break;
  }
  auto node = std::make_shared<Expr::Node>();
  node->kind = Expr::Kind::Binary;
  node->bop = op;
  node->kids.push_back(std::move(a));
  node->kids.push_back(std::move(b));
  return Expr(std::shared_ptr<const Expr::Node>(std::move(node)));
}

double evaluate(const Expr& e, const Bindings& b) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return e.number_value();
    case Expr::Kind::Variable: {
      const std::optional<double>& v = e.var() == Var::t ? b.t : b.x;
      if (!v) throw EvalError("unbound variable", to_string(e));
      return *v;
    }
    case Expr::Kind::Unary: {
      double v = evaluate(e.operand(), b);
      switch (e.unary_op()) {
        case UnaryOp::Log:
          if (v <= 0.0) throw EvalError("log of nonpositive value", to_string(e));
          break;
        case UnaryOp::Sqrt:
          if (v < 0.0) throw EvalError("sqrt of negative value", to_string(e));
          break;
        default:
          break;
      }
      double r = apply_unary_numeric(e.unary_op(), v);
      if (!finite(r)) throw EvalError("non-finite result", to_string(e));
      return r;
    }
    case Expr::Kind::Binary: {
      double a = evaluate(e.lhs(), b);
      double v = evaluate(e.rhs(), b);
      if (e.binary_op() == BinaryOp::Div && v == 0.0)
        throw EvalError("division by zero", to_string(e));
      double r = apply_binary_numeric(e.binary_op(), a, v);
      if (!finite(r)) throw EvalError("non-finite result", to_string(e));
      return r;
    }
  }
  throw EvalError("corrupt expression", "?");
}

Expr differentiate(const Expr& e, Var v) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return Expr();
    case Expr::Kind::Variable:
      return e.var() == v ? number(Rational(1)) : Expr();
    case Expr::Kind::Unary: {
      const Expr& f = e.operand();
      Expr df = differentiate(f, v);
      switch (e.unary_op()) {
        case UnaryOp::Neg:
          return -df;
        case UnaryOp::Exp:
          return exp(f) * df;
        case UnaryOp::Log:
          return df / f;
        case UnaryOp::Sin:
          return cos(f) * df;
        case UnaryOp::Cos:
          return -(sin(f) * df);
        case UnaryOp::Tan:
          return (number(Rational(1)) + pow(tan(f), number(Rational(2)))) * df;
        case UnaryOp::Tanh:
          return pow(sech(f), number(Rational(2))) * df;
        case UnaryOp::Sech:
          return -(sech(f) * tanh(f) * df);
        case UnaryOp::Sqrt:
          return df / (number(Rational(2)) * sqrt(f));
      }
      return Expr();
    }
    case Expr::Kind::Binary: {
      const Expr &f = e.lhs(), &g = e.rhs();
      switch (e.binary_op()) {
        case BinaryOp::Add:
          return differentiate(f, v) + differentiate(g, v);
        case BinaryOp::Sub:
          return differentiate(f, v) - differentiate(g, v);
        case BinaryOp::Mul:
          return differentiate(f, v) * g + f * differentiate(g, v);
        case BinaryOp::Div:
          return (differentiate(f, v) * g - f * differentiate(g, v)) / pow(g, number(Rational(2)));
        case BinaryOp::Pow: {
          if (!g.depends_on(v)) {
            // power rule
            return g * pow(f, g - number(Rational(1))) * differentiate(f, v);
          }
          // general rule via exp(g*log f)
          return pow(f, g) *
                 (differentiate(g, v) * log(f) + g * differentiate(f, v) / f);
        }
      }
      return Expr();
    }
  }
  return Expr();
}

Expr substitute(const Expr& e, Var v, const Expr& replacement) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return e;
    case Expr::Kind::Variable:
      return e.var() == v ? replacement : e;
    case Expr::Kind::Unary:
      return make_unary(e.unary_op(), substitute(e.operand(), v, replacement));
    case Expr::Kind::Binary:
      return make_binary(e.binary_op(), substitute(e.lhs(), v, replacement),
                         substitute(e.rhs(), v, replacement));
  }
  return e;
}

namespace {

// Printing precedence: Add/Sub = 1, Mul/Div = 2, Neg = 3, Pow = 4, atoms = 5.
// Literals that print with a sign or a slash take the precedence of the
// operator their spelling resembles, so they re-parse to the same tree.
int effective_precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Number: {
      if (e.is_rational()) {
        const Rational& r = e.rational();
        if (!r.is_integer()) return 2;
        return r.num() < 0 ? 3 : 5;
      }
      double v = e.number_value();
      return std::signbit(v) ? 3 : 5;
    }
    case Expr::Kind::Variable:
      return 5;
    case Expr::Kind::Unary:
      return e.unary_op() == UnaryOp::Neg ? 3 : 5;
    case Expr::Kind::Binary:
      switch (e.binary_op()) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
          return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div:
          return 2;
        case BinaryOp::Pow:
          return 4;
      }
  }
  return 5;
}

std::string format_double(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "0";
  std::string s(buf, end);
  // Keep float literals distinguishable from integer (rational) literals.
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg:
      return "-";
    case UnaryOp::Exp:
      return "exp";
    case UnaryOp::Log:
      return "log";
    case UnaryOp::Sin:
      return "sin";
    case UnaryOp::Cos:
      return "cos";
    case UnaryOp::Tan:
      return "tan";
    case UnaryOp::Tanh:
      return "tanh";
    case UnaryOp::Sech:
      return "sech";
    case UnaryOp::Sqrt:
      return "sqrt";
  }
  return "?";
}

void print(const Expr& e, int required, std::string& out) {
  int prec = effective_precedence(e);
  bool parens = prec < required;
  if (parens) out += '(';
  switch (e.kind()) {
    case Expr::Kind::Number:
      if (e.is_rational()) {
        const Rational& r = e.rational();
        out += std::to_string(r.num());
        if (!r.is_integer()) {
          out += '/';
          out += std::to_string(r.den());
        }
      } else {
        out += format_double(e.number_value());
      }
      break;
    case Expr::Kind::Variable:
      out += e.var() == Var::t ? 't' : 'x';
      break;
    case Expr::Kind::Unary:
      if (e.unary_op() == UnaryOp::Neg) {
        out += '-';
        print(e.operand(), 3, out);
      } else {
        out += unary_name(e.unary_op());
        out += '(';
        print(e.operand(), 0, out);
        out += ')';
      }
      break;
    case Expr::Kind::Binary: {
      const char* sym = nullptr;
      int left_req = 0, right_req = 0;
      switch (e.binary_op()) {
        case BinaryOp::Add:
          sym = "+", left_req = 1, right_req = 2;
          break;
        case BinaryOp::Sub:
          sym = "-", left_req = 1, right_req = 2;
          break;
        case BinaryOp::Mul:
          sym = "*", left_req = 2, right_req = 3;
          break;
        case BinaryOp::Div:
          sym = "/", left_req = 2, right_req = 3;
          break;
        case BinaryOp::Pow:
          sym = "^", left_req = 5, right_req = 3;
          break;
      }
      print(e.lhs(), left_req, out);
      out += sym;
      print(e.rhs(), right_req, out);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

}  // namespace kdv5
