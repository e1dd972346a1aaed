#ifndef KDV5_EXPR_HPP
#define KDV5_EXPR_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kdv5/rational.hpp"

namespace kdv5 {

enum class Var : std::uint8_t { t, x };

enum class UnaryOp : std::uint8_t { Neg, Exp, Log, Sin, Cos, Tan, Tanh, Sech, Sqrt };

enum class BinaryOp : std::uint8_t { Add, Sub, Mul, Div, Pow };

/// Immutable symbolic expression tree over the variables {t, x}.
///
/// An Expr is a cheap value handle onto a shared, immutable node, so copies
/// are O(1) and trees may be shared freely across threads. Construction goes
/// through the factory functions below, which fold constant subtrees (exactly,
/// when both operands are rational and the result is representable) and apply
/// the 0/1 identities. There is no further simplification.
class Expr {
 public:
  enum class Kind : std::uint8_t { Number, Variable, Unary, Binary };

  /// The number zero.
  Expr();

  Kind kind() const;

  bool is_number() const { return kind() == Kind::Number; }
  bool is_rational() const;
  /// Exact value; only valid when is_rational().
  const Rational& rational() const;
  /// Numeric value of a Number node (rational nodes are converted).
  double number_value() const;
  bool is_zero() const;
  bool is_one() const;

  Var var() const;  // valid when kind() == Variable

  UnaryOp unary_op() const;
  const Expr& operand() const;

  BinaryOp binary_op() const;
  const Expr& lhs() const;
  const Expr& rhs() const;

  bool depends_on(Var v) const;
  int node_count() const;

  /// Structural equality (number nodes compare by exactness class and value).
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend Expr number(const Rational&);
  friend Expr number(double);
  friend Expr variable(Var);
  friend Expr make_unary(UnaryOp, Expr);
  friend Expr make_binary(BinaryOp, Expr, Expr);
};

Expr number(const Rational& r);
Expr number(double v);
inline Expr number(long long v) { return number(Rational(v)); }
inline Expr number(int v) { return number(Rational(v)); }
Expr variable(Var v);
inline Expr var_t() { return variable(Var::t); }
inline Expr var_x() { return variable(Var::x); }

/// Node factories with constant folding and 0/1 identities.
Expr make_unary(UnaryOp op, Expr a);
Expr make_binary(BinaryOp op, Expr a, Expr b);

inline Expr operator+(Expr a, Expr b) { return make_binary(BinaryOp::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return make_binary(BinaryOp::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return make_binary(BinaryOp::Mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return make_binary(BinaryOp::Div, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) { return make_unary(UnaryOp::Neg, std::move(a)); }
inline Expr pow(Expr base, Expr exponent) { return make_binary(BinaryOp::Pow, std::move(base), std::move(exponent)); }
inline Expr exp(Expr a) { return make_unary(UnaryOp::Exp, std::move(a)); }
inline Expr log(Expr a) { return make_unary(UnaryOp::Log, std::move(a)); }
inline Expr sin(Expr a) { return make_unary(UnaryOp::Sin, std::move(a)); }
inline Expr cos(Expr a) { return make_unary(UnaryOp::Cos, std::move(a)); }
inline Expr tan(Expr a) { return make_unary(UnaryOp::Tan, std::move(a)); }
inline Expr tanh(Expr a) { return make_unary(UnaryOp::Tanh, std::move(a)); }
inline Expr sech(Expr a) { return make_unary(UnaryOp::Sech, std::move(a)); }
inline Expr sqrt(Expr a) { return make_unary(UnaryOp::Sqrt, std::move(a)); }

/// Variable bindings for evaluation. Evaluating an expression that uses an
/// unbound variable throws EvalError.
struct Bindings {
  std::optional<double> t;
  std::optional<double> x;
};

double evaluate(const Expr& e, const Bindings& b);
inline double evaluate_t(const Expr& e, double t) { return evaluate(e, Bindings{t, std::nullopt}); }
inline double evaluate_tx(const Expr& e, double t, double x) { return evaluate(e, Bindings{t, x}); }

/// Symbolic derivative. Total: never throws. pow(f, g) uses the power rule
/// when g does not depend on `v`, otherwise the exp(g*log f) general rule.
Expr differentiate(const Expr& e, Var v);

/// Replaces every occurrence of `v` by `replacement` (rebuilding through the
/// folding factories).
Expr substitute(const Expr& e, Var v, const Expr& replacement);

/// Grammar text; parsing it back yields a structurally equal tree.
std::string to_string(const Expr& e);

/// Parses the expression grammar (see README). Throws ParseError.
Expr parse(const std::string& source);

}  // namespace kdv5

#endif  // KDV5_EXPR_HPP
