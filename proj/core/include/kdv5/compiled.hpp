#ifndef KDV5_COMPILED_HPP
#define KDV5_COMPILED_HPP

#include <vector>

#include "kdv5/expr.hpp"

namespace kdv5 {

/// Expression flattened to a postorder evaluation plan. Compile once, then
/// evaluate many times over a grid without walking the shared tree.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const Expr& e);

  /// Throws EvalError on domain violations (without subexpression context;
  /// use kdv5::evaluate for diagnostics).
  double operator()(double t, double x) const;

  int stack_depth() const { return stack_depth_; }

 private:
  enum class Op : std::uint8_t {
    PushConst,
    PushT,
    PushX,
    Neg,
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Tanh,
    Sech,
    Sqrt,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
  };
  struct Instr {
    Op op;
    double value = 0.0;
  };
  std::vector<Instr> code_;
  int stack_depth_ = 0;
};

}  // namespace kdv5

#endif  // KDV5_COMPILED_HPP
