#include "kdv5/compiled.hpp"

#include <cmath>

#include "kdv5/errors.hpp"

namespace kdv5 {

CompiledExpr::CompiledExpr(const Expr& e) {
  // Postorder flatten; returns the stack height consumed by the subtree.
  struct Builder {
    std::vector<Instr>& code;
    int depth = 0, max_depth = 0;

    void push(Op op, double v = 0.0) { code.push_back(Instr{op, v}); }
    void grow() { max_depth = std::max(max_depth, ++depth); }
    void shrink(int n) { depth -= n; }

    void walk(const Expr& node) {
      switch (node.kind()) {
        case Expr::Kind::Number:
          push(Op::PushConst, node.number_value());
          grow();
          return;
        case Expr::Kind::Variable:
          push(node.var() == Var::t ? Op::PushT : Op::PushX);
          grow();
          return;
        case Expr::Kind::Unary: {
          walk(node.operand());
          switch (node.unary_op()) {
            case UnaryOp::Neg:
              push(Op::Neg);
              break;
            case UnaryOp::Exp:
              push(Op::Exp);
              break;
            case UnaryOp::Log:
              push(Op::Log);
              break;
            case UnaryOp::Sin:
              push(Op::Sin);
              break;
            case UnaryOp::Cos:
              push(Op::Cos);
              break;
            case UnaryOp::Tan:
              push(Op::Tan);
              break;
            case UnaryOp::Tanh:
              push(Op::Tanh);
              break;
            case UnaryOp::Sech:
              push(Op::Sech);
              break;
            case UnaryOp::Sqrt:
              push(Op::Sqrt);
              break;
          }
          return;
        }
        case Expr::Kind::Binary: {
          walk(node.lhs());
          walk(node.rhs());
          switch (node.binary_op()) {
            case BinaryOp::Add:
              push(Op::Add);
              break;
            case BinaryOp::Sub:
              push(Op::Sub);
              break;
            case BinaryOp::Mul:
              push(Op::Mul);
              break;
            case BinaryOp::Div:
              push(Op::Div);
              break;
            case BinaryOp::Pow:
              push(Op::Pow);
              break;
          }
          shrink(1);
          return;
        }
      }
    }
  };
  Builder b{code_};
  b.walk(e);
  stack_depth_ = b.max_depth;
}

double CompiledExpr::operator()(double t, double x) const {
  double stack[64];
  std::vector<double> heap;
  double* sp = stack;
  if (stack_depth_ > 64) {
    heap.resize(static_cast<std::size_t>(stack_depth_));
    sp = heap.data();
  }
  int top = -1;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::PushConst:
        sp[++top] = in.value;
        break;
      case Op::PushT:
        sp[++top] = t;
        break;
      case Op::PushX:
        sp[++top] = x;
        break;
      case Op::Neg:
        sp[top] = -sp[top];
        break;
      case Op::Exp:
        sp[top] = std::exp(sp[top]);
        break;
      case Op::Log:
        if (sp[top] <= 0.0) throw EvalError("log of nonpositive value", "compiled expression");
        sp[top] = std::log(sp[top]);
        break;
      case Op::Sin:
        sp[top] = std::sin(sp[top]);
        break;
      case Op::Cos:
        sp[top] = std::cos(sp[top]);
        break;
      case Op::Tan:
        sp[top] = std::tan(sp[top]);
        break;
      case Op::Tanh:
        sp[top] = std::tanh(sp[top]);
        break;
      case Op::Sech:
        sp[top] = 1.0 / std::cosh(sp[top]);
        break;
      case Op::Sqrt:
        if (sp[top] < 0.0) throw EvalError("sqrt of negative value", "compiled expression");
        sp[top] = std::sqrt(sp[top]);
        break;
      case Op::Add:
        sp[top - 1] += sp[top];
        --top;
        break;
      case Op::Sub:
        sp[top - 1] -= sp[top];
        --top;
        break;
      case Op::Mul:
        sp[top - 1] *= sp[top];
        --top;
        break;
      case Op::Div:
        if (sp[top] == 0.0) throw EvalError("division by zero", "compiled expression");
        sp[top - 1] /= sp[top];
        --top;
        break;
      case Op::Pow:
        sp[top - 1] = std::pow(sp[top - 1], sp[top]);
        --top;
        break;
    }
  }
  double r = sp[top];
  if (!std::isfinite(r)) throw EvalError("non-finite result", "compiled expression");
  return r;
}

}  // namespace kdv5
