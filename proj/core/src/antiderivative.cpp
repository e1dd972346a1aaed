#include "kdv5/antiderivative.hpp"

#include <cmath>

#include "kdv5/errors.hpp"

namespace kdv5 {

namespace {

// e == k*t + b with constant k, b?
struct Linear {
  double k, b;
};

std::optional<Linear> linear_coeffs(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Number:
      return Linear{0.0, e.number_value()};
    case Expr::Kind::Variable:
      if (e.var() == Var::t) return Linear{1.0, 0.0};
      return std::nullopt;
    case Expr::Kind::Unary:
      if (e.unary_op() == UnaryOp::Neg) {
        if (auto l = linear_coeffs(e.operand())) return Linear{-l->k, -l->b};
      }
      return std::nullopt;
    case Expr::Kind::Binary: {
      auto a = linear_coeffs(e.lhs());
      auto b = linear_coeffs(e.rhs());
      switch (e.binary_op()) {
        case BinaryOp::Add:
          if (a && b) return Linear{a->k + b->k, a->b + b->b};
          return std::nullopt;
        case BinaryOp::Sub:
          if (a && b) return Linear{a->k - b->k, a->b - b->b};
          return std::nullopt;
        case BinaryOp::Mul:
          if (a && b) {
            if (a->k == 0.0) return Linear{a->b * b->k, a->b * b->b};
            if (b->k == 0.0) return Linear{b->b * a->k, b->b * a->b};
          }
          return std::nullopt;
        case BinaryOp::Div:
          if (a && b && b->k == 0.0 && b->b != 0.0) return Linear{a->k / b->b, a->b / b->b};
          return std::nullopt;
        case BinaryOp::Pow:
          return std::nullopt;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Expr> symbolic_antiderivative(const Expr& e) {
  if (!e.depends_on(Var::t)) return e * var_t();
  switch (e.kind()) {
    case Expr::Kind::Number:
      return std::nullopt;  // unreachable, handled above
    case Expr::Kind::Variable:
      return pow(var_t(), number(2)) / number(2);
    case Expr::Kind::Unary: {
      switch (e.unary_op()) {
        case UnaryOp::Neg:
          if (auto f = symbolic_antiderivative(e.operand())) return -*f;
          return std::nullopt;
        case UnaryOp::Exp: {
          auto l = linear_coeffs(e.operand());
          if (l && l->k != 0.0) return e / number(l->k);
          return std::nullopt;
        }
        case UnaryOp::Sin: {
          auto l = linear_coeffs(e.operand());
          if (l && l->k != 0.0) return -(cos(e.operand()) / number(l->k));
          return std::nullopt;
        }
        case UnaryOp::Cos: {
          auto l = linear_coeffs(e.operand());
          if (l && l->k != 0.0) return sin(e.operand()) / number(l->k);
          return std::nullopt;
        }
        default:
          return std::nullopt;
      }
    }
    case Expr::Kind::Binary: {
      switch (e.binary_op()) {
        case BinaryOp::Add: {
          auto a = symbolic_antiderivative(e.lhs());
          auto b = symbolic_antiderivative(e.rhs());
          if (a && b) return *a + *b;
          return std::nullopt;
        }
        case BinaryOp::Sub: {
          auto a = symbolic_antiderivative(e.lhs());
          auto b = symbolic_antiderivative(e.rhs());
          if (a && b) return *a - *b;
          return std::nullopt;
        }
        case BinaryOp::Mul:
          if (!e.lhs().depends_on(Var::t)) {
            if (auto f = symbolic_antiderivative(e.rhs())) return e.lhs() * *f;
            return std::nullopt;
          }
          if (!e.rhs().depends_on(Var::t)) {
            if (auto f = symbolic_antiderivative(e.lhs())) return *f * e.rhs();
            return std::nullopt;
          }
          return std::nullopt;
        case BinaryOp::Div:
          if (!e.rhs().depends_on(Var::t)) {
            if (auto f = symbolic_antiderivative(e.lhs())) return *f / e.rhs();
          }
          return std::nullopt;
        case BinaryOp::Pow: {
          // (k t + b)^n with constant n != -1
          if (!e.rhs().is_number()) return std::nullopt;
          auto l = linear_coeffs(e.lhs());
          if (!l || l->k == 0.0) return std::nullopt;
          Expr n = e.rhs();
          Expr n1 = n + number(1);
          if (n1.is_zero()) return std::nullopt;  // 1/(kt+b) is outside the class
          return pow(e.lhs(), n1) / (number(l->k) * n1);
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Antiderivative::Antiderivative(Expr integrand, double base_point, AntiderivativeMode mode)
    : integrand_(std::move(integrand)), base_point_(base_point) {
  if (integrand_.depends_on(Var::x))
    throw ValidationError("antiderivative integrand must be univariate in t: `" +
                          to_string(integrand_) + "`");
  if (!std::isfinite(base_point_)) throw ValidationError("antiderivative base point must be finite");
  if (mode != AntiderivativeMode::Quadrature) {
    if (auto raw = symbolic_antiderivative(integrand_)) {
      double at_base = evaluate_t(*raw, base_point_);
      closed_form_ = *raw - number(at_base);
      closed_prog_ = CompiledExpr(*closed_form_);
    } else if (mode == AntiderivativeMode::Symbolic) {
      throw ValidationError("no closed-form antiderivative for `" + to_string(integrand_) + "`");
    }
  }
  integrand_prog_ = CompiledExpr(integrand_);
  checkpoints_[base_point_] = 0.0;
}

double Antiderivative::integrand_at(double t) const { return integrand_prog_(t, 0.0); }

double Antiderivative::integrate(double a, double b) const {
  if (a == b) return 0.0;
  if (b < a) return -integrate(b, a);
  struct Simpson {
    const CompiledExpr& f;
    double eval(double t) const { return f(t, 0.0); }
    double recurse(double lo, double hi, double flo, double fmid, double fhi, double whole,
                   double tol, int depth) const {
      double mid = 0.5 * (lo + hi);
      double lm = 0.5 * (lo + mid), mh = 0.5 * (mid + hi);
      double flm = eval(lm), fmh = eval(mh);
      double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
      double right = (hi - mid) / 6.0 * (fmid + 4.0 * fmh + fhi);
      double delta = left + right - whole;
      if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
      if (depth >= kMaxDepth)
        throw QuadratureError("adaptive Simpson did not converge", std::abs(delta) / 15.0);
      return recurse(lo, mid, flo, flm, fmid, left, 0.5 * tol, depth + 1) +
             recurse(mid, hi, fmid, fmh, fhi, right, 0.5 * tol, depth + 1);
    }
  };
  Simpson s{integrand_prog_};
  double fa = s.eval(a), fb = s.eval(b), fm = s.eval(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return s.recurse(a, b, fa, fm, fb, whole, kQuadratureTol, 0);
}

double Antiderivative::operator()(double t) const {
  if (closed_form_) return closed_prog_(t, 0.0);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = checkpoints_.lower_bound(t);
  // nearest cached checkpoint
  if (it == checkpoints_.end()) {
    --it;
  } else if (it->first != t && it != checkpoints_.begin()) {
    auto prev = std::prev(it);
    if (t - prev->first < it->first - t) it = prev;
  }
  if (it->first == t) return it->second;
  double value = it->second + integrate(it->first, t);
  checkpoints_[t] = value;
  return value;
}

}  // namespace kdv5
