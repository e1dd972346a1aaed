#ifndef KDV5_SCALAR_FN_HPP
#define KDV5_SCALAR_FN_HPP

#include <functional>
#include <memory>

#include "kdv5/antiderivative.hpp"
#include "kdv5/expr.hpp"

namespace kdv5 {

/// Twice-differentiable scalar function of t, as value/first/second
/// derivative callables. Used for transformed coefficients and u-scales,
/// where closed forms are not always available.
struct ScalarFn {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

ScalarFn scalar_constant(double c);
/// Derivatives taken symbolically; e must be univariate in t.
ScalarFn scalar_from_expr(const Expr& e);
/// exp(sigma * Phi(t)) for an antiderivative Phi with integrand q:
/// d1 = sigma q e, d2 = (sigma q' + sigma^2 q^2) e.
ScalarFn scalar_exp_antiderivative(double sigma, std::shared_ptr<const Antiderivative> phi);
ScalarFn scalar_product(ScalarFn a, ScalarFn b);
ScalarFn scalar_reciprocal(ScalarFn f);
ScalarFn scalar_scale(double k, ScalarFn f);

}  // namespace kdv5

#endif  // KDV5_SCALAR_FN_HPP
