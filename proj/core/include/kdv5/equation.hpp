#ifndef KDV5_EQUATION_HPP
#define KDV5_EQUATION_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "kdv5/compiled.hpp"
#include "kdv5/expr.hpp"
#include "kdv5/interval.hpp"
#include "kdv5/scalar_fn.hpp"

namespace kdv5 {

/// One coefficient function of t. Either backed by a symbolic expression
/// (derivative taken symbolically) or by a callable composition, as produced
/// by pushforward through a transformation with a numerically inverted time
/// map. Immutable; evaluation is reentrant.
class Coefficient {
 public:
  /// The zero coefficient.
  Coefficient();
  Coefficient(Expr source);  // NOLINT(google-explicit-constructor)
  static Coefficient from_scalar_fn(ScalarFn fn);

  double value(double t) const { return value_(t); }
  double derivative(double t) const { return deriv_(t); }

  const std::optional<Expr>& source() const { return source_; }
  /// True when the coefficient is the literal expression 0 (not merely small).
  bool symbolically_zero() const { return source_ && source_->is_zero(); }

 private:
  std::optional<Expr> source_;
  std::function<double(double)> value_;
  std::function<double(double)> deriv_;
};

/// u_t + A u_xxxxx + B u_xxx + C u u_xxx + E u u_x + F u_x u_xx + Q u = 0
/// with time-dependent coefficients on a closed t-domain. A and C must not
/// vanish on the domain (checked on a 101-point sample, threshold 1e-12);
/// Q identically zero places the instance in the damping-free subclass.
class EquationInstance {
 public:
  EquationInstance(Coefficient a, Coefficient b, Coefficient c, Coefficient e, Coefficient f,
                   Coefficient q, Interval t_domain);

  const Coefficient& A() const { return a_; }
  const Coefficient& B() const { return b_; }
  const Coefficient& C() const { return c_; }
  const Coefficient& E() const { return e_; }
  const Coefficient& F() const { return f_; }
  const Coefficient& Q() const { return q_; }
  const Interval& t_domain() const { return domain_; }

  /// Q is the literal zero expression, or vanishes on the sample grid.
  bool damping_free(double tol = 1e-12) const;

  static constexpr int kValidationPoints = 101;
  static constexpr double kVanishTol = 1e-12;

 private:
  Coefficient a_, b_, c_, e_, f_, q_;
  Interval domain_;
};

/// Equation-spec JSON: {"coefficients": {"A": "...", ..., "Q": "..."},
/// "domain": [t_lo, t_hi]}; Q may be omitted and defaults to "0".
EquationInstance equation_from_json(const std::string& json_text);
EquationInstance equation_from_json_file(const std::string& path);
/// Requires every coefficient to be expression-backed.
std::string equation_to_json(const EquationInstance& eq);

}  // namespace kdv5

#endif  // KDV5_EQUATION_HPP
