#ifndef KDV5_ANTIDERIVATIVE_HPP
#define KDV5_ANTIDERIVATIVE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "kdv5/compiled.hpp"
#include "kdv5/expr.hpp"

namespace kdv5 {

enum class AntiderivativeMode {
  Auto,        ///< symbolic when the integrand allows it, quadrature otherwise
  Symbolic,    ///< closed form required; throws ValidationError if unavailable
  Quadrature,  ///< force adaptive quadrature
};

/// Phi(t) = integral of a univariate-in-t integrand from the base point t0,
/// so Phi(t0) = 0. Closed forms are produced for polynomials, exp(k*t+b),
/// sin/cos(k*t+b) and their linear combinations; everything else goes through
/// adaptive Simpson quadrature (absolute tolerance 1e-10, max depth 40) with
/// a memoized checkpoint table. Values may be queried concurrently.
class Antiderivative {
 public:
  Antiderivative(Expr integrand, double base_point,
                 AntiderivativeMode mode = AntiderivativeMode::Auto);

  double operator()(double t) const;
  double integrand_at(double t) const;

  const Expr& integrand() const { return integrand_; }
  double base_point() const { return base_point_; }
  bool is_symbolic() const { return closed_form_.has_value(); }
  /// The normalized closed form F with F(t0) == 0; present in symbolic mode.
  const std::optional<Expr>& closed_form() const { return closed_form_; }

  static constexpr double kQuadratureTol = 1e-10;
  static constexpr int kMaxDepth = 40;

 private:
  double integrate(double a, double b) const;

  Expr integrand_;
  double base_point_;
  std::optional<Expr> closed_form_;
  CompiledExpr integrand_prog_;
  CompiledExpr closed_prog_;

  mutable std::mutex mutex_;
  mutable std::map<double, double> checkpoints_;  // t -> Phi(t), quadrature mode
};

/// Closed-form antiderivative for the supported class, normalized to nothing
/// in particular (no base-point shift). Exposed for reuse and testing.
std::optional<Expr> symbolic_antiderivative(const Expr& integrand);

}  // namespace kdv5

#endif  // KDV5_ANTIDERIVATIVE_HPP
