#ifndef KDV5_TIME_MAP_HPP
#define KDV5_TIME_MAP_HPP

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "kdv5/interval.hpp"
#include "kdv5/scalar_fn.hpp"

namespace kdv5 {

/// Strictly monotone C^2 time map on a closed interval. Monotonicity is a
/// construction invariant, checked on a sample table; the same table seeds
/// the numeric inversion (bisection refined by Newton, tolerance 1e-12).
/// Immutable and cheap to copy.
class MonotoneTimeMap {
 public:
  MonotoneTimeMap(ScalarFn fn, Interval domain, std::optional<Expr> source = std::nullopt);

  static MonotoneTimeMap identity(Interval domain);
  static MonotoneTimeMap from_expr(const Expr& lambda, Interval domain);
  /// lambda(t) = prefactor * integral of `integrand` from t0.
  static MonotoneTimeMap from_antiderivative(double prefactor, const Expr& integrand, double t0,
                                             Interval domain);

  double operator()(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;
  /// Solves lambda(t) = target within the domain, to 1e-12.
  double invert(double target) const;

  MonotoneTimeMap inverse() const;

  const Interval& domain() const;
  Interval range() const;
  bool increasing() const;

  /// Closed form of the map when one exists (identity, expressions,
  /// symbolic antiderivatives); inverse maps have none.
  const std::optional<Expr>& source() const;

  static constexpr double kInvertTol = 1e-12;

 private:
  struct Impl;
  explicit MonotoneTimeMap(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// f composed with the inverse of a map: g(s) = f(m^-1(s)), with chain-rule
/// derivatives. Used when pushing coefficients and u-scales forward.
ScalarFn scalar_compose_inverse(ScalarFn f, const MonotoneTimeMap& m);

/// f composed with the map itself: g(t) = f(m(t)).
ScalarFn scalar_compose(ScalarFn f, const MonotoneTimeMap& m);

}  // namespace kdv5

#endif  // KDV5_TIME_MAP_HPP
