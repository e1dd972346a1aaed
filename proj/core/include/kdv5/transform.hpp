#ifndef KDV5_TRANSFORM_HPP
#define KDV5_TRANSFORM_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "kdv5/equation.hpp"
#include "kdv5/time_map.hpp"

namespace kdv5 {

/// Extra data attached when a transformation was produced by
/// equivalence::build_transformation; map_solution and the CLI need it.
struct EquivalencePayload {
  Expr G;
  Expr H;
  double c1 = 0.0;
  double time_prefactor = 0.0;  // (c1/m2)^(5/2) m1^(3/2)
  double base_point = 0.0;      // lower end of the recognized domain
  double k2 = 0.0;
};

/// Finite equivalence transformation
///   t_new = lambda(t),  x_new = (x + k2) e^{k1},  u_new = s(t) u,
/// with lambda strictly increasing and s nonvanishing on the domain.
/// "old" variables are the transformation's domain side, "new" its range side.
class PointTransformation {
 public:
  PointTransformation(MonotoneTimeMap lambda, double k1, double k2, ScalarFn u_scale,
                      std::optional<Expr> u_scale_source = std::nullopt,
                      std::string from_label = "original", std::string to_label = "transformed");

  static PointTransformation identity(Interval domain);

  double map_time(double t) const { return lambda_(t); }
  double map_space(double x) const;
  double u_scale_at(double t) const { return u_scale_.value(t); }

  /// (t, x, u) -> (t_new, x_new, u_new)
  std::array<double, 3> forward(const std::array<double, 3>& p) const;
  /// Exact inverse of forward().
  std::array<double, 3> backward(const std::array<double, 3>& p) const;

  PointTransformation inverted() const;

  const MonotoneTimeMap& time_map() const { return lambda_; }
  double k1() const { return k1_; }
  double k2() const { return k2_; }
  const ScalarFn& u_scale() const { return u_scale_; }
  const std::optional<Expr>& u_scale_source() const { return u_scale_source_; }
  const std::string& from_label() const { return from_label_; }
  const std::string& to_label() const { return to_label_; }

  const std::optional<EquivalencePayload>& equivalence() const { return payload_; }
  void attach_equivalence(EquivalencePayload payload) { payload_ = std::move(payload); }

 private:
  MonotoneTimeMap lambda_;
  double k1_, k2_;
  ScalarFn u_scale_;
  std::optional<Expr> u_scale_source_;
  std::string from_label_, to_label_;
  std::optional<EquivalencePayload> payload_;
};

/// outer after inner (applies inner first).
PointTransformation compose(const PointTransformation& outer, const PointTransformation& inner);

/// Induced action on the coefficient functions: the returned instance is the
/// equation satisfied by u_new(t_new, x_new) whenever u solves `eq`. Its
/// coefficients are callable compositions with the numerically inverted time
/// map; its domain is [lambda(t_lo), lambda(t_hi)].
EquationInstance pushforward(const EquationInstance& eq, const PointTransformation& T);

/// Removes the linear damping term: returns a Q-free instance with
/// C, E, F multiplied by e^{-int Q} plus the transformation u_new = e^{int Q} u
/// realizing it (identity when Q is already the zero expression).
std::pair<EquationInstance, PointTransformation> remove_damping(const EquationInstance& eq);

}  // namespace kdv5

#endif  // KDV5_TRANSFORM_HPP
