#ifndef KDV5_SOLUTIONS_HPP
#define KDV5_SOLUTIONS_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kdv5/equivalence.hpp"

namespace kdv5 {

/// Evaluable solution surface u(t, x) with the derivatives the fifth-order
/// residual needs. Implementations are immutable and reentrant.
class SolutionField {
 public:
  virtual ~SolutionField() = default;
  virtual double value(double t, double x) const = 0;
  virtual double time_derivative(double t, double x) const = 0;
  /// order in [1, 5]
  virtual double space_derivative(int order, double t, double x) const = 0;
};

/// Field backed by a symbolic expression; all derivatives symbolic, compiled
/// once for grid sweeps.
class ExprSolutionField final : public SolutionField {
 public:
  explicit ExprSolutionField(const Expr& u);
  double value(double t, double x) const override;
  double time_derivative(double t, double x) const override;
  double space_derivative(int order, double t, double x) const override;

 private:
  CompiledExpr u_, ut_;
  std::array<CompiledExpr, 5> ux_;
};

enum class SolutionFamily { Exponential, Kink, Soliton, Compacton, Transformed };

std::string family_name(SolutionFamily f);

struct ClosedFormSolution;

/// How a transformed solution was produced.
struct SolutionProvenance {
  std::shared_ptr<const ClosedFormSolution> base;
  PointTransformation map;
};

struct ClosedFormSolution {
  SolutionFamily family;
  std::vector<std::pair<std::string, double>> parameters;
  TargetConstants constants;  // constants of the underlying traveling-wave equation
  double wave_speed;          // speed in the underlying traveling-wave variables
  Expr profile;               // U(sigma), sigma spelled as x
  std::optional<Expr> closed_form;  // u(t, x) when a closed form exists
  std::shared_ptr<const SolutionField> field;
  std::optional<SolutionProvenance> provenance;
};

/// Max absolute value over the sigma grid of
/// -a U' + m1 U''''' + m2 U''' + m3 U U''' + m4 U U' + m5 U' U''.
double traveling_wave_residual(const Expr& profile, double a, const TargetConstants& m,
                               std::span<const double> sigma_grid);

/// u = c2 exp(sqrt(-m4/(m3+m5)) (x - a t)) with
/// a = m4 (m1 m4 - m2 m5 - m2 m3) / (m3 + m5)^2. Requires m3 + m5 != 0 and
/// m4/(m3+m5) < 0.
ClosedFormSolution make_exponential(const TargetConstants& m, double c2);

/// u = tanh^2(x - a t); derives m1, m2, m3 from (a, m4, m5). Every derived
/// constant must be nonzero.
ClosedFormSolution make_kink(double a, double m4, double m5);

/// u = sech^2(x - a t); derives m1, m2, m3 from (a, m4, m5).
ClosedFormSolution make_soliton(double a, double m4, double m5);

/// u = cos^4(a (x - t)): unit wave speed, a is a shape parameter. Derives
/// m1, m2, m3, m4 from (a, m5).
ClosedFormSolution make_compacton(double a, double m5);

enum class MapDirection {
  /// Input solution lives on the transformation's range ("new") side; the
  /// result lives on its domain ("old") side. This is the direction that
  /// carries constant-coefficient solutions to the recognized
  /// variable-coefficient equation.
  Pullback,
  /// The opposite direction (pullback through the inverted map).
  Pushforward,
};

/// Transports a solution through a point transformation. The result keeps a
/// closed form when the time map and u-scale have one; it always evaluates
/// by composition through the provenance chain.
ClosedFormSolution map_solution(const ClosedFormSolution& sol, const PointTransformation& T,
                                MapDirection direction);

}  // namespace kdv5

#endif  // KDV5_SOLUTIONS_HPP
