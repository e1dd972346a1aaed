#include "kdv5/solutions.hpp"

#include <cmath>

#include "kdv5/errors.hpp"

namespace kdv5 {

ExprSolutionField::ExprSolutionField(const Expr& u) {
  u_ = CompiledExpr(u);
  ut_ = CompiledExpr(differentiate(u, Var::t));
  Expr d = u;
  for (int i = 0; i < 5; ++i) {
    d = differentiate(d, Var::x);
    ux_[static_cast<std::size_t>(i)] = CompiledExpr(d);
  }
}

double ExprSolutionField::value(double t, double x) const { return u_(t, x); }

double ExprSolutionField::time_derivative(double t, double x) const { return ut_(t, x); }

double ExprSolutionField::space_derivative(int order, double t, double x) const {
  if (order < 1 || order > 5) throw ValidationError("space derivative order must be in [1,5]");
  return ux_[static_cast<std::size_t>(order - 1)](t, x);
}

std::string family_name(SolutionFamily f) {
  switch (f) {
    case SolutionFamily::Exponential:
      return "exponential";
    case SolutionFamily::Kink:
      return "kink";
    case SolutionFamily::Soliton:
      return "soliton";
    case SolutionFamily::Compacton:
      return "compacton";
    case SolutionFamily::Transformed:
      return "transformed";
  }
  return "?";
}

double traveling_wave_residual(const Expr& profile, double a, const TargetConstants& m,
                               std::span<const double> sigma_grid) {
  Expr u1 = differentiate(profile, Var::x);
  Expr u2 = differentiate(u1, Var::x);
  Expr u3 = differentiate(u2, Var::x);
  Expr u5 = differentiate(differentiate(u3, Var::x), Var::x);
  Expr residual = number(-a) * u1 + number(m.m1) * u5 + number(m.m2) * u3 +
                  number(m.m3) * profile * u3 + number(m.m4) * profile * u1 +
                  number(m.m5) * u1 * u2;
  CompiledExpr prog(residual);
  double worst = 0.0;
  for (double s : sigma_grid) worst = std::max(worst, std::abs(prog(0.0, s)));
  return worst;
}

namespace {

Expr traveling_wave(const Expr& profile, double speed) {
  return substitute(profile, Var::x, var_x() - number(speed) * var_t());
}

ClosedFormSolution finish_family(SolutionFamily family,
                                 std::vector<std::pair<std::string, double>> params,
                                 TargetConstants m, double speed, Expr profile) {
  Expr u = traveling_wave(profile, speed);
  ClosedFormSolution sol{family,
                         std::move(params),
                         m,
                         speed,
                         std::move(profile),
                         u,
                         std::make_shared<ExprSolutionField>(u),
                         std::nullopt};
  return sol;
}

TargetConstants derived_constants(const char* family, double m1, double m2, double m3, double m4,
                                  double m5) {
  const struct {
    const char* name;
    double v;
  } ms[] = {{"m1", m1}, {"m2", m2}, {"m3", m3}, {"m4", m4}, {"m5", m5}};
  for (const auto& [name, v] : ms)
    if (!std::isfinite(v) || v == 0.0)
      throw ValidationError(std::string(family) + ": derived constant " + name +
                            " vanishes for these parameters (degenerate family member)");
  return TargetConstants(m1, m2, m3, m4, m5);
}

}  // namespace

ClosedFormSolution make_exponential(const TargetConstants& m, double c2) {
  double denom = m.m3 + m.m5;
  if (denom == 0.0) throw ValidationError("exponential family requires m3 + m5 != 0");
  double radicand = -m.m4 / denom;
  if (radicand <= 0.0)
    throw ValidationError("exponential family requires m4/(m3+m5) < 0 (radicand " +
                          std::to_string(radicand) + " is not positive)");
  double k = std::sqrt(radicand);
  double a = m.m4 * (m.m1 * m.m4 - m.m2 * m.m5 - m.m2 * m.m3) / (denom * denom);
  Expr profile = number(c2) * exp(number(k) * var_x());
  return finish_family(SolutionFamily::Exponential,
                       {{"a", a},
                        {"c2", c2},
                        {"m1", m.m1},
                        {"m2", m.m2},
                        {"m3", m.m3},
                        {"m4", m.m4},
                        {"m5", m.m5}},
                       m, a, std::move(profile));
}

ClosedFormSolution make_kink(double a, double m4, double m5) {
  double m1 = (-3.0 * a + 2.0 * m4 - 2.0 * m5) / 72.0;
  double m2 = (-30.0 * a + 17.0 * m4 - 8.0 * m5) / 36.0;
  double m3 = (15.0 * a - 10.0 * m4 + 4.0 * m5) / 12.0;
  TargetConstants m = derived_constants("kink", m1, m2, m3, m4, m5);
  Expr profile = pow(tanh(var_x()), number(2));
  return finish_family(SolutionFamily::Kink,
                       {{"a", a}, {"m4", m4}, {"m5", m5}}, m, a, std::move(profile));
}

ClosedFormSolution make_soliton(double a, double m4, double m5) {
  double m1 = (-3.0 * a + m4 + 2.0 * m5) / 72.0;
  double m2 = (15.0 * a - 2.0 * m4 - 4.0 * m5) / 36.0;
  double m3 = (-15.0 * a + 5.0 * m4 + 4.0 * m5) / 12.0;
  TargetConstants m = derived_constants("soliton", m1, m2, m3, m4, m5);
  Expr profile = pow(sech(var_x()), number(2));
  return finish_family(SolutionFamily::Soliton,
                       {{"a", a}, {"m4", m4}, {"m5", m5}}, m, a, std::move(profile));
}

ClosedFormSolution make_compacton(double a, double m5) {
  if (a == 0.0 || m5 == 0.0)
    throw ValidationError("compacton family requires a != 0 and m5 != 0");
  double a2 = a * a;
  double m1 = -1.0 / (64.0 * a2 * a2);
  double m2 = -5.0 / (16.0 * a2);
  double m3 = -2.0 * m5;
  double m4 = -16.0 * a2 * m5;
  TargetConstants m = derived_constants("compacton", m1, m2, m3, m4, m5);
  Expr profile = pow(cos(number(a) * var_x()), number(4));
  // The phase travels with unit speed; a only shapes the profile.
  return finish_family(SolutionFamily::Compacton, {{"a", a}, {"m5", m5}}, m, 1.0,
                       std::move(profile));
}

namespace {

/// u_old(t, x) = u_new(lambda(t), e^{k1}(x + k2)) / s(t)
class PullbackSolutionField final : public SolutionField {
 public:
  PullbackSolutionField(std::shared_ptr<const SolutionField> base, const PointTransformation& T)
      : base_(std::move(base)),
        lambda_(T.time_map()),
        x_factor_(std::exp(T.k1())),
        k2_(T.k2()),
        s_(T.u_scale()) {}

  double value(double t, double x) const override {
    return base_->value(lambda_(t), x_factor_ * (x + k2_)) / s_.value(t);
  }

  double time_derivative(double t, double x) const override {
    double T = lambda_(t), X = x_factor_ * (x + k2_);
    double sv = s_.value(t);
    return base_->time_derivative(T, X) * lambda_.derivative(t) / sv -
           base_->value(T, X) * s_.d1(t) / (sv * sv);
  }

  double space_derivative(int order, double t, double x) const override {
    double T = lambda_(t), X = x_factor_ * (x + k2_);
    return std::pow(x_factor_, order) * base_->space_derivative(order, T, X) / s_.value(t);
  }

 private:
  std::shared_ptr<const SolutionField> base_;
  MonotoneTimeMap lambda_;
  double x_factor_, k2_;
  ScalarFn s_;
};

}  // namespace

ClosedFormSolution map_solution(const ClosedFormSolution& sol, const PointTransformation& T,
                                MapDirection direction) {
  const PointTransformation map =
      direction == MapDirection::Pullback ? T : T.inverted();
  ClosedFormSolution out{SolutionFamily::Transformed,
                         sol.parameters,
                         sol.constants,
                         sol.wave_speed,
                         sol.profile,
                         std::nullopt,
                         std::make_shared<PullbackSolutionField>(sol.field, map),
                         SolutionProvenance{std::make_shared<ClosedFormSolution>(sol), map}};
  out.parameters.emplace_back("k2", map.k2());
  if (sol.closed_form && map.time_map().source() && map.u_scale_source()) {
    Expr x_image = number(std::exp(map.k1())) * (var_x() + number(map.k2()));
    Expr inner = substitute(*sol.closed_form, Var::x, x_image);
    inner = substitute(inner, Var::t, *map.time_map().source());
    out.closed_form = inner / *map.u_scale_source();
  }
  return out;
}

}  // namespace kdv5
