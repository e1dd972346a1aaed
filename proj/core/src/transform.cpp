#include "kdv5/transform.hpp"

#include <cmath>

#include "kdv5/errors.hpp"

namespace kdv5 {

PointTransformation::PointTransformation(MonotoneTimeMap lambda, double k1, double k2,
                                         ScalarFn u_scale, std::optional<Expr> u_scale_source,
                                         std::string from_label, std::string to_label)
    : lambda_(std::move(lambda)),
      k1_(k1),
      k2_(k2),
      u_scale_(std::move(u_scale)),
      u_scale_source_(std::move(u_scale_source)),
      from_label_(std::move(from_label)),
      to_label_(std::move(to_label)) {
  if (!lambda_.increasing())
    throw ValidationError("point transformation requires a strictly increasing time map");
  for (double t : uniform_grid(lambda_.domain(), EquationInstance::kValidationPoints)) {
    double s = u_scale_.value(t);
    if (!std::isfinite(s) || std::abs(s) <= EquationInstance::kVanishTol)
      throw ValidationError("u-scale s(t) must not vanish on the domain; |s(" +
                            std::to_string(t) + ")| = " + std::to_string(std::abs(s)));
  }
}

PointTransformation PointTransformation::identity(Interval domain) {
  return PointTransformation(MonotoneTimeMap::identity(domain), 0.0, 0.0, scalar_constant(1.0),
                             number(1));
}

double PointTransformation::map_space(double x) const { return (x + k2_) * std::exp(k1_); }

std::array<double, 3> PointTransformation::forward(const std::array<double, 3>& p) const {
  return {lambda_(p[0]), map_space(p[1]), u_scale_.value(p[0]) * p[2]};
}

std::array<double, 3> PointTransformation::backward(const std::array<double, 3>& p) const {
  double t = lambda_.invert(p[0]);
  return {t, p[1] * std::exp(-k1_) - k2_, p[2] / u_scale_.value(t)};
}

PointTransformation PointTransformation::inverted() const {
  ScalarFn s_inv = scalar_reciprocal(scalar_compose_inverse(u_scale_, lambda_));
  std::optional<Expr> source;
  if (u_scale_source_ && lambda_.source() && *lambda_.source() == var_t())
    source = number(1) / *u_scale_source_;  // identity time map keeps the closed form
  return PointTransformation(lambda_.inverse(), -k1_, -k2_ * std::exp(k1_), std::move(s_inv),
                             std::move(source), to_label_, from_label_);
}

PointTransformation compose(const PointTransformation& outer, const PointTransformation& inner) {
  if (!outer.time_map().domain().contains(inner.time_map().range(), 1e-9))
    throw ValidationError("composed transformations have mismatched time domains");
  const MonotoneTimeMap &lo = outer.time_map(), &li = inner.time_map();
  ScalarFn lam{[lo, li](double t) { return lo(li(t)); },
               [lo, li](double t) { return lo.derivative(li(t)) * li.derivative(t); },
               [lo, li](double t) {
                 double w = li(t), d = li.derivative(t);
                 return lo.second_derivative(w) * d * d + lo.derivative(w) * li.second_derivative(t);
               }};
  std::optional<Expr> lam_source;
  if (lo.source() && li.source()) lam_source = substitute(*lo.source(), Var::t, *li.source());
  MonotoneTimeMap lambda(std::move(lam), li.domain(), std::move(lam_source));
  double k1 = inner.k1() + outer.k1();
  double k2 = inner.k2() + outer.k2() * std::exp(-inner.k1());
  ScalarFn s = scalar_product(scalar_compose(outer.u_scale(), li), inner.u_scale());
  std::optional<Expr> s_source;
  if (outer.u_scale_source() && inner.u_scale_source() && li.source())
    s_source = substitute(*outer.u_scale_source(), Var::t, *li.source()) * *inner.u_scale_source();
  return PointTransformation(std::move(lambda), k1, k2, std::move(s), std::move(s_source),
                             inner.from_label(), outer.to_label());
}

namespace {

// value and derivative of k * c(t) / (s(t) * lambda_t(t)), composed with
// lambda^{-1}: the pushed-forward form of the coefficients that scale with
// the dependent variable (C, E, F). A and B use s == 1.
Coefficient pushed_coefficient(double k, const Coefficient& c, const ScalarFn& s,
                               const MonotoneTimeMap& lambda) {
  auto h = [k, c, s, lambda](double t) {
    return k * c.value(t) / (s.value(t) * lambda.derivative(t));
  };
  auto h_prime = [k, c, s, lambda](double t) {
    double sv = s.value(t), lv = lambda.derivative(t);
    double denom = sv * lv;
    return k * (c.derivative(t) * denom - c.value(t) * (s.d1(t) * lv + sv * lambda.second_derivative(t))) /
           (denom * denom);
  };
  return Coefficient::from_scalar_fn(
      ScalarFn{[h, lambda](double s_new) { return h(lambda.invert(s_new)); },
               [h_prime, lambda](double s_new) {
                 double t = lambda.invert(s_new);
                 return h_prime(t) / lambda.derivative(t);
               },
               [](double) { return std::nan(""); }});
}

Coefficient pushed_damping(const Coefficient& q, const ScalarFn& s, const MonotoneTimeMap& lambda) {
  auto g = [q, s, lambda](double t) {
    return (q.value(t) - s.d1(t) / s.value(t)) / lambda.derivative(t);
  };
  auto g_prime = [q, s, lambda](double t) {
    double sv = s.value(t), s1 = s.d1(t);
    double lv = lambda.derivative(t);
    double num_t = q.derivative(t) - (s.d2(t) * sv - s1 * s1) / (sv * sv);
    double num = q.value(t) - s1 / sv;
    return (num_t * lv - num * lambda.second_derivative(t)) / (lv * lv);
  };
  return Coefficient::from_scalar_fn(
      ScalarFn{[g, lambda](double s_new) { return g(lambda.invert(s_new)); },
               [g_prime, lambda](double s_new) {
                 double t = lambda.invert(s_new);
                 return g_prime(t) / lambda.derivative(t);
               },
               [](double) { return std::nan(""); }});
}

}  // namespace

EquationInstance pushforward(const EquationInstance& eq, const PointTransformation& T) {
  const Interval& dom = eq.t_domain();
  if (!T.time_map().domain().contains(dom, 1e-9 * (1.0 + std::abs(dom.lo) + std::abs(dom.hi))))
    throw ValidationError("transformation is not defined on the equation's t-domain");
  const MonotoneTimeMap& lambda = T.time_map();
  ScalarFn one = scalar_constant(1.0);
  const ScalarFn& s = T.u_scale();
  double e1 = std::exp(T.k1()), e3 = std::exp(3.0 * T.k1()), e5 = std::exp(5.0 * T.k1());
  Interval new_domain(lambda(dom.lo), lambda(dom.hi));
  return EquationInstance(pushed_coefficient(e5, eq.A(), one, lambda),
                          pushed_coefficient(e3, eq.B(), one, lambda),
                          pushed_coefficient(e3, eq.C(), s, lambda),
                          pushed_coefficient(e1, eq.E(), s, lambda),
                          pushed_coefficient(e3, eq.F(), s, lambda),
                          pushed_damping(eq.Q(), s, lambda), new_domain);
}

std::pair<EquationInstance, PointTransformation> remove_damping(const EquationInstance& eq) {
  const Interval& dom = eq.t_domain();
  if (eq.Q().symbolically_zero()) return {eq, PointTransformation::identity(dom)};
  if (!eq.Q().source())
    throw ValidationError("remove_damping needs an expression-backed Q coefficient");
  const Expr& q_expr = *eq.Q().source();
  auto phi = std::make_shared<Antiderivative>(q_expr, dom.lo);

  Coefficient c_new, e_new, f_new;
  ScalarFn u_scale;
  std::optional<Expr> u_scale_source;
  if (phi->closed_form()) {
    Expr damp = exp(-*phi->closed_form());
    u_scale_source = exp(*phi->closed_form());
    u_scale = scalar_from_expr(*u_scale_source);
    auto scaled = [&damp](const Coefficient& c, const char* name) {
      if (!c.source())
        throw ValidationError(std::string("coefficient ") + name + " has no expression form");
      return Coefficient(*c.source() * damp);
    };
    c_new = scaled(eq.C(), "C");
    e_new = scaled(eq.E(), "E");
    f_new = scaled(eq.F(), "F");
  } else {
    u_scale = scalar_exp_antiderivative(1.0, phi);
    ScalarFn damp = scalar_exp_antiderivative(-1.0, phi);
    auto scaled = [&damp](const Coefficient& c) {
      auto value = [c, damp](double t) { return c.value(t) * damp.value(t); };
      auto deriv = [c, damp](double t) {
        return c.derivative(t) * damp.value(t) + c.value(t) * damp.d1(t);
      };
      return Coefficient::from_scalar_fn(ScalarFn{value, deriv, [](double) { return std::nan(""); }});
    };
    c_new = scaled(eq.C());
    e_new = scaled(eq.E());
    f_new = scaled(eq.F());
  }
  EquationInstance damping_free(eq.A(), eq.B(), std::move(c_new), std::move(e_new),
                                std::move(f_new), Coefficient(Expr()), dom);
  PointTransformation T(MonotoneTimeMap::identity(dom), 0.0, 0.0, std::move(u_scale),
                        std::move(u_scale_source), "damped", "damping-free");
  return {std::move(damping_free), std::move(T)};
}

}  // namespace kdv5
