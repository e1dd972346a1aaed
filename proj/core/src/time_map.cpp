#include "kdv5/time_map.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "kdv5/errors.hpp"

namespace kdv5 {

ScalarFn scalar_constant(double c) {
  return ScalarFn{[c](double) { return c; }, [](double) { return 0.0; },
                  [](double) { return 0.0; }};
}

ScalarFn scalar_from_expr(const Expr& e) {
  if (e.depends_on(Var::x))
    throw ValidationError("scalar function must be univariate in t: `" + to_string(e) + "`");
  Expr d1e = differentiate(e, Var::t);
  Expr d2e = differentiate(d1e, Var::t);
  auto p0 = std::make_shared<CompiledExpr>(e);
  auto p1 = std::make_shared<CompiledExpr>(d1e);
  auto p2 = std::make_shared<CompiledExpr>(d2e);
  return ScalarFn{[p0](double t) { return (*p0)(t, 0.0); },
                  [p1](double t) { return (*p1)(t, 0.0); },
                  [p2](double t) { return (*p2)(t, 0.0); }};
}

ScalarFn scalar_exp_antiderivative(double sigma, std::shared_ptr<const Antiderivative> phi) {
  Expr qprime = differentiate(phi->integrand(), Var::t);
  auto qp = std::make_shared<CompiledExpr>(qprime);
  return ScalarFn{
      [sigma, phi](double t) { return std::exp(sigma * (*phi)(t)); },
      [sigma, phi](double t) { return sigma * phi->integrand_at(t) * std::exp(sigma * (*phi)(t)); },
      [sigma, phi, qp](double t) {
        double q = phi->integrand_at(t);
        return (sigma * (*qp)(t, 0.0) + sigma * sigma * q * q) * std::exp(sigma * (*phi)(t));
      }};
}

ScalarFn scalar_product(ScalarFn a, ScalarFn b) {
  auto pa = std::make_shared<ScalarFn>(std::move(a));
  auto pb = std::make_shared<ScalarFn>(std::move(b));
  return ScalarFn{[pa, pb](double t) { return pa->value(t) * pb->value(t); },
                  [pa, pb](double t) { return pa->d1(t) * pb->value(t) + pa->value(t) * pb->d1(t); },
                  [pa, pb](double t) {
                    return pa->d2(t) * pb->value(t) + 2.0 * pa->d1(t) * pb->d1(t) +
                           pa->value(t) * pb->d2(t);
                  }};
}

ScalarFn scalar_reciprocal(ScalarFn f) {
  auto pf = std::make_shared<ScalarFn>(std::move(f));
  return ScalarFn{[pf](double t) { return 1.0 / pf->value(t); },
                  [pf](double t) {
                    double v = pf->value(t);
                    return -pf->d1(t) / (v * v);
                  },
                  [pf](double t) {
                    double v = pf->value(t), d = pf->d1(t);
                    return (2.0 * d * d - v * pf->d2(t)) / (v * v * v);
                  }};
}

ScalarFn scalar_scale(double k, ScalarFn f) {
  auto pf = std::make_shared<ScalarFn>(std::move(f));
  return ScalarFn{[k, pf](double t) { return k * pf->value(t); },
                  [k, pf](double t) { return k * pf->d1(t); },
                  [k, pf](double t) { return k * pf->d2(t); }};
}

struct MonotoneTimeMap::Impl {
  ScalarFn fn;
  Interval dom;
  std::vector<std::pair<double, double>> table;  // (t, lambda(t)), t ascending
  bool increasing = true;
  std::optional<Expr> source;

  mutable std::mutex memo_mutex;
  mutable std::pair<double, double> last_invert{std::nan(""), 0.0};

  double forward(double t) const { return fn.value(t); }

  double invert(double target) const {
    {
      std::lock_guard<std::mutex> lock(memo_mutex);
      if (target == last_invert.first) return last_invert.second;
    }
    // Bracket from the sample table (values ascend with t when increasing,
    // descend otherwise), then bisection with Newton refinement.
    auto cmp = [this](const std::pair<double, double>& row, double v) {
      return increasing ? row.second < v : row.second > v;
    };
    double slack = 1e-9 * (1.0 + std::abs(range_lo()) + std::abs(range_hi()));
    if (target < std::min(range_lo(), range_hi()) - slack ||
        target > std::max(range_lo(), range_hi()) + slack)
      throw TransformError("time-map inversion target outside range");
    auto it = std::lower_bound(table.begin(), table.end(), target, cmp);
    std::size_t idx = static_cast<std::size_t>(it - table.begin());
    std::size_t lo_idx = idx > 0 ? idx - 1 : 0;
    std::size_t hi_idx = std::min(idx, table.size() - 1);
    double lo = table[lo_idx].first;
    double hi = table[hi_idx].first;
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 200; ++i) {
      double f = fn.value(t) - target;
      if (std::abs(f) <= kInvertTol * (1.0 + std::abs(target))) break;
      if ((f > 0.0) == increasing)
        hi = t;
      else
        lo = t;
      double d = fn.d1(t);
      double t_newton = d != 0.0 ? t - f / d : t;
      t = (t_newton > lo && t_newton < hi) ? t_newton : 0.5 * (lo + hi);
    }
    t = std::clamp(t, dom.lo, dom.hi);
    {
      std::lock_guard<std::mutex> lock(memo_mutex);
      last_invert = {target, t};
    }
    return t;
  }

  double range_lo() const { return table.front().second; }
  double range_hi() const { return table.back().second; }
};

MonotoneTimeMap::MonotoneTimeMap(ScalarFn fn, Interval domain, std::optional<Expr> source) {
  auto impl = std::make_shared<Impl>();
  impl->fn = std::move(fn);
  impl->dom = domain;
  impl->source = std::move(source);
  const int samples = 257;
  impl->table.reserve(samples);
  for (double t : uniform_grid(domain, samples)) impl->table.emplace_back(t, impl->fn.value(t));
  double d0 = impl->fn.d1(impl->table.front().first);
  impl->increasing = d0 > 0.0;
  for (const auto& [t, v] : impl->table) {
    double d = impl->fn.d1(t);
    if (!std::isfinite(v) || d == 0.0 || (d > 0.0) != impl->increasing)
      throw ValidationError("time map is not strictly monotone on its domain (lambda_t at t=" +
                            std::to_string(t) + " is " + std::to_string(d) + ")");
  }
  for (std::size_t i = 1; i < impl->table.size(); ++i) {
    double prev = impl->table[i - 1].second, cur = impl->table[i].second;
    if (impl->increasing ? cur <= prev : cur >= prev)
      throw ValidationError("time map sample table is not strictly monotone");
  }
  impl_ = std::move(impl);
}

MonotoneTimeMap MonotoneTimeMap::identity(Interval domain) {
  return from_expr(var_t(), domain);
}

MonotoneTimeMap MonotoneTimeMap::from_expr(const Expr& lambda, Interval domain) {
  return MonotoneTimeMap(scalar_from_expr(lambda), domain, lambda);
}

MonotoneTimeMap MonotoneTimeMap::from_antiderivative(double prefactor, const Expr& integrand,
                                                     double t0, Interval domain) {
  auto phi = std::make_shared<Antiderivative>(integrand, t0);
  ScalarFn g = scalar_from_expr(integrand);
  ScalarFn fn{[prefactor, phi](double t) { return prefactor * (*phi)(t); },
              [prefactor, g](double t) { return prefactor * g.value(t); },
              [prefactor, g](double t) { return prefactor * g.d1(t); }};
  std::optional<Expr> source;
  if (phi->closed_form()) source = number(prefactor) * *phi->closed_form();
  return MonotoneTimeMap(std::move(fn), domain, std::move(source));
}

double MonotoneTimeMap::operator()(double t) const { return impl_->fn.value(t); }

double MonotoneTimeMap::derivative(double t) const { return impl_->fn.d1(t); }

double MonotoneTimeMap::second_derivative(double t) const { return impl_->fn.d2(t); }

double MonotoneTimeMap::invert(double target) const { return impl_->invert(target); }

const Interval& MonotoneTimeMap::domain() const { return impl_->dom; }

Interval MonotoneTimeMap::range() const {
  double a = impl_->range_lo(), b = impl_->range_hi();
  return Interval(std::min(a, b), std::max(a, b));
}

bool MonotoneTimeMap::increasing() const { return impl_->increasing; }

const std::optional<Expr>& MonotoneTimeMap::source() const { return impl_->source; }

MonotoneTimeMap MonotoneTimeMap::inverse() const {
  auto base = impl_;
  ScalarFn fn{[base](double s) { return base->invert(s); },
              [base](double s) { return 1.0 / base->fn.d1(base->invert(s)); },
              [base](double s) {
                double w = base->invert(s);
                double d1 = base->fn.d1(w);
                return -base->fn.d2(w) / (d1 * d1 * d1);
              }};
  return MonotoneTimeMap(std::move(fn), range());
}

ScalarFn scalar_compose_inverse(ScalarFn f, const MonotoneTimeMap& m) {
  auto pf = std::make_shared<ScalarFn>(std::move(f));
  MonotoneTimeMap map = m;
  return ScalarFn{[pf, map](double s) { return pf->value(map.invert(s)); },
                  [pf, map](double s) {
                    double w = map.invert(s);
                    return pf->d1(w) / map.derivative(w);
                  },
                  [pf, map](double s) {
                    double w = map.invert(s);
                    double d1 = map.derivative(w);
                    return pf->d2(w) / (d1 * d1) - pf->d1(w) * map.second_derivative(w) / (d1 * d1 * d1);
                  }};
}

ScalarFn scalar_compose(ScalarFn f, const MonotoneTimeMap& m) {
  auto pf = std::make_shared<ScalarFn>(std::move(f));
  MonotoneTimeMap map = m;
  return ScalarFn{[pf, map](double t) { return pf->value(map(t)); },
                  [pf, map](double t) { return pf->d1(map(t)) * map.derivative(t); },
                  [pf, map](double t) {
                    double w = map(t), d = map.derivative(t);
                    return pf->d2(w) * d * d + pf->d1(w) * map.second_derivative(t);
                  }};
}

}  // namespace kdv5
