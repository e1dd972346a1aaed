#include "kdv5/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace kdv5 {

namespace {

double median_abs(const std::vector<double>& v) {
  std::vector<double> m;
  m.reserve(v.size());
  for (double x : v) m.push_back(std::abs(x));
  std::sort(m.begin(), m.end());
  return m.empty() ? 0.0 : m[m.size() / 2];
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.empty() ? 0.0 : v[v.size() / 2];
}

SampledInvariant classify(std::vector<double> values, const SignatureOptions& opts) {
  SampledInvariant s;
  s.values = std::move(values);
  for (double v : s.values)
    if (!std::isfinite(v)) s.defined = false;
  if (!s.defined) return s;  // undefined poisons the verdict
  auto [mn, mx] = std::minmax_element(s.values.begin(), s.values.end());
  double spread = *mx - *mn;
  if (spread <= opts.rel_tol * (1.0 + median_abs(s.values))) {
    s.constant = true;
    s.constant_value = median(s.values);
  }
  return s;
}

struct CoefficientSamples {
  std::vector<double> grid;
  std::vector<double> a, b, c, e, f;      // values
  std::vector<double> at, bt, ct, et, ft;  // t-derivatives
};

CoefficientSamples sample(const EquationInstance& eq, const SignatureOptions& opts) {
  CoefficientSamples s;
  s.grid = uniform_grid(eq.t_domain(), opts.grid_points);
  auto pull = [&s](const Coefficient& c, std::vector<double>& v, std::vector<double>& d) {
    v.reserve(s.grid.size());
    d.reserve(s.grid.size());
    for (double t : s.grid) {
      v.push_back(c.value(t));
      d.push_back(c.derivative(t));
    }
  };
  pull(eq.A(), s.a, s.at);
  pull(eq.B(), s.b, s.bt);
  pull(eq.C(), s.c, s.ct);
  pull(eq.E(), s.e, s.et);
  pull(eq.F(), s.f, s.ft);
  return s;
}

double guarded_div(double num, double den) { return den == 0.0 ? std::nan("") : num / den; }

InvariantPoint invariants_at(const EquationInstance& eq, double t) {
  double a = eq.A().value(t), b = eq.B().value(t), c = eq.C().value(t);
  double e = eq.E().value(t), f = eq.F().value(t);
  double at = eq.A().derivative(t), bt = eq.B().derivative(t), ct = eq.C().derivative(t);
  double et = eq.E().derivative(t), ft = eq.F().derivative(t);
  double b5 = std::pow(b, 5), b7 = std::pow(b, 7), c2 = c * c;
  double wab = at * b - a * bt, wac = at * c - a * ct;
  double wae = at * e - a * et, waf = at * f - a * ft;
  return InvariantPoint{
      guarded_div(a * e, b * c),
      guarded_div(f, c),
      guarded_div(a * wab * wab, b7),
      guarded_div(a * wac * wac, b5 * c2),
      guarded_div(a * a * a * wae * wae, b7 * c2),
      guarded_div(a * waf * waf, b5 * c2),
  };
}

std::array<SampledInvariant, 2> zero_order_from(const CoefficientSamples& s,
                                                const SignatureOptions& opts) {
  bool b_ok = true, c_ok = true;
  for (double v : s.b) b_ok = b_ok && std::abs(v) > opts.denom_tol;
  for (double v : s.c) c_ok = c_ok && std::abs(v) > opts.denom_tol;
  std::vector<double> j1(s.grid.size()), j2(s.grid.size());
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    j1[i] = (b_ok && c_ok) ? guarded_div(s.a[i] * s.e[i], s.b[i] * s.c[i]) : std::nan("");
    j2[i] = c_ok ? guarded_div(s.f[i], s.c[i]) : std::nan("");
  }
  return {classify(std::move(j1), opts), classify(std::move(j2), opts)};
}

std::array<SampledInvariant, 4> first_order_from(const CoefficientSamples& s,
                                                 const SignatureOptions& opts) {
  bool b_ok = true, c_ok = true;
  for (double v : s.b) b_ok = b_ok && std::abs(v) > opts.denom_tol;
  for (double v : s.c) c_ok = c_ok && std::abs(v) > opts.denom_tol;
  std::size_t n = s.grid.size();
  std::vector<double> j1(n), j2(n), j3(n), j4(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a = s.a[i], b = s.b[i], c = s.c[i], e = s.e[i], f = s.f[i];
    double b5 = std::pow(b, 5), b7 = std::pow(b, 7), c2 = c * c;
    double wab = s.at[i] * b - a * s.bt[i];
    double wac = s.at[i] * c - a * s.ct[i];
    double wae = s.at[i] * e - a * s.et[i];
    double waf = s.at[i] * f - a * s.ft[i];
    j1[i] = b_ok ? guarded_div(a * wab * wab, b7) : std::nan("");
    j2[i] = (b_ok && c_ok) ? guarded_div(a * wac * wac, b5 * c2) : std::nan("");
    j3[i] = (b_ok && c_ok) ? guarded_div(a * a * a * wae * wae, b7 * c2) : std::nan("");
    j4[i] = (b_ok && c_ok) ? guarded_div(a * waf * waf, b5 * c2) : std::nan("");
  }
  return {classify(std::move(j1), opts), classify(std::move(j2), opts),
          classify(std::move(j3), opts), classify(std::move(j4), opts)};
}

InvariantEquationFlags flags_from(const CoefficientSamples& s, const SignatureOptions& opts) {
  auto all_small = [&opts](const std::vector<double>& v) {
    for (double x : v)
      if (!(std::abs(x) <= opts.zero_abs_tol)) return false;
    return true;
  };
  std::size_t n = s.grid.size();
  std::vector<double> wab(n), wac(n), wae(n), waf(n);
  for (std::size_t i = 0; i < n; ++i) {
    wab[i] = s.at[i] * s.b[i] - s.a[i] * s.bt[i];
    wac[i] = s.at[i] * s.c[i] - s.a[i] * s.ct[i];
    wae[i] = s.at[i] * s.e[i] - s.a[i] * s.et[i];
    waf[i] = s.at[i] * s.f[i] - s.a[i] * s.ft[i];
  }
  InvariantEquationFlags flags;
  flags.a_zero = all_small(s.a);
  flags.b_zero = all_small(s.b);
  flags.c_zero = all_small(s.c);
  flags.e_zero = all_small(s.e);
  flags.f_zero = all_small(s.f);
  flags.wronskian_ab = all_small(wab);
  flags.wronskian_ac = all_small(wac);
  flags.wronskian_ae = all_small(wae);
  flags.wronskian_af = all_small(waf);
  return flags;
}

}  // namespace

std::array<SampledInvariant, 2> zero_order_invariants(const EquationInstance& eq,
                                                      const SignatureOptions& opts) {
  return zero_order_from(sample(eq, opts), opts);
}

std::array<SampledInvariant, 4> first_order_invariants(const EquationInstance& eq,
                                                       const SignatureOptions& opts) {
  return first_order_from(sample(eq, opts), opts);
}

InvariantEquationFlags invariant_equation_flags(const EquationInstance& eq,
                                                const SignatureOptions& opts) {
  return flags_from(sample(eq, opts), opts);
}

InvariantSignature compute_signature(const EquationInstance& eq, const SignatureOptions& opts) {
  CoefficientSamples s = sample(eq, opts);
  InvariantSignature sig;
  sig.grid = s.grid;
  auto zero = zero_order_from(s, opts);
  sig.j0_1 = std::move(zero[0]);
  sig.j0_2 = std::move(zero[1]);
  auto first = first_order_from(s, opts);
  sig.j1_1 = std::move(first[0]);
  sig.j1_2 = std::move(first[1]);
  sig.j1_3 = std::move(first[2]);
  sig.j1_4 = std::move(first[3]);
  sig.flags = flags_from(s, opts);
  return sig;
}

}  // namespace kdv5
