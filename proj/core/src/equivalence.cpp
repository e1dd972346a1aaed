#include "kdv5/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "kdv5/errors.hpp"

namespace kdv5 {

TargetConstants::TargetConstants(double m1_, double m2_, double m3_, double m4_, double m5_)
    : m1(m1_), m2(m2_), m3(m3_), m4(m4_), m5(m5_) {
  const double* ms[] = {&m1, &m2, &m3, &m4, &m5};
  for (int i = 0; i < 5; ++i)
    if (!std::isfinite(*ms[i]) || *ms[i] == 0.0)
      throw ValidationError("target constant m" + std::to_string(i + 1) + " must be finite and nonzero");
}

EquationInstance constant_instance(const TargetConstants& m, Interval domain) {
  return EquationInstance(Coefficient(number(m.m1)), Coefficient(number(m.m2)),
                          Coefficient(number(m.m3)), Coefficient(number(m.m4)),
                          Coefficient(number(m.m5)), Coefficient(Expr()), domain);
}

namespace {

void require_damping_free(const EquationInstance& eq, const char* op) {
  if (!eq.damping_free())
    throw ValidationError(std::string(op) + " requires Q == 0; apply remove_damping first");
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::isfinite(x) ? std::max(m, std::abs(x)) : std::nan("");
  return m;
}

/// Median-based constant extraction with a max-relative-deviation test.
struct ExtractedConstant {
  bool constant = false;
  double value = std::nan("");
  double deviation = std::nan("");
};

ExtractedConstant extract_constant(std::vector<double> values, double rel_tol) {
  ExtractedConstant out;
  for (double v : values)
    if (!std::isfinite(v)) return out;
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  double med = sorted[sorted.size() / 2];
  double dev = 0.0;
  for (double v : values) dev = std::max(dev, std::abs(v - med));
  out.value = med;
  out.deviation = dev / (1.0 + std::abs(med));
  out.constant = out.deviation <= rel_tol;
  return out;
}

ConditionCheck constancy_check(const std::string& name, const SampledInvariant& inv,
                               double target_hint = std::nan("")) {
  ConditionCheck c{name, false, std::nan("")};
  if (!inv.defined) return c;
  auto [mn, mx] = std::minmax_element(inv.values.begin(), inv.values.end());
  double med = 0.0;
  {
    std::vector<double> sorted = inv.values;
    std::sort(sorted.begin(), sorted.end());
    med = std::abs(sorted[sorted.size() / 2]);
  }
  c.residual = (*mx - *mn) / (1.0 + med);
  c.passed = inv.constant;
  (void)target_hint;
  return c;
}

}  // namespace

EquivalenceVerdict check_necessary_equivalence(const EquationInstance& eq,
                                               const std::optional<TargetConstants>& m,
                                               const SignatureOptions& opts) {
  require_damping_free(eq, "check_necessary_equivalence");
  InvariantSignature sig = compute_signature(eq, opts);
  EquivalenceVerdict v;
  v.checks.push_back(constancy_check("J1_0 constant", sig.j0_1));
  v.checks.push_back(constancy_check("J2_0 constant", sig.j0_2));
  {
    ConditionCheck c{"J1_1 identically zero", false, std::nan("")};
    if (sig.j1_1.defined) {
      c.residual = max_abs(sig.j1_1.values);
      c.passed = c.residual <= opts.zero_abs_tol;
    }
    v.checks.push_back(c);
  }
  {
    ConditionCheck c{"J2_1 identically zero", false, std::nan("")};
    if (sig.j1_2.defined) {
      c.residual = max_abs(sig.j1_2.values);
      c.passed = c.residual <= opts.zero_abs_tol;
    }
    v.checks.push_back(c);
  }
  if (m) {
    auto match = [&opts](const std::string& name, const SampledInvariant& inv, double target) {
      ConditionCheck c{name, false, std::nan("")};
      if (inv.defined && inv.constant_value) {
        c.residual = std::abs(*inv.constant_value - target) / (1.0 + std::abs(target));
        c.passed = c.residual <= opts.rel_tol;
      }
      return c;
    };
    v.checks.push_back(match("J1_0 matches m1*m4/(m2*m3)", sig.j0_1, m->j0_1()));
    v.checks.push_back(match("J2_0 matches m5/m3", sig.j0_2, m->j0_2()));
  }
  v.candidate = std::all_of(v.checks.begin(), v.checks.end(),
                            [](const ConditionCheck& c) { return c.passed; });
  return v;
}

namespace {

struct RatioSamples {
  std::vector<double> grid;
  std::vector<double> b_over_a, c_over_a, e_over_a, f_over_a, f_over_c, ae_over_bc;
  std::vector<double> q_minus_logderiv;  // Q - (C_t/C - A_t/A)
};

RatioSamples sample_ratios(const EquationInstance& eq, const SignatureOptions& opts) {
  RatioSamples r;
  r.grid = uniform_grid(eq.t_domain(), opts.grid_points);
  for (double t : r.grid) {
    double a = eq.A().value(t), b = eq.B().value(t), c = eq.C().value(t);
    double e = eq.E().value(t), f = eq.F().value(t), q = eq.Q().value(t);
    double at = eq.A().derivative(t), ct = eq.C().derivative(t);
    r.b_over_a.push_back(b / a);
    r.c_over_a.push_back(c / a);
    r.e_over_a.push_back(e / a);
    r.f_over_a.push_back(f / a);
    r.f_over_c.push_back(f / c);
    r.ae_over_bc.push_back(b == 0.0 ? std::nan("") : a * e / (b * c));
    r.q_minus_logderiv.push_back(q - (ct / c - at / a));
  }
  return r;
}

double reconstruction_residual(const EquationInstance& eq, const std::vector<double>& grid,
                               double c1, double r1, double r2) {
  // A = G and C = H hold by construction; measure B = c1 G, E = c1 r1 H, F = r2 H.
  double worst = 0.0;
  for (double t : grid) {
    double a = eq.A().value(t), b = eq.B().value(t), c = eq.C().value(t);
    double e = eq.E().value(t), f = eq.F().value(t);
    worst = std::max(worst, std::abs(b - c1 * a) / (1.0 + std::abs(b)));
    worst = std::max(worst, std::abs(e - c1 * r1 * c) / (1.0 + std::abs(e)));
    worst = std::max(worst, std::abs(f - r2 * c) / (1.0 + std::abs(f)));
  }
  return worst;
}

}  // namespace

RecognitionResult recognize_ed2(const EquationInstance& eq, const SignatureOptions& opts) {
  require_damping_free(eq, "recognize_ed2");
  RecognitionResult out;
  out.domain = eq.t_domain();
  RatioSamples r = sample_ratios(eq, opts);
  ExtractedConstant c1 = extract_constant(r.b_over_a, opts.rel_tol);
  ExtractedConstant ca = extract_constant(r.c_over_a, opts.rel_tol);
  ExtractedConstant ea = extract_constant(r.e_over_a, opts.rel_tol);
  ExtractedConstant fa = extract_constant(r.f_over_a, opts.rel_tol);
  out.diagnostics = {
      ConditionCheck{"B/A constant", c1.constant, c1.deviation},
      ConditionCheck{"C/A constant", ca.constant, ca.deviation},
      ConditionCheck{"E/A constant", ea.constant, ea.deviation},
      ConditionCheck{"F/A constant", fa.constant, fa.deviation},
  };
  out.matched = c1.constant && ca.constant && ea.constant && fa.constant;
  if (!out.matched) return out;
  out.c1 = c1.value;
  out.r1 = extract_constant(r.ae_over_bc, 1.0).value;  // constant by the ratios above
  out.r2 = extract_constant(r.f_over_c, 1.0).value;
  if (eq.A().source()) out.G = eq.A().source();
  if (eq.C().source()) out.H = eq.C().source();
  out.reconstruction_residual = reconstruction_residual(eq, r.grid, out.c1, out.r1, out.r2);
  return out;
}

RecognitionResult recognize_transed2(const EquationInstance& eq, const SignatureOptions& opts) {
  RecognitionResult out;
  out.domain = eq.t_domain();
  RatioSamples r = sample_ratios(eq, opts);
  ExtractedConstant c1 = extract_constant(r.b_over_a, opts.rel_tol);
  ExtractedConstant fc = extract_constant(r.f_over_c, opts.rel_tol);
  ExtractedConstant ae = extract_constant(r.ae_over_bc, opts.rel_tol);
  double q_residual = max_abs(r.q_minus_logderiv);
  bool q_ok = q_residual <= kDampingConsistencyTol;
  out.diagnostics = {
      ConditionCheck{"B/A constant", c1.constant, c1.deviation},
      ConditionCheck{"F/C constant", fc.constant, fc.deviation},
      ConditionCheck{"AE/(BC) constant", ae.constant, ae.deviation},
      ConditionCheck{"Q == C_t/C - A_t/A", q_ok, q_residual},
  };
  out.matched = c1.constant && fc.constant && ae.constant && q_ok;
  if (!out.matched) return out;
  out.c1 = c1.value;
  out.r1 = ae.value;
  out.r2 = fc.value;
  if (eq.A().source()) out.G = eq.A().source();
  if (eq.C().source()) out.H = eq.C().source();
  out.reconstruction_residual = reconstruction_residual(eq, r.grid, out.c1, out.r1, out.r2);
  return out;
}

PointTransformation build_transformation(const RecognitionResult& rec, const TargetConstants& m,
                                         double k2) {
  if (!rec.matched) throw TransformError("recognition did not match; no transformation to build");
  if (!rec.G || !rec.H)
    throw TransformError("recognized coefficients lack expression forms; cannot build the map");
  double time_radicand = rec.c1 / m.m2;
  double space_radicand = rec.c1 * m.m1 / m.m2;
  if (time_radicand <= 0.0 || space_radicand <= 0.0)
    throw TransformError("no real transformation with these constants (c1/m2 = " +
                         std::to_string(time_radicand) + ", c1*m1/m2 = " +
                         std::to_string(space_radicand) + " must both be positive)");
  double pre = std::pow(time_radicand, 2.5) * std::pow(m.m1, 1.5);
  MonotoneTimeMap lambda = [&]() {
    try {
      return MonotoneTimeMap::from_antiderivative(pre, *rec.G, rec.domain.lo, rec.domain);
    } catch (const ValidationError& err) {
      throw TransformError(std::string("non-monotone time map: ") + err.what());
    }
  }();
  if (!lambda.increasing())
    throw TransformError("time map decreases on the domain (G < 0); orientation unsupported");
  double k1 = 0.5 * std::log(space_radicand);
  Expr s_expr = number(m.m2) * *rec.H / (number(rec.c1 * m.m3) * *rec.G);
  PointTransformation T(std::move(lambda), k1, k2, scalar_from_expr(s_expr), s_expr,
                        "variable-coefficient", "constant-coefficient");
  T.attach_equivalence(EquivalencePayload{*rec.G, *rec.H, rec.c1, pre, rec.domain.lo, k2});
  return T;
}

}  // namespace kdv5
