#include "kdv5/verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "kdv5/errors.hpp"

namespace kdv5 {

VerificationReport pde_residual(const ClosedFormSolution& sol, const EquationInstance& eq,
                                const GridSpec& grid, double threshold) {
  VerificationReport report;
  report.grid = grid;
  report.threshold = threshold;
  const SolutionField& u = *sol.field;
  std::vector<double> ts = uniform_grid(grid.t, grid.nt);
  std::vector<double> xs = uniform_grid(grid.x, grid.nx);
  for (double t : ts) {
    double a = eq.A().value(t), b = eq.B().value(t), c = eq.C().value(t);
    double e = eq.E().value(t), f = eq.F().value(t), q = eq.Q().value(t);
    for (double x : xs) {
      double uv = u.value(t, x);
      double ut = u.time_derivative(t, x);
      double u1 = u.space_derivative(1, t, x);
      double u2 = u.space_derivative(2, t, x);
      double u3 = u.space_derivative(3, t, x);
      double u5 = u.space_derivative(5, t, x);
      std::array<double, 7> terms = {ut,          a * u5,      b * u3, c * uv * u3,
                                     e * uv * u1, f * u1 * u2, q * uv};
      double residual = 0.0;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        residual += terms[i];
        report.term_max[i] = std::max(report.term_max[i], std::abs(terms[i]));
      }
      if (std::abs(residual) > report.max_abs_residual) {
        report.max_abs_residual = std::abs(residual);
        report.argmax_t = t;
        report.argmax_x = x;
      }
    }
  }
  report.pass = report.max_abs_residual <= threshold;
  return report;
}

double default_threshold(const ClosedFormSolution& sol) {
  return sol.family == SolutionFamily::Transformed ? 1e-6 : 1e-8;
}

void write_sample_csv(const ClosedFormSolution& sol, const GridSpec& grid, std::ostream& out) {
  const SolutionField& u = *sol.field;
  out << "t,x,u\n";
  char buf[96];
  for (double t : uniform_grid(grid.t, grid.nt)) {
    for (double x : uniform_grid(grid.x, grid.nx)) {
      double v = u.value(t, x);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", t, x, v);
      out << buf;
    }
  }
  if (!out) throw Error("failed while writing CSV sample");
}

void write_sample_csv(const ClosedFormSolution& sol, const GridSpec& grid,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open CSV output file: " + path);
  write_sample_csv(sol, grid, out);
}

}  // namespace kdv5
