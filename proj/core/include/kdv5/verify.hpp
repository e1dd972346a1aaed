#ifndef KDV5_VERIFY_HPP
#define KDV5_VERIFY_HPP

#include <array>
#include <iosfwd>
#include <string>

#include "kdv5/solutions.hpp"

namespace kdv5 {

struct GridSpec {
  Interval t{0.0, 1.0};
  Interval x{-10.0, 10.0};
  int nt = 101;
  int nx = 401;
};

/// Names of the seven residual terms, in report order.
inline constexpr std::array<const char*, 7> kResidualTermNames = {
    "u_t", "A*u_xxxxx", "B*u_xxx", "C*u*u_xxx", "E*u*u_x", "F*u_x*u_xx", "Q*u"};

struct VerificationReport {
  GridSpec grid;
  double max_abs_residual = 0.0;
  double argmax_t = 0.0;
  double argmax_x = 0.0;
  std::array<double, 7> term_max{};  // max |term| over the grid, per kResidualTermNames
  double threshold = 0.0;
  bool pass = false;
};

/// Grid evaluation of u_t + A u_xxxxx + B u_xxx + C u u_xxx + E u u_x
/// + F u_x u_xx + Q u using the solution's symbolic derivatives. The argmax
/// location is deterministic (row-major in t, then x; strict improvement).
VerificationReport pde_residual(const ClosedFormSolution& sol, const EquationInstance& eq,
                                const GridSpec& grid, double threshold);

/// Default pass thresholds: 1e-8 for directly constructed families, 1e-6 for
/// transformed solutions (time-map inversion noise under fifth derivatives).
double default_threshold(const ClosedFormSolution& sol);

/// CSV sample: header "t,x,u", one row per node, row-major in t then x,
/// 17 significant digits.
void write_sample_csv(const ClosedFormSolution& sol, const GridSpec& grid, std::ostream& out);
void write_sample_csv(const ClosedFormSolution& sol, const GridSpec& grid,
                      const std::string& path);

}  // namespace kdv5

#endif  // KDV5_VERIFY_HPP
