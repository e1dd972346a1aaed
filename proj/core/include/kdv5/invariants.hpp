#ifndef KDV5_INVARIANTS_HPP
#define KDV5_INVARIANTS_HPP

#include <array>
#include <optional>
#include <vector>

#include "kdv5/equation.hpp"

namespace kdv5 {

/// The six differential invariants of the damping-free subclass evaluated at
/// one time. Entries are NaN where their denominator vanishes.
struct InvariantPoint {
  double j0_1;  // A E / (B C)
  double j0_2;  // F / C
  double j1_1;  // A (A_t B - A B_t)^2 / B^7
  double j1_2;  // A (A_t C - A C_t)^2 / (B^5 C^2)
  double j1_3;  // A^3 (A_t E - A E_t)^2 / (B^7 C^2)
  double j1_4;  // A (A_t F - A F_t)^2 / (B^5 C^2)
};

struct SignatureOptions {
  int grid_points = 101;
  double rel_tol = 1e-9;       // constancy: max-min <= rel_tol * (1 + median|v|)
  double zero_abs_tol = 1e-10; // invariant equations: |expr| <= tol at every point
  double denom_tol = 1e-12;    // |B| or |C| below this marks invariants undefined
};

/// One invariant sampled over the grid, with its constancy verdict.
/// An invariant whose denominator vanishes anywhere is marked undefined and
/// its constancy verdict is poisoned (false).
struct SampledInvariant {
  std::vector<double> values;
  bool defined = true;
  bool constant = false;
  std::optional<double> constant_value;  // median, when constant
};

/// Truth values of the nine invariant equations: the five zero-order ones
/// (each coefficient identically zero) and the four first-order Wronskian
/// conditions A_t X - A X_t = 0 for X in {B, C, E, F}.
struct InvariantEquationFlags {
  bool a_zero = false, b_zero = false, c_zero = false, e_zero = false, f_zero = false;
  bool wronskian_ab = false, wronskian_ac = false, wronskian_ae = false, wronskian_af = false;

  friend bool operator==(const InvariantEquationFlags&, const InvariantEquationFlags&) = default;
};

struct InvariantSignature {
  std::vector<double> grid;
  SampledInvariant j0_1, j0_2, j1_1, j1_2, j1_3, j1_4;
  InvariantEquationFlags flags;
};

InvariantPoint invariants_at(const EquationInstance& eq, double t);

std::array<SampledInvariant, 2> zero_order_invariants(const EquationInstance& eq,
                                                      const SignatureOptions& opts = {});
std::array<SampledInvariant, 4> first_order_invariants(const EquationInstance& eq,
                                                       const SignatureOptions& opts = {});
InvariantEquationFlags invariant_equation_flags(const EquationInstance& eq,
                                                const SignatureOptions& opts = {});

InvariantSignature compute_signature(const EquationInstance& eq, const SignatureOptions& opts = {});

}  // namespace kdv5

#endif  // KDV5_INVARIANTS_HPP
