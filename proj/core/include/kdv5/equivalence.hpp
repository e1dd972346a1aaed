#ifndef KDV5_EQUIVALENCE_HPP
#define KDV5_EQUIVALENCE_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "kdv5/invariants.hpp"
#include "kdv5/transform.hpp"

namespace kdv5 {

/// Constants of the target form
/// u_t + m1 u_xxxxx + m2 u_xxx + m3 u u_xxx + m4 u u_x + m5 u_x u_xx = 0.
/// All five must be nonzero.
struct TargetConstants {
  double m1, m2, m3, m4, m5;

  TargetConstants(double m1_, double m2_, double m3_, double m4_, double m5_);

  /// Invariant values this target assumes.
  double j0_1() const { return m1 * m4 / (m2 * m3); }
  double j0_2() const { return m5 / m3; }
};

EquationInstance constant_instance(const TargetConstants& m, Interval domain);

struct ConditionCheck {
  std::string name;
  bool passed = false;
  double residual = 0.0;
};

/// Outcome of the necessary-condition screen. "candidate" only licenses
/// constructing and verifying an explicit transformation; it never certifies
/// equivalence on its own.
struct EquivalenceVerdict {
  bool candidate = false;
  std::vector<ConditionCheck> checks;
};

/// Requires a damping-free instance (apply remove_damping first). Without a
/// target, checks the m-independent conditions (J1_0, J2_0 constant; J1_1,
/// J2_1 identically zero); with a target, additionally matches the constants.
EquivalenceVerdict check_necessary_equivalence(const EquationInstance& eq,
                                               const std::optional<TargetConstants>& m,
                                               const SignatureOptions& opts = {});

/// Result of matching an instance against the recognized coefficient shapes.
/// On success carries G = A, H = C (as expressions when available), the
/// extracted constant c1 = B/A and the invariant ratios r1 = AE/(BC),
/// r2 = F/C; reconstruction_residual measures how well (G, H, c1, r1, r2)
/// reproduce the input coefficients.
struct RecognitionResult {
  bool matched = false;
  std::optional<Expr> G;
  std::optional<Expr> H;
  double c1 = std::nan("");
  double r1 = std::nan("");
  double r2 = std::nan("");
  double reconstruction_residual = std::nan("");
  std::vector<ConditionCheck> diagnostics;
  Interval domain;
};

/// Damping-free shape: A = G, B = c1 G, C, E, F all proportional to G.
RecognitionResult recognize_ed2(const EquationInstance& eq, const SignatureOptions& opts = {});

/// Damped shape: A = G, C = H, B/A and F/C and AE/(BC) constant, and
/// Q == C_t/C - A_t/A pointwise (absolute tolerance 1e-9).
RecognitionResult recognize_transed2(const EquationInstance& eq, const SignatureOptions& opts = {});

/// Explicit transformation from the recognized variable-coefficient instance
/// ("old" side) to the constant-coefficient target ("new" side):
///   t_new = (c1/m2)^(5/2) m1^(3/2) * integral of G,   x_new = sqrt(c1 m1/m2) (x + k2),
///   u_new = (m2 H / (c1 m3 G)) u.
/// Throws TransformError when the radicands are nonpositive or the time map
/// is not increasing on the domain.
PointTransformation build_transformation(const RecognitionResult& rec, const TargetConstants& m,
                                         double k2);

static constexpr double kDampingConsistencyTol = 1e-9;

}  // namespace kdv5

#endif  // KDV5_EQUIVALENCE_HPP
