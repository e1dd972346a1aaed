#ifndef KDV5_INTERVAL_HPP
#define KDV5_INTERVAL_HPP

#include <cmath>
#include <vector>

#include "kdv5/errors.hpp"

namespace kdv5 {

/// Closed interval [lo, hi], lo <= hi, both finite.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi)
      throw ValidationError("invalid interval [" + std::to_string(lo_) + ", " +
                            std::to_string(hi_) + "]");
  }

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double v, double slack = 0.0) const { return v >= lo - slack && v <= hi + slack; }
  bool contains(const Interval& other, double slack = 0.0) const {
    return other.lo >= lo - slack && other.hi <= hi + slack;
  }
};

/// n uniformly spaced points spanning the interval; n == 1 yields {lo}.
inline std::vector<double> uniform_grid(const Interval& iv, int n) {
  if (n < 1) throw ValidationError("grid needs at least one point");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    g.push_back(iv.lo);
    return g;
  }
  for (int i = 0; i < n; ++i)
    g.push_back(iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return g;
}

}  // namespace kdv5

#endif  // KDV5_INTERVAL_HPP
