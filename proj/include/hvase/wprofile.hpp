#pragma once

#include <vector>

namespace hvase {

/// Closed interval around one inner-height on which the braiding factor vanishes.
/// Outside it the factor ramps linearly (relative to its plateau) over `ramp`.
struct ZeroInterval {
  double center = 0.0;  // the inner-height
  double radius = 0.0;  // nominal half width before clipping at the vase top
  double lo = 0.0;
  double hi = 0.0;
  double ramp = 0.0;

  friend bool operator==(const ZeroInterval&, const ZeroInterval&) = default;
};

/// z-only braiding factor w_i of vase i; the embedded fourth coordinate is |phi| * w_i(z).
struct WProfile {
  int vase = 1;
  double theta = 0.0;                   // plateau slope: w_i(z) = theta * z away from intervals
  std::vector<ZeroInterval> intervals;  // sorted by descending center, pairwise disjoint

  double top() const { return 1.0 / vase; }

  friend bool operator==(const WProfile&, const WProfile&) = default;
};

/// Throws std::domain_error for z outside (0, 1/vase].
double w_eval(const WProfile& profile, double z);

/// Interval containing z, or nullptr.
const ZeroInterval* zero_interval_at(const WProfile& profile, double z);

}  // namespace hvase
