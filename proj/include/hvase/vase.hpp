#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hvase/geometry.hpp"
#include "hvase/wprofile.hpp"

namespace hvase {

struct VaseParams {
  double m = 1.0;  // wall height
  double p = 1.0;  // oscillation parameter

  VaseParams() = default;
  VaseParams(double height, double oscillation);

  friend bool operator==(const VaseParams&, const VaseParams&) = default;
};

/// r = (|phi|/pi) sin(pi p / z) + 2. Throws std::domain_error for z <= 0.
double wall_radius(double p, double phi, double z);

/// k-th inner-height 2p/(4k+3), where sin(pi p / h) = -1.
double inner_height(double p, std::size_t k);

/// Smallest k with inner_height(p, k) <= m.
std::size_t first_inner_index(const VaseParams& v);

/// The `count` largest inner-heights not above m, descending.
std::vector<double> inner_heights(const VaseParams& v, std::size_t count);

/// Inner-heights in (z_lo, m], descending.
std::vector<double> inner_heights_above(const VaseParams& v, double z_lo);

/// `samples` points of the horizontal section at height c, phi from -pi to pi, w = 0.
std::vector<CylPoint4> inner_curve(const VaseParams& v, double c, std::size_t samples);

/// Pedestal disc {r <= 3, z = 0, w = 0}.
bool pedestal_contains(const CylPoint4& pt);

inline constexpr double kPedestalRadius = 3.0;

/// Descending heights in (z_min, top] with at least `oversample` samples per local
/// period 2 z^2 / p of sin(pi p / z).
std::vector<double> adaptive_z_grid(double top, double p, double z_min, double oversample,
                                    std::size_t budget = 50'000'000);

struct WallResolution {
  std::size_t phi_steps = 64;  // even; columns phi = -pi .. pi inclusive
  double oversample = 8.0;     // Q
  std::size_t sample_budget = 20'000'000;

  friend bool operator==(const WallResolution&, const WallResolution&) = default;
};

class SampleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sampled wall. Column 0 is phi = -pi and the last column phi = +pi; the two are the
/// same ray and weld into one vertex column on export.
struct WallMesh {
  int vase = 1;
  std::vector<double> phis;
  std::vector<double> zs;  // strictly decreasing
  std::vector<CylPoint4> points;
  double z_min = 0.0;  // heights in (0, z_min] are not sampled

  const CylPoint4& at(std::size_t zi, std::size_t pi) const { return points[zi * phis.size() + pi]; }
  std::size_t welded_vertex_count() const { return zs.size() * (phis.size() - 1); }

  friend bool operator==(const WallMesh&, const WallMesh&) = default;
};

/// Samples the wall of `v`; w = |phi| * w_i(z) when a profile is given, else 0.
WallMesh sample_wall(const VaseParams& v, const WProfile* profile, int vase_index, const WallResolution& res,
                     double z_min);

}  // namespace hvase
