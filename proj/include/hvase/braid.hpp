#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hvase/geometry.hpp"
#include "hvase/vase.hpp"
#include "hvase/wprofile.hpp"

namespace hvase {

/// Oscillation parameters p_1..p_N. Decimal strings are authoritative; `values` are
/// parsed from them with strtod.
struct PSequence {
  std::vector<std::string> decimals;
  std::vector<double> values;
  std::string provenance;
  bool verified_no_coincidence = false;

  static PSequence from_decimals(std::vector<std::string> decimals, std::string provenance);

  std::size_t size() const { return values.size(); }
  double p(int vase) const { return values.at(static_cast<std::size_t>(vase - 1)); }

  friend bool operator==(const PSequence&, const PSequence&) = default;
};

inline constexpr int kPDigits = 50;

/// p_i = sqrt(i-th prime) to 50 significant digits.
PSequence choose_p_sequence(std::size_t n);

/// Heights z in [z_lo, 1/i] where sin(pi p_i / z) = sin(pi p_j / z):
/// z = |p_i - p_j| / (2k) and z = (p_i + p_j) / (2k + 1). Descending.
std::vector<double> intersection_heights(double p_i, double p_j, int i, double z_lo);

struct IndependenceReport {
  bool pass = true;
  double min_gap = std::numeric_limits<double>::infinity();
  int vase_i = 0;
  int vase_j = 0;
  double inner_height = 0.0;
  double h_point = 0.0;
  double tolerance = 0.0;
  std::size_t depth = 0;
};

/// Minimum gap between the first `depth` inner-heights of vase i and the points of
/// H_i^j, over all j < i.
IndependenceReport verify_independence(const PSequence& ps, std::size_t depth, double tolerance = 1e-9);

/// Runs verify_independence and records the outcome on `ps`.
IndependenceReport certify(PSequence& ps, std::size_t depth, double tolerance = 1e-9);

/// Every intersection height involving vase i (with earlier and later vases) in [z_lo, 1/i].
std::vector<double> collision_heights(const PSequence& ps, int i, double z_lo);

/// Shrink applied to theta_i when two profiles collide at an intersection height.
extern const double kRepairFactor;
inline constexpr int kRepairBudget = 32;

double default_theta(int vase);

class ProfileRepairError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProfileCollision {
  int vase_i = 0;
  int vase_j = 0;
  double height = 0.0;
  double separation = 0.0;
};

struct ProfileCheck {
  bool wcoord1 = true;   // pi * w_i(z) < z
  bool wcoord15 = true;  // |w_i - w_j| > tol on H_i^j
  bool wcoord2 = true;   // w_i = 0 on an open neighbourhood of each inner-height above z_min
  double max_w_over_z = 0.0;
  double min_separation = std::numeric_limits<double>::infinity();
  double min_separation_height = 0.0;
  int min_pair_i = 0;
  int min_pair_j = 0;
  std::size_t h_points_checked = 0;
  std::size_t inner_heights_checked = 0;
  std::vector<ProfileCollision> collisions;
  std::vector<std::string> problems;

  bool pass() const { return wcoord1 && wcoord15 && wcoord2; }
};

ProfileCheck verify_profile_conditions(const std::vector<WProfile>& profiles, const PSequence& ps, double z_min,
                                       double tolerance = 1e-9);

/// Builds w_1..w_N with zero intervals around every inner-height above z_min.
/// Requires ps.verified_no_coincidence.
std::vector<WProfile> build_w_profiles(const PSequence& ps, double z_min, double tolerance = 1e-9);

struct BhvScene {
  PSequence ps;
  std::vector<WProfile> profiles;
  double z_min = 0.0;
  std::vector<WallMesh> meshes;  // empty unless sampled

  int size() const { return static_cast<int>(ps.size()); }
  VaseParams vase(int i) const { return VaseParams(1.0 / i, ps.p(i)); }
  const WProfile& profile(int i) const { return profiles.at(static_cast<std::size_t>(i - 1)); }

  friend bool operator==(const BhvScene&, const BhvScene&) = default;
};

/// Assembles the braided vase; samples meshes when `res` is non-null.
BhvScene build_bhv(PSequence ps, std::vector<WProfile> profiles, double z_min, const WallResolution* res,
                   double tolerance = 1e-9);

void sample_meshes(BhvScene& scene, const WallResolution& res);

/// Cartesian wall point of vase i at (phi, z).
Vec4 wall_point(const BhvScene& scene, int i, double phi, double z);

struct SeparationReport {
  double min_distance = std::numeric_limits<double>::infinity();
  double phi = 0.0;
  double z = 0.0;
  int vase_i = 0;
  int vase_j = 0;
  std::size_t heights = 0;
  std::size_t comparisons = 0;
};

struct SeparationGrid {
  double phi_exclusion = 0.05;
  double z_lo = 0.02;
  double z_hi = 1.0;
  std::size_t phi_steps = 64;
  double oversample = 8.0;
};

/// Minimum 4D distance between walls of distinct vases at shared (phi, z) with
/// |phi| >= phi_exclusion. The z grid includes every intersection height in the window.
SeparationReport min_wall_separation(const BhvScene& scene, const SeparationGrid& grid);

}  // namespace hvase
