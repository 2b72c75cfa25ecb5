#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hvase/braid.hpp"
#include "hvase/geometry.hpp"
#include "hvase/presentation.hpp"

namespace hvase {

/// One loop of a relator path: the inner-curve of `vase` at `inner_height`, traversed
/// while z drops from z_in to z_out inside the zero interval.
struct ScheduledLoop {
  int vase = 1;
  double inner_height = 0.0;
  double radius = 0.0;  // nominal zero-interval radius
  double z_in = 0.0;
  double z_out = 0.0;
  int orientation = 1;

  friend bool operator==(const ScheduledLoop&, const ScheduledLoop&) = default;
};

class HeadroomError : public std::runtime_error {
 public:
  HeadroomError(const std::string& what, std::size_t placed) : std::runtime_error(what), placed_(placed) {}
  std::size_t placed() const { return placed_; }

 private:
  std::size_t placed_;
};

/// Fraction of each zero interval (on either side of its inner-height) that a loop uses.
inline constexpr double kLoopFill = 0.5;

/// Greedy descending choice of one inner-height per letter: the largest inner-height a
/// of the letter's vase with a + rho_a <= ceiling, where the ceiling is h for the first
/// letter and a_prev - rho_prev afterwards. Zero intervals must lie above z_min.
std::vector<ScheduledLoop> schedule_inner_heights(const BhvScene& scene, const Word& word, double h);

enum class SegmentKind { Vertical, Loop };

struct PathSegment {
  SegmentKind kind = SegmentKind::Vertical;
  double z_start = 0.0;
  double z_end = 0.0;
  // Loop only.
  int vase = 0;
  double p = 0.0;
  double inner_height = 0.0;
  int orientation = 0;

  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

struct AlphaPath {
  std::vector<PathSegment> segments;
  std::vector<CylPoint4> polyline;
  double start_height = 0.0;
  double terminal_height = 0.0;

  /// Exact point of the path at height z in [terminal_height, start_height].
  CylPoint4 point_at_height(double z) const;

  friend bool operator==(const AlphaPath&, const AlphaPath&) = default;
};

struct AlphaOptions {
  std::size_t loop_samples = 64;  // even, so phi = +-pi is sampled
  double vertical_step = 0.01;
};

/// Axis point (r = 2, phi = 0, z, w = 0), shared by every wall.
CylPoint4 axis_point(double z);

/// Angle along a loop at normalized progress t in [0, 1]: 0 -> +-pi, identified with -+pi, -> 0.
double loop_angle(int orientation, double t);

AlphaPath build_alpha(const BhvScene& scene, const Word& word, double h, const AlphaOptions& opts = {});

struct MonotoneReport {
  bool pass = true;
  std::size_t samples = 0;
  std::size_t failure_index = 0;  // i such that z[i] >= z[i-1]
  double max_step = 0.0;          // largest (least negative) consecutive dz
};

MonotoneReport verify_monotone(const std::vector<CylPoint4>& polyline);
inline MonotoneReport verify_monotone(const AlphaPath& path) { return verify_monotone(path.polyline); }

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads the letter sequence off a path polyline using only the scene geometry.
Word decode_word(const BhvScene& scene, const std::vector<CylPoint4>& polyline, double tolerance = 1e-9);

}  // namespace hvase
