#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "hvase/braid.hpp"
#include "hvase/geometry.hpp"
#include "hvase/relator_path.hpp"

namespace hvase {

/// The map f of the unit square onto a disc attached along alpha * gamma_l^h.
///
/// The left edge s = 0 runs down alpha for t in [0, 1/2] and back up the axis line for
/// t in [1/2, 1]; both halves are parametrized by the same height profile so
/// pi_z f(0, 1/2 - t) = pi_z f(0, 1/2 + t). The right edge s = 1 is the projection onto
/// the z-axis. Rows are straight segments at constant height; the upper half is lifted
/// along w by the bump g(s, t) = 8 margin s(1-s)(t-1/2)(1-t) z.
class DiscMap {
 public:
  explicit DiscMap(const AlphaPath& alpha, double bump_margin = 0.5, bool flat_upper = false);

  /// Height at normalized depth u = |2t - 1| (u = 1 at the top, 0 at the terminal height).
  double height_at(double u) const;
  double height(double t) const { return height_at(std::abs(2.0 * t - 1.0)); }

  double bump(double s, double t, double z) const;

  Vec4 operator()(double s, double t) const;
  /// Same, with the depth u supplied exactly (grid sampling keeps mirrored rows bit-equal).
  Vec4 evaluate(double s, double t, double u) const;

  double start_height() const { return alpha_->start_height; }
  double terminal_height() const { return alpha_->terminal_height; }

 private:
  const AlphaPath* alpha_;
  double bump_margin_;
  bool flat_upper_;
  std::vector<double> knot_u_;  // descending from 1 to 0
  std::vector<double> knot_z_;
};

/// f(s, t) for s, t in [0, 1]. Throws std::domain_error outside the square.
Vec4 disc_point_f(const AlphaPath& alpha, double s, double t, double bump_margin = 0.5);

struct DiscOptions {
  std::size_t resolution = 128;  // n x n grid
  double bump_margin = 0.5;
  bool flat_upper = false;  // g = 0; negative control only

  friend bool operator==(const DiscOptions&, const DiscOptions&) = default;
};

/// Grid samples of f with the quotient welds (t,0)~(t,1) and (1,1/2-t)~(1,1/2+t).
struct DiscMesh {
  std::size_t n = 0;
  std::vector<Vec4> samples;       // index row * n + col; col is the s index, row the t index
  std::vector<std::size_t> weld;   // smallest sample index of each sample's weld class
  std::vector<Vec4> boundary;      // alpha followed by the axis back up to the start
  double terminal_height = 0.0;
  double start_height = 0.0;
  std::size_t relator = 0;         // 1-based, 0 when built standalone
  DiscOptions options;

  std::size_t index(std::size_t col, std::size_t row) const { return row * n + col; }
  double s(std::size_t col) const { return static_cast<double>(col) / static_cast<double>(n - 1); }
  double t(std::size_t row) const { return static_cast<double>(row) / static_cast<double>(n - 1); }
  std::size_t class_count() const;

  friend bool operator==(const DiscMesh&, const DiscMesh&) = default;
};

DiscMesh build_disc(const AlphaPath& alpha, const DiscOptions& opts = {}, std::size_t relator = 0);

/// V - E + F of the welded quad grid; edges collapsed by the fold are dropped.
long euler_characteristic(const DiscMesh& mesh);

struct InjectivityReport {
  bool pass = true;
  double min_distance = std::numeric_limits<double>::infinity();
  std::size_t a = 0;  // sample indices attaining the minimum
  std::size_t b = 0;
  std::size_t points = 0;
  double floor = 0.0;
};

/// Minimum distance between distinct weld classes with s > 0.
InjectivityReport verify_injective(const DiscMesh& mesh, double floor = 1e-9);

struct DisjointReport {
  bool pass = true;
  double min_distance = std::numeric_limits<double>::infinity();
  std::size_t disc_sample = 0;
  int wall_vase = 0;
  Vec4 wall_point;
  std::vector<double> row_minima;  // per t row with admissible samples
  std::size_t disc_points = 0;
  std::size_t wall_points = 0;
  double s_min = 0.0;
  double floor = 0.0;
};

/// Minimum distance between disc samples with s >= s_min (default 1/(n-1)) and the
/// wall samples in the band [l, h]. Requires sampled wall meshes.
DisjointReport verify_disjoint(const DiscMesh& mesh, const BhvScene& scene, double s_min = -1.0,
                               double floor = 1e-9);

struct RefinementReport {
  double coarse = 0.0;
  double fine = 0.0;
  double ratio = 0.0;  // fine / coarse
  bool stable = false;
};

/// Disjointness margin at resolution n and at 2n - 1 (grid intervals doubled), both
/// restricted to s >= 1/(n-1). Stable when the finer minimum keeps at least half.
RefinementReport disjoint_refinement(const AlphaPath& alpha, const BhvScene& scene, const DiscOptions& opts,
                                     double floor = 1e-9);

/// All samples inside {x^2 + y^2 <= 9, 0 <= z <= h, 0 <= w <= z}.
bool disc_in_box(const DiscMesh& mesh);

}  // namespace hvase
