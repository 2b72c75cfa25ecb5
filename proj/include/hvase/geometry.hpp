#pragma once

#include <numbers>

namespace hvase {

inline constexpr double kPi = std::numbers::pi;

/// Cartesian point of R^4 ordered (x, y, z, w).
struct Vec4 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 0.0;

  friend bool operator==(const Vec4&, const Vec4&) = default;
};

Vec4 operator+(const Vec4& a, const Vec4& b);
Vec4 operator-(const Vec4& a, const Vec4& b);
Vec4 operator*(double k, const Vec4& a);
double norm(const Vec4& a);
double distance(const Vec4& a, const Vec4& b);

/// Cylindrical point (r, phi, z) extended by the fourth coordinate w.
/// phi lives in [-pi, pi]; the two ends name the same polar ray.
struct CylPoint4 {
  double r = 0.0;
  double phi = 0.0;
  double z = 0.0;
  double w = 0.0;

  Vec4 cartesian() const;

  friend bool operator==(const CylPoint4&, const CylPoint4&) = default;
};

/// Maps an arbitrary angle into [-pi, pi].
double canonical_angle(double phi);

/// Verification tolerances shared by every check.
struct Tolerances {
  double coincidence = 1e-9;     // inner-height vs intersection-height gap, w separation
  double formula = 1e-12;        // re-evaluation of closed-form surfaces
  double distance_floor = 1e-9;  // minimum admissible pairwise distance

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

}  // namespace hvase
