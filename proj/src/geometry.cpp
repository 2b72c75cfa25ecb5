#include "hvase/geometry.hpp"

#include <cmath>

namespace hvase {

Vec4 operator+(const Vec4& a, const Vec4& b) { return {a.x + b.x, a.y + b.y, a.z + b.z, a.w + b.w}; }
Vec4 operator-(const Vec4& a, const Vec4& b) { return {a.x - b.x, a.y - b.y, a.z - b.z, a.w - b.w}; }
Vec4 operator*(double k, const Vec4& a) { return {k * a.x, k * a.y, k * a.z, k * a.w}; }

double norm(const Vec4& a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z + a.w * a.w); }

double distance(const Vec4& a, const Vec4& b) { return norm(a - b); }

Vec4 CylPoint4::cartesian() const {
  // phi = +-pi is the same ray; evaluate it exactly so the two ends weld bit-for-bit.
  if (phi == kPi || phi == -kPi) return {-r, 0.0, z, w};
  if (phi == 0.0) return {r, 0.0, z, w};
  return {r * std::cos(phi), r * std::sin(phi), z, w};
}

double canonical_angle(double phi) {
  if (phi >= -kPi && phi <= kPi) return phi;
  double a = std::remainder(phi, 2.0 * kPi);
  return a;
}

}  // namespace hvase
