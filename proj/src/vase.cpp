#include "hvase/vase.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hvase {

VaseParams::VaseParams(double height, double oscillation) : m(height), p(oscillation) {
  if (!(m > 0.0) || !(p > 0.0)) throw std::invalid_argument("vase parameters must be positive");
}

double wall_radius(double p, double phi, double z) {
  if (!(z > 0.0)) throw std::domain_error("wall_radius: height must be positive, got " + std::to_string(z));
  return std::abs(phi) / kPi * std::sin(kPi * p / z) + 2.0;
}

double inner_height(double p, std::size_t k) { return 2.0 * p / (4.0 * static_cast<double>(k) + 3.0); }

std::size_t first_inner_index(const VaseParams& v) {
  double guess = std::ceil((2.0 * v.p / v.m - 3.0) / 4.0);
  std::size_t k = guess > 0.0 ? static_cast<std::size_t>(guess) : 0;
  while (inner_height(v.p, k) > v.m) ++k;
  while (k > 0 && inner_height(v.p, k - 1) <= v.m) --k;
  return k;
}

std::vector<double> inner_heights(const VaseParams& v, std::size_t count) {
  std::vector<double> out;
  out.reserve(count);
  const std::size_t k0 = first_inner_index(v);
  for (std::size_t k = 0; k < count; ++k) out.push_back(inner_height(v.p, k0 + k));
  return out;
}

std::vector<double> inner_heights_above(const VaseParams& v, double z_lo) {
  std::vector<double> out;
  for (std::size_t k = first_inner_index(v);; ++k) {
    double h = inner_height(v.p, k);
    if (h <= z_lo) break;
    out.push_back(h);
  }
  return out;
}

std::vector<CylPoint4> inner_curve(const VaseParams& v, double c, std::size_t samples) {
  if (!(c > 0.0) || c > v.m) throw std::domain_error("inner_curve: height outside (0, m]");
  if (samples < 2) throw std::invalid_argument("inner_curve: need at least two samples");
  std::vector<CylPoint4> out;
  out.reserve(samples);
  const double last = static_cast<double>(samples - 1);
  for (std::size_t k = 0; k < samples; ++k) {
    double phi = kPi * ((2.0 * static_cast<double>(k) - last) / last);
    out.push_back({wall_radius(v.p, phi, c), phi, c, 0.0});
  }
  return out;
}

bool pedestal_contains(const CylPoint4& pt) { return pt.z == 0.0 && pt.w == 0.0 && pt.r <= kPedestalRadius; }

std::vector<double> adaptive_z_grid(double top, double p, double z_min, double oversample, std::size_t budget) {
  if (!(z_min > 0.0) || !(z_min < top)) throw std::invalid_argument("adaptive_z_grid: need 0 < z_min < top");
  if (!(oversample >= 1.0)) throw std::invalid_argument("adaptive_z_grid: oversample must be >= 1");
  const double max_step = top / 32.0;
  std::vector<double> zs;
  double z = top;
  while (z > z_min) {
    zs.push_back(z);
    if (zs.size() > budget) {
      throw SampleBudgetError("z-grid exceeds sample budget of " + std::to_string(budget));
    }
    z -= std::min(2.0 * z * z / (p * oversample), max_step);
  }
  return zs;
}

WallMesh sample_wall(const VaseParams& v, const WProfile* profile, int vase_index, const WallResolution& res,
                     double z_min) {
  if (!(z_min > 0.0) || !(z_min < v.m)) throw std::invalid_argument("sample_wall: need 0 < z_min < m");
  if (res.oversample < 4.0) throw std::invalid_argument("sample_wall: oversample factor must be >= 4");
  if (res.phi_steps < 2 || res.phi_steps % 2 != 0) {
    throw std::invalid_argument("sample_wall: phi_steps must be even and >= 2");
  }
  const std::size_t cols = res.phi_steps + 1;
  auto zs = adaptive_z_grid(v.m, v.p, z_min, res.oversample, res.sample_budget / cols + 1);
  if (zs.size() * cols > res.sample_budget) {
    throw SampleBudgetError("wall " + std::to_string(vase_index) + " needs " + std::to_string(zs.size() * cols) +
                            " samples, budget is " + std::to_string(res.sample_budget));
  }

  WallMesh mesh;
  mesh.vase = vase_index;
  mesh.z_min = z_min;
  mesh.zs = std::move(zs);
  mesh.phis.reserve(cols);
  const double half = static_cast<double>(res.phi_steps) / 2.0;
  for (std::size_t k = 0; k < cols; ++k) {
    mesh.phis.push_back(kPi * ((static_cast<double>(k) - half) / half));
  }
  mesh.points.reserve(mesh.zs.size() * cols);
  for (double z : mesh.zs) {
    const double wz = profile ? w_eval(*profile, z) : 0.0;
    for (double phi : mesh.phis) {
      mesh.points.push_back({wall_radius(v.p, phi, z), phi, z, std::abs(phi) * wz});
    }
  }
  return mesh;
}

}  // namespace hvase
