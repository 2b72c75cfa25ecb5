#include "hvase/braid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace hvase {

const double kRepairFactor = std::exp(-1.0 / (11.0 * kPi));

// ---------------------------------------------------------------------------
// WProfile evaluation

const ZeroInterval* zero_interval_at(const WProfile& profile, double z) {
  // Intervals are sorted by descending center.
  auto it = std::lower_bound(profile.intervals.begin(), profile.intervals.end(), z,
                             [](const ZeroInterval& iv, double v) { return iv.lo > v; });
  if (it != profile.intervals.end() && z >= it->lo && z <= it->hi) return &*it;
  return nullptr;
}

double w_eval(const WProfile& profile, double z) {
  if (!(z > 0.0) || z > profile.top()) {
    throw std::domain_error("w_eval: height " + std::to_string(z) + " outside (0, 1/" +
                            std::to_string(profile.vase) + "]");
  }
  const auto& ivs = profile.intervals;
  // First interval whose lower end lies at or below z; it and its upper neighbour are
  // the only candidates for containing z or ramping over it.
  auto it = std::lower_bound(ivs.begin(), ivs.end(), z, [](const ZeroInterval& iv, double v) { return iv.lo > v; });
  double factor = 1.0;
  auto consider = [&](const ZeroInterval& iv) {
    double d = 0.0;
    if (z < iv.lo) d = iv.lo - z;
    else if (z > iv.hi) d = z - iv.hi;
    factor = std::min(factor, iv.ramp > 0.0 ? std::min(1.0, d / iv.ramp) : (d > 0.0 ? 1.0 : 0.0));
  };
  if (it != ivs.end()) consider(*it);
  if (it != ivs.begin()) consider(*(it - 1));
  return profile.theta * z * factor;
}

// ---------------------------------------------------------------------------
// Parameter sequence

PSequence PSequence::from_decimals(std::vector<std::string> decimals, std::string provenance) {
  PSequence ps;
  ps.provenance = std::move(provenance);
  for (const auto& d : decimals) {
    char* end = nullptr;
    double v = std::strtod(d.c_str(), &end);
    if (end == d.c_str() || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("p value '" + d + "' is not a positive decimal");
    }
    ps.values.push_back(v);
  }
  std::vector<double> sorted = ps.values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("p values must be pairwise distinct");
  }
  ps.decimals = std::move(decimals);
  return ps;
}

namespace {

std::vector<int> first_primes(std::size_t n) {
  std::vector<int> primes;
  for (int c = 2; primes.size() < n; ++c) {
    bool prime = true;
    for (int q : primes) {
      if (q * q > c) break;
      if (c % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

}  // namespace

PSequence choose_p_sequence(std::size_t n) {
  if (n == 0) throw std::invalid_argument("choose_p_sequence: need at least one vase");
  using Dec = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<kPDigits + 10>>;
  std::vector<std::string> decimals;
  for (int q : first_primes(n)) {
    Dec root = sqrt(Dec(q));
    decimals.push_back(root.str(kPDigits, std::ios_base::fixed).substr(0, kPDigits + 1));
  }
  return PSequence::from_decimals(std::move(decimals), "sqrt of the first " + std::to_string(n) + " primes");
}

// ---------------------------------------------------------------------------
// Intersection heights

std::vector<double> intersection_heights(double p_i, double p_j, int i, double z_lo) {
  if (p_i == p_j) throw std::invalid_argument("intersection_heights: p_i equals p_j");
  if (i < 1) throw std::invalid_argument("intersection_heights: vase index must be >= 1");
  if (!(z_lo > 0.0)) throw std::invalid_argument("intersection_heights: lower bound must be positive");
  const double top = 1.0 / i;
  std::vector<double> out;

  const double diff = std::abs(p_i - p_j);
  for (double k = std::max(1.0, std::floor(diff / (2.0 * top)));; k += 1.0) {
    double z = diff / (2.0 * k);
    if (z < z_lo) break;
    if (z <= top) out.push_back(z);
  }
  const double sum = p_i + p_j;
  for (double k = std::max(0.0, std::floor((sum / top - 1.0) / 2.0));; k += 1.0) {
    double z = sum / (2.0 * k + 1.0);
    if (z < z_lo) break;
    if (z <= top) out.push_back(z);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> collision_heights(const PSequence& ps, int i, double z_lo) {
  std::vector<double> out;
  const int n = static_cast<int>(ps.size());
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    const int hi = std::max(i, j), lo = std::min(i, j);
    auto h = intersection_heights(ps.p(hi), ps.p(lo), hi, z_lo);
    out.insert(out.end(), h.begin(), h.end());
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Distance from z to the nearest entry of a descending list; +inf if empty.
double nearest_gap(const std::vector<double>& desc, double z, double* at = nullptr) {
  auto it = std::lower_bound(desc.begin(), desc.end(), z, std::greater<>());
  double best = std::numeric_limits<double>::infinity();
  if (it != desc.end() && std::abs(*it - z) < best) {
    best = std::abs(*it - z);
    if (at) *at = *it;
  }
  if (it != desc.begin() && std::abs(*(it - 1) - z) < best) {
    best = std::abs(*(it - 1) - z);
    if (at) *at = *(it - 1);
  }
  return best;
}

}  // namespace

IndependenceReport verify_independence(const PSequence& ps, std::size_t depth, double tolerance) {
  IndependenceReport rep;
  rep.tolerance = tolerance;
  rep.depth = depth;
  const int n = static_cast<int>(ps.size());
  for (int i = 2; i <= n; ++i) {
    auto inner = inner_heights(VaseParams(1.0 / i, ps.p(i)), depth);
    if (inner.empty()) continue;
    for (int j = 1; j < i; ++j) {
      // The window reaches below the lowest inner-height so its nearest H point is seen.
      auto hs = intersection_heights(ps.p(i), ps.p(j), i, 0.5 * inner.back());
      for (double h : inner) {
        double at = 0.0;
        double gap = nearest_gap(hs, h, &at);
        if (gap < rep.min_gap) {
          rep.min_gap = gap;
          rep.vase_i = i;
          rep.vase_j = j;
          rep.inner_height = h;
          rep.h_point = at;
        }
      }
    }
  }
  rep.pass = rep.min_gap > tolerance;
  return rep;
}

IndependenceReport certify(PSequence& ps, std::size_t depth, double tolerance) {
  auto rep = verify_independence(ps, depth, tolerance);
  ps.verified_no_coincidence = rep.pass;
  return rep;
}

double default_theta(int vase) { return 1.0 / (kPi * (vase + 1)); }

// ---------------------------------------------------------------------------
// Profiles

ProfileCheck verify_profile_conditions(const std::vector<WProfile>& profiles, const PSequence& ps, double z_min,
                                       double tolerance) {
  ProfileCheck chk;
  const int n = static_cast<int>(profiles.size());
  if (static_cast<std::size_t>(n) != ps.size()) {
    chk.wcoord1 = chk.wcoord15 = chk.wcoord2 = false;
    chk.problems.push_back("profile count does not match p-sequence");
    return chk;
  }

  for (const auto& prof : profiles) {
    const int i = prof.vase;
    const double top = prof.top();
    if (z_min >= top) continue;

    // (1): |phi| w_i(z) <= pi w_i(z) < z on a dense grid plus every interval edge.
    auto zs = adaptive_z_grid(top, ps.p(i), z_min, 8.0);
    for (const auto& iv : prof.intervals) {
      for (double z : {iv.lo, iv.hi, iv.lo - iv.ramp, iv.hi + iv.ramp}) {
        if (z > 0.0 && z <= top) zs.push_back(z);
      }
    }
    for (double z : zs) {
      double w = w_eval(prof, z);
      double ratio = kPi * w / z;
      chk.max_w_over_z = std::max(chk.max_w_over_z, ratio);
      if (!(ratio < 1.0) || w < 0.0) {
        chk.wcoord1 = false;
        chk.problems.push_back("vase " + std::to_string(i) + ": pi*w/z = " + std::to_string(ratio) +
                               " at z = " + std::to_string(z));
      }
    }

    // (3): every inner-height above z_min sits strictly inside a zero interval.
    for (double h : inner_heights_above(VaseParams(top, ps.p(i)), z_min)) {
      ++chk.inner_heights_checked;
      const ZeroInterval* iv = zero_interval_at(prof, h);
      bool ok = iv != nullptr && iv->lo < h && (h < iv->hi || iv->hi == top) && w_eval(prof, h) == 0.0 &&
                w_eval(prof, iv->lo) == 0.0 && w_eval(prof, iv->hi) == 0.0;
      if (!ok) {
        chk.wcoord2 = false;
        chk.problems.push_back("vase " + std::to_string(i) + ": inner-height " + std::to_string(h) +
                               " not inside a zero interval");
      }
    }
  }

  // (2): profiles differ at every intersection height of each pair.
  for (int i = 2; i <= n; ++i) {
    for (int j = 1; j < i; ++j) {
      if (z_min >= 1.0 / i) continue;
      for (double z : intersection_heights(ps.p(i), ps.p(j), i, z_min)) {
        ++chk.h_points_checked;
        double sep = std::abs(w_eval(profiles[static_cast<std::size_t>(i - 1)], z) -
                              w_eval(profiles[static_cast<std::size_t>(j - 1)], z));
        if (sep < chk.min_separation) {
          chk.min_separation = sep;
          chk.min_separation_height = z;
          chk.min_pair_i = i;
          chk.min_pair_j = j;
        }
        if (!(sep > tolerance)) {
          chk.wcoord15 = false;
          chk.collisions.push_back({i, j, z, sep});
        }
      }
    }
  }
  return chk;
}

std::vector<WProfile> build_w_profiles(const PSequence& ps, double z_min, double tolerance) {
  if (!ps.verified_no_coincidence) {
    throw std::logic_error("build_w_profiles: p-sequence has not passed verify_independence");
  }
  if (!(z_min > 0.0)) throw std::invalid_argument("build_w_profiles: z_min must be positive");
  const int n = static_cast<int>(ps.size());
  std::vector<WProfile> profiles;
  for (int i = 1; i <= n; ++i) {
    WProfile prof;
    prof.vase = i;
    prof.theta = default_theta(i);
    const VaseParams v(1.0 / i, ps.p(i));
    const double top = v.m;
    if (z_min < top) {
      auto heights = inner_heights_above(v, z_min);
      const double below = inner_height(v.p, first_inner_index(v) + heights.size());
      // H points within twice the largest admissible radius of any interval lie above z_min / 2.
      auto hs = collision_heights(ps, i, z_min / 2.0);
      for (std::size_t k = 0; k < heights.size(); ++k) {
        const double h = heights[k];
        double gap = h - (k + 1 < heights.size() ? heights[k + 1] : below);
        if (k > 0) gap = std::min(gap, heights[k - 1] - h);
        double rho = 0.25 * gap;
        rho = std::min(rho, 0.5 * nearest_gap(hs, h));
        if (!(rho > 0.0)) {
          std::ostringstream os;
          os.precision(17);
          os << "vase " << i << ": inner-height " << h << " coincides with an intersection height";
          throw ProfileRepairError(os.str());
        }
        prof.intervals.push_back({h, rho, h - rho, std::min(h + rho, top), rho});
      }
    }
    profiles.push_back(std::move(prof));
  }

  for (int attempt = 0;; ++attempt) {
    auto chk = verify_profile_conditions(profiles, ps, z_min, tolerance);
    if (chk.pass()) return profiles;
    if (!chk.wcoord2 || attempt >= kRepairBudget) {
      std::ostringstream os;
      os.precision(17);
      os << "profile construction failed after " << attempt << " repairs";
      for (const auto& c : chk.collisions) {
        os << "; vases " << c.vase_i << "/" << c.vase_j << " collide at z = " << c.height;
      }
      for (const auto& p : chk.problems) os << "; " << p;
      throw ProfileRepairError(os.str());
    }
    std::set<int> shrink;
    for (const auto& c : chk.collisions) shrink.insert(std::max(c.vase_i, c.vase_j));
    if (!chk.wcoord1) {
      for (auto& prof : profiles) shrink.insert(prof.vase);
    }
    for (int i : shrink) profiles[static_cast<std::size_t>(i - 1)].theta *= kRepairFactor;
  }
}

// ---------------------------------------------------------------------------
// Scene

BhvScene build_bhv(PSequence ps, std::vector<WProfile> profiles, double z_min, const WallResolution* res,
                   double tolerance) {
  auto chk = verify_profile_conditions(profiles, ps, z_min, tolerance);
  if (!chk.pass()) {
    throw std::invalid_argument("build_bhv: profiles fail verification" +
                                (chk.problems.empty() ? std::string() : ": " + chk.problems.front()));
  }
  BhvScene scene;
  scene.ps = std::move(ps);
  scene.profiles = std::move(profiles);
  scene.z_min = z_min;
  if (res) sample_meshes(scene, *res);
  return scene;
}

void sample_meshes(BhvScene& scene, const WallResolution& res) {
  scene.meshes.clear();
  for (int i = 1; i <= scene.size(); ++i) {
    if (scene.z_min >= 1.0 / i) break;
    scene.meshes.push_back(sample_wall(scene.vase(i), &scene.profile(i), i, res, scene.z_min));
  }
}

Vec4 wall_point(const BhvScene& scene, int i, double phi, double z) {
  const double p = scene.ps.p(i);
  return CylPoint4{wall_radius(p, phi, z), phi, z, std::abs(phi) * w_eval(scene.profile(i), z)}.cartesian();
}

SeparationReport min_wall_separation(const BhvScene& scene, const SeparationGrid& grid) {
  if (grid.phi_exclusion < 0.0 || grid.phi_exclusion > kPi) {
    throw std::invalid_argument("min_wall_separation: phi exclusion must lie in [0, pi]");
  }
  if (grid.phi_steps < 2) throw std::invalid_argument("min_wall_separation: need at least two phi steps");
  const int n = scene.size();
  const double z_lo = std::max(grid.z_lo, scene.z_min);
  const double z_hi = std::min(grid.z_hi, 1.0);

  double p_max = 0.0;
  for (double p : scene.ps.values) p_max = std::max(p_max, p);
  std::vector<double> zs;
  if (z_lo < z_hi) zs = adaptive_z_grid(z_hi, p_max, z_lo, grid.oversample);
  zs.push_back(z_lo);
  for (int i = 2; i <= n; ++i) {
    if (1.0 / i < z_lo) break;
    for (int j = 1; j < i; ++j) {
      for (double z : intersection_heights(scene.ps.p(i), scene.ps.p(j), i, z_lo)) {
        if (z <= z_hi) zs.push_back(z);
      }
    }
  }
  std::sort(zs.begin(), zs.end(), std::greater<>());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

  const std::size_t half = std::max<std::size_t>(1, grid.phi_steps / 2);
  std::vector<double> phis;
  for (std::size_t k = 0; k <= half; ++k) {
    double phi = grid.phi_exclusion + (kPi - grid.phi_exclusion) * (static_cast<double>(k) / half);
    phis.push_back(phi);
    if (phi != 0.0) phis.push_back(-phi);
  }

  SeparationReport rep;
  rep.heights = zs.size();
  std::vector<double> s(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  for (double z : zs) {
    int present = 0;
    for (int i = 1; i <= n && z <= 1.0 / i; ++i) {
      s[static_cast<std::size_t>(i - 1)] = std::sin(kPi * scene.ps.p(i) / z);
      w[static_cast<std::size_t>(i - 1)] = w_eval(scene.profile(i), z);
      present = i;
    }
    for (double phi : phis) {
      for (int i = 2; i <= present; ++i) {
        for (int j = 1; j < i; ++j) {
          const auto a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(j - 1);
          // Same (phi, z): planar separation is |r_i - r_j|, the rest is the w gap.
          double dr = std::abs(phi) / kPi * (s[a] - s[b]);
          double dw = std::abs(phi) * (w[a] - w[b]);
          double d = std::hypot(dr, dw);
          ++rep.comparisons;
          if (d < rep.min_distance) {
            rep.min_distance = d;
            rep.phi = phi;
            rep.z = z;
            rep.vase_i = i;
            rep.vase_j = j;
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace hvase
