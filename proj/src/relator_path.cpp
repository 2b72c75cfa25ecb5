#include "hvase/relator_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <sstream>

namespace hvase {

CylPoint4 axis_point(double z) { return {2.0, 0.0, z, 0.0}; }

double loop_angle(int orientation, double t) {
  const double s = orientation > 0 ? 1.0 : -1.0;
  if (t <= 0.5) return s * kPi * (2.0 * t);
  return s * kPi * (2.0 * t - 2.0);
}

std::vector<ScheduledLoop> schedule_inner_heights(const BhvScene& scene, const Word& word, double h) {
  std::vector<ScheduledLoop> out;
  double ceiling = h;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const int j = word[k].gen.index;
    if (j < 1 || j > scene.size()) {
      throw std::invalid_argument("letter " + std::to_string(k + 1) + " uses generator " + std::to_string(j) +
                                  " but the scene has " + std::to_string(scene.size()) + " vases");
    }
    const WProfile& prof = scene.profile(j);
    const ZeroInterval* pick = nullptr;
    for (const auto& iv : prof.intervals) {
      if (iv.center + iv.radius <= ceiling) {
        pick = &iv;
        break;
      }
    }
    if (pick == nullptr || !(pick->center - pick->radius > scene.z_min)) {
      std::ostringstream os;
      os << "no inner-height of vase " << j << " fits below z = " << ceiling << " above z_min = " << scene.z_min
         << " (placed " << k << " of " << word.size() << " letters; lower z_min to gain headroom)";
      throw HeadroomError(os.str(), k);
    }
    ScheduledLoop loop;
    loop.vase = j;
    loop.inner_height = pick->center;
    loop.radius = pick->radius;
    loop.z_in = pick->center + kLoopFill * (pick->hi - pick->center);
    loop.z_out = pick->center - kLoopFill * (pick->center - pick->lo);
    loop.orientation = word[k].sign;
    out.push_back(loop);
    ceiling = pick->center - pick->radius;
  }
  return out;
}

CylPoint4 AlphaPath::point_at_height(double z) const {
  if (z > start_height || z < terminal_height) {
    throw std::domain_error("point_at_height: z outside the path's height range");
  }
  for (const auto& seg : segments) {
    if (z > seg.z_start || z < seg.z_end) continue;
    if (seg.kind == SegmentKind::Vertical) return axis_point(z);
    const double t = (seg.z_start - z) / (seg.z_start - seg.z_end);
    const double phi = loop_angle(seg.orientation, t);
    // The loop runs inside a zero interval, so w = 0.
    return {wall_radius(seg.p, phi, z), phi, z, 0.0};
  }
  return axis_point(z);
}

AlphaPath build_alpha(const BhvScene& scene, const Word& word, double h, const AlphaOptions& opts) {
  if (opts.loop_samples < 2 || opts.loop_samples % 2 != 0) {
    throw std::invalid_argument("build_alpha: loop_samples must be even and >= 2");
  }
  if (!(opts.vertical_step > 0.0)) throw std::invalid_argument("build_alpha: vertical_step must be positive");
  auto schedule = schedule_inner_heights(scene, word, h);

  AlphaPath path;
  path.start_height = h;
  path.polyline.push_back(axis_point(h));
  double cur = h;

  auto drop_to = [&](double z_end) {
    path.segments.push_back({SegmentKind::Vertical, cur, z_end, 0, 0.0, 0.0, 0});
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil((cur - z_end) / opts.vertical_step)));
    for (std::size_t k = 1; k < steps; ++k) {
      path.polyline.push_back(axis_point(cur - (cur - z_end) * (static_cast<double>(k) / steps)));
    }
    path.polyline.push_back(axis_point(z_end));
    cur = z_end;
  };

  for (const auto& loop : schedule) {
    drop_to(loop.z_in);
    const double p = scene.ps.p(loop.vase);
    path.segments.push_back({SegmentKind::Loop, loop.z_in, loop.z_out, loop.vase, p, loop.inner_height,
                             loop.orientation});
    const std::size_t n = opts.loop_samples;
    const double span = loop.z_in - loop.z_out;
    for (std::size_t k = 1; k <= n; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(n);
      const double z = k == n ? loop.z_out : loop.z_in - span * t;
      const double phi = loop_angle(loop.orientation, t);
      path.polyline.push_back({wall_radius(p, phi, z), phi, z, 0.0});
    }
    cur = loop.z_out;
  }
  path.terminal_height = cur;
  return path;
}

MonotoneReport verify_monotone(const std::vector<CylPoint4>& polyline) {
  MonotoneReport rep;
  rep.samples = polyline.size();
  rep.max_step = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    const double dz = polyline[i].z - polyline[i - 1].z;
    rep.max_step = std::max(rep.max_step, dz);
    if (!(dz < 0.0) && rep.pass) {
      rep.pass = false;
      rep.failure_index = i;
    }
  }
  return rep;
}

Word decode_word(const BhvScene& scene, const std::vector<CylPoint4>& polyline, double tolerance) {
  Word word;
  const std::size_t n = polyline.size();
  std::size_t i = 0;
  while (i < n) {
    const auto& pt = polyline[i];
    if (pt.phi == 0.0) {
      if (std::abs(pt.r - 2.0) > tolerance || std::abs(pt.w) > tolerance) {
        throw DecodeError("sample " + std::to_string(i) + " has phi = 0 but is off the axis line");
      }
      ++i;
      continue;
    }

    // Episode: maximal run of samples with phi != 0.
    const std::size_t begin = i;
    std::size_t end = i;
    while (end < n && polyline[end].phi != 0.0) ++end;
    double z_lo = polyline[end - 1].z, z_hi = polyline[begin].z;
    if (begin > 0) z_hi = std::max(z_hi, polyline[begin - 1].z);
    if (end < n) z_lo = std::min(z_lo, polyline[end].z);
    for (std::size_t k = begin; k < end; ++k) {
      z_lo = std::min(z_lo, polyline[k].z);
      z_hi = std::max(z_hi, polyline[k].z);
    }

    std::size_t flips = 0;
    for (std::size_t k = begin + 1; k < end; ++k) {
      if ((polyline[k].phi > 0.0) != (polyline[k - 1].phi > 0.0)) ++flips;
    }
    std::ostringstream where;
    where << "episode at samples " << begin << ".." << end - 1 << " (z in [" << z_lo << ", " << z_hi << "])";
    if (flips != 1 || end == n) {
      throw DecodeError("unmatched " + where.str() + ": not a single sweep through phi = +-pi back to the axis");
    }
    const int orientation = polyline[begin].phi > 0.0 ? 1 : -1;

    std::vector<int> candidates;
    for (int j = 1; j <= scene.size(); ++j) {
      const VaseParams v = scene.vase(j);
      if (z_hi > v.m) continue;
      bool has_inner = false;
      for (double a : inner_heights_above(v, z_lo)) {
        if (a <= z_hi) {
          has_inner = true;
          break;
        }
      }
      if (!has_inner) continue;
      bool on_wall = true;
      for (std::size_t k = begin; k < end && on_wall; ++k) {
        const auto& q = polyline[k];
        on_wall = std::abs(q.r - wall_radius(v.p, q.phi, q.z)) <= tolerance &&
                  std::abs(q.w - std::abs(q.phi) * w_eval(scene.profile(j), q.z)) <= tolerance;
      }
      if (on_wall) candidates.push_back(j);
    }
    if (candidates.empty()) throw DecodeError("unmatched " + where.str() + ": lies on no vase's inner curve");
    if (candidates.size() > 1) {
      std::string list;
      for (int c : candidates) list += (list.empty() ? "" : ", ") + std::to_string(c);
      throw DecodeError("ambiguous " + where.str() + ": matches vases " + list);
    }
    word.push_back({GeneratorId{candidates.front()}, orientation});
    i = end;
  }
  return word;
}

}  // namespace hvase
