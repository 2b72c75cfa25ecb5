#include "hvase/disc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace hvase {

DiscMap::DiscMap(const AlphaPath& alpha, double bump_margin, bool flat_upper)
    : alpha_(&alpha), bump_margin_(bump_margin), flat_upper_(flat_upper) {
  const double h = alpha.start_height;
  const double l = alpha.terminal_height;
  if (alpha.segments.empty() || !(h > l)) throw std::invalid_argument("DiscMap: relator path is degenerate");
  if (!(bump_margin > 0.0 && bump_margin <= 1.0)) throw std::invalid_argument("DiscMap: bump margin not in (0, 1]");

  // Half the parameter follows the height drop; the other half is split evenly among
  // the loops so that every loop keeps a fixed share of grid rows.
  std::size_t loops = 0;
  for (const auto& seg : alpha.segments) loops += seg.kind == SegmentKind::Loop ? 1 : 0;
  std::vector<double> weight;
  for (const auto& seg : alpha.segments) {
    double w = (seg.z_start - seg.z_end) / (h - l);
    if (loops > 0) w = 0.5 * w + (seg.kind == SegmentKind::Loop ? 0.5 / static_cast<double>(loops) : 0.0);
    weight.push_back(w);
  }
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);
  knot_u_.push_back(1.0);
  knot_z_.push_back(h);
  double acc = 0.0;
  for (std::size_t k = 0; k < alpha.segments.size(); ++k) {
    acc += weight[k];
    const bool last = k + 1 == alpha.segments.size();
    knot_u_.push_back(last ? 0.0 : std::max(0.0, 1.0 - acc / total));
    knot_z_.push_back(alpha.segments[k].z_end);
  }
}

double DiscMap::height_at(double u) const {
  if (u >= 1.0) return knot_z_.front();
  if (u <= 0.0) return knot_z_.back();
  // knot_u_ is descending; find k with knot_u_[k] >= u >= knot_u_[k+1].
  std::size_t k = 0;
  while (k + 2 < knot_u_.size() && knot_u_[k + 1] > u) ++k;
  const double u0 = knot_u_[k], u1 = knot_u_[k + 1];
  if (u0 == u1) return knot_z_[k + 1];
  const double lam = (u0 - u) / (u0 - u1);
  const double z = knot_z_[k] + lam * (knot_z_[k + 1] - knot_z_[k]);
  return std::clamp(z, knot_z_[k + 1], knot_z_[k]);
}

double DiscMap::bump(double s, double t, double z) const {
  if (flat_upper_ || !(t > 0.5)) return 0.0;
  return 8.0 * bump_margin_ * s * (1.0 - s) * (t - 0.5) * (1.0 - t) * z;
}

Vec4 DiscMap::evaluate(double s, double t, double u) const {
  const double z = height_at(u);
  Vec4 left;
  if (t <= 0.5) {
    left = alpha_->point_at_height(z).cartesian();
  } else {
    left = axis_point(z).cartesian();
  }
  Vec4 out;
  out.x = (1.0 - s) * left.x;
  out.y = (1.0 - s) * left.y;
  out.z = z;
  out.w = (1.0 - s) * left.w + bump(s, t, z);
  return out;
}

Vec4 DiscMap::operator()(double s, double t) const {
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0)) throw std::domain_error("DiscMap: (s, t) outside the square");
  return evaluate(s, t, std::abs(2.0 * t - 1.0));
}

Vec4 disc_point_f(const AlphaPath& alpha, double s, double t, double bump_margin) {
  return DiscMap(alpha, bump_margin)(s, t);
}

std::size_t DiscMesh::class_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < weld.size(); ++i) c += weld[i] == i ? 1 : 0;
  return c;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

DiscMesh build_disc(const AlphaPath& alpha, const DiscOptions& opts, std::size_t relator) {
  const std::size_t n = opts.resolution;
  if (n < 2) throw std::invalid_argument("build_disc: resolution must be at least 2");
  const DiscMap f(alpha, opts.bump_margin, opts.flat_upper);

  DiscMesh mesh;
  mesh.n = n;
  mesh.options = opts;
  mesh.relator = relator;
  mesh.start_height = alpha.start_height;
  mesh.terminal_height = alpha.terminal_height;
  mesh.samples.resize(n * n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t row = 0; row < n; ++row) {
    const double t = static_cast<double>(row) / last;
    const auto twice = static_cast<long>(2 * row) - static_cast<long>(n - 1);
    const double u = static_cast<double>(std::labs(twice)) / last;
    for (std::size_t col = 0; col < n; ++col) {
      mesh.samples[mesh.index(col, row)] = f.evaluate(static_cast<double>(col) / last, t, u);
    }
  }

  UnionFind uf(n * n);
  for (std::size_t col = 0; col < n; ++col) uf.unite(mesh.index(col, 0), mesh.index(col, n - 1));
  for (std::size_t row = 0; row < n; ++row) uf.unite(mesh.index(n - 1, row), mesh.index(n - 1, n - 1 - row));
  mesh.weld.resize(n * n);
  for (std::size_t i = 0; i < n * n; ++i) mesh.weld[i] = uf.find(i);

  for (const auto& pt : alpha.polyline) mesh.boundary.push_back(pt.cartesian());
  const double l = alpha.terminal_height, h = alpha.start_height;
  const std::size_t up = mesh.boundary.empty() ? 1 : std::max<std::size_t>(1, alpha.polyline.size() / 2);
  for (std::size_t k = 1; k <= up; ++k) {
    const double z = k == up ? h : l + (h - l) * (static_cast<double>(k) / static_cast<double>(up));
    mesh.boundary.push_back(axis_point(z).cartesian());
  }
  return mesh;
}

long euler_characteristic(const DiscMesh& mesh) {
  const std::size_t n = mesh.n;
  const auto& rep = mesh.weld;
  // Edges are keyed by their grid position after the two identifications, not by endpoint
  // classes, so coarse grids whose cells close up into bigons are still counted correctly.
  std::vector<std::array<std::size_t, 3>> edges;
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      if (col + 1 < n && rep[mesh.index(col, row)] != rep[mesh.index(col + 1, row)]) {
        edges.push_back({0, col, row == n - 1 ? 0 : row});
      }
      if (row + 1 < n && rep[mesh.index(col, row)] != rep[mesh.index(col, row + 1)]) {
        edges.push_back({1, col, col == n - 1 ? std::min(row, n - 2 - row) : row});
      }
    }
  }
  std::size_t faces = 0;
  for (std::size_t row = 0; row + 1 < n; ++row) {
    for (std::size_t col = 0; col + 1 < n; ++col) {
      std::size_t q[4] = {rep[mesh.index(col, row)], rep[mesh.index(col + 1, row)],
                          rep[mesh.index(col + 1, row + 1)], rep[mesh.index(col, row + 1)]};
      std::sort(q, q + 4);
      if (std::unique(q, q + 4) - q >= 3) ++faces;
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return static_cast<long>(mesh.class_count()) - static_cast<long>(edges.size()) + static_cast<long>(faces);
}

InjectivityReport verify_injective(const DiscMesh& mesh, double floor) {
  InjectivityReport rep;
  rep.floor = floor;
  std::vector<std::size_t> pts;
  for (std::size_t row = 0; row < mesh.n; ++row) {
    for (std::size_t col = 1; col < mesh.n; ++col) {
      const std::size_t i = mesh.index(col, row);
      if (mesh.weld[i] == i) pts.push_back(i);
    }
  }
  rep.points = pts.size();
  if (pts.size() < 2) return rep;
  const auto& xs = mesh.samples;
  std::sort(pts.begin(), pts.end(), [&](std::size_t a, std::size_t b) { return xs[a].z < xs[b].z; });

  double best = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t a, std::size_t b) {
    const double d = distance(xs[a], xs[b]);
    if (d < best) {
      best = d;
      rep.a = std::min(a, b);
      rep.b = std::max(a, b);
    }
  };
  for (std::size_t k = 1; k < pts.size(); ++k) consider(pts[k - 1], pts[k]);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (std::size_t m = k + 1; m < pts.size() && xs[pts[m]].z - xs[pts[k]].z < best; ++m) consider(pts[k], pts[m]);
  }
  rep.min_distance = best;
  rep.pass = best > floor;
  return rep;
}

DisjointReport verify_disjoint(const DiscMesh& mesh, const BhvScene& scene, double s_min, double floor) {
  if (scene.meshes.empty()) throw std::invalid_argument("verify_disjoint: wall meshes are not sampled");
  DisjointReport rep;
  rep.floor = floor;
  rep.s_min = s_min < 0.0 ? 1.0 / static_cast<double>(mesh.n - 1) : s_min;
  const double l = mesh.terminal_height, h = mesh.start_height;

  struct WallSample {
    Vec4 x;
    int vase;
  };
  std::vector<WallSample> walls;
  for (const auto& wm : scene.meshes) {
    for (std::size_t zi = 0; zi < wm.zs.size(); ++zi) {
      if (wm.zs[zi] < l || wm.zs[zi] > h) continue;
      for (std::size_t pi = 0; pi + 1 < wm.phis.size(); ++pi) walls.push_back({wm.at(zi, pi).cartesian(), wm.vase});
    }
  }
  rep.wall_points = walls.size();
  std::sort(walls.begin(), walls.end(), [](const WallSample& a, const WallSample& b) { return a.x.z < b.x.z; });
  if (walls.empty()) return rep;

  const double cut = rep.s_min * (1.0 - 1e-12);
  for (std::size_t row = 0; row < mesh.n; ++row) {
    double row_best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t col = 0; col < mesh.n; ++col) {
      if (mesh.s(col) < cut) continue;
      const std::size_t idx = mesh.index(col, row);
      if (mesh.weld[idx] != idx) continue;
      any = true;
      ++rep.disc_points;
      const Vec4& x = mesh.samples[idx];
      auto it = std::lower_bound(walls.begin(), walls.end(), x.z,
                                 [](const WallSample& w, double z) { return w.x.z < z; });
      const std::size_t mid = static_cast<std::size_t>(it - walls.begin());
      auto consider = [&](std::size_t k) {
        const double d = distance(x, walls[k].x);
        if (d < row_best) row_best = d;
        if (d < rep.min_distance) {
          rep.min_distance = d;
          rep.disc_sample = idx;
          rep.wall_vase = walls[k].vase;
          rep.wall_point = walls[k].x;
        }
      };
      if (mid < walls.size()) consider(mid);
      if (mid > 0) consider(mid - 1);
      for (std::size_t k = mid; k < walls.size() && walls[k].x.z - x.z < row_best; ++k) consider(k);
      for (std::size_t k = mid; k > 0 && x.z - walls[k - 1].x.z < row_best; --k) consider(k - 1);
    }
    if (any) rep.row_minima.push_back(row_best);
  }
  rep.pass = rep.min_distance > floor;
  return rep;
}

RefinementReport disjoint_refinement(const AlphaPath& alpha, const BhvScene& scene, const DiscOptions& opts,
                                     double floor) {
  RefinementReport rep;
  const double s_min = 1.0 / static_cast<double>(opts.resolution - 1);
  DiscOptions fine_opts = opts;
  fine_opts.resolution = 2 * opts.resolution - 1;
  rep.coarse = verify_disjoint(build_disc(alpha, opts), scene, s_min, floor).min_distance;
  rep.fine = verify_disjoint(build_disc(alpha, fine_opts), scene, s_min, floor).min_distance;
  rep.ratio = rep.fine / rep.coarse;
  rep.stable = rep.ratio >= 0.5;
  return rep;
}

bool disc_in_box(const DiscMesh& mesh) {
  for (const auto& x : mesh.samples) {
    if (x.x * x.x + x.y * x.y > 9.0) return false;
    if (x.z < 0.0 || x.z > mesh.start_height) return false;
    if (x.w < 0.0 || x.w > x.z) return false;
  }
  return true;
}

}  // namespace hvase
