#include "hvase/export.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hvase {

MeshFormat parse_mesh_format(const std::string& s) {
  if (s == "obj") return MeshFormat::Obj;
  if (s == "ply") return MeshFormat::Ply;
  throw std::invalid_argument("unknown mesh format '" + s + "' (expected obj or ply)");
}

Projection parse_projection(const std::string& s) {
  if (s == "drop-w") return Projection::DropW;
  if (s == "w-color") return Projection::WColor;
  throw std::invalid_argument("unknown projection '" + s + "' (expected drop-w or w-color)");
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Group {
  std::string name;
  std::vector<Vec4> vertices;
  std::vector<std::vector<std::size_t>> faces;  // local indices
};

Group wall_group(const WallMesh& m) {
  Group g;
  g.name = "vase_" + std::to_string(m.vase);
  const std::size_t cols = m.phis.size() - 1;  // phi = +pi welds onto phi = -pi
  for (std::size_t zi = 0; zi < m.zs.size(); ++zi) {
    for (std::size_t pi = 0; pi < cols; ++pi) g.vertices.push_back(m.at(zi, pi).cartesian());
  }
  for (std::size_t zi = 0; zi + 1 < m.zs.size(); ++zi) {
    for (std::size_t pi = 0; pi < cols; ++pi) {
      const std::size_t pn = (pi + 1) % cols;
      g.faces.push_back({zi * cols + pi, zi * cols + pn, (zi + 1) * cols + pn, (zi + 1) * cols + pi});
    }
  }
  return g;
}

Group disc_group(const DiscMesh& d) {
  Group g;
  g.name = "disc_" + std::to_string(d.relator);
  std::map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    if (d.weld[i] != i) continue;
    local[i] = g.vertices.size();
    g.vertices.push_back(d.samples[i]);
  }
  const std::size_t n = d.n;
  for (std::size_t row = 0; row + 1 < n; ++row) {
    for (std::size_t col = 0; col + 1 < n; ++col) {
      const std::size_t corner[4] = {d.index(col, row), d.index(col + 1, row), d.index(col + 1, row + 1),
                                     d.index(col, row + 1)};
      std::vector<std::size_t> face;
      for (std::size_t c : corner) {
        const std::size_t v = local.at(d.weld[c]);
        if (face.empty() || face.back() != v) face.push_back(v);
      }
      while (face.size() > 1 && face.front() == face.back()) face.pop_back();
      if (face.size() >= 3) g.faces.push_back(std::move(face));
    }
  }
  return g;
}

Group pedestal_group() {
  Group g;
  g.name = "pedestal";
  g.vertices.push_back({0.0, 0.0, 0.0, 0.0});
  for (std::size_t k = 0; k < kPedestalSegments; ++k) {
    const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(kPedestalSegments);
    g.vertices.push_back({kPedestalRadius * std::cos(a), kPedestalRadius * std::sin(a), 0.0, 0.0});
  }
  for (std::size_t k = 0; k < kPedestalSegments; ++k) {
    g.faces.push_back({0, 1 + k, 1 + (k + 1) % kPedestalSegments});
  }
  return g;
}

std::string write_obj(const std::vector<Group>& groups, Projection proj) {
  std::ostringstream os;
  os << "# hvase mesh\n# projection " << (proj == Projection::DropW ? "drop-w" : "w-color") << "\n";
  if (proj == Projection::WColor) os << "# each vertex line is followed by '#w <value>'\n";
  std::size_t base = 1;
  for (const auto& g : groups) {
    os << "g " << g.name << "\n";
    for (const auto& v : g.vertices) {
      os << "v " << num(v.x) << ' ' << num(v.y) << ' ' << num(v.z) << "\n";
      if (proj == Projection::WColor) os << "#w " << num(v.w) << "\n";
    }
    for (const auto& f : g.faces) {
      os << 'f';
      for (std::size_t i : f) os << ' ' << base + i;
      os << "\n";
    }
    base += g.vertices.size();
  }
  return os.str();
}

std::string write_ply(const std::vector<Group>& groups, Projection proj) {
  std::size_t nv = 0, nf = 0;
  for (const auto& g : groups) {
    nv += g.vertices.size();
    nf += g.faces.size();
  }
  std::ostringstream os;
  os << "ply\nformat ascii 1.0\ncomment hvase mesh\n";
  std::size_t first_face = 0;
  for (const auto& g : groups) {
    os << "comment group " << g.name << " faces " << first_face << " " << g.faces.size() << "\n";
    first_face += g.faces.size();
  }
  os << "element vertex " << nv << "\nproperty double x\nproperty double y\nproperty double z\n";
  if (proj == Projection::WColor) os << "property double w\n";
  os << "element face " << nf << "\nproperty list uchar int vertex_indices\nend_header\n";
  for (const auto& g : groups) {
    for (const auto& v : g.vertices) {
      os << num(v.x) << ' ' << num(v.y) << ' ' << num(v.z);
      if (proj == Projection::WColor) os << ' ' << num(v.w);
      os << "\n";
    }
  }
  std::size_t base = 0;
  for (const auto& g : groups) {
    for (const auto& f : g.faces) {
      os << f.size();
      for (std::size_t i : f) os << ' ' << base + i;
      os << "\n";
    }
    base += g.vertices.size();
  }
  return os.str();
}

std::string write_groups(const std::vector<Group>& groups, MeshFormat format, Projection proj, ExportStats* stats) {
  if (stats) {
    *stats = {};
    for (const auto& g : groups) {
      stats->vertices += g.vertices.size();
      stats->faces += g.faces.size();
      stats->groups.push_back(g.name);
    }
  }
  return format == MeshFormat::Obj ? write_obj(groups, proj) : write_ply(groups, proj);
}

}  // namespace

std::string export_mesh(const Scene& scene, MeshFormat format, Projection projection, ExportStats* stats) {
  if (!scene.has_meshes()) throw std::invalid_argument("export_mesh: scene has no sampled meshes");
  std::vector<Group> groups;
  for (const auto& m : scene.bhv.meshes) groups.push_back(wall_group(m));
  for (const auto& d : scene.discs) groups.push_back(disc_group(d));
  groups.push_back(pedestal_group());
  return write_groups(groups, format, projection, stats);
}

std::string export_wall(const WallMesh& mesh, MeshFormat format, Projection projection, ExportStats* stats) {
  if (mesh.points.empty()) throw std::invalid_argument("export_wall: mesh is empty");
  return write_groups({wall_group(mesh)}, format, projection, stats);
}

CrossSection cross_section(const std::vector<VaseParams>& vases, double phi, double z_min, double oversample) {
  if (!(phi >= -kPi && phi <= kPi)) throw std::domain_error("cross_section: phi must lie in [-pi, pi]");
  CrossSection cs;
  cs.phi = phi;
  cs.z_min = z_min;
  for (std::size_t i = 0; i < vases.size(); ++i) {
    SectionCurve c;
    c.vase = static_cast<int>(i + 1);
    c.z = adaptive_z_grid(vases[i].m, vases[i].p, z_min, oversample);
    for (double z : c.z) c.r.push_back(wall_radius(vases[i].p, phi, z));
    cs.curves.push_back(std::move(c));
  }
  return cs;
}

CrossSection cross_section(const Scene& scene, double phi) {
  std::vector<VaseParams> vases;
  for (int i = 1; i <= scene.bhv.size(); ++i) vases.push_back(scene.bhv.vase(i));
  return cross_section(vases, phi, scene.config.z_min, scene.config.oversample);
}

std::string cross_section_svg(const CrossSection& section) {
  constexpr double kWidth = 720.0, kHeight = 560.0, kLeft = 60.0, kBottom = 500.0;
  constexpr double kRScale = 200.0, kZScale = 440.0;
  auto x_of = [&](double r) { return kLeft + kRScale * r; };
  auto y_of = [&](double z) { return kBottom - kZScale * z; };
  auto f = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<title>cross-section at phi = " << num(section.phi) << "</title>\n";
  os << "<line class=\"axis\" x1=\"" << f(x_of(0)) << "\" y1=\"" << f(y_of(0)) << "\" x2=\"" << f(x_of(3.2))
     << "\" y2=\"" << f(y_of(0)) << "\" stroke=\"black\"/>\n";
  os << "<line class=\"axis\" x1=\"" << f(x_of(0)) << "\" y1=\"" << f(y_of(0)) << "\" x2=\"" << f(x_of(0))
     << "\" y2=\"" << f(y_of(1.05)) << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << f(x_of(3.2)) << "\" y=\"" << f(y_of(0) + 20) << "\">r</text>\n";
  os << "<text x=\"" << f(x_of(0) - 20) << "\" y=\"" << f(y_of(1.05)) << "\">z</text>\n";
  for (std::size_t c = 0; c < section.curves.size(); ++c) {
    const auto& curve = section.curves[c];
    os << "<path class=\"vase\" data-vase=\"" << curve.vase << "\" fill=\"none\" stroke-width=\"0.8\" stroke=\""
       << kColors[c % 6] << "\" d=\"";
    for (std::size_t k = 0; k < curve.r.size(); ++k) {
      os << (k == 0 ? "M" : " L") << f(x_of(curve.r[k])) << ' ' << f(y_of(curve.z[k]));
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string inner_heights_csv(const VaseParams& v, std::size_t count) {
  std::ostringstream os;
  os << "k,inner_height,sin_value\n";
  const std::size_t k0 = first_inner_index(v);
  const auto hs = inner_heights(v, count);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    os << k0 + i << ',' << num(hs[i]) << ',' << num(std::sin(kPi * v.p / hs[i])) << "\n";
  }
  return os.str();
}

}  // namespace hvase
