#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hvase/realize.hpp"
#include "hvase/vase.hpp"

namespace hvase {

enum class MeshFormat { Obj, Ply };
enum class Projection { DropW, WColor };

MeshFormat parse_mesh_format(const std::string& s);
Projection parse_projection(const std::string& s);

/// Pedestal disc of radius 3 at z = 0, fanned from the centre.
inline constexpr std::size_t kPedestalSegments = 64;

struct ExportStats {
  std::size_t vertices = 0;
  std::size_t faces = 0;
  std::vector<std::string> groups;
};

/// Walls (phi = +-pi columns welded), discs (weld classes, collapsed quads become
/// triangles) and the pedestal. Throws std::invalid_argument when meshes are absent.
std::string export_mesh(const Scene& scene, MeshFormat format, Projection projection, ExportStats* stats = nullptr);

/// Single wall without pedestal, for inspection of one vase.
std::string export_wall(const WallMesh& mesh, MeshFormat format, Projection projection,
                        ExportStats* stats = nullptr);

struct SectionCurve {
  int vase = 1;
  std::vector<double> r;
  std::vector<double> z;  // descending from the vase top to just above z_min
};

struct CrossSection {
  double phi = 0.0;
  double z_min = 0.0;
  std::vector<SectionCurve> curves;
};

/// Curves z -> r(phi, z) of each vase at fixed angle. Throws std::domain_error
/// when phi is outside [-pi, pi].
CrossSection cross_section(const std::vector<VaseParams>& vases, double phi, double z_min, double oversample = 8.0);
CrossSection cross_section(const Scene& scene, double phi);

/// One <path> per curve plus the r and z axes drawn as <line> elements.
std::string cross_section_svg(const CrossSection& section);

/// k, inner-height, sin(pi p / h) for the first `count` inner-heights of a vase.
std::string inner_heights_csv(const VaseParams& v, std::size_t count);

}  // namespace hvase
