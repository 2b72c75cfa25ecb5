// Command-line front end: build, verify, and export braided-vase spaces.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hvase/export.hpp"
#include "hvase/realize.hpp"
#include "hvase/scene_io.hpp"
#include "hvase/verify.hpp"

namespace {

using namespace hvase;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

struct BuildFlags {
  int depth_gens = 0;
  std::string relators = "all";
  double z_min = 0.01;
  std::size_t resolution = 128;
  std::size_t phi_steps = 64;
  double oversample = 8.0;
};

struct ToleranceFlags {
  std::optional<double> coincidence;
  std::optional<double> formula;
  std::optional<double> distance;

  void apply(Tolerances& t) const {
    if (coincidence) t.coincidence = *coincidence;
    if (formula) t.formula = *formula;
    if (distance) t.distance_floor = *distance;
  }
};

void add_build_flags(CLI::App* cmd, BuildFlags& f, bool with_relators) {
  cmd->add_option("--depth-gens", f.depth_gens, "Number of generators (vases) to realize; 0 keeps all")
      ->check(CLI::NonNegativeNumber);
  if (with_relators) cmd->add_option("--relators", f.relators, "Number of relators to attach, or 'all'");
  cmd->add_option("--z-min", f.z_min, "Lowest sampled height")->check(CLI::PositiveNumber);
  cmd->add_option("--resolution", f.resolution, "Disc grid resolution n (n x n samples)")->check(CLI::Range(2, 4096));
  cmd->add_option("--phi-steps", f.phi_steps, "Angular steps of each wall mesh (even)");
  cmd->add_option("--oversample", f.oversample, "Samples per local oscillation period (Q)")
      ->check(CLI::Range(4.0, 1024.0));
}

void add_tolerance_flags(CLI::App* cmd, ToleranceFlags& t) {
  cmd->add_option("--tolerance-coincidence", t.coincidence, "Coincidence margin (default 1e-9)");
  cmd->add_option("--tolerance-formula", t.formula, "Closed-form re-check tolerance (default 1e-12)");
  cmd->add_option("--tolerance-distance", t.distance, "Pairwise distance floor (default 1e-9)");
}

BuildConfig make_config(const BuildFlags& f, const ToleranceFlags& t) {
  BuildConfig c;
  c.depth_gens = f.depth_gens;
  if (f.relators != "all") {
    try {
      std::size_t used = 0;
      const long k = std::stol(f.relators, &used);
      if (used != f.relators.size() || k < 0) throw std::invalid_argument("negative");
      c.relators = static_cast<std::size_t>(k);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--relators", "expected a count or 'all', got '" + f.relators + "'");
    }
  }
  c.z_min = f.z_min;
  c.disc_resolution = f.resolution;
  c.phi_steps = f.phi_steps;
  c.oversample = f.oversample;
  t.apply(c.tolerances);
  return c;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

int finish(const VerificationReport& report, const std::string& report_path) {
  std::cout << report_text(report);
  if (!report_path.empty()) write_text_file(report_path, report_json(report));
  return report.pass() ? kExitOk : kExitVerification;
}

Scene load_with_meshes(const std::string& path) {
  Scene scene = read_scene_file(path);
  if (!scene.has_meshes()) attach_meshes(scene);
  return scene;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realize group presentations as braided harmonic vase spaces in R^4 and verify them"};
  app.require_subcommand(1);

  // vase
  auto* vase_cmd = app.add_subcommand("vase", "Inner-heights table and cross-section of one vase");
  double m = 1.0, p = 1.0, phi = kPi, vase_zmin = 0.01, vase_q = 8.0;
  std::size_t count = 30;
  std::string csv_out, svg_out;
  vase_cmd->add_option("--m", m, "Vase height")->check(CLI::PositiveNumber);
  vase_cmd->add_option("--p", p, "Oscillation parameter")->check(CLI::PositiveNumber);
  vase_cmd->add_option("--count", count, "Number of inner-heights");
  vase_cmd->add_option("--phi", phi, "Angle of the cross-section")->check(CLI::Range(-kPi, kPi));
  vase_cmd->add_option("--z-min", vase_zmin, "Lowest height of the cross-section")->check(CLI::PositiveNumber);
  vase_cmd->add_option("--oversample", vase_q, "Samples per local oscillation period");
  vase_cmd->add_option("--out", csv_out, "Inner-heights CSV (default stdout)");
  vase_cmd->add_option("--svg", svg_out, "Cross-section SVG");

  // braid
  auto* braid_cmd = app.add_subcommand("braid", "Build the braided vase on N vases and verify it");
  BuildFlags braid_flags;
  braid_flags.depth_gens = 4;
  ToleranceFlags braid_tol;
  std::string braid_report, braid_out;
  add_build_flags(braid_cmd, braid_flags, false);
  add_tolerance_flags(braid_cmd, braid_tol);
  braid_cmd->add_option("--report", braid_report, "Verification report (JSON)");
  braid_cmd->add_option("--out", braid_out, "Scene file");

  // realize
  auto* realize_cmd = app.add_subcommand("realize", "Build the space of a presentation file");
  BuildFlags realize_flags;
  ToleranceFlags realize_tol;
  std::string pres_path, realize_out = "-", realize_report;
  bool with_meshes = false;
  realize_cmd->add_option("presentation", pres_path, "Presentation file")->required()->check(CLI::ExistingFile);
  add_build_flags(realize_cmd, realize_flags, true);
  add_tolerance_flags(realize_cmd, realize_tol);
  realize_cmd->add_option("--out", realize_out, "Scene file (default stdout)");
  realize_cmd->add_flag("--with-meshes", with_meshes, "Store sampled meshes in the scene file");
  realize_cmd->add_option("--report", realize_report, "Also verify and write a report (JSON)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Re-check every invariant of a scene");
  std::string verify_scene_path, verify_report;
  ToleranceFlags verify_tol;
  bool skip_refinement = false;
  verify_cmd->add_option("scene", verify_scene_path, "Scene file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_option("--report", verify_report, "Verification report (JSON)");
  verify_cmd->add_flag("--no-refinement", skip_refinement, "Skip the refined disc disjointness pass");
  add_tolerance_flags(verify_cmd, verify_tol);

  // pi1
  auto* pi1_cmd = app.add_subcommand("pi1", "Compare truncation presentations with an expected presentation");
  std::string pi1_scene, expect_path, pi1_report_path;
  std::vector<double> epsilons;
  pi1_cmd->add_option("scene", pi1_scene, "Scene file")->required()->check(CLI::ExistingFile);
  pi1_cmd->add_option("--epsilon", epsilons, "Truncation height(s)")->required();
  pi1_cmd->add_option("--expect", expect_path, "Expected presentation (default: the scene's own)")
      ->check(CLI::ExistingFile);
  pi1_cmd->add_option("--report", pi1_report_path, "Report (JSON)");

  // export
  auto* export_cmd = app.add_subcommand("export", "Export walls, discs and pedestal as a mesh");
  std::string export_scene, format = "obj", projection = "drop-w", export_out = "-";
  export_cmd->add_option("scene", export_scene, "Scene file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--format", format, "obj or ply")->check(CLI::IsMember({"obj", "ply"}));
  export_cmd->add_option("--projection", projection, "drop-w or w-color")->check(CLI::IsMember({"drop-w", "w-color"}));
  export_cmd->add_option("--out", export_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (vase_cmd->parsed()) {
      const VaseParams v(m, p);
      emit(csv_out, inner_heights_csv(v, count));
      if (!svg_out.empty()) write_text_file(svg_out, cross_section_svg(cross_section({v}, phi, vase_zmin, vase_q)));
      return kExitOk;
    }
    if (braid_cmd->parsed()) {
      if (braid_flags.depth_gens < 1) throw CLI::ValidationError("--depth-gens", "braid needs at least one vase");
      const BuildConfig config = make_config(braid_flags, braid_tol);
      const Scene scene = build_space(free_presentation(braid_flags.depth_gens), config);
      if (!braid_out.empty()) write_scene_file(braid_out, scene);
      return finish(verify_scene(scene), braid_report);
    }
    if (realize_cmd->parsed()) {
      const Presentation pres = parse_presentation(read_text_file(pres_path));
      const BuildConfig config = make_config(realize_flags, realize_tol);
      const bool need_meshes = with_meshes || !realize_report.empty();
      const Scene scene = build_space(pres, config, need_meshes);
      emit(realize_out, save_scene(scene, {with_meshes}));
      if (!realize_report.empty()) {
        const auto report = verify_scene(scene);
        write_text_file(realize_report, report_json(report));
        std::cerr << report_text(report);
        return report.pass() ? kExitOk : kExitVerification;
      }
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      Scene scene = load_with_meshes(verify_scene_path);
      verify_tol.apply(scene.config.tolerances);
      VerifyOptions opts;
      opts.disc_refinement = !skip_refinement;
      return finish(verify_scene(scene, opts), verify_report);
    }
    if (pi1_cmd->parsed()) {
      const Scene scene = read_scene_file(pi1_scene);
      const Presentation expected =
          expect_path.empty() ? scene.presentation : parse_presentation(read_text_file(expect_path));
      for (double eps : epsilons) {
        if (!(eps > scene.config.z_min && eps <= scene.config.top)) {
          throw CLI::ValidationError("--epsilon", "must lie in (z_min, 1]");
        }
      }
      return finish(verify_pi1(scene, expected, epsilons), pi1_report_path);
    }
    if (export_cmd->parsed()) {
      const Scene scene = load_with_meshes(export_scene);
      emit(export_out, export_mesh(scene, parse_mesh_format(format), parse_projection(projection)));
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
