#include "hvase/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hvase/scene_io.hpp"
#include "json.hpp"

namespace hvase {

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

std::string eps_name(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", eps);
  return buf;
}

CheckResult check_independence(const Scene& scene) {
  const auto& tol = scene.config.tolerances;
  const auto rep = verify_independence(scene.bhv.ps, scene.config.independence_depth, tol.coincidence);
  CheckResult c{"independence", rep.pass, {}, {}};
  c.metrics = {{"min_gap", rep.min_gap}, {"inner_height", rep.inner_height}, {"h_point", rep.h_point},
               {"vase_i", rep.vase_i}, {"vase_j", rep.vase_j}};
  return c;
}

CheckResult check_profiles(const Scene& scene) {
  const auto& tol = scene.config.tolerances;
  const auto rep = verify_profile_conditions(scene.bhv.profiles, scene.bhv.ps, scene.bhv.z_min, tol.coincidence);
  CheckResult c{"profile_conditions", rep.pass(), {}, {}};
  // Wcoord1 on the embedded samples: |phi| w_i(z) < z.
  double worst = 0.0;
  bool samples_ok = true;
  for (const auto& m : scene.bhv.meshes) {
    for (const auto& pt : m.points) {
      worst = std::max(worst, pt.w / pt.z);
      samples_ok = samples_ok && pt.w < pt.z;
    }
  }
  c.pass = c.pass && samples_ok;
  c.metrics = {{"max_w_over_z_profile", rep.max_w_over_z},
               {"max_w_over_z_samples", worst},
               {"min_h_separation", rep.min_separation},
               {"h_points_checked", static_cast<double>(rep.h_points_checked)},
               {"inner_heights_checked", static_cast<double>(rep.inner_heights_checked)}};
  for (const auto& p : rep.problems) c.detail += (c.detail.empty() ? "" : "; ") + p;
  return c;
}

CheckResult check_formula(const Scene& scene) {
  const double tol = scene.config.tolerances.formula;
  double worst = 0.0;
  for (const auto& m : scene.bhv.meshes) {
    const double p = scene.bhv.ps.p(m.vase);
    for (const auto& pt : m.points) {
      worst = std::max(worst, std::abs(pt.r - ((std::abs(pt.phi) / kPi) * std::sin(kPi * p / pt.z) + 2.0)));
      worst = std::max(worst, std::abs(pt.w - std::abs(pt.phi) * w_eval(scene.bhv.profile(m.vase), pt.z)));
    }
  }
  return {"wall_formula", worst <= tol, {{"max_residual", worst}}, {}};
}

CheckResult check_separation(const Scene& scene, const VerifyOptions& opts) {
  SeparationGrid grid = opts.separation;
  grid.z_lo = std::max(grid.z_lo, scene.config.z_min);
  const auto coarse = min_wall_separation(scene.bhv, grid);
  SeparationGrid fine_grid = grid;
  fine_grid.phi_steps *= 2;
  fine_grid.oversample *= 2.0;
  const auto fine = min_wall_separation(scene.bhv, fine_grid);
  const double change = std::abs(fine.min_distance - coarse.min_distance) / coarse.min_distance;
  CheckResult c{"wall_separation", coarse.min_distance > 0.0 && fine.min_distance > 0.0 && change < 0.5, {}, {}};
  c.metrics = {{"min_distance", coarse.min_distance}, {"min_distance_refined", fine.min_distance},
               {"relative_change", change},           {"phi", coarse.phi},
               {"z", coarse.z},                       {"vase_i", coarse.vase_i},
               {"vase_j", coarse.vase_j}};
  return c;
}

CheckResult check_alpha(const Scene& scene, std::size_t k) {
  const auto& alpha = scene.alphas[k];
  CheckResult c{"alpha_" + std::to_string(k + 1), false, {}, {}};
  const auto mono = verify_monotone(alpha);
  bool decoded_ok = false;
  try {
    const Word w = decode_word(scene.bhv, alpha.polyline, scene.config.tolerances.coincidence);
    decoded_ok = w == scene.presentation.relators[k];
    c.detail = "decoded " + format_word(w, scene.presentation);
  } catch (const DecodeError& e) {
    c.detail = e.what();
  }
  c.pass = mono.pass && decoded_ok;
  c.metrics = {{"samples", static_cast<double>(mono.samples)},
               {"max_dz", mono.max_step},
               {"start_height", alpha.start_height},
               {"terminal_height", alpha.terminal_height}};
  return c;
}

CheckResult check_disc(const Scene& scene, std::size_t k, const VerifyOptions& opts) {
  const auto& d = scene.discs[k];
  const auto& tol = scene.config.tolerances;
  CheckResult c{"disc_" + std::to_string(k + 1), false, {}, {}};
  const long chi = euler_characteristic(d);
  const auto inj = verify_injective(d, tol.distance_floor);
  const auto dis = verify_disjoint(d, scene.bhv, -1.0, tol.distance_floor);
  const bool in_band = d.start_height <= scene.bands[k].start && d.terminal_height >= scene.bands[k].terminal;
  c.pass = chi == 1 && inj.pass && dis.pass && in_band && disc_in_box(d);
  c.metrics = {{"euler_characteristic", static_cast<double>(chi)},
               {"injectivity_min_distance", inj.min_distance},
               {"wall_min_distance", dis.min_distance},
               {"wall_points", static_cast<double>(dis.wall_points)}};
  if (opts.disc_refinement) {
    const auto ref = disjoint_refinement(scene.alphas[k], scene.bhv, d.options, tol.distance_floor);
    c.pass = c.pass && ref.stable;
    c.metrics.push_back({"wall_min_distance_refined", ref.fine});
    c.metrics.push_back({"refinement_ratio", ref.ratio});
  }
  return c;
}

CheckResult check_compactness(const Scene& scene, const VerifyOptions& opts) {
  std::vector<double> eps;
  for (double e : opts.level_epsilons) {
    if (e > scene.config.z_min) eps.push_back(e);
  }
  const auto rep = compactness_report(scene, eps);
  CheckResult c{"compactness", rep.pass(), {}, rep.unsampled_note};
  c.metrics = {{"samples", static_cast<double>(rep.samples)},
               {"max_r", rep.max_r},
               {"max_w_over_z", rep.max_w_over_z},
               {"bands_disjoint", rep.bands_disjoint ? 1.0 : 0.0},
               {"axis_contact", rep.axis_contact ? 1.0 : 0.0}};
  for (const auto& l : rep.levels) {
    c.metrics.push_back({"walls_at_" + eps_name(l.epsilon), static_cast<double>(l.walls)});
    c.metrics.push_back({"discs_at_" + eps_name(l.epsilon), static_cast<double>(l.discs)});
  }
  for (const auto& p : rep.problems) c.detail += "; " + p;
  return c;
}

void append_pi1(VerificationReport& report, const Scene& scene, const Presentation& expected,
                const std::vector<double>& epsilons) {
  for (double eps : epsilons) {
    if (!(eps > scene.config.z_min && eps <= scene.config.top)) continue;
    CheckResult c{"pi1_eps_" + eps_name(eps), false, {}, {}};
    try {
      const auto tc = truncate(scene, eps);
      const auto rep = pi1_report(tc, expected_truncation(expected, tc));
      c.pass = rep.pass;
      c.metrics = {{"generators", static_cast<double>(tc.generators.size())},
                   {"discs", static_cast<double>(tc.discs.size())},
                   {"h1_rank", rep.complex_h1.free_rank}};
      for (const auto& hc : rep.counts) {
        c.metrics.push_back({"hom_" + hc.group, static_cast<double>(hc.complex)});
        c.metrics.push_back({"hom_" + hc.group + "_expected", static_cast<double>(hc.expected)});
      }
      c.detail = "H1 " + format_homology(rep.complex_h1) + " vs " + format_homology(rep.expected_h1) + "; " + rep.note;
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    report.checks.push_back(std::move(c));
  }
}

}  // namespace

VerificationReport verify_scene(const Scene& scene, const VerifyOptions& opts) {
  if (!scene.has_meshes()) throw std::invalid_argument("verify_scene: meshes are not attached");
  VerificationReport report;
  report.config_hash = config_hash(scene.config);
  report.tolerances = scene.config.tolerances;
  report.checks.push_back(check_independence(scene));
  report.checks.push_back(check_profiles(scene));
  report.checks.push_back(check_formula(scene));
  if (opts.wall_separation && scene.bhv.size() >= 2) report.checks.push_back(check_separation(scene, opts));
  for (std::size_t k = 0; k < scene.alphas.size(); ++k) report.checks.push_back(check_alpha(scene, k));
  for (std::size_t k = 0; k < scene.discs.size(); ++k) report.checks.push_back(check_disc(scene, k, opts));
  report.checks.push_back(check_compactness(scene, opts));
  append_pi1(report, scene, scene.presentation, opts.pi1_epsilons);
  return report;
}

VerificationReport verify_pi1(const Scene& scene, const Presentation& expected, const std::vector<double>& epsilons) {
  VerificationReport report;
  report.config_hash = config_hash(scene.config);
  report.tolerances = scene.config.tolerances;
  append_pi1(report, scene, expected, epsilons);
  return report;
}

std::string report_json(const VerificationReport& report) {
  using Json = nlohmann::ordered_json;
  auto value = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  Json j;
  j["config_hash"] = report.config_hash;
  j["pass"] = report.pass();
  j["tolerances"] = {{"coincidence", report.tolerances.coincidence},
                     {"formula", report.tolerances.formula},
                     {"distance_floor", report.tolerances.distance_floor}};
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json m = Json::object();
    for (const auto& [k, v] : c.metrics) m[k] = value(v);
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"metrics", std::move(m)}, {"detail", c.detail}});
  }
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

std::string report_text(const VerificationReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name;
    for (const auto& [k, v] : c.metrics) os << ' ' << k << '=' << v;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  os << (report.pass() ? "all checks passed" : "verification FAILED") << "\n";
  return os.str();
}

}  // namespace hvase
