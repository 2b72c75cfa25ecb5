#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hvase/realize.hpp"

namespace hvase {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, double>> metrics;  // in insertion order
  std::string detail;
};

struct VerificationReport {
  std::string config_hash;
  Tolerances tolerances;
  std::vector<CheckResult> checks;

  bool pass() const;
  const CheckResult* find(const std::string& name) const;
};

struct VerifyOptions {
  std::vector<double> pi1_epsilons = {0.02, 0.1, 0.3};
  std::vector<double> level_epsilons = {0.9, 0.5, 0.3, 0.11};
  SeparationGrid separation;
  bool wall_separation = true;
  bool disc_refinement = true;
};

/// Re-checks every construction invariant of a scene with attached meshes.
VerificationReport verify_scene(const Scene& scene, const VerifyOptions& opts = {});

/// Compares H_1 and hom-counts of the truncation at each epsilon against `expected`.
VerificationReport verify_pi1(const Scene& scene, const Presentation& expected, const std::vector<double>& epsilons);

/// Stable key order; non-finite metrics are written as null.
std::string report_json(const VerificationReport& report);

/// One line per check: PASS/FAIL, name, metrics.
std::string report_text(const VerificationReport& report);

}  // namespace hvase
