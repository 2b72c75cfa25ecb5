#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hvase/braid.hpp"
#include "hvase/disc.hpp"
#include "hvase/geometry.hpp"
#include "hvase/presentation.hpp"
#include "hvase/relator_path.hpp"

namespace hvase {

struct BuildConfig {
  int depth_gens = 0;                    // 0 keeps every generator
  std::optional<std::size_t> relators;   // nullopt keeps every relator
  double z_min = 0.01;
  std::size_t phi_steps = 64;
  double oversample = 8.0;
  std::size_t sample_budget = 20'000'000;
  std::size_t disc_resolution = 128;
  std::size_t loop_samples = 64;
  double vertical_step = 0.01;
  double band_margin = 0.05;
  double bump_margin = 0.5;
  double top = 1.0;
  std::size_t independence_depth = 50;
  Tolerances tolerances;

  WallResolution wall_resolution() const { return {phi_steps, oversample, sample_budget}; }
  AlphaOptions alpha_options() const { return {loop_samples, vertical_step}; }
  DiscOptions disc_options() const { return {disc_resolution, bump_margin, false}; }

  friend bool operator==(const BuildConfig&, const BuildConfig&) = default;
};

/// Height record of one attached disc: alpha starts at `start`, ends at `terminal` (l_k),
/// and the next band begins below `next` = l_k (1 - margin).
struct Band {
  std::size_t relator = 0;  // 1-based
  double start = 0.0;
  double terminal = 0.0;
  double next = 0.0;

  friend bool operator==(const Band&, const Band&) = default;
};

struct Scene {
  BuildConfig config;
  Presentation presentation;  // after depth truncation
  BhvScene bhv;
  std::vector<Band> bands;
  std::vector<AlphaPath> alphas;
  std::vector<DiscMesh> discs;  // empty unless meshes are attached

  bool has_meshes() const { return !bhv.meshes.empty(); }

  friend bool operator==(const Scene&, const Scene&) = default;
};

class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Presentation restricted to the configured depth (first K relators, first N generators).
Presentation apply_depth(const Presentation& p, const BuildConfig& config);

/// X_0 = BHV on N vases, then one disc per relator in strictly descending bands.
/// Throws HeadroomError (relator count that fit is in the message) or BuildError.
Scene build_space(const Presentation& p, const BuildConfig& config, bool with_meshes = true);

/// Samples wall meshes and disc grids from the stored construction.
void attach_meshes(Scene& scene);

struct TruncationComplex {
  double epsilon = 0.0;
  std::vector<int> generators;      // 1-based vase indices with 1/i >= epsilon
  std::vector<std::size_t> discs;   // 1-based relator indices with l_k >= epsilon
  std::vector<Word> words;          // decoded from each included alpha polyline
  Presentation presentation;        // < included generators | decoded words >
};

/// Throws std::out_of_range unless z_min < epsilon <= top.
TruncationComplex truncate(const Scene& scene, double epsilon);

/// The input presentation cut to the generators and relators a truncation includes.
Presentation expected_truncation(const Presentation& input, const TruncationComplex& tc);

struct HomCount {
  std::string group;
  std::uint64_t complex = 0;
  std::uint64_t expected = 0;
};

struct Pi1Report {
  bool pass = false;
  double epsilon = 0.0;
  Homology complex_h1;
  Homology expected_h1;
  std::vector<HomCount> counts;
  std::string note;
};

/// H_1 by Smith normal form and homomorphism counts into S3, Z/2, Z/4 and D4.
Pi1Report pi1_report(const TruncationComplex& tc, const Presentation& expected);

struct LevelCount {
  double epsilon = 0.0;
  std::size_t walls = 0;
  std::size_t expected_walls = 0;
  std::size_t discs = 0;
  std::size_t expected_discs = 0;

  bool pass() const { return walls == expected_walls && discs == expected_discs; }
};

struct CompactnessReport {
  bool box_pass = true;
  std::size_t samples = 0;
  double max_r = 0.0;
  double max_w_over_z = 0.0;
  bool w_ratio_pass = true;  // max w/z <= 1/2 up to the formula tolerance
  std::vector<LevelCount> levels;
  bool bands_disjoint = true;
  bool axis_contact = true;
  std::vector<std::string> problems;
  std::string unsampled_note;

  bool pass() const;
};

/// Requires attached meshes.
CompactnessReport compactness_report(const Scene& scene, const std::vector<double>& epsilons);

}  // namespace hvase
