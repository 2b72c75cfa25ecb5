#include "hvase/realize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hvase {

Presentation apply_depth(const Presentation& p, const BuildConfig& config) {
  Presentation out = p;
  if (config.relators) {
    if (*config.relators > p.relators.size()) {
      throw BuildError("requested " + std::to_string(*config.relators) + " relators but the presentation has " +
                       std::to_string(p.relators.size()));
    }
    out = truncate_presentation(out, *config.relators);
  }
  if (config.depth_gens != 0) {
    if (config.depth_gens < 0 || config.depth_gens > out.generator_count()) {
      throw BuildError("--depth-gens " + std::to_string(config.depth_gens) + " exceeds the " +
                       std::to_string(out.generator_count()) + " generators of the presentation");
    }
    try {
      out = restrict_generators(out, config.depth_gens);
    } catch (const std::invalid_argument& e) {
      throw BuildError(e.what());
    }
  }
  return out;
}

Scene build_space(const Presentation& input, const BuildConfig& config, bool with_meshes) {
  if (!(config.z_min > 0.0 && config.z_min < config.top)) throw BuildError("z_min must lie in (0, top)");
  if (!(config.band_margin > 0.0 && config.band_margin < 1.0)) throw BuildError("band margin must lie in (0, 1)");
  if (config.top != 1.0) throw BuildError("the first vase has height 1; top must be 1");

  Scene scene;
  scene.config = config;
  scene.presentation = apply_depth(input, config);
  const int n = scene.presentation.generator_count();
  if (n < 1) throw BuildError("presentation has no generators");
  for (std::size_t k = 0; k < scene.presentation.relators.size(); ++k) {
    if (scene.presentation.relators[k].empty()) {
      throw BuildError("relator " + std::to_string(k + 1) + " is the empty word and cannot bound a disc");
    }
  }

  PSequence ps = choose_p_sequence(static_cast<std::size_t>(n));
  const auto indep = certify(ps, config.independence_depth, config.tolerances.coincidence);
  if (!indep.pass) {
    std::ostringstream os;
    os << "p-sequence fails the independence check: vases " << indep.vase_i << ", " << indep.vase_j
       << " gap " << indep.min_gap;
    throw BuildError(os.str());
  }
  auto profiles = build_w_profiles(ps, config.z_min, config.tolerances.coincidence);
  scene.bhv = build_bhv(std::move(ps), std::move(profiles), config.z_min, nullptr, config.tolerances.coincidence);

  double ceiling = config.top;
  const std::size_t total = scene.presentation.relators.size();
  for (std::size_t k = 0; k < total; ++k) {
    const double start = ceiling * (1.0 - config.band_margin);
    AlphaPath alpha;
    try {
      alpha = build_alpha(scene.bhv, scene.presentation.relators[k], start, config.alpha_options());
    } catch (const HeadroomError& e) {
      std::ostringstream os;
      os << "headroom exhausted at relator " << k + 1 << " of " << total << ": " << k
         << " relators fit above z_min = " << config.z_min << "; " << e.what();
      throw HeadroomError(os.str(), k);
    }
    Band band;
    band.relator = k + 1;
    band.start = start;
    band.terminal = alpha.terminal_height;
    band.next = alpha.terminal_height * (1.0 - config.band_margin);
    scene.bands.push_back(band);
    scene.alphas.push_back(std::move(alpha));
    ceiling = band.next;
  }
  if (with_meshes) attach_meshes(scene);
  return scene;
}

void attach_meshes(Scene& scene) {
  sample_meshes(scene.bhv, scene.config.wall_resolution());
  scene.discs.clear();
  for (std::size_t k = 0; k < scene.alphas.size(); ++k) {
    scene.discs.push_back(build_disc(scene.alphas[k], scene.config.disc_options(), k + 1));
  }
}

TruncationComplex truncate(const Scene& scene, double epsilon) {
  if (!(epsilon > scene.config.z_min && epsilon <= scene.config.top)) {
    std::ostringstream os;
    os << "epsilon " << epsilon << " outside (z_min, top] = (" << scene.config.z_min << ", " << scene.config.top
       << "]";
    throw std::out_of_range(os.str());
  }
  TruncationComplex tc;
  tc.epsilon = epsilon;
  for (int i = 1; i <= scene.bhv.size(); ++i) {
    if (1.0 / i >= epsilon) tc.generators.push_back(i);
  }
  const int included = static_cast<int>(tc.generators.size());
  tc.presentation.names.assign(scene.presentation.names.begin(), scene.presentation.names.begin() + included);
  for (std::size_t k = 0; k < scene.bands.size(); ++k) {
    if (scene.bands[k].terminal < epsilon) continue;
    Word w = decode_word(scene.bhv, scene.alphas[k].polyline, scene.config.tolerances.coincidence);
    for (const auto& letter : w) {
      if (letter.gen.index > included) {
        throw std::logic_error("decoded word of disc " + std::to_string(k + 1) + " uses an excluded generator");
      }
    }
    tc.discs.push_back(k + 1);
    tc.words.push_back(w);
    tc.presentation.relators.push_back(std::move(w));
  }
  return tc;
}

Presentation expected_truncation(const Presentation& input, const TruncationComplex& tc) {
  return restrict_generators(truncate_presentation(input, tc.discs.size()), static_cast<int>(tc.generators.size()));
}

Pi1Report pi1_report(const TruncationComplex& tc, const Presentation& expected) {
  Pi1Report rep;
  rep.epsilon = tc.epsilon;
  rep.complex_h1 = first_homology(tc.presentation);
  rep.expected_h1 = first_homology(expected);
  bool ok = rep.complex_h1 == rep.expected_h1;
  for (const auto& g : {symmetric_group(3), cyclic_group(2), cyclic_group(4), dihedral_group(4)}) {
    HomCount c;
    c.group = g.name();
    c.complex = count_homomorphisms(tc.presentation, g);
    c.expected = count_homomorphisms(expected, g);
    ok = ok && c.complex == c.expected;
    rep.counts.push_back(c);
  }
  rep.pass = ok;
  rep.note = "agreement of H1 and finite hom-counts is evidence of isomorphism, not a proof";
  return rep;
}

bool CompactnessReport::pass() const {
  if (!box_pass || !w_ratio_pass || !bands_disjoint || !axis_contact) return false;
  return std::all_of(levels.begin(), levels.end(), [](const LevelCount& l) { return l.pass(); });
}

CompactnessReport compactness_report(const Scene& scene, const std::vector<double>& epsilons) {
  if (!scene.has_meshes()) throw std::invalid_argument("compactness_report: meshes are not attached");
  CompactnessReport rep;
  const double top = scene.config.top;

  auto check = [&](double r, double z, double w, const std::string& where) {
    ++rep.samples;
    rep.max_r = std::max(rep.max_r, r);
    if (z > 0.0) rep.max_w_over_z = std::max(rep.max_w_over_z, w / z);
    if (!(r <= 3.0 && z >= 0.0 && z <= top && w >= 0.0 && w <= z)) {
      if (rep.box_pass) {
        std::ostringstream os;
        os << where << " sample (r=" << r << ", z=" << z << ", w=" << w << ") leaves the box";
        rep.problems.push_back(os.str());
      }
      rep.box_pass = false;
    }
  };

  for (const auto& wm : scene.bhv.meshes) {
    bool axis = false;
    for (const auto& pt : wm.points) {
      check(pt.r, pt.z, pt.w, "wall " + std::to_string(wm.vase));
      axis = axis || (pt.phi == 0.0 && pt.r == 2.0 && pt.w == 0.0);
    }
    if (!axis) {
      rep.axis_contact = false;
      rep.problems.push_back("wall " + std::to_string(wm.vase) + " has no sample on the axis line");
    }
  }
  for (const auto& alpha : scene.alphas) {
    for (const auto& pt : alpha.polyline) check(pt.r, pt.z, pt.w, "alpha");
  }
  for (const auto& d : scene.discs) {
    bool axis = false;
    for (const auto& x : d.samples) {
      check(std::hypot(x.x, x.y), x.z, x.w, "disc " + std::to_string(d.relator));
      axis = axis || (x.x == 2.0 && x.y == 0.0 && x.w == 0.0);
    }
    if (!axis) {
      rep.axis_contact = false;
      rep.problems.push_back("disc " + std::to_string(d.relator) + " has no sample on the axis line");
    }
  }
  rep.w_ratio_pass = rep.max_w_over_z <= 0.5 + scene.config.tolerances.formula;

  for (std::size_t k = 0; k + 1 < scene.bands.size(); ++k) {
    if (!(scene.bands[k + 1].start < scene.bands[k].terminal)) {
      rep.bands_disjoint = false;
      rep.problems.push_back("bands " + std::to_string(k + 1) + " and " + std::to_string(k + 2) + " overlap");
    }
  }
  for (std::size_t k = 0; k + 1 < scene.discs.size(); ++k) {
    double lo = top, hi = 0.0;
    for (const auto& x : scene.discs[k].samples) lo = std::min(lo, x.z);
    for (const auto& x : scene.discs[k + 1].samples) hi = std::max(hi, x.z);
    if (!(hi < lo)) {
      rep.bands_disjoint = false;
      rep.problems.push_back("disc samples " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                             " share heights");
    }
  }

  for (double eps : epsilons) {
    LevelCount lc;
    lc.epsilon = eps;
    for (int i = 1; i <= scene.bhv.size(); ++i) lc.expected_walls += 1.0 / i >= eps ? 1 : 0;
    for (const auto& wm : scene.bhv.meshes) lc.walls += !wm.zs.empty() && wm.zs.front() >= eps ? 1 : 0;
    for (const auto& b : scene.bands) lc.expected_discs += b.start >= eps ? 1 : 0;
    for (const auto& d : scene.discs) {
      double hi = 0.0;
      for (const auto& x : d.samples) hi = std::max(hi, x.z);
      lc.discs += hi >= eps ? 1 : 0;
    }
    rep.levels.push_back(lc);
  }

  std::ostringstream note;
  note << "heights in (0, " << scene.config.z_min << "] are not sampled; ";
  if (!scene.bands.empty()) note << "the band below " << scene.bands.back().next << " hosts no disc at this depth; ";
  note << "vases beyond " << scene.bhv.size() << " and further relators exist only in the limit";
  rep.unsampled_note = note.str();
  return rep;
}

}  // namespace hvase
