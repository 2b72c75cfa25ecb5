#include "hvase/scene_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hvase {

namespace {

using Json = nlohmann::ordered_json;

Json quad(double a, double b, double c, double d) { return Json::array({a, b, c, d}); }

Json config_to_json(const BuildConfig& c) {
  Json j;
  j["depth_gens"] = c.depth_gens;
  if (c.relators) {
    j["relators"] = *c.relators;
  } else {
    j["relators"] = "all";
  }
  j["z_min"] = c.z_min;
  j["phi_steps"] = c.phi_steps;
  j["oversample"] = c.oversample;
  j["sample_budget"] = c.sample_budget;
  j["disc_resolution"] = c.disc_resolution;
  j["loop_samples"] = c.loop_samples;
  j["vertical_step"] = c.vertical_step;
  j["band_margin"] = c.band_margin;
  j["bump_margin"] = c.bump_margin;
  j["top"] = c.top;
  j["independence_depth"] = c.independence_depth;
  j["tolerances"] = {{"coincidence", c.tolerances.coincidence},
                     {"formula", c.tolerances.formula},
                     {"distance_floor", c.tolerances.distance_floor}};
  return j;
}

Json wall_to_json(const WallMesh& m) {
  Json pts = Json::array();
  for (const auto& p : m.points) pts.push_back(quad(p.r, p.phi, p.z, p.w));
  return {{"vase", m.vase}, {"z_min", m.z_min}, {"phis", m.phis}, {"zs", m.zs}, {"points", std::move(pts)}};
}

Json disc_to_json(const DiscMesh& d) {
  Json samples = Json::array();
  for (const auto& x : d.samples) samples.push_back(quad(x.x, x.y, x.z, x.w));
  Json boundary = Json::array();
  for (const auto& x : d.boundary) boundary.push_back(quad(x.x, x.y, x.z, x.w));
  return {{"relator", d.relator},
          {"n", d.n},
          {"start_height", d.start_height},
          {"terminal_height", d.terminal_height},
          {"bump_margin", d.options.bump_margin},
          {"flat_upper", d.options.flat_upper},
          {"samples", std::move(samples)},
          {"weld", d.weld},
          {"boundary", std::move(boundary)}};
}

Json scene_to_json(const Scene& s, const SaveOptions& opts) {
  Json j;
  j["format"] = "hvase-scene";
  j["version"] = kSceneVersion;
  j["config_hash"] = config_hash(s.config);
  j["config"] = config_to_json(s.config);

  Json rels = Json::array();
  for (const auto& r : s.presentation.relators) rels.push_back(word_tokens(r, s.presentation));
  j["presentation"] = {{"generators", s.presentation.names}, {"relators", std::move(rels)}};

  j["p_sequence"] = {{"provenance", s.bhv.ps.provenance},
                     {"verified_no_coincidence", s.bhv.ps.verified_no_coincidence},
                     {"decimals", s.bhv.ps.decimals}};
  j["z_min"] = s.bhv.z_min;

  Json profiles = Json::array();
  for (const auto& p : s.bhv.profiles) {
    Json ivs = Json::array();
    for (const auto& iv : p.intervals) {
      ivs.push_back({{"center", iv.center}, {"radius", iv.radius}, {"lo", iv.lo}, {"hi", iv.hi}, {"ramp", iv.ramp}});
    }
    profiles.push_back({{"vase", p.vase}, {"theta", p.theta}, {"intervals", std::move(ivs)}});
  }
  j["profiles"] = std::move(profiles);

  Json bands = Json::array();
  for (const auto& b : s.bands) {
    bands.push_back({{"relator", b.relator}, {"start", b.start}, {"terminal", b.terminal}, {"next", b.next}});
  }
  j["bands"] = std::move(bands);

  Json alphas = Json::array();
  for (const auto& a : s.alphas) {
    Json segs = Json::array();
    for (const auto& seg : a.segments) {
      Json js = {{"kind", seg.kind == SegmentKind::Loop ? "loop" : "vertical"},
                 {"z_start", seg.z_start},
                 {"z_end", seg.z_end}};
      if (seg.kind == SegmentKind::Loop) {
        js["vase"] = seg.vase;
        js["p"] = seg.p;
        js["inner_height"] = seg.inner_height;
        js["orientation"] = seg.orientation;
      }
      segs.push_back(std::move(js));
    }
    Json poly = Json::array();
    for (const auto& p : a.polyline) poly.push_back(quad(p.r, p.phi, p.z, p.w));
    alphas.push_back({{"start_height", a.start_height},
                      {"terminal_height", a.terminal_height},
                      {"segments", std::move(segs)},
                      {"polyline", std::move(poly)}});
  }
  j["alphas"] = std::move(alphas);

  if (opts.include_meshes && s.has_meshes()) {
    Json walls = Json::array();
    for (const auto& m : s.bhv.meshes) walls.push_back(wall_to_json(m));
    Json discs = Json::array();
    for (const auto& d : s.discs) discs.push_back(disc_to_json(d));
    j["meshes"] = {{"walls", std::move(walls)}, {"discs", std::move(discs)}};
  }
  return j;
}

// ---- strict reading ----

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw SceneFormatError("expected an object", path);
  std::set<std::string> allowed;
  for (const char* k : required) {
    if (!j.contains(k)) throw SceneFormatError("missing field", child(path, k));
    allowed.insert(k);
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw SceneFormatError("unknown field", child(path, item.key()));
  }
}

double num(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SceneFormatError("expected a number", path);
  return j.get<double>();
}

std::size_t count(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw SceneFormatError("expected a non-negative integer", path);
  return j.get<std::size_t>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SceneFormatError("expected an integer", path);
  return j.get<int>();
}

std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SceneFormatError("expected a string", path);
  return j.get<std::string>();
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw SceneFormatError("expected a boolean", path);
  return j.get<bool>();
}

const Json& arr(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SceneFormatError("expected an array", path);
  return j;
}

std::vector<double> doubles(const Json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < arr(j, path).size(); ++i) out.push_back(num(j[i], child(path, i)));
  return out;
}

std::array<double, 4> quad_of(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) throw SceneFormatError("expected a 4-element array", path);
  return {num(j[0], child(path, 0)), num(j[1], child(path, 1)), num(j[2], child(path, 2)), num(j[3], child(path, 3))};
}

std::vector<CylPoint4> cyl_points(const Json& j, const std::string& path) {
  std::vector<CylPoint4> out;
  for (std::size_t i = 0; i < arr(j, path).size(); ++i) {
    auto q = quad_of(j[i], child(path, i));
    out.push_back({q[0], q[1], q[2], q[3]});
  }
  return out;
}

std::vector<Vec4> vec_points(const Json& j, const std::string& path) {
  std::vector<Vec4> out;
  for (std::size_t i = 0; i < arr(j, path).size(); ++i) {
    auto q = quad_of(j[i], child(path, i));
    out.push_back({q[0], q[1], q[2], q[3]});
  }
  return out;
}

BuildConfig config_from_json(const Json& j, const std::string& path) {
  expect_object(j, path,
                {"depth_gens", "relators", "z_min", "phi_steps", "oversample", "sample_budget", "disc_resolution",
                 "loop_samples", "vertical_step", "band_margin", "bump_margin", "top", "independence_depth",
                 "tolerances"});
  BuildConfig c;
  c.depth_gens = integer(j["depth_gens"], child(path, "depth_gens"));
  const Json& rel = j["relators"];
  if (rel.is_string()) {
    if (rel.get<std::string>() != "all") throw SceneFormatError("expected \"all\" or a count", child(path, "relators"));
    c.relators.reset();
  } else {
    c.relators = count(rel, child(path, "relators"));
  }
  c.z_min = num(j["z_min"], child(path, "z_min"));
  c.phi_steps = count(j["phi_steps"], child(path, "phi_steps"));
  c.oversample = num(j["oversample"], child(path, "oversample"));
  c.sample_budget = count(j["sample_budget"], child(path, "sample_budget"));
  c.disc_resolution = count(j["disc_resolution"], child(path, "disc_resolution"));
  c.loop_samples = count(j["loop_samples"], child(path, "loop_samples"));
  c.vertical_step = num(j["vertical_step"], child(path, "vertical_step"));
  c.band_margin = num(j["band_margin"], child(path, "band_margin"));
  c.bump_margin = num(j["bump_margin"], child(path, "bump_margin"));
  c.top = num(j["top"], child(path, "top"));
  c.independence_depth = count(j["independence_depth"], child(path, "independence_depth"));
  const std::string tp = child(path, "tolerances");
  const Json& t = j["tolerances"];
  expect_object(t, tp, {"coincidence", "formula", "distance_floor"});
  c.tolerances.coincidence = num(t["coincidence"], child(tp, "coincidence"));
  c.tolerances.formula = num(t["formula"], child(tp, "formula"));
  c.tolerances.distance_floor = num(t["distance_floor"], child(tp, "distance_floor"));
  return c;
}

Presentation presentation_from_json(const Json& j, const std::string& path) {
  expect_object(j, path, {"generators", "relators"});
  std::ostringstream text;
  text << "gens:";
  const std::string gp = child(path, "generators");
  for (std::size_t i = 0; i < arr(j["generators"], gp).size(); ++i) text << ' ' << str(j["generators"][i], child(gp, i));
  text << '\n';
  const std::string rp = child(path, "relators");
  for (std::size_t k = 0; k < arr(j["relators"], rp).size(); ++k) {
    const std::string wp = child(rp, k);
    text << "rel:";
    for (std::size_t i = 0; i < arr(j["relators"][k], wp).size(); ++i) text << ' ' << str(j["relators"][k][i], child(wp, i));
    text << '\n';
  }
  try {
    return parse_presentation(text.str());
  } catch (const ParseError& e) {
    throw SceneFormatError(std::string("invalid presentation: ") + e.what(), path);
  }
}

WallMesh wall_from_json(const Json& j, const std::string& path) {
  expect_object(j, path, {"vase", "z_min", "phis", "zs", "points"});
  WallMesh m;
  m.vase = integer(j["vase"], child(path, "vase"));
  m.z_min = num(j["z_min"], child(path, "z_min"));
  m.phis = doubles(j["phis"], child(path, "phis"));
  m.zs = doubles(j["zs"], child(path, "zs"));
  m.points = cyl_points(j["points"], child(path, "points"));
  if (m.points.size() != m.phis.size() * m.zs.size()) throw SceneFormatError("point count mismatch", child(path, "points"));
  return m;
}

DiscMesh disc_from_json(const Json& j, const std::string& path) {
  expect_object(j, path,
                {"relator", "n", "start_height", "terminal_height", "bump_margin", "flat_upper", "samples", "weld",
                 "boundary"});
  DiscMesh d;
  d.relator = count(j["relator"], child(path, "relator"));
  d.n = count(j["n"], child(path, "n"));
  d.options.resolution = d.n;
  d.start_height = num(j["start_height"], child(path, "start_height"));
  d.terminal_height = num(j["terminal_height"], child(path, "terminal_height"));
  d.options.bump_margin = num(j["bump_margin"], child(path, "bump_margin"));
  d.options.flat_upper = boolean(j["flat_upper"], child(path, "flat_upper"));
  d.samples = vec_points(j["samples"], child(path, "samples"));
  const std::string wp = child(path, "weld");
  for (std::size_t i = 0; i < arr(j["weld"], wp).size(); ++i) d.weld.push_back(count(j["weld"][i], child(wp, i)));
  d.boundary = vec_points(j["boundary"], child(path, "boundary"));
  if (d.samples.size() != d.n * d.n || d.weld.size() != d.samples.size()) {
    throw SceneFormatError("sample count mismatch", child(path, "samples"));
  }
  return d;
}

Scene scene_from_json(const Json& j) {
  if (!j.is_object()) throw SceneFormatError("expected an object", "");
  if (!j.contains("version")) throw SceneFormatError("missing field", "/version");
  if (!j["version"].is_number_integer() || j["version"].get<long long>() != kSceneVersion) {
    throw SceneVersionError("unsupported scene version " + j["version"].dump() + " (expected " +
                                std::to_string(kSceneVersion) + ")",
                            "/version");
  }
  expect_object(j, "",
                {"format", "version", "config_hash", "config", "presentation", "p_sequence", "z_min", "profiles",
                 "bands", "alphas"},
                {"meshes"});
  if (str(j["format"], "/format") != "hvase-scene") throw SceneFormatError("not a scene document", "/format");

  Scene s;
  s.config = config_from_json(j["config"], "/config");
  if (str(j["config_hash"], "/config_hash") != config_hash(s.config)) {
    throw SceneFormatError("config hash does not match the config block", "/config_hash");
  }
  s.presentation = presentation_from_json(j["presentation"], "/presentation");

  const Json& pj = j["p_sequence"];
  expect_object(pj, "/p_sequence", {"provenance", "verified_no_coincidence", "decimals"});
  std::vector<std::string> decimals;
  for (std::size_t i = 0; i < arr(pj["decimals"], "/p_sequence/decimals").size(); ++i) {
    decimals.push_back(str(pj["decimals"][i], child("/p_sequence/decimals", i)));
  }
  try {
    s.bhv.ps = PSequence::from_decimals(std::move(decimals), str(pj["provenance"], "/p_sequence/provenance"));
  } catch (const std::invalid_argument& e) {
    throw SceneFormatError(e.what(), "/p_sequence/decimals");
  }
  s.bhv.ps.verified_no_coincidence = boolean(pj["verified_no_coincidence"], "/p_sequence/verified_no_coincidence");
  s.bhv.z_min = num(j["z_min"], "/z_min");

  for (std::size_t i = 0; i < arr(j["profiles"], "/profiles").size(); ++i) {
    const std::string path = child("/profiles", i);
    const Json& q = j["profiles"][i];
    expect_object(q, path, {"vase", "theta", "intervals"});
    WProfile prof;
    prof.vase = integer(q["vase"], child(path, "vase"));
    prof.theta = num(q["theta"], child(path, "theta"));
    const std::string ip = child(path, "intervals");
    for (std::size_t k = 0; k < arr(q["intervals"], ip).size(); ++k) {
      const std::string kp = child(ip, k);
      const Json& iv = q["intervals"][k];
      expect_object(iv, kp, {"center", "radius", "lo", "hi", "ramp"});
      prof.intervals.push_back({num(iv["center"], child(kp, "center")), num(iv["radius"], child(kp, "radius")),
                                num(iv["lo"], child(kp, "lo")), num(iv["hi"], child(kp, "hi")),
                                num(iv["ramp"], child(kp, "ramp"))});
    }
    s.bhv.profiles.push_back(std::move(prof));
  }
  if (s.bhv.profiles.size() != s.bhv.ps.size()) throw SceneFormatError("one profile per vase expected", "/profiles");

  for (std::size_t k = 0; k < arr(j["bands"], "/bands").size(); ++k) {
    const std::string path = child("/bands", k);
    const Json& b = j["bands"][k];
    expect_object(b, path, {"relator", "start", "terminal", "next"});
    s.bands.push_back({count(b["relator"], child(path, "relator")), num(b["start"], child(path, "start")),
                       num(b["terminal"], child(path, "terminal")), num(b["next"], child(path, "next"))});
  }

  for (std::size_t k = 0; k < arr(j["alphas"], "/alphas").size(); ++k) {
    const std::string path = child("/alphas", k);
    const Json& a = j["alphas"][k];
    expect_object(a, path, {"start_height", "terminal_height", "segments", "polyline"});
    AlphaPath alpha;
    alpha.start_height = num(a["start_height"], child(path, "start_height"));
    alpha.terminal_height = num(a["terminal_height"], child(path, "terminal_height"));
    const std::string sp = child(path, "segments");
    for (std::size_t i = 0; i < arr(a["segments"], sp).size(); ++i) {
      const std::string segp = child(sp, i);
      const Json& js = a["segments"][i];
      if (!js.is_object() || !js.contains("kind")) throw SceneFormatError("missing field", child(segp, "kind"));
      const std::string kind = str(js["kind"], child(segp, "kind"));
      PathSegment seg;
      if (kind == "vertical") {
        expect_object(js, segp, {"kind", "z_start", "z_end"});
      } else if (kind == "loop") {
        expect_object(js, segp, {"kind", "z_start", "z_end", "vase", "p", "inner_height", "orientation"});
        seg.kind = SegmentKind::Loop;
        seg.vase = integer(js["vase"], child(segp, "vase"));
        seg.p = num(js["p"], child(segp, "p"));
        seg.inner_height = num(js["inner_height"], child(segp, "inner_height"));
        seg.orientation = integer(js["orientation"], child(segp, "orientation"));
      } else {
        throw SceneFormatError("unknown segment kind '" + kind + "'", child(segp, "kind"));
      }
      seg.z_start = num(js["z_start"], child(segp, "z_start"));
      seg.z_end = num(js["z_end"], child(segp, "z_end"));
      alpha.segments.push_back(seg);
    }
    alpha.polyline = cyl_points(a["polyline"], child(path, "polyline"));
    s.alphas.push_back(std::move(alpha));
  }
  if (s.alphas.size() != s.bands.size()) throw SceneFormatError("one alpha per band expected", "/alphas");

  if (j.contains("meshes")) {
    const Json& m = j["meshes"];
    expect_object(m, "/meshes", {"walls", "discs"});
    for (std::size_t i = 0; i < arr(m["walls"], "/meshes/walls").size(); ++i) {
      s.bhv.meshes.push_back(wall_from_json(m["walls"][i], child("/meshes/walls", i)));
    }
    for (std::size_t i = 0; i < arr(m["discs"], "/meshes/discs").size(); ++i) {
      s.discs.push_back(disc_from_json(m["discs"][i], child("/meshes/discs", i)));
    }
  }
  return s;
}

}  // namespace

std::string config_json(const BuildConfig& config) { return config_to_json(config).dump(); }

std::string config_hash(const BuildConfig& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : config_json(config)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string save_scene(const Scene& scene, const SaveOptions& opts) { return scene_to_json(scene, opts).dump(1) + "\n"; }

Scene load_scene(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw SceneFormatError(std::string("malformed JSON: ") + e.what(), "");
  }
  return scene_from_json(j);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_scene_file(const std::filesystem::path& path, const Scene& scene, const SaveOptions& opts) {
  write_text_file(path, save_scene(scene, opts));
}

Scene read_scene_file(const std::filesystem::path& path) { return load_scene(read_text_file(path)); }

}  // namespace hvase
