#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

#ifndef HVASE_CLI
#error "HVASE_CLI must name the command-line binary"
#endif

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    const auto d = fs::temp_directory_path() / "hvase_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + HVASE_CLI + "\" " + args + " > \"" +
                          (workdir() / "stdout.txt").string() + "\" 2> \"" + (workdir() / "stderr.txt").string() +
                          "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = workdir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

const char* kSmall = " --phi-steps 16 --oversample 4 --resolution 16";

}  // namespace

TEST_CASE("vase writes the inner-height table and a cross-section") {
  const auto svg = workdir() / "hv.svg";
  CHECK(run("vase --m 1 --p 1 --count 5 --phi 3.141592653589793 --svg " + q(svg)) == 0);
  const std::string csv = slurp(workdir() / "stdout.txt");
  CHECK(csv.rfind("k,inner_height,sin_value\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(slurp(svg).find("<path") != std::string::npos);
}

TEST_CASE("realize, verify, pi1 and export chain together") {
  const auto pres = write("cube.txt", "gens: a b\nrel: a b a' b'\nrel: a a a\n");
  const auto scene = workdir() / "scene.json";
  const auto report = workdir() / "report.json";
  REQUIRE(run("realize " + q(pres) + kSmall + " --out " + q(scene)) == 0);
  CHECK(nlohmann::json::parse(slurp(scene))["format"] == "hvase-scene");

  CHECK(run("verify " + q(scene) + " --report " + q(report)) == 0);
  const auto rep = nlohmann::json::parse(slurp(report));
  CHECK(rep["pass"] == true);

  CHECK(run("pi1 " + q(scene) + " --epsilon 0.02 --epsilon 0.3") == 0);

  const auto obj = workdir() / "scene.obj";
  CHECK(run("export " + q(scene) + " --format obj --out " + q(obj)) == 0);
  CHECK(slurp(obj).find("g pedestal") != std::string::npos);
  CHECK(run("export " + q(scene) + " --format ply --projection w-color") == 0);
  CHECK(slurp(workdir() / "stdout.txt").rfind("ply\n", 0) == 0);
}

TEST_CASE("realize writes to stdout by default") {
  const auto pres = write("z3.txt", "gens: a\nrel: a a a\n");
  CHECK(run("realize " + q(pres) + kSmall) == 0);
  CHECK(nlohmann::json::parse(slurp(workdir() / "stdout.txt"))["bands"].size() == 1);
}

TEST_CASE("a mismatched expectation exits with 1") {
  const auto pres = write("torus.txt", "gens: a b\nrel: a b a' b'\n");
  const auto wrong = write("free.txt", "gens: a b\n");
  const auto scene = workdir() / "torus.json";
  REQUIRE(run("realize " + q(pres) + kSmall + " --out " + q(scene)) == 0);
  CHECK(run("pi1 " + q(scene) + " --epsilon 0.02 --expect " + q(wrong)) == 1);
  CHECK(run("pi1 " + q(scene) + " --epsilon 0.5 --expect " + q(wrong)) == 0);  // disc not yet included
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("realize " + q(workdir() / "nope.txt")) == 2);
  const auto bad = write("bad.txt", "gens: a\nrel: a q\n");
  CHECK(run("realize " + q(bad)) == 2);
  CHECK(slurp(workdir() / "stderr.txt").find("error") != std::string::npos);
  const auto pres = write("two.txt", "gens: a b\nrel: a a\n");
  CHECK(run("realize " + q(pres) + " --depth-gens 3") == 2);
  const auto junk = write("junk.json", "{\"format\": \"hvase-scene\"");
  CHECK(run("verify " + q(junk)) == 2);
  const auto scene = workdir() / "two.json";
  REQUIRE(run("realize " + q(pres) + kSmall + " --out " + q(scene)) == 0);
  CHECK(run("pi1 " + q(scene) + " --epsilon 0.001") == 2);
  CHECK(run("export " + q(scene) + " --format stl") == 2);
}

TEST_CASE("braid builds and verifies a free scene") {
  const auto report = workdir() / "braid.json";
  CHECK(run("braid --depth-gens 3 --phi-steps 16 --oversample 4 --report " + q(report)) == 0);
  CHECK(nlohmann::json::parse(slurp(report))["pass"] == true);
}
