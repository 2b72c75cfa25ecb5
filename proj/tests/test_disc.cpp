#include <cmath>

#include "doctest.h"
#include "hvase/disc.hpp"

using namespace hvase;

namespace {

struct Fixture {
  BhvScene scene;
  Presentation pres;
  std::vector<AlphaPath> alphas;

  Fixture() {
    PSequence ps = choose_p_sequence(2);
    REQUIRE(certify(ps, 50).pass);
    auto profiles = build_w_profiles(ps, 0.01);
    WallResolution res;
    scene = build_bhv(std::move(ps), std::move(profiles), 0.01, &res);
    pres = parse_presentation("gens: a b\nrel: a b a' b'\nrel: a a a");
    alphas.push_back(build_alpha(scene, pres.relators[0], 0.95));
    const double next = alphas[0].terminal_height * 0.95 * 0.95;
    alphas.push_back(build_alpha(scene, pres.relators[1], next));
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

std::size_t expected_classes(std::size_t n) {
  // (t,0)~(t,1) merges n pairs; the fold on s = 1 merges the remaining interior pairs.
  const std::size_t fold = n % 2 == 0 ? n / 2 - 1 : (n - 3) / 2;
  return n * n - n - fold;
}

}  // namespace

TEST_CASE("left edge follows alpha below t = 1/2 and the axis above") {
  const auto& fx = fixture();
  const auto& alpha = fx.alphas[0];
  const DiscMap f(alpha);
  for (int k = 0; k <= 200; ++k) {
    const double t = k / 200.0;
    const Vec4 x = f(0.0, t);
    const double z = f.height(t);
    CHECK(x.z == z);
    if (t <= 0.5) {
      CHECK(x == alpha.point_at_height(z).cartesian());
    } else {
      CHECK(x == axis_point(z).cartesian());
    }
  }
  CHECK(f.height(0.0) == alpha.start_height);
  CHECK(f.height(0.5) == alpha.terminal_height);
  CHECK(f.height(1.0) == alpha.start_height);
}

TEST_CASE("right edge is the projection to the z-axis") {
  const DiscMap f(fixture().alphas[0]);
  for (int k = 0; k <= 64; ++k) {
    const double t = k / 64.0;
    const Vec4 x = f(1.0, t);
    CHECK(x.x == 0.0);
    CHECK(x.y == 0.0);
    CHECK(x.w == 0.0);
  }
}

TEST_CASE("mirrored parameters reach equal heights") {
  const DiscMap f(fixture().alphas[1]);
  for (int k = 0; k <= 128; ++k) {
    const double d = k / 256.0;  // dyadic, so 1/2 - d and 1/2 + d are exact
    CHECK(f.height(0.5 - d) == f.height(0.5 + d));
  }
  const auto mesh = build_disc(fixture().alphas[1], DiscOptions{101});
  for (std::size_t row = 0; row < mesh.n; ++row) {
    CHECK(mesh.samples[mesh.index(0, row)].z == mesh.samples[mesh.index(0, mesh.n - 1 - row)].z);
  }
}

TEST_CASE("rows are level and the bump stays inside the w bound") {
  const auto& alpha = fixture().alphas[0];
  const DiscMap f(alpha);
  for (int i = 0; i <= 20; ++i) {
    for (int k = 0; k <= 40; ++k) {
      const double s = i / 20.0, t = k / 40.0;
      const Vec4 x = f(s, t);
      CHECK(x.z == f.height(t));
      CHECK(x.w >= 0.0);
      CHECK(x.w <= x.z / 16.0);
      if (t <= 0.5) CHECK(x.w == 0.0);
      const double g = f.bump(s, t, x.z);
      if (t > 0.5 && s > 0.0 && s < 1.0 && t < 1.0) CHECK(g > 0.0);
    }
  }
  CHECK_THROWS_AS(f(1.5, 0.2), std::domain_error);
  CHECK(f(0.3, 0.0) == f(0.3, 1.0));
}

TEST_CASE("disc_point_f is the same map") {
  const auto& alpha = fixture().alphas[0];
  const DiscMap f(alpha);
  CHECK(disc_point_f(alpha, 0.25, 0.8) == f(0.25, 0.8));
}

TEST_CASE("weld classes match the quotient count") {
  for (std::size_t n : {2u, 3u, 4u, 5u, 16u, 17u, 64u}) {
    const auto mesh = build_disc(fixture().alphas[0], DiscOptions{n});
    CHECK(mesh.class_count() == expected_classes(n));
    for (std::size_t col = 0; col < n; ++col) CHECK(mesh.weld[mesh.index(col, 0)] == mesh.weld[mesh.index(col, n - 1)]);
    for (std::size_t row = 0; row < n; ++row) {
      CHECK(mesh.weld[mesh.index(n - 1, row)] == mesh.weld[mesh.index(n - 1, n - 1 - row)]);
    }
  }
}

TEST_CASE("welded disc has Euler characteristic 1") {
  for (std::size_t n : {2u, 3u, 4u, 5u, 16u, 17u, 128u}) {
    CHECK(euler_characteristic(build_disc(fixture().alphas[0], DiscOptions{n})) == 1);
    CHECK(euler_characteristic(build_disc(fixture().alphas[1], DiscOptions{n})) == 1);
  }
}

TEST_CASE("welded samples coincide in space") {
  const auto mesh = build_disc(fixture().alphas[0], DiscOptions{33});
  for (std::size_t i = 0; i < mesh.samples.size(); ++i) CHECK(mesh.samples[i] == mesh.samples[mesh.weld[i]]);
}

TEST_CASE("boundary is a closed loop through alpha and the axis") {
  const auto& alpha = fixture().alphas[0];
  const auto mesh = build_disc(alpha);
  CHECK(mesh.boundary.front() == mesh.boundary.back());
  CHECK(mesh.boundary.size() > alpha.polyline.size());
  for (std::size_t k = 0; k < alpha.polyline.size(); ++k) CHECK(mesh.boundary[k] == alpha.polyline[k].cartesian());
}

TEST_CASE("discs at n = 128 are embedded and miss the walls") {
  for (const auto& alpha : fixture().alphas) {
    const auto mesh = build_disc(alpha);
    CHECK(disc_in_box(mesh));
    const auto inj = verify_injective(mesh);
    CHECK(inj.pass);
    CHECK(inj.min_distance > 1e-9);
    CHECK(distance(mesh.samples[inj.a], mesh.samples[inj.b]) == inj.min_distance);

    const auto dis = verify_disjoint(mesh, fixture().scene);
    CHECK(dis.pass);
    CHECK(dis.min_distance > 0.0);
    for (double m : dis.row_minima) CHECK(m >= dis.min_distance);

    const auto ref = disjoint_refinement(alpha, fixture().scene, DiscOptions{});
    CHECK(ref.stable);
    CHECK(ref.fine > 0.0);
  }
}

TEST_CASE("closest-pair sweep agrees with brute force on a small grid") {
  const auto mesh = build_disc(fixture().alphas[1], DiscOptions{24});
  double brute = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh.samples.size(); ++i) {
    if (mesh.weld[i] != i || i % mesh.n == 0) continue;
    for (std::size_t j = i + 1; j < mesh.samples.size(); ++j) {
      if (mesh.weld[j] != j || j % mesh.n == 0) continue;
      brute = std::min(brute, distance(mesh.samples[i], mesh.samples[j]));
    }
  }
  CHECK(verify_injective(mesh).min_distance == brute);
}

TEST_CASE("wall distance agrees with brute force on a small grid") {
  const auto& fx = fixture();
  const auto mesh = build_disc(fx.alphas[1], DiscOptions{20});
  const auto rep = verify_disjoint(mesh, fx.scene);
  double brute = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mesh.samples.size(); ++i) {
    if (mesh.weld[i] != i || i % mesh.n == 0) continue;
    for (const auto& wm : fx.scene.meshes) {
      for (std::size_t zi = 0; zi < wm.zs.size(); ++zi) {
        if (wm.zs[zi] < mesh.terminal_height || wm.zs[zi] > mesh.start_height) continue;
        for (std::size_t pi = 0; pi + 1 < wm.phis.size(); ++pi) {
          brute = std::min(brute, distance(mesh.samples[i], wm.at(zi, pi).cartesian()));
        }
      }
    }
  }
  CHECK(rep.min_distance == brute);
}

TEST_CASE("without the bump the disc folds onto itself") {
  DiscOptions flat;
  flat.flat_upper = true;
  const auto mesh = build_disc(fixture().alphas[0], flat);
  const auto inj = verify_injective(mesh);
  CHECK_FALSE(inj.pass);
  CHECK(inj.min_distance <= 1e-9);
}

TEST_CASE("disc construction preconditions") {
  CHECK_THROWS_AS(build_disc(fixture().alphas[0], DiscOptions{1}), std::invalid_argument);
  const AlphaPath empty;
  CHECK_THROWS_AS(DiscMap{empty}, std::invalid_argument);
  BhvScene bare = fixture().scene;
  bare.meshes.clear();
  CHECK_THROWS_AS(verify_disjoint(build_disc(fixture().alphas[0], DiscOptions{8}), bare), std::invalid_argument);
}
