#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "swseg/projection.hpp"
#include "swseg/synthetic.hpp"

using namespace swseg;

namespace {

std::vector<Point> cube_points() {
  std::vector<Point> v;
  for (std::uint16_t z = 0; z < 2; ++z)
    for (std::uint16_t y = 0; y < 2; ++y)
      for (std::uint16_t x = 0; x < 2; ++x) v.push_back({x, y, z});
  return v;
}

std::vector<Point> plane_points() {
  std::vector<Point> v;
  for (std::uint16_t y = 0; y < 10; ++y)
    for (std::uint16_t x = 0; x < 10; ++x) v.push_back({x, y, 5});
  return v;
}

}  // namespace

TEST_CASE("label_components basic adjacency") {
  CHECK(label_components(std::vector<Point>{{0, 0, 0}, {0, 0, 1}}).count == 1);
  CHECK(label_components(std::vector<Point>{{0, 0, 0}, {5, 5, 5}}).count == 2);
  CHECK(label_components(std::vector<Point>{{0, 0, 0}, {1, 1, 1}}).count == 1);
  CHECK(label_components(std::vector<Point>{{0, 0, 0}, {2, 0, 0}}).count == 2);
  CHECK_THROWS_WITH_AS(label_components(std::vector<Point>{}), "nothing to label", ProjectionError);
}

TEST_CASE("labels follow first occurrence") {
  auto l = label_components(std::vector<Point>{{9, 9, 9}, {0, 0, 0}, {10, 10, 10}, {1, 0, 0}});
  CHECK(l.labels == std::vector<std::uint32_t>{0, 1, 0, 1});
}

TEST_CASE("label_components agrees with brute-force union-find (property)") {
  std::mt19937 rng(21);
  for (int iter = 0; iter < 60; ++iter) {
    // Compact and widely spread clouds take different lookup paths.
    const auto pts = oracle::random_cloud(rng, 500, iter % 2 == 0 ? 24 : 1000);
    const auto got = label_components(pts);
    const auto ref = oracle::components({pts.points().begin(), pts.points().end()});
    std::set<int> roots(ref.begin(), ref.end());
    REQUIRE(got.count == roots.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); j += 7)
        CHECK((got.labels[i] == got.labels[j]) == (ref[i] == ref[j]));
    // contiguous, first-occurrence order
    std::uint32_t next = 0;
    for (auto l : got.labels) {
      CHECK(l <= next);
      if (l == next) ++next;
    }
  }
}

TEST_CASE("projected_area examples") {
  CHECK(projected_area(std::vector<Point>{{0, 0, 0}}, Axis::Z) == 1);
  const std::vector<Point> pair{{0, 0, 0}, {0, 0, 1}};
  CHECK(projected_area(pair, Axis::Z) == 1);
  CHECK(projected_area(pair, Axis::X) == 2);
  CHECK(projected_area(plane_points(), Axis::Z) == 100);
}

TEST_CASE("best_plane examples and tie-break") {
  auto p = best_plane(plane_points());
  CHECK(p.axis == Axis::Z);
  CHECK(p.area == 100);
  p = best_plane(std::vector<Point>{{0, 0, 0}, {0, 0, 1}});
  CHECK(p.axis == Axis::X);
  CHECK(p.area == 2);
  // Brute enumeration: every cube projection has 4 pixels.
  const auto cube = cube_points();
  for (int a = 0; a < 3; ++a) CHECK(oracle::area(cube, a) == 4);
  p = best_plane(cube);
  CHECK(p.axis == Axis::X);
  CHECK(p.area == 4);
}

TEST_CASE("compute_psi examples") {
  CHECK(compute_psi(std::vector<Point>{{3, 3, 3}}).psi == 0.0);
  const auto cube = cube_points();
  CHECK(oracle::psi(cube) == 0.5);
  const auto s = compute_psi(cube);
  CHECK(s.psi == 0.5);
  CHECK(s.phi == 8);
  CHECK(s.captured == 4);
  CHECK(compute_psi(std::vector<Point>{{0, 0, 0}, {50, 50, 50}}).psi == 0.0);
  CHECK_THROWS_AS(compute_psi(std::vector<Point>{}), ProjectionError);
}

TEST_CASE("fixed-plane rule projects every component on one axis") {
  const auto plane = plane_points();
  CHECK(compute_psi(plane, PlaneRule::FixedPlane, Axis::Z).psi == 0.0);
  CHECK(compute_psi(plane, PlaneRule::FixedPlane, Axis::X).psi == doctest::Approx(0.9));
}

TEST_CASE("simulate_capture examples") {
  const auto cube = cube_points();
  auto single = simulate_capture(cube, Axis::Z, {LayerMode::Single, 4});
  CHECK(single.size() == 4);
  for (const auto& p : single) CHECK(p.z == 0);
  CHECK(simulate_capture(cube, Axis::Z, {LayerMode::Dual, 4}).size() == 8);

  const std::vector<Point> column{{0, 0, 0}, {0, 0, 1}, {0, 0, 9}};
  auto dual = simulate_capture(column, Axis::Z, {LayerMode::Dual, 4});
  CHECK(dual == std::vector<Point>{{0, 0, 0}, {0, 0, 1}});

  auto from_top = simulate_capture(cube, Axis::Z, {LayerMode::Single, 4}, Sign::Positive);
  for (const auto& p : from_top) CHECK(p.z == 1);
  CHECK_THROWS_AS(simulate_capture(cube, Axis::Z, {LayerMode::Dual, 0}), ProjectionError);
}

TEST_CASE("psi lost count equals brute-force capture loss (property)") {
  std::mt19937 rng(31);
  for (int iter = 0; iter < 60; ++iter) {
    const auto cloud = oracle::random_cloud(rng, 800, 20);
    const std::vector<Point> pts(cloud.points().begin(), cloud.points().end());
    const auto stats = compute_psi(cloud);
    CHECK(stats.lost() == oracle::capture_lost(pts));
    CHECK(stats.psi >= 0.0);
    CHECK(stats.psi < 1.0);
    std::size_t sum = 0;
    for (std::size_t k = 0; k < stats.areas.size(); ++k) {
      CHECK(stats.areas[k].area <= stats.areas[k].points);
      sum += stats.areas[k].area;
    }
    CHECK(sum == stats.captured);
    CHECK(capture_components(pts, {}).size() == stats.captured);
  }
}

TEST_CASE("dual layer never captures less than single layer (property)") {
  std::mt19937 rng(32);
  for (int iter = 0; iter < 50; ++iter) {
    const auto cloud = oracle::random_cloud(rng, 600, 16);
    for (Axis a : kAxes) {
      const auto s = simulate_capture(cloud.points(), a, {LayerMode::Single, 4});
      const auto d = simulate_capture(cloud.points(), a, {LayerMode::Dual, 4});
      CHECK(d.size() >= s.size());
      CHECK(s.size() == projected_area(cloud.points(), a));
    }
  }
}

TEST_CASE("splitting by an axis range never reduces total captured area (property)") {
  std::mt19937 rng(33);
  for (int iter = 0; iter < 50; ++iter) {
    const auto cloud = oracle::random_cloud(rng, 600, 24);
    const Axis axis = kAxes[rng() % 3];
    const int cut = 1 + static_cast<int>(rng() % 22);
    std::vector<Point> lo, hi;
    for (const auto& p : cloud.points()) (p[axis] < cut ? lo : hi).push_back(p);
    std::size_t parts = 0;
    if (!lo.empty()) parts += compute_psi(lo).captured;
    if (!hi.empty()) parts += compute_psi(hi).captured;
    CHECK(parts >= compute_psi(cloud).captured);
  }
}

TEST_CASE("psi is zero when every component projects injectively") {
  auto sheet = gen_synthetic(SynthKind::Plane, {{"extent", 12}, {"level", 3}}, 0);
  CHECK(compute_psi(sheet).psi == 0.0);
  auto shell = gen_synthetic(SynthKind::SphereShell, {{"radius", 5}}, 0);
  CHECK(compute_psi(shell).psi > 0.0);
}
