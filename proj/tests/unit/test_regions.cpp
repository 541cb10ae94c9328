#include <doctest.h>

#include <cmath>
#include <set>

#include "cutproj/error.hpp"
#include "cutproj/regions.hpp"
#include "cutproj/statistics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cutproj;

namespace {

CubeComplex random_blob(uint64_t seed, int side) {
  UniformStream rng(seed);
  std::vector<IntVec> cells;
  const double cx = side * (0.3 + 0.4 * rng.next()), cy = side * (0.3 + 0.4 * rng.next());
  const double rad = side * (0.2 + 0.25 * rng.next());
  for (int x = 0; x < side; ++x)
    for (int y = 0; y < side; ++y) {
      const double d = std::hypot(x - cx, y - cy);
      if (d < rad || rng.next() < 0.08) cells.push_back({x, y});
    }
  return CubeComplex(2, cells);
}

}  // namespace

TEST_SUITE("regions") {

TEST_CASE("cube complex of simple regions") {
  auto box = cover_region(ConvexBody::cube(2, 1.4));
  CHECK(box.size() == 9);
  CHECK(box.boundary_faces() == 12);
  for (int d = 1; d <= 3; ++d) {
    auto dot = cover_region(ConvexBody::ball(d, 0.4));
    CHECK(dot.size() == 1);
    CHECK(dot.boundary_faces() == static_cast<uint64_t>(2 * d));
  }
  for (int n = 1; n <= 7; ++n) {
    std::vector<IntVec> cells;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) cells.push_back({x, y});
    CHECK(CubeComplex(2, cells).boundary_faces() == static_cast<uint64_t>(4 * n));
  }
}

TEST_CASE("dyadic decomposition examples") {
  CubeComplex sq(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  auto a = laczkovich_decompose(sq);
  CHECK(a.positive == std::vector<DyadicCube>{{{0, 0}, 1}});
  CHECK(a.negative.empty());

  CubeComplex ell(2, {{0, 0}, {1, 0}, {0, 1}});
  auto b = laczkovich_decompose(ell);
  CHECK(b.positive == std::vector<DyadicCube>{{{0, 0}, 1}});
  CHECK(b.negative == std::vector<DyadicCube>{{{1, 1}, 0}});
}

TEST_CASE("decompositions reconstruct random blobs") {
  double worst = 0.0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto H = random_blob(seed, 50);
    auto dec = laczkovich_decompose(H);
    CHECK(dec.reconstruct(2) == H.cells());
    std::set<IntVec> pos, neg;
    auto expand = [](const DyadicCube& q, std::set<IntVec>& into) {
      const int64_t side = int64_t{1} << q.level;
      int overlaps = 0;
      for (int64_t x = 0; x < side; ++x)
        for (int64_t y = 0; y < side; ++y) overlaps += !into.insert({q.corner[0] + x, q.corner[1] + y}).second;
      return overlaps;
    };
    int overlaps = 0;
    for (const auto& q : dec.positive) overlaps += expand(q, pos);
    for (const auto& q : dec.negative) overlaps += expand(q, neg);
    CHECK(overlaps == 0);
    for (const auto& c : neg) CHECK(pos.count(c) == 1);
    worst = std::max(worst, dec.max_scale_ratio(2, H.boundary_faces()));
  }
  MESSAGE("max per-scale ratio count*2^m/|boundary|: " << worst);
}

TEST_CASE("box regions agree with the orbit count") {
  auto s = random_scheme(2, 3, 5);
  auto grid = build_grid(s, 2);
  const IntVec anchor{4, -7};
  for (double R : {3.0, 10.0}) {
    auto H = cover_region(ConvexBody::cube(2, R));
    auto counts = count_components(s, grid, anchor, R);
    for (uint64_t f = 0; f < grid.component_count(); f += 3) {
      auto rd = region_discrepancy(s, grid, grid.unflatten(f), anchor, H);
      CHECK(rd.direct == static_cast<int64_t>(counts.counts[f]));
      CHECK(rd.dyadic == rd.direct);
    }
  }
}

TEST_CASE("telescoping identity on random regions") {
  auto s = random_scheme(2, 4, 6);
  auto grid = build_grid(s, 1);
  UniformStream rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const double r = 2 + 10 * rng.next();
    RealVec c{4 * rng.next() - 2, 4 * rng.next() - 2};
    auto H = cover_region(ConvexBody::ball(2, r, c));
    const ComponentId id = grid.unflatten(static_cast<uint64_t>(rng.next() * grid.component_count()));
    auto rd = region_discrepancy(s, grid, id, IntVec{0, 0}, H);
    CHECK(rd.direct == rd.dyadic);
    CHECK(rd.bound > 0.0);
  }
}

TEST_CASE("growing balls keep the boundary-normalized discrepancy bounded") {
  auto s = fixtures::make(2, 3, {0.6180339887498949, 0.4142135623730951}, {0.13});
  auto grid = build_grid(s, 1);
  const ComponentId id{{1}};
  double worst = 0.0;
  for (double R : {8.0, 16.0, 32.0, 64.0}) {
    auto H = cover_region(ConvexBody::ball(2, 1.0), R);
    auto rd = region_discrepancy(s, grid, id, IntVec{0, 0}, H);
    worst = std::max(worst, rd.deviation / rd.bound);
  }
  MESSAGE("max |xi - xi_P| #X_A / |boundary H| = " << worst);
  CHECK(std::isfinite(worst));
}

TEST_CASE("intrinsic count") {
  SUBCASE("M = 0 and a chart box") {
    auto s = random_scheme(2, 3, 8);
    auto grid = build_grid(s, 2);
    auto ic = intrinsic_count(s, grid, {{2}}, IntVec{1, 1}, ConvexBody::box({-6.5, -3.5}, {7.5, 9.5}));
    CHECK(ic.xi == ic.xi_prime);
    CHECK(ic.points == ic.cells);
  }
  SUBCASE("collar inequality with an internal map") {
    auto s = fixtures::make(2, 3, {0.6180339887498949, 0.4142135623730951}, {0.13}, {0.5, -0.4});
    auto grid = build_grid(s, 1);
    for (double R : {3.0, 7.0, 15.0, 30.0}) {
      auto ic = intrinsic_count(s, grid, {{0}}, IntVec{0, 0}, ConvexBody::ball(2, 1.0), R);
      CHECK(ic.deviation <= ic.collar_bound);
      CHECK(ic.kappa > 0.0);
    }
  }
}

TEST_CASE("region errors") {
  try {
    cover_region(ConvexBody::ball(2, INFINITY));
    FAIL("expected UnboundedRegion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnboundedRegion);
  }
  auto s = fixtures::make(2, 3, {0.3, 0.7}, {0.1});
  auto grid = build_grid(s, 0);
  try {
    region_discrepancy(s, grid, {{0}}, IntVec{0, 0}, CubeComplex(2, {}));
    FAIL("expected EmptyRegion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyRegion);
  }
}

TEST_CASE("decomposition json") {
  CubeComplex ell(2, {{0, 0}, {1, 0}, {0, 1}});
  auto j = decomposition_to_json(laczkovich_decompose(ell), 2, ell.boundary_faces());
  CHECK(j["positive"].size() == 1);
  CHECK(j["negative"].size() == 1);
  CHECK(j["histogram"].size() == 2);
}

}  // TEST_SUITE
