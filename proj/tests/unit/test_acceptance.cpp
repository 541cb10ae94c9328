#include <doctest.h>

#include <sstream>

#include "cutproj/acceptance.hpp"
#include "cutproj/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cutproj;

TEST_SUITE("acceptance") {

TEST_CASE("golden grid at r = 1") {
  auto g = fixtures::golden();
  auto grid = build_grid(g, 1);
  auto c = grid.cuts(0);
  auto expect = oracle::cuts(g, 0, 1);
  REQUIRE(c.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(c[i] == doctest::Approx(expect[i]).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(0.381966).epsilon(1e-12));
  CHECK(c[2] == doctest::Approx(0.618034).epsilon(1e-12));
  CHECK(grid.component_count() == 3);
  CHECK(frequency(grid, {{0}}) == doctest::Approx(0.381966).epsilon(1e-12));
  CHECK(frequency(grid, {{1}}) == doctest::Approx(0.236068).epsilon(1e-12));
  CHECK(frequency(grid, {{2}}) == doctest::Approx(0.381966).epsilon(1e-12));
  CHECK(min_side(grid) == doctest::Approx(0.236068).epsilon(1e-12));
  CHECK(max_side(grid) == doctest::Approx(0.381966).epsilon(1e-12));
}

TEST_CASE("r = 0 is a single component") {
  auto s = random_scheme(2, 4, 1);
  auto grid = build_grid(s, 0);
  CHECK(grid.component_count() == 1);
  CHECK(frequency(grid, {{0, 0}}) == 1.0);
  CHECK(min_side(grid) == 1.0);
  CHECK(component_of(grid, RealVec{0.3, 0.9}).idx == std::vector<uint32_t>{0, 0});
}

TEST_CASE("component lookup") {
  auto grid = build_grid(fixtures::golden(), 1);
  CHECK(component_of(grid, RealVec{0.5}).idx == std::vector<uint32_t>{1});
  CHECK(component_of(grid, RealVec{0.9}).idx == std::vector<uint32_t>{2});
  try {
    component_of(grid, RealVec{0.381966});
    FAIL("expected SingularPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularPoint);
  }
  try {
    frequency(grid, {{3}});
    FAIL("expected BadComponent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadComponent);
  }
}

TEST_CASE("cuts match the long double oracle") {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    auto s = random_scheme(1 + static_cast<int>(seed % 3), 4, seed);
    const int64_t r = 1 + static_cast<int64_t>(seed % 3);
    auto grid = build_grid(s, static_cast<double>(r));
    for (int j = 0; j < s.codim(); ++j) {
      auto expect = oracle::cuts(s, j, r);
      auto got = grid.cuts(j);
      REQUIRE(got.size() == expect.size());
      for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-13);
    }
  }
}

TEST_CASE("partition of unity") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    auto s = random_scheme(1 + static_cast<int>(seed % 2), 3 + static_cast<int>(seed % 2), seed);
    auto grid = build_grid(s, 3);
    double sum = 0.0;
    for (uint64_t f = 0; f < grid.component_count(); ++f) sum += frequency(grid, grid.unflatten(f));
    CHECK(std::abs(sum - 1.0) < 1e-10);
  }
}

TEST_CASE("golden component count and three distances") {
  auto g = fixtures::golden();
  for (int r = 1; r <= 50; ++r) {
    auto grid = build_grid(g, r);
    CHECK(grid.component_count() == static_cast<uint64_t>(2 * r + 1));
    std::vector<double> lengths;
    for (uint64_t f = 0; f < grid.component_count(); ++f) lengths.push_back(frequency(grid, grid.unflatten(f)));
    CHECK(oracle::distinct(lengths, 1e-10) <= 3);
  }
  CHECK(build_grid(g, 2).component_count() == 5);
}

TEST_CASE("cuts are monotone in r") {
  auto s = random_scheme(2, 3, 4);
  auto small = build_grid(s, 2), big = build_grid(s, 4);
  auto cb = big.cuts(0);
  for (double x : small.cuts(0)) {
    bool found = false;
    for (double y : cb) found = found || std::abs(x - y) <= 1e-10;
    CHECK(found);
  }
}

TEST_CASE("component budget") {
  auto s = random_scheme(2, 5, 1);
  GridOptions o;
  o.component_budget = 1000;
  try {
    build_grid(s, 4, o);
    FAIL("expected TooManyComponents");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyComponents);
  }
}

TEST_CASE("flat index round trip") {
  auto s = random_scheme(1, 4, 2);
  auto grid = build_grid(s, 3);
  for (uint64_t f = 0; f < grid.component_count(); ++f) CHECK(grid.flat_index(grid.unflatten(f)) == f);
}

TEST_CASE("csv export") {
  std::ostringstream os;
  write_grid_csv(os, build_grid(fixtures::golden(), 1));
  const std::string text = os.str();
  CHECK(text.rfind("cuts,0,0,", 0) == 0);
  CHECK(text.find("summary,components,3,min_side,") != std::string::npos);
}

}  // TEST_SUITE
