#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cutproj/error.hpp"
#include "cutproj/fit.hpp"
#include "cutproj/statistics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cutproj;

namespace {

// Per-point reference count: window_coord, then a linear scan of the cuts.
std::vector<uint64_t> naive_counts(const SchemeSpec& s, const RegularGrid& grid, const IntVec& anchor, int64_t h) {
  std::vector<uint64_t> counts(grid.component_count());
  oracle::cube(s.d, h, [&](const IntVec& n) {
    IntVec p(s.d);
    for (int i = 0; i < s.d; ++i) p[i] = anchor[i] + n[i];
    auto w = window_coord(s, p);
    uint64_t flat = 0;
    for (int j = 0; j < s.codim(); ++j) {
      auto c = grid.cuts(j);
      std::size_t idx = 0;
      while (idx + 1 < c.size() && c[idx + 1] <= w[j]) ++idx;
      flat += idx * grid.stride(j);
    }
    ++counts[flat];
  });
  return counts;
}

}  // namespace

TEST_SUITE("statistics") {

TEST_CASE("trivial grid") {
  auto s = random_scheme(2, 3, 8);
  auto grid = build_grid(s, 0);
  CHECK(empirical_frequency(s, grid, {{0}}, IntVec{0, 0}, 17) == 1.0);
  for (double R : {1.0, 10.0, 100.0}) CHECK(sup_discrepancy(s, grid, IntVec{3, 1}, R).discrepancy == 0.0);
}

TEST_CASE("golden frequency converges") {
  auto g = fixtures::golden();
  auto grid = build_grid(g, 1);
  const double R = 1e4;
  const double f = empirical_frequency(g, grid, {{1}}, IntVec{0}, R);
  CHECK(std::abs(f - 0.236068) <= 10 * std::log(R) / R);
}

TEST_CASE("streamed counts equal the per-point reference") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const int d = 1 + static_cast<int>(seed % 2);
    auto s = random_scheme(d, d + 2, seed);
    auto grid = build_grid(s, 2);
    const IntVec anchor(d, static_cast<int64_t>(seed) * 13 - 40);
    const int64_t h = d == 1 ? 3000 : 40;
    auto c = count_components(s, grid, anchor, static_cast<double>(h));
    CHECK(c.counts == naive_counts(s, grid, anchor, h));
    CHECK(c.total == static_cast<uint64_t>(std::pow(2 * h + 1, d)));
  }
}

TEST_CASE("extended precision path counts the same orbit") {
  auto s = random_scheme(2, 3, 4);
  auto e = s;
  e.precision = Precision::Extended;
  auto grid = build_grid(s, 2);
  auto a = count_components(s, grid, IntVec{1, 2}, 30);
  auto b = count_components(e, grid, IntVec{1, 2}, 30);
  CHECK(a.total == b.total);
  uint64_t diff = 0;
  for (std::size_t i = 0; i < a.counts.size(); ++i) diff += a.counts[i] > b.counts[i] ? a.counts[i] - b.counts[i] : b.counts[i] - a.counts[i];
  CHECK(diff <= 2 * a.boundary_hits);
}

TEST_CASE("count conservation and incremental shells") {
  auto s = random_scheme(2, 4, 12);
  auto grid = build_grid(s, 2);
  const IntVec anchor{5, -3};
  std::vector<double> Rs{0, 1, 7, 7.5, 20, 33};
  auto curve = discrepancy_curve(s, grid, anchor, Rs);
  for (std::size_t i = 0; i < Rs.size(); ++i) {
    auto fresh = sup_discrepancy(s, grid, anchor, Rs[i]);
    const auto h = static_cast<uint64_t>(std::floor(Rs[i]));
    CHECK(curve[i].total == (2 * h + 1) * (2 * h + 1));
    CHECK(curve[i].discrepancy == fresh.discrepancy);
    CHECK(curve[i].id == fresh.id);
  }
  OrbitCounts c = count_components(s, grid, anchor, 25);
  uint64_t sum = 0;
  for (auto x : c.counts) sum += x;
  CHECK(sum == 51u * 51u);
}

TEST_CASE("golden discrepancy grows slower than a power") {
  auto g = fixtures::golden_exact();
  auto grid = build_grid(g, 3);
  std::vector<double> Rs{1e3, 1e4, 1e5, 1e6};
  auto curve = discrepancy_curve(g, grid, IntVec{0}, Rs);
  std::vector<double> disc;
  for (const auto& rep : curve) {
    disc.push_back(rep.discrepancy);
    MESSAGE("R=" << rep.R << " discrepancy=" << rep.discrepancy << " ratio=" << rep.discrepancy / std::log(rep.R));
  }
  CHECK(power_fit(Rs, disc).slope < 0.2);
}

TEST_CASE("two dimensional discrepancy constant is reported") {
  auto s = random_scheme(2, 3, 2024);
  auto rep = sup_discrepancy(s, build_grid(s, 2), IntVec{0, 0}, 500);
  const double c_fit = rep.discrepancy / std::pow(std::log(500.0), s.k + 0.5);
  MESSAGE("C_fit=" << c_fit);
  CHECK(rep.empirical >= 0.0);
  CHECK(rep.empirical <= 1.0);
  CHECK(rep.discrepancy >= 0.0);
}

TEST_CASE("r weight") {
  CHECK(r_weight(IntVec{3, -2}) == doctest::Approx(1.0 / 6.0));
  CHECK(r_weight(IntVec{0, 0}) == 1.0);
}

TEST_CASE("ETK bound of a single point") {
  const int64_t H = 3;
  double sum = 0.0;
  oracle::cube(2, H, [&](const IntVec& h) {
    if (h[0] == 0 && h[1] == 0) return;
    sum += 1.0 / (std::max<int64_t>(1, std::abs(h[0])) * std::max<int64_t>(1, std::abs(h[1])));
  });
  std::vector<RealVec> pts{{0.3, 0.8}};
  CHECK(etk_bound(pts, H) == doctest::Approx(9.0 * (1.0 / H + sum)).epsilon(1e-12));
  EtkOptions o;
  o.constant = 1.0;
  CHECK(etk_bound(pts, H, o) == doctest::Approx(1.0 / H + sum).epsilon(1e-12));
}

TEST_CASE("orbit ETK equals the explicit point ETK") {
  auto s = random_scheme(1, 3, 6);
  const int64_t N = 40;
  std::vector<RealVec> pts;
  for (int64_t n = -N; n <= N; ++n) pts.push_back(window_coord(s, IntVec{n}));
  CHECK(etk_bound_orbit(s, N, 6) == doctest::Approx(etk_bound(pts, 6)).epsilon(1e-9));
}

TEST_CASE("golden ETK domination") {
  auto g = fixtures::golden();
  auto grid = build_grid(g, 3);
  const int64_t N = 5000;
  auto rep = sup_discrepancy(g, grid, IntVec{0}, static_cast<double>(N));
  CHECK(rep.discrepancy / static_cast<double>(rep.total) <= etk_bound_orbit(g, N, 100));
}

TEST_CASE("closed form exponential sums") {
  auto half = fixtures::make(1, 2, {0.5}, {0.25});
  auto e = exp_sum_closed_form(half, IntVec{1}, 10);
  CHECK(e.bound == doctest::Approx(1.0));
  CHECK(e.modulus <= e.bound + 1e-12);

  auto g = fixtures::golden();
  auto gs = exp_sum_closed_form(g, IntVec{1}, 100);
  CHECK(gs.bound == doctest::Approx(1.0 / (2.0 * 0.381966)).epsilon(1e-12));
  CHECK(gs.bound == doctest::Approx(1.309017).epsilon(1e-6));
  CHECK(gs.modulus <= gs.bound);
  CHECK(gs.modulus == doctest::Approx(oracle::exp_sum_direct({0.618034}, 100)).epsilon(1e-9));

  auto s = random_scheme(2, 4, 3);
  const IntVec h{2, -1};
  double first = exp_sum_closed_form(s, h, 1).bound;
  for (int64_t N : {1, 5, 25, 125, 625}) {
    auto r = exp_sum_closed_form(s, h, N);
    CHECK(r.bound == first);
    CHECK(r.modulus <= r.bound + 1e-9);
  }
  CHECK(exp_sum_closed_form(s, h, 12).modulus ==
        doctest::Approx(oracle::exp_sum_direct(frequency_vector(s, h), 12)).epsilon(1e-8));

  try {
    exp_sum_closed_form(half, IntVec{2}, 10);
    FAIL("expected ResonantFrequency");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::ResonantFrequency);
  }
}

TEST_CASE("log power sum") {
  auto g = fixtures::golden();
  CHECK(log_power_sum(g, 1) == doctest::Approx(2.0 / 0.381966).epsilon(1e-12));

  double naive = 0.0;
  for (int64_t h = -10; h <= 10; ++h) {
    if (h == 0) continue;
    long double th = 0.618034L * h;
    long double dist = std::abs(th - std::nearbyint(th));
    naive += static_cast<double>(1.0L / (std::abs(h) * dist));
  }
  CHECK(log_power_sum(g, 10) == doctest::Approx(naive).epsilon(1e-12));

  int ok = 0;
  std::vector<double> Hs;
  for (int e = 4; e <= 16; ++e) Hs.push_back(std::ldexp(1.0, e));
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    auto s = random_scheme(1, 2, seed);
    std::vector<double> vals;
    for (double H : Hs) vals.push_back(log_power_sum(s, static_cast<int64_t>(H)));
    ok += log_power_fit(Hs, vals).slope <= s.k + 1;
  }
  MESSAGE("seeds within exponent k+1: " << ok);
  CHECK(ok >= 90);
}

TEST_CASE("report csv") {
  std::ostringstream os;
  write_report_csv_header(os);
  DiscrepancyReport rep;
  rep.r = 1;
  rep.R = 10;
  rep.id = ComponentId{{1, 2}};
  rep.boundary_hits = 2;
  write_report_csv_row(os, rep);
  CHECK(os.str() == "r,R,component_id,empirical,exact,discrepancy,bound,flags\n1,10,1:2,0,0,0,0,boundary_hits=2\n");
}

}  // TEST_SUITE
