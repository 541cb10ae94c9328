#include "cutproj/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "cutproj/error.hpp"
#include "cutproj/simd/kernels.hpp"

namespace cutproj {

namespace {

constexpr std::size_t kChunk = 2048;

class RowCounter {
 public:
  RowCounter(const SchemeSpec& spec, const RegularGrid& grid, std::span<const int64_t> anchor,
             OrbitCounts& out, const CountOptions& options)
      : spec_(spec), grid_(grid), anchor_(anchor), out_(out), tol_(options.boundary_tol) {
    const int c = spec.codim();
    xs_.assign(c, std::vector<double>(kChunk));
    idx_.assign(c, std::vector<uint32_t>(kChunk));
    flat_.resize(kChunk);
    base_.resize(c);
    p_.resize(spec.d);
  }

  // prefix holds n_0..n_{d-2}; the last coordinate runs over [first, last].
  void row(const IntVec& prefix, int64_t first, int64_t last) {
    const int d = spec_.d, c = spec_.codim();
    for (int j = 0; j < c; ++j) {
      double s = spec_.t[j];
      for (int l = 0; l + 1 < d; ++l)
        s = s + spec_.a(j, l) * static_cast<double>(anchor_[l] + prefix[l]);
      base_[j] = s;
    }
    for (int64_t start = first; start <= last; start += static_cast<int64_t>(kChunk)) {
      const auto len = static_cast<std::size_t>(std::min<int64_t>(kChunk, last - start + 1));
      if (spec_.precision == Precision::Extended) {
        for (int l = 0; l + 1 < d; ++l) p_[l] = anchor_[l] + prefix[l];
        for (std::size_t i = 0; i < len; ++i) {
          p_[d - 1] = anchor_[d - 1] + start + static_cast<int64_t>(i);
          RealVec w = window_coord(spec_, p_);
          for (int j = 0; j < c; ++j) xs_[j][i] = w[j];
        }
      } else {
        for (int j = 0; j < c; ++j)
          simd::frac_affine(base_[j], spec_.a(j, d - 1), anchor_[d - 1] + start,
                            std::span<double>(xs_[j].data(), len));
      }
      std::fill_n(flat_.begin(), len, 0);
      for (int j = 0; j < c; ++j) {
        out_.boundary_hits += simd::locate(grid_.padded_cuts(j), std::span<const double>(xs_[j].data(), len),
                                           std::span<uint32_t>(idx_[j].data(), len), tol_);
        const uint64_t stride = grid_.stride(j);
        for (std::size_t i = 0; i < len; ++i) flat_[i] += idx_[j][i] * stride;
      }
      for (std::size_t i = 0; i < len; ++i) ++out_.counts[flat_[i]];
      out_.total += len;
    }
  }

 private:
  const SchemeSpec& spec_;
  const RegularGrid& grid_;
  std::span<const int64_t> anchor_;
  OrbitCounts& out_;
  double tol_;
  std::vector<std::vector<double>> xs_;
  std::vector<std::vector<uint32_t>> idx_;
  std::vector<uint64_t> flat_;
  RealVec base_;
  IntVec p_;
};

// Reduced distance from theta to the nearest integer and the Dirichlet kernel
// |sum_{n=-N}^{N} e(n theta)|.
double dirichlet(double theta, int64_t N) {
  const double r = theta - std::nearbyint(theta);
  const double len = static_cast<double>(2 * N + 1);
  const double den = std::sin(std::numbers::pi * r);
  if (std::abs(den) < 1e-300) return len;
  double num_arg = std::fmod(len * r, 2.0);
  return std::min(len, std::abs(std::sin(std::numbers::pi * num_arg) / den));
}

// Calls f(h) for one representative of each pair {h, -h} in [-H, H]^m \ {0}.
template <class F>
void for_each_half_frequency(int m, int64_t H, F&& f) {
  for_each_in_cube(m, H, [&](const IntVec& h) {
    for (int64_t x : h) {
      if (x > 0) {
        f(h);
        return;
      }
      if (x < 0) return;
    }
  });
}

void check_anchor(const SchemeSpec& spec, std::span<const int64_t> anchor) {
  if (static_cast<int>(anchor.size()) != spec.d) fail(ErrorKind::InvalidArgument, "anchor dimension differs from d");
}

}  // namespace

OrbitCounts count_components(const SchemeSpec& spec, const RegularGrid& grid, std::span<const int64_t> anchor,
                             double R, const CountOptions& options) {
  OrbitCounts out;
  out.counts.assign(grid.component_count(), 0);
  extend_counts(out, spec, grid, anchor, R, options);
  return out;
}

void extend_counts(OrbitCounts& counts, const SchemeSpec& spec, const RegularGrid& grid,
                   std::span<const int64_t> anchor, double R, const CountOptions& options) {
  check_anchor(spec, anchor);
  if (grid.dim() != spec.codim()) fail(ErrorKind::InvalidArgument, "grid does not match the scheme");
  if (!(R >= 0.0)) fail(ErrorKind::InvalidArgument, "R must be non-negative");
  if (counts.counts.size() != grid.component_count()) counts.counts.assign(grid.component_count(), 0);
  const auto h1 = static_cast<int64_t>(std::floor(R));
  const int64_t h0 = counts.h;
  if (h1 <= h0) return;
  RowCounter rc(spec, grid, anchor, counts, options);
  for_each_in_cube(spec.d - 1, h1, [&](const IntVec& prefix) {
    if (h0 < 0 || height(prefix) > h0) {
      rc.row(prefix, -h1, h1);
    } else {
      rc.row(prefix, -h1, -h0 - 1);
      rc.row(prefix, h0 + 1, h1);
    }
  });
  counts.h = h1;
}

double empirical_frequency(const SchemeSpec& spec, const RegularGrid& grid, const ComponentId& id,
                           std::span<const int64_t> anchor, double R) {
  const uint64_t f = grid.flat_index(id);
  OrbitCounts c = count_components(spec, grid, anchor, R);
  return static_cast<double>(c.counts[f]) / static_cast<double>(c.total);
}

double BoundCurve::operator()(int k, int d, double R) const {
  if (R <= 1.0) return C;
  return C * std::pow(std::log(R), k + eps) / std::pow(R, d);
}

DiscrepancyReport summarize(const SchemeSpec& spec, const RegularGrid& grid, const OrbitCounts& counts, double R,
                            const BoundCurve& curve) {
  DiscrepancyReport rep;
  rep.r = grid.r();
  rep.R = R;
  rep.total = counts.total;
  rep.boundary_hits = counts.boundary_hits;
  rep.bound = curve(spec.k, spec.d, R);
  const int m = grid.dim();
  std::vector<std::vector<double>> lengths(m);
  for (int j = 0; j < m; ++j) {
    auto c = grid.padded_cuts(j);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) lengths[j].push_back(c[i + 1] - c[i]);
  }
  std::vector<uint32_t> digit(m, 0);
  const double total = static_cast<double>(counts.total);
  double worst = -1.0;
  uint64_t worst_flat = 0;
  for (uint64_t f = 0; f < counts.counts.size(); ++f) {
    double freq = 1.0;
    for (int j = 0; j < m; ++j) freq *= lengths[j][digit[j]];
    const double dev = std::abs(static_cast<double>(counts.counts[f]) - total * freq);
    if (dev > worst) {
      worst = dev;
      worst_flat = f;
    }
    for (int j = m - 1; j >= 0; --j) {
      if (++digit[j] < lengths[j].size()) break;
      digit[j] = 0;
    }
  }
  if (worst >= 0.0 && counts.total > 0) {
    rep.id = grid.unflatten(worst_flat);
    rep.exact = frequency(grid, *rep.id);
    rep.empirical = static_cast<double>(counts.counts[worst_flat]) / total;
    rep.discrepancy = worst;
  }
  return rep;
}

DiscrepancyReport sup_discrepancy(const SchemeSpec& spec, const RegularGrid& grid, std::span<const int64_t> anchor,
                                  double R, const BoundCurve& curve) {
  return summarize(spec, grid, count_components(spec, grid, anchor, R), R, curve);
}

std::vector<DiscrepancyReport> discrepancy_curve(const SchemeSpec& spec, const RegularGrid& grid,
                                                 std::span<const int64_t> anchor, std::span<const double> Rs,
                                                 const BoundCurve& curve) {
  if (!std::is_sorted(Rs.begin(), Rs.end())) fail(ErrorKind::InvalidArgument, "R values must be increasing");
  OrbitCounts counts;
  std::vector<DiscrepancyReport> out;
  for (double R : Rs) {
    extend_counts(counts, spec, grid, anchor, R);
    out.push_back(summarize(spec, grid, counts, R, curve));
  }
  return out;
}

double r_weight(std::span<const int64_t> h) {
  double p = 1.0;
  for (int64_t x : h) p *= static_cast<double>(std::max<int64_t>(1, std::abs(x)));
  return 1.0 / p;
}

double etk_bound(std::span<const RealVec> points, int64_t H, const EtkOptions& options) {
  if (H < 1) fail(ErrorKind::InvalidArgument, "H must be positive");
  if (points.empty()) fail(ErrorKind::InvalidArgument, "no points");
  const int m = static_cast<int>(points.front().size());
  const double cm = options.constant.value_or(std::pow(3.0, m));
  const double n = static_cast<double>(points.size());
  double sum = 0.0;
  for_each_half_frequency(m, H, [&](const IntVec& h) {
    double re = 0.0, im = 0.0;
    for (const auto& x : points) {
      double phase = 0.0;
      for (int i = 0; i < m; ++i) phase += static_cast<double>(h[i]) * x[i];
      phase = 2.0 * std::numbers::pi * (phase - std::floor(phase));
      re += std::cos(phase);
      im += std::sin(phase);
    }
    sum += 2.0 * r_weight(h) * std::hypot(re, im) / n;
  });
  return cm * (1.0 / static_cast<double>(H) + sum);
}

RealVec frequency_vector(const SchemeSpec& spec, std::span<const int64_t> h) {
  RealVec theta(spec.d, 0.0);
  for (int i = 0; i < spec.d; ++i)
    for (int j = 0; j < spec.codim(); ++j) theta[i] += static_cast<double>(h[j]) * spec.a(j, i);
  return theta;
}

double etk_bound_orbit(const SchemeSpec& spec, int64_t N, int64_t H, const EtkOptions& options) {
  if (H < 1) fail(ErrorKind::InvalidArgument, "H must be positive");
  if (N < 0) fail(ErrorKind::InvalidArgument, "N must be non-negative");
  const int m = spec.codim();
  const double cm = options.constant.value_or(std::pow(3.0, m));
  const double len = static_cast<double>(2 * N + 1);
  double sum = 0.0;
  for_each_half_frequency(m, H, [&](const IntVec& h) {
    RealVec theta = frequency_vector(spec, h);
    double s = 1.0;
    for (double th : theta) s *= dirichlet(th, N) / len;
    sum += 2.0 * r_weight(h) * s;
  });
  return cm * (1.0 / static_cast<double>(H) + sum);
}

ExpSum exp_sum_closed_form(const SchemeSpec& spec, std::span<const int64_t> h, int64_t N, double tol) {
  if (static_cast<int>(h.size()) != spec.codim()) fail(ErrorKind::InvalidArgument, "h must have length k - d");
  if (N < 0) fail(ErrorKind::InvalidArgument, "N must be non-negative");
  ExpSum out{1.0, 1.0};
  for (double th : frequency_vector(spec, h)) {
    const double dist = dist_to_int(th);
    if (dist < tol) fail(ErrorKind::ResonantFrequency, "<h, L(e_i)> is within tolerance of an integer");
    out.modulus *= dirichlet(th, N);
    out.bound *= 1.0 / (2.0 * dist);
  }
  return out;
}

double log_power_sum(const SchemeSpec& spec, int64_t H, double tol) {
  if (H < 1) fail(ErrorKind::InvalidArgument, "H must be positive");
  double sum = 0.0;
  for_each_half_frequency(spec.codim(), H, [&](const IntVec& h) {
    double term = r_weight(h);
    for (double th : frequency_vector(spec, h)) {
      const double dist = dist_to_int(th);
      if (dist < tol) fail(ErrorKind::ResonantFrequency, "<h, L(e_i)> is within tolerance of an integer");
      term /= dist;
    }
    sum += 2.0 * term;
  });
  return sum;
}

std::string component_label(const ComponentId& id) {
  std::string s;
  for (std::size_t j = 0; j < id.idx.size(); ++j) {
    if (j) s += ':';
    s += std::to_string(id.idx[j]);
  }
  return s;
}

void write_report_csv_header(std::ostream& os) {
  os << "r,R,component_id,empirical,exact,discrepancy,bound,flags\n";
}

void write_report_csv_row(std::ostream& os, const DiscrepancyReport& rep, const std::string& extra_flags) {
  const auto old = os.precision(17);
  std::string flags = extra_flags;
  if (rep.boundary_hits > 0) {
    if (!flags.empty()) flags += ';';
    flags += "boundary_hits=" + std::to_string(rep.boundary_hits);
  }
  os << rep.r << ',' << rep.R << ',' << (rep.id ? component_label(*rep.id) : std::string("sup")) << ','
     << rep.empirical << ',' << rep.exact << ',' << rep.discrepancy << ',' << rep.bound << ',' << flags << '\n';
  os.precision(old);
}

}  // namespace cutproj
