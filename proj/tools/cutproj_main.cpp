// Command line driver: analyze, sweep, grid, patch, dio, region.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cutproj/acceptance.hpp"
#include "cutproj/diophantine.hpp"
#include "cutproj/error.hpp"
#include "cutproj/fit.hpp"
#include "cutproj/patches.hpp"
#include "cutproj/regions.hpp"
#include "cutproj/regularity.hpp"
#include "cutproj/scheme.hpp"
#include "cutproj/statistics.hpp"

using namespace cutproj;
namespace fs = std::filesystem;

namespace {

// Exit codes: 0 success, 1 unexpected failure, 2 usage, 10 + ErrorKind otherwise.
int exit_code(ErrorKind kind) { return 10 + static_cast<int>(kind); }

constexpr double kEps = 0.5;

struct Common {
  std::string scheme_file;
  std::vector<uint64_t> random;
  std::vector<double> r{2.0};
  std::vector<double> R{100.0, 1000.0, 10000.0};
  std::string out = ".";
  uint64_t budget = 10'000'000;
  std::optional<double> tol;
  bool exact = false;
};

void add_common(CLI::App* app, Common& c) {
  auto* file = app->add_option("--scheme", c.scheme_file, "scheme JSON file");
  auto* rnd = app->add_option("--random", c.random, "random scheme: d k seed")->expected(3);
  file->excludes(rnd);
  app->add_option("--r", c.r, "patch radii (increasing)");
  app->add_option("--R", c.R, "search radii (increasing)");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--budget", c.budget, "component / point budget")->check(CLI::PositiveNumber);
  app->add_option("--tol", c.tol, "cut deduplication tolerance")->check(CLI::PositiveNumber);
  app->add_flag("--exact", c.exact, "accumulate window coordinates in long double");
}

void check_increasing(const std::vector<double>& v, const char* name) {
  if (v.empty()) fail(ErrorKind::InvalidArgument, std::string(name) + " must be nonempty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) fail(ErrorKind::InvalidArgument, std::string(name) + " must be increasing");
}

SchemeSpec load_scheme(const Common& c) {
  SchemeSpec spec;
  if (!c.scheme_file.empty()) {
    std::ifstream in(c.scheme_file);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot read " + c.scheme_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::InvalidArgument, std::string("malformed scheme JSON: ") + e.what());
    }
    try {
      spec = scheme_from_json(j);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::InvalidArgument, std::string("malformed scheme JSON: ") + e.what());
    }
  } else if (c.random.size() == 3) {
    spec = random_scheme(static_cast<int>(c.random[0]), static_cast<int>(c.random[1]), c.random[2]);
  } else {
    fail(ErrorKind::InvalidArgument, "one of --scheme or --random is required");
  }
  if (c.exact) spec.precision = Precision::Extended;
  return spec;
}

GridOptions grid_options(const Common& c) {
  GridOptions g;
  g.component_budget = c.budget;
  if (c.tol) g.dedup_tol = *c.tol;
  return g;
}

nlohmann::json common_json(const std::string& command, const Common& c) {
  return {{"command", command}, {"r", c.r},         {"R", c.R},
          {"budget", c.budget}, {"tol", c.tol ? *c.tol : -1.0}, {"exact", c.exact}};
}

uint64_t fnv(const std::string& text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Writes CSV text with two provenance columns in front of every line.
class Stamped {
 public:
  Stamped(std::string scheme_hash, std::string config_hash)
      : scheme_(std::move(scheme_hash)), config_(std::move(config_hash)) {}

  void write(const fs::path& path, const std::string& body, bool has_header) const {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
    std::istringstream in(body);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
      if (first && has_header)
        out << "scheme_hash,config_hash," << line << '\n';
      else
        out << scheme_ << ',' << config_ << ',' << line << '\n';
      first = false;
    }
  }

  std::string prefix() const { return scheme_ + ',' + config_ + ','; }

 private:
  std::string scheme_;
  std::string config_;
};

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::ostringstream csv_stream() {
  std::ostringstream os;
  os.precision(17);
  return os;
}

// Exponent e of y ~ C r^{k-d} (log r)^e, from samples with r > e and y > 0.
double log_exponent(const std::vector<CurveSample>& samples, int codim) {
  std::vector<double> x, y;
  for (const auto& s : samples)
    if (s.r > std::exp(1.0) && s.value > 0.0) {
      x.push_back(s.r);
      y.push_back(s.value / std::pow(s.r, codim));
    }
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  return log_power_fit(x, y).slope;
}

struct DiscrepancyFit {
  std::vector<DiscrepancyReport> reports;
  double exponent = std::numeric_limits<double>::quiet_NaN();
  /// max_R D(R) / (log R)^{k+1}
  double c_fit = 0.0;
  /// Kendall tau of D(R) / (log R)^{k+1}; the trend test passes when <= 0.
  double tau = 0.0;
};

DiscrepancyFit fit_discrepancy(const SchemeSpec& spec, const RegularGrid& grid, const std::vector<double>& Rs) {
  DiscrepancyFit f;
  const IntVec anchor(spec.d, 0);
  f.reports = discrepancy_curve(spec, grid, anchor, Rs);
  std::vector<double> xs, ys, scaled;
  for (const auto& rep : f.reports) {
    const double env = std::pow(std::log(rep.R), spec.k + 1);
    scaled.push_back(rep.discrepancy / env);
    f.c_fit = std::max(f.c_fit, rep.discrepancy / env);
    if (rep.R > std::exp(1.0) && rep.discrepancy > 0.0) {
      xs.push_back(rep.R);
      ys.push_back(rep.discrepancy);
    }
  }
  if (xs.size() >= 2) f.exponent = log_power_fit(xs, ys).slope;
  f.tau = kendall_tau(scaled);
  return f;
}

struct RegularityOptions {
  std::vector<double> curve_r{2, 3, 4, 6, 8, 12, 16};
  int64_t density = 0;
  int64_t cap = 1'000'000;
  int64_t scan = 0;
};

void add_regularity(CLI::App* app, RegularityOptions& o) {
  app->add_option("--curve-r", o.curve_r, "radii for the regularity curves (increasing)");
  app->add_option("--density", o.density, "start grid per axis for repetitivity (0: automatic)");
  app->add_option("--cap", o.cap, "largest shell scanned for repetitivity");
  app->add_option("--scan", o.scan, "orbit radius scanned for repulsivity (0: automatic)");
}

int64_t auto_density(const SchemeSpec& spec, int64_t requested) {
  if (requested > 0) return requested;
  return spec.codim() == 1 ? 1000 : spec.codim() == 2 ? 40 : 10;
}

int64_t auto_scan(const SchemeSpec& spec, int64_t requested) {
  if (requested > 0) return requested;
  return spec.d == 1 ? 2000 : 60;
}

struct RegularityCurves {
  RegularityCurve lower{RegularityCurve::Kind::Repetitivity, "shell-scan", "", {}};
  RegularityCurve upper{RegularityCurve::Kind::Repetitivity, "shell-scan-eroded", "", {}};
  RegularityCurve repulsive{RegularityCurve::Kind::Repulsivity, "closest-pair", "", {}};
};

RegularityCurves regularity_curves(const SchemeSpec& spec, const GridOptions& grid, const RegularityOptions& o) {
  check_increasing(o.curve_r, "--curve-r");
  RegularityCurves c;
  RepetitivityOptions ro;
  ro.density = auto_density(spec, o.density);
  ro.cap = o.cap;
  ro.grid = grid;
  const int64_t scan = auto_scan(spec, o.scan);
  c.lower.parameters = c.upper.parameters = "density=" + std::to_string(ro.density);
  c.repulsive.parameters = "scan=" + std::to_string(scan);
  for (double r : o.curve_r) {
    const auto est = repetitivity(spec, r, ro);
    c.lower.samples.push_back({r, static_cast<double>(est.lower)});
    if (est.upper) c.upper.samples.push_back({r, static_cast<double>(*est.upper)});
    try {
      c.repulsive.samples.push_back({r, repulsivity(spec, r, scan, grid).value});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoRecurrence) throw;
      std::cerr << "repulsivity at r=" << r << ": " << e.what() << '\n';
    }
  }
  return c;
}

std::string curve_body(const RegularityCurves& c) {
  auto os = csv_stream();
  write_curve_csv(os, c.lower, true);
  write_curve_csv(os, c.upper, false);
  return os.str();
}

std::string repulsivity_body(const RegularityCurves& c) {
  auto os = csv_stream();
  write_curve_csv(os, c.repulsive, true);
  return os.str();
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const Common& c, const RegularityOptions& ro, bool skip_regularity) {
  check_increasing(c.r, "--r");
  check_increasing(c.R, "--R");
  const SchemeSpec spec = load_scheme(c);
  const IntVec origin(spec.d, 0);
  lift(spec, origin);  // SingularShift when the origin sits on a cut
  const GridOptions go = grid_options(c);
  auto cfg = common_json("analyze", c);
  cfg["curve_r"] = ro.curve_r;
  cfg["density"] = auto_density(spec, ro.density);
  cfg["cap"] = ro.cap;
  cfg["scan"] = auto_scan(spec, ro.scan);
  cfg["skip_regularity"] = skip_regularity;
  const Stamped st(hex(scheme_hash(spec)), hex(fnv(cfg.dump())));
  const fs::path dir(c.out);
  fs::create_directories(dir);

  auto grid_csv = csv_stream();
  auto freq_csv = csv_stream();
  auto disc_csv = csv_stream();
  freq_csv << "r,component_id,frequency,empirical,count\n";
  write_report_csv_header(disc_csv);
  DiscrepancyFit first_fit;
  for (std::size_t ri = 0; ri < c.r.size(); ++ri) {
    const double r = c.r[ri];
    const RegularGrid grid = build_grid(spec, r, go);
    {
      auto block = csv_stream();
      write_grid_csv(block, grid);
      std::istringstream lines(block.str());
      std::string line;
      while (std::getline(lines, line)) grid_csv << r << ',' << line << '\n';
    }
    DiscrepancyFit fit = fit_discrepancy(spec, grid, c.R);
    const OrbitCounts counts = count_components(spec, grid, origin, c.R.back());
    for (uint64_t f = 0; f < grid.component_count(); ++f) {
      const ComponentId id = grid.unflatten(f);
      freq_csv << r << ',' << component_label(id) << ',' << frequency(grid, id) << ','
               << static_cast<double>(counts.counts[f]) / static_cast<double>(counts.total) << ','
               << counts.counts[f] << '\n';
    }
    for (const auto& rep : fit.reports) write_report_csv_row(disc_csv, rep);
    if (ri == 0) first_fit = std::move(fit);
  }
  st.write(dir / "grid.csv", "r,kind,values\n" + grid_csv.str(), true);
  st.write(dir / "frequencies.csv", freq_csv.str(), true);
  st.write(dir / "discrepancy.csv", disc_csv.str(), true);

  auto exp_csv = csv_stream();
  exp_csv << "quantity,fitted,predicted,relation\n";
  const double k = spec.k, d = spec.d;
  exp_csv << "discrepancy_log_exponent," << first_fit.exponent << ',' << k + kEps << ",<=\n";
  exp_csv << "discrepancy_c_fit," << first_fit.c_fit << ',' << k + 1 << ",envelope_exponent\n";
  exp_csv << "discrepancy_trend_tau," << first_fit.tau << ",0,<=\n";
  if (!skip_regularity) {
    const RegularityCurves curves = regularity_curves(spec, go, ro);
    st.write(dir / "repetitivity.csv", curve_body(curves), true);
    st.write(dir / "repulsivity.csv", repulsivity_body(curves), true);
    const double rep = log_exponent(curves.lower.samples, spec.codim());
    const double rep_up = log_exponent(curves.upper.samples, spec.codim());
    const double repl = log_exponent(curves.repulsive.samples, spec.codim());
    exp_csv << "repetitivity_log_exponent," << rep << ',' << (2 * k - 1) / d - 1 + kEps << ",<=\n";
    exp_csv << "repetitivity_log_exponent," << rep << ',' << 1 / d << ",>=\n";
    exp_csv << "repetitivity_upper_log_exponent," << rep_up << ',' << (2 * k - 1) / d - 1 + kEps << ",<=\n";
    exp_csv << "repulsivity_log_exponent," << repl << ',' << -1 / d << ",<=\n";
    exp_csv << "repulsivity_log_exponent," << repl << ',' << -(1 / d + (k - d) + kEps) << ",>=\n";
  }
  st.write(dir / "exponents.csv", exp_csv.str(), true);
  return 0;
}

// ------------------------------------------------------------------ sweep

struct SweepOptions {
  std::vector<int> dims;
  uint64_t seeds = 10;
  uint64_t seed_start = 1;
  bool regularity = false;
};

int cmd_sweep(const Common& c, const SweepOptions& so, const RegularityOptions& ro) {
  check_increasing(c.r, "--r");
  check_increasing(c.R, "--R");
  if (so.seeds == 0) fail(ErrorKind::InvalidArgument, "seed list must be nonempty");
  int d = 1, k = 2;
  if (so.dims.size() == 2) {
    d = so.dims[0];
    k = so.dims[1];
  } else if (c.random.size() == 3) {
    d = static_cast<int>(c.random[0]);
    k = static_cast<int>(c.random[1]);
  }
  const uint64_t start = so.dims.empty() && c.random.size() == 3 ? c.random[2] : so.seed_start;
  auto cfg = common_json("sweep", c);
  cfg["d"] = d;
  cfg["k"] = k;
  cfg["seeds"] = so.seeds;
  cfg["seed_start"] = start;
  cfg["regularity"] = so.regularity;
  if (so.regularity) {
    cfg["curve_r"] = ro.curve_r;
    cfg["density"] = ro.density;
    cfg["cap"] = ro.cap;
    cfg["scan"] = ro.scan;
  }
  const std::string config_hash = hex(fnv(cfg.dump()));
  const GridOptions go = grid_options(c);
  const fs::path dir(c.out);
  fs::create_directories(dir);

  std::ofstream rows(dir / "sweep.csv");
  rows.precision(17);
  rows << "scheme_hash,config_hash,seed,status,discrepancy_log_exponent,c_fit,trend_tau,trend_pass";
  if (so.regularity) rows << ",repetitivity_log_exponent,repulsivity_log_exponent";
  rows << '\n';
  std::vector<double> exps, cfits, taus, reps, repls;
  uint64_t ok = 0, trend_ok = 0, disc_ok = 0, rep_ok = 0, repl_ok = 0;
  for (uint64_t seed = start; seed < start + so.seeds; ++seed) {
    std::string scheme_hex = "-";
    try {
      SchemeSpec spec = random_scheme(d, k, seed);
      if (c.exact) spec.precision = Precision::Extended;
      scheme_hex = hex(scheme_hash(spec));
      lift(spec, IntVec(d, 0));
      const RegularGrid grid = build_grid(spec, c.r.front(), go);
      const DiscrepancyFit fit = fit_discrepancy(spec, grid, c.R);
      std::ostringstream extra;
      extra.precision(17);
      double rep = 0, repl = 0;
      if (so.regularity) {
        const RegularityCurves curves = regularity_curves(spec, go, ro);
        rep = log_exponent(curves.lower.samples, spec.codim());
        repl = log_exponent(curves.repulsive.samples, spec.codim());
        extra << ',' << rep << ',' << repl;
      }
      rows << scheme_hex << ',' << config_hash << ',' << seed << ",ok," << fit.exponent << ',' << fit.c_fit << ','
           << fit.tau << ',' << (fit.tau <= 0.0 ? 1 : 0) << extra.str() << '\n';
      ++ok;
      exps.push_back(fit.exponent);
      cfits.push_back(fit.c_fit);
      taus.push_back(fit.tau);
      trend_ok += fit.tau <= 0.0;
      disc_ok += fit.exponent <= k + 1;
      if (so.regularity) {
        reps.push_back(rep);
        repls.push_back(repl);
        rep_ok += rep <= (2.0 * k - 1) / d - 1 + kEps;
        repl_ok += repl >= -(1.0 / d + (k - d) + kEps);
      }
    } catch (const Error& e) {
      std::cerr << "seed " << seed << ": " << e.what() << '\n';
      rows << scheme_hex << ',' << config_hash << ',' << seed << ',' << to_string(e.kind()) << ",,,,";
      if (so.regularity) rows << ",,";
      rows << '\n';
    }
  }

  std::ofstream sum(dir / "summary.csv");
  sum.precision(17);
  sum << "scheme_hash,config_hash,quantity,q10,q50,q90,consistent_fraction,prediction\n";
  auto line = [&](const char* name, std::vector<double> v, uint64_t consistent, const std::string& pred) {
    std::erase_if(v, [](double x) { return std::isnan(x); });
    std::sort(v.begin(), v.end());
    sum << "-," << config_hash << ',' << name << ',';
    if (v.empty())
      sum << ",,";
    else
      sum << quantile(v, 0.1) << ',' << quantile(v, 0.5) << ',' << quantile(v, 0.9);
    sum << ',' << (ok ? static_cast<double>(consistent) / static_cast<double>(ok) : 0.0) << ',' << pred << '\n';
  };
  std::ostringstream kp1, rep_pred, repl_pred;
  kp1 << "<=" << k + 1;
  rep_pred << "<=" << (2.0 * k - 1) / d - 1 + kEps;
  repl_pred << ">=" << -(1.0 / d + (k - d) + kEps);
  line("discrepancy_log_exponent", exps, disc_ok, kp1.str());
  line("c_fit", cfits, ok, "reported");
  line("trend_tau", taus, trend_ok, "<=0");
  if (so.regularity) {
    line("repetitivity_log_exponent", reps, rep_ok, rep_pred.str());
    line("repulsivity_log_exponent", repls, repl_ok, repl_pred.str());
  }
  sum << "-," << config_hash << ",seeds_ok," << ok << ",,," << so.seeds << ",count\n";
  return 0;
}

// ------------------------------------------------------------------- grid

int cmd_grid(const Common& c) {
  check_increasing(c.r, "--r");
  const SchemeSpec spec = load_scheme(c);
  const Stamped st(hex(scheme_hash(spec)), hex(fnv(common_json("grid", c).dump())));
  fs::create_directories(c.out);
  auto os = csv_stream();
  os << "r,kind,values\n";
  for (double r : c.r) {
    auto block = csv_stream();
    write_grid_csv(block, build_grid(spec, r, grid_options(c)));
    std::istringstream lines(block.str());
    std::string line;
    while (std::getline(lines, line)) os << r << ',' << line << '\n';
  }
  st.write(fs::path(c.out) / "grid.csv", os.str(), true);
  return 0;
}

// ------------------------------------------------------------------ patch

struct PatchOptions {
  std::vector<int64_t> p;
  std::string type = "II";
  double half = 0.0;
};

int cmd_patch(const Common& c, const PatchOptions& po) {
  const SchemeSpec spec = load_scheme(c);
  PatchShape shape;
  shape.kind = po.type == "I" ? PatchShape::Kind::TypeI : PatchShape::Kind::TypeII;
  shape.r = c.r.front();
  shape.omega = ConvexBody::cube(spec.d, po.half > 0.0 ? po.half : c.r.front());
  IntVec p = po.p.empty() ? IntVec(spec.d, 0) : IntVec(po.p.begin(), po.p.end());
  if (static_cast<int>(p.size()) != spec.d) fail(ErrorKind::InvalidArgument, "--p needs d coordinates");
  const auto candidates = lattice_candidates(spec, shape);
  auto members = extract_patch(spec, candidates, p);
  std::sort(members.begin(), members.end());
  const AcceptanceRegion region = acceptance_region(spec, shape, candidates, members);
  auto j = patch_to_json(shape, members, region);
  auto cfg = common_json("patch", c);
  cfg["p"] = p;
  cfg["type"] = po.type;
  cfg["half"] = po.half;
  j["scheme_hash"] = hex(scheme_hash(spec));
  j["config_hash"] = hex(fnv(cfg.dump()));
  j["volume"] = region.volume();
  j["candidates"] = candidates.size();
  fs::create_directories(c.out);
  write_json(fs::path(c.out) / "patch.json", j);
  return 0;
}

// -------------------------------------------------------------------- dio

int cmd_dio(const Common& c, int64_t q_max) {
  const SchemeSpec spec = load_scheme(c);
  auto cfg = common_json("dio", c);
  cfg["q_max"] = q_max;
  const Stamped st(hex(scheme_hash(spec)), hex(fnv(cfg.dump())));
  const LinearForms forms = LinearForms::of(spec);
  ProfileOptions opts;
  opts.budget = c.budget;
  const ApproximationProfile prof = approximation_profile(forms, q_max, opts);
  fs::create_directories(c.out);
  auto os = csv_stream();
  write_profile_csv(os, prof);
  st.write(fs::path(c.out) / "profile.csv", os.str(), true);

  nlohmann::json j;
  j["scheme_hash"] = hex(scheme_hash(spec));
  j["config_hash"] = hex(fnv(cfg.dump()));
  // psi(r) = r^{-d/(k-d)}, the Dirichlet exponent.
  const PsiFamily psi{static_cast<double>(spec.d) / spec.codim(), 0.0, 1.0};
  j["dirichlet_constant"] = empirical_constant(prof, psi);
  const auto witness = screen_irrationality(forms);
  j["irrationality_witness"] = witness ? nlohmann::json(*witness) : nlohmann::json(nullptr);
  if (spec.d == 1 && spec.k == 2) {
    const auto cf = continued_fraction(spec.alpha[0], 30);
    j["continued_fraction"] = {{"quotients", cf.quotients},
                               {"terminated", cf.terminated},
                               {"rational_termination", cf.rational_termination}};
  }
  write_json(fs::path(c.out) / "dio.json", j);
  return 0;
}

// ----------------------------------------------------------------- region

struct RegionOptions {
  double ball = 1.0;
  std::vector<double> box;
  uint64_t component = 0;
};

int cmd_region(const Common& c, const RegionOptions& o) {
  check_increasing(c.R, "--R");
  const SchemeSpec spec = load_scheme(c);
  ConvexBody body = ConvexBody::ball(spec.d, o.ball);
  if (!o.box.empty()) {
    if (static_cast<int>(o.box.size()) != 2 * spec.d) fail(ErrorKind::InvalidArgument, "--box needs 2d numbers");
    body = ConvexBody::box(RealVec(o.box.begin(), o.box.begin() + spec.d), RealVec(o.box.begin() + spec.d, o.box.end()));
  }
  body.validate_bounded();
  auto cfg = common_json("region", c);
  cfg["body"] = body.to_json();
  cfg["component"] = o.component;
  const Stamped st(hex(scheme_hash(spec)), hex(fnv(cfg.dump())));
  const RegularGrid grid = build_grid(spec, c.r.front(), grid_options(c));
  if (o.component >= grid.component_count()) fail(ErrorKind::BadComponent, "component index out of range");
  const ComponentId id = grid.unflatten(o.component);
  const IntVec origin(spec.d, 0);
  fs::create_directories(c.out);
  auto os = csv_stream();
  os << "scale,cells,boundary_faces,direct,dyadic,deviation,bound,points,xi_prime,kappa,intrinsic_deviation,collar_bound\n";
  nlohmann::json dec_json;
  for (double s : c.R) {
    const CubeComplex H = cover_region(body, s);
    const RegionDiscrepancy rd = region_discrepancy(spec, grid, id, origin, H);
    const IntrinsicCount ic = intrinsic_count(spec, grid, id, origin, body, s);
    os << s << ',' << rd.cells << ',' << H.boundary_faces() << ',' << rd.direct << ',' << rd.dyadic << ','
       << rd.deviation << ',' << rd.bound << ',' << ic.points << ',' << ic.xi_prime << ',' << ic.kappa << ','
       << ic.deviation << ',' << ic.collar_bound << '\n';
    if (s == c.R.back()) dec_json = decomposition_to_json(laczkovich_decompose(H), spec.d, H.boundary_faces());
  }
  st.write(fs::path(c.out) / "region.csv", os.str(), true);
  dec_json["scheme_hash"] = hex(scheme_hash(spec));
  dec_json["config_hash"] = hex(fnv(cfg.dump()));
  write_json(fs::path(c.out) / "decomposition.json", dec_json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubical cut and project sets: patches, discrepancy, regularity"};
  app.require_subcommand(1);

  Common analyze_c, sweep_c, grid_c, patch_c, dio_c, region_c;
  RegularityOptions analyze_ro, sweep_ro;
  bool skip_regularity = false;
  auto* analyze = app.add_subcommand("analyze", "full report for one scheme");
  add_common(analyze, analyze_c);
  add_regularity(analyze, analyze_ro);
  analyze->add_flag("--no-regularity", skip_regularity, "skip repetitivity and repulsivity curves");

  SweepOptions so;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo over random schemes");
  add_common(sweep, sweep_c);
  add_regularity(sweep, sweep_ro);
  sweep->add_option("--dims", so.dims, "d k")->expected(2);
  sweep->add_option("--seeds", so.seeds, "number of seeds");
  sweep->add_option("--seed-start", so.seed_start, "first seed");
  sweep->add_flag("--regularity", so.regularity, "also fit repetitivity and repulsivity exponents");

  auto* grid = app.add_subcommand("grid", "regular grid cuts and summary");
  add_common(grid, grid_c);

  PatchOptions po;
  auto* patch = app.add_subcommand("patch", "patch and acceptance region at a point");
  add_common(patch, patch_c);
  patch->add_option("--p", po.p, "lattice point (d integers)");
  patch->add_option("--type", po.type, "I or II")->check(CLI::IsMember({"I", "II"}));
  patch->add_option("--half", po.half, "half side of the cubical shape (default r)");

  int64_t q_max = 100;
  auto* dio = app.add_subcommand("dio", "Diophantine profile");
  add_common(dio, dio_c);
  dio->add_option("--qmax", q_max, "largest height")->check(CLI::PositiveNumber);

  RegionOptions rgo;
  auto* region = app.add_subcommand("region", "region counts, dyadic decomposition, boundary collar");
  add_common(region, region_c);
  region->add_option("--ball", rgo.ball, "ball radius (scaled by --R)");
  region->add_option("--box", rgo.box, "box lo... hi... (scaled by --R)");
  region->add_option("--component", rgo.component, "flat component index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(analyze_c, analyze_ro, skip_regularity);
    if (*sweep) return cmd_sweep(sweep_c, so, sweep_ro);
    if (*grid) return cmd_grid(grid_c);
    if (*patch) return cmd_patch(patch_c, po);
    if (*dio) return cmd_dio(dio_c, q_max);
    if (*region) return cmd_region(region_c, rgo);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
