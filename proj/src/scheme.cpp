#include "cutproj/scheme.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "cutproj/error.hpp"

namespace cutproj {

namespace {

long double shifted_form_ext(const SchemeSpec& spec, int j, std::span<const int64_t> p) {
  long double s = spec.t[j];
  for (int i = 0; i < spec.d; ++i) s += static_cast<long double>(spec.a(j, i)) * p[i];
  return s;
}

std::vector<double> flatten_rows(const nlohmann::json& j, std::size_t rows, std::size_t cols,
                                 const char* name) {
  std::vector<double> out;
  if (j.is_array() && !j.empty() && j.front().is_array()) {
    if (j.size() != rows)
      fail(ErrorKind::InvalidArgument, std::string(name) + " has the wrong number of rows");
    for (const auto& row : j) {
      if (row.size() != cols)
        fail(ErrorKind::InvalidArgument, std::string(name) + " has the wrong number of columns");
      for (const auto& x : row) out.push_back(x.get<double>());
    }
  } else {
    out = j.get<std::vector<double>>();
    if (out.size() != rows * cols)
      fail(ErrorKind::InvalidArgument, std::string(name) + " has the wrong size");
  }
  return out;
}

nlohmann::json nest_rows(const std::vector<double>& flat, std::size_t rows, std::size_t cols) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(flat[r * cols + c]);
    out.push_back(row);
  }
  return out;
}

}  // namespace

bool SchemeSpec::has_internal_map() const {
  for (double x : m_map)
    if (x != 0.0) return true;
  return false;
}

void validate(const SchemeSpec& spec) {
  if (spec.d < 1 || spec.k <= spec.d)
    fail(ErrorKind::InvalidArgument, "need 0 < d < k");
  const std::size_t c = static_cast<std::size_t>(spec.codim());
  const std::size_t d = static_cast<std::size_t>(spec.d);
  if (spec.alpha.size() != c * d) fail(ErrorKind::InvalidArgument, "alpha must be (k-d) x d");
  if (!spec.m_map.empty() && spec.m_map.size() != c * d)
    fail(ErrorKind::InvalidArgument, "m_map must be d x (k-d)");
  if (spec.t.size() != c) fail(ErrorKind::InvalidArgument, "t must have k-d entries");
  for (double x : spec.alpha)
    if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "alpha must be finite");
  for (double x : spec.m_map)
    if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "m_map must be finite");
  for (double x : spec.t)
    if (!(x >= 0.0 && x < 1.0)) fail(ErrorKind::InvalidArgument, "t must lie in [0,1)");
  ChartMap check(spec);
  (void)check;
}

SchemeSpec random_scheme(int d, int k, uint64_t seed) {
  SchemeSpec spec;
  spec.d = d;
  spec.k = k;
  spec.seed = seed;
  UniformStream rng(seed);
  spec.alpha.resize(static_cast<std::size_t>(d) * (k - d));
  for (double& x : spec.alpha) x = rng.next();
  spec.t.resize(k - d);
  for (double& x : spec.t) x = rng.next();
  validate(spec);
  return spec;
}

SchemeSpec scheme_from_json(const nlohmann::json& j) {
  SchemeSpec spec;
  spec.d = j.at("d").get<int>();
  spec.k = j.at("k").get<int>();
  if (spec.d < 1 || spec.k <= spec.d) fail(ErrorKind::InvalidArgument, "need 0 < d < k");
  const std::size_t c = spec.codim();
  if (j.contains("seed")) spec.seed = j.at("seed").get<uint64_t>();
  if (!j.contains("alpha") || !j.contains("t")) {
    if (!spec.seed) fail(ErrorKind::InvalidArgument, "alpha and t are required without a seed");
    SchemeSpec drawn = random_scheme(spec.d, spec.k, *spec.seed);
    spec.alpha = drawn.alpha;
    spec.t = drawn.t;
  }
  if (j.contains("alpha")) spec.alpha = flatten_rows(j.at("alpha"), c, spec.d, "alpha");
  if (j.contains("t")) spec.t = j.at("t").get<std::vector<double>>();
  if (j.contains("m_map")) {
    spec.m_map = flatten_rows(j.at("m_map"), spec.d, c, "m_map");
    if (!spec.has_internal_map()) spec.m_map.clear();
  }
  if (j.value("precision", std::string("double")) == "extended") spec.precision = Precision::Extended;
  validate(spec);
  return spec;
}

nlohmann::json scheme_to_json(const SchemeSpec& spec) {
  nlohmann::json j;
  j["d"] = spec.d;
  j["k"] = spec.k;
  j["alpha"] = nest_rows(spec.alpha, spec.codim(), spec.d);
  if (spec.has_internal_map()) j["m_map"] = nest_rows(spec.m_map, spec.d, spec.codim());
  j["t"] = spec.t;
  if (spec.seed) j["seed"] = *spec.seed;
  if (spec.precision == Precision::Extended) j["precision"] = "extended";
  return j;
}

uint64_t scheme_hash(const SchemeSpec& spec) {
  const std::string text = scheme_to_json(spec).dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

double shifted_form(const SchemeSpec& spec, int j, std::span<const int64_t> p) {
  if (spec.precision == Precision::Extended) return static_cast<double>(shifted_form_ext(spec, j, p));
  double s = spec.t[j];
  for (int i = 0; i < spec.d; ++i) s = s + spec.a(j, i) * static_cast<double>(p[i]);
  return s;
}

RealVec window_coord(const SchemeSpec& spec, std::span<const int64_t> p) {
  RealVec w(spec.codim());
  for (int j = 0; j < spec.codim(); ++j) {
    if (spec.precision == Precision::Extended) {
      long double s = shifted_form_ext(spec, j, p);
      long double f = s - std::floor(s);
      w[j] = f >= 1.0L ? 0.0 : static_cast<double>(f);
      if (w[j] >= 1.0) w[j] = 0.0;
    } else {
      w[j] = frac(shifted_form(spec, j, p));
    }
  }
  return w;
}

LatticeVector lift(const SchemeSpec& spec, std::span<const int64_t> p) {
  LatticeVector m{IntVec(p.begin(), p.end()), IntVec(spec.codim())};
  for (int j = 0; j < spec.codim(); ++j) {
    long double s = spec.precision == Precision::Extended ? shifted_form_ext(spec, j, p)
                                                          : shifted_form(spec, j, p);
    long double nearest = std::nearbyint(s);
    if (std::abs(s - nearest) < spec.tol.singular) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "t_%d + L(p) is within %g of an integer", j, spec.tol.singular);
      fail(ErrorKind::SingularShift, buf);
    }
    m.v[j] = static_cast<int64_t>(std::floor(s));
  }
  return m;
}

ChartMap::ChartMap(const SchemeSpec& spec)
    : d_(spec.d), c_(spec.codim()), identity_(!spec.has_internal_map()) {
  m_ = Eigen::MatrixXd::Zero(d_, c_);
  Eigen::MatrixXd l(c_, d_);
  for (int j = 0; j < c_; ++j)
    for (int i = 0; i < d_; ++i) l(j, i) = spec.a(j, i);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < c_; ++j) m_(i, j) = spec.m(i, j);
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d_, d_) - m_ * l;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(std::abs(lu.determinant()) >= spec.tol.determinant))
    fail(ErrorKind::DegenerateInternalSpace, "I - M L is singular; E and F_pi are not complementary");
  inverse_ = lu.inverse();
  deviation_ = inverse_ * m_;
}

RealVec ChartMap::operator()(std::span<const int64_t> n, std::span<const int64_t> v) const {
  RealVec u(d_);
  if (identity_) {
    for (int i = 0; i < d_; ++i) u[i] = static_cast<double>(n[i]);
    return u;
  }
  Eigen::VectorXd rhs(d_);
  for (int i = 0; i < d_; ++i) {
    double s = static_cast<double>(n[i]);
    for (int j = 0; j < c_; ++j) s -= m_(i, j) * static_cast<double>(v[j]);
    rhs(i) = s;
  }
  Eigen::VectorXd x = inverse_ * rhs;
  for (int i = 0; i < d_; ++i) u[i] = x(i);
  return u;
}

double ChartMap::deviation_bound() const {
  double s = 0.0;
  for (int i = 0; i < d_; ++i) {
    double row = 0.0;
    for (int j = 0; j < c_; ++j) row += std::abs(deviation_(i, j));
    s += row * row;
  }
  return std::sqrt(s);
}

RealVec project_chart(const SchemeSpec& spec, const LatticeVector& m) { return ChartMap(spec)(m); }

std::vector<GeneratedPoint> generate_points(const SchemeSpec& spec, double R) {
  if (!(R >= 0.0)) fail(ErrorKind::InvalidArgument, "R must be non-negative");
  const auto h = static_cast<int64_t>(std::floor(R));
  std::vector<GeneratedPoint> out;
  for_each_in_cube(spec.d, h, [&](const IntVec& p) {
    LatticeVector m = lift(spec, p);
    out.push_back({p, std::move(m.v), window_coord(spec, p)});
  });
  return out;
}

}  // namespace cutproj
