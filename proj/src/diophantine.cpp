#include "cutproj/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "cutproj/error.hpp"

namespace cutproj {

namespace {

constexpr double kQuotientLimit = 0x1p52;

bool mul_add_overflows(int64_t a, int64_t x, int64_t y, int64_t& out) {
  int64_t t;
  return __builtin_mul_overflow(a, x, &t) || __builtin_add_overflow(t, y, &out);
}

}  // namespace

ContinuedFraction continued_fraction(double x, int depth) {
  if (depth < 1) fail(ErrorKind::InvalidArgument, "depth must be at least 1");
  if (!std::isfinite(x) || std::abs(x) > kQuotientLimit) fail(ErrorKind::InvalidArgument, "x must be finite");
  ContinuedFraction cf;
  double a = std::floor(x);
  double rem = x - a;
  // p_{-1}/q_{-1} = 1/0, p_{-2}/q_{-2} = 0/1
  int64_t p1 = 1, q1 = 0, p2 = 0, q2 = 1;
  auto push = [&](int64_t ai) {
    int64_t p, q;
    if (mul_add_overflows(ai, p1, p2, p) || mul_add_overflows(ai, q1, q2, q)) return false;
    cf.quotients.push_back(ai);
    cf.convergents.push_back({p, q});
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    return true;
  };
  push(static_cast<int64_t>(a));
  for (int i = 1; i <= depth; ++i) {
    if (rem == 0.0) {
      cf.terminated = true;
      break;
    }
    const double y = 1.0 / rem;
    if (!(y < kQuotientLimit)) {
      cf.terminated = cf.rational_termination = true;
      break;
    }
    a = std::floor(y);
    rem = y - a;
    if (!push(static_cast<int64_t>(a))) {
      cf.terminated = cf.rational_termination = true;
      break;
    }
  }
  return cf;
}

LinearForms LinearForms::of(const SchemeSpec& spec) { return {spec.codim(), spec.d, spec.alpha}; }

double LinearForms::norm(std::span<const int64_t> q) const {
  double worst = 0.0;
  for (int j = 0; j < rows; ++j) {
    double s = 0.0;
    for (int i = 0; i < cols; ++i) s = s + (*this)(j, i) * static_cast<double>(q[i]);
    worst = std::max(worst, dist_to_int(s));
  }
  return worst;
}

ApproximationProfile approximation_profile(const LinearForms& forms, int64_t q_max, const ProfileOptions& options) {
  if (q_max < 1) fail(ErrorKind::InvalidArgument, "q_max must be positive");
  ApproximationProfile prof;
  prof.q_max = q_max;
  double best = std::numeric_limits<double>::infinity();

  if (options.cf_fast_path && forms.rows == 1 && forms.cols == 1) {
    // Record heights are exactly the convergent denominators.
    const double x = forms.a[0] - std::floor(forms.a[0]);
    ContinuedFraction cf = continued_fraction(x, 90);
    for (const auto& c : cf.convergents) {
      if (c.q < 1 || c.q > q_max) continue;
      IntVec q{c.q};
      const double v = forms.norm(q);
      if (v < best) {
        best = v;
        prof.records.push_back({q, v, c.q});
      }
    }
    return prof;
  }

  const double visits = std::pow(2.0 * static_cast<double>(q_max) + 1.0, forms.cols);
  if (visits > static_cast<double>(options.budget))
    fail(ErrorKind::BudgetExceeded, "profile sweep exceeds the point budget");
  for (int64_t h = 1; h <= q_max; ++h) {
    double shell_best = std::numeric_limits<double>::infinity();
    IntVec arg;
    for_each_in_shell(forms.cols, h, [&](const IntVec& q) {
      for (int64_t x : q) {
        if (x < 0) return;
        if (x > 0) break;
      }
      const double v = forms.norm(q);
      if (v < shell_best) {
        shell_best = v;
        arg = q;
      }
    });
    if (shell_best < best) {
      best = shell_best;
      prof.records.push_back({arg, shell_best, h});
    }
  }
  return prof;
}

double PsiFamily::operator()(double r) const {
  r = std::max(r, 2.0);
  return c * std::pow(r, -a) * std::pow(std::log(r), -b);
}

double empirical_constant(const ApproximationProfile& profile, const PsiFamily& psi) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& rec : profile.records)
    best = std::min(best, rec.value / psi(static_cast<double>(rec.height)));
  return best;
}

KgClassification kg_classify(const PsiFamily& psi, int m, int n) {
  if (m < 1 || n < 1) fail(ErrorKind::InvalidArgument, "m and n must be positive");
  if (psi.a < 0.0 || psi.c <= 0.0) fail(ErrorKind::InvalidArgument, "psi needs a >= 0 and c > 0");
  KgClassification out;
  const double e = (m - 1) - psi.a * n;
  constexpr double tie = 1e-12;
  if (e < -1.0 - tie) {
    out.verdict = Series::Converges;
  } else if (e > -1.0 + tie) {
    out.verdict = Series::Diverges;
  } else {
    out.verdict = psi.b * n > 1.0 + tie ? Series::Converges : Series::Diverges;
  }
  double sum = 0.0;
  int64_t next = 10;
  for (int64_t r = 1; r <= 1'000'000; ++r) {
    const double rr = static_cast<double>(r);
    sum += std::pow(rr, m - 1) * std::pow(psi(rr), n);
    if (r == next) {
      out.partial_sums.emplace_back(r, sum);
      next *= 10;
    }
  }
  return out;
}

Transference transference(double psi, double X, int d, int k) {
  if (!(psi > 0.0) || !(X > 0.0)) fail(ErrorKind::InvalidArgument, "psi and X must be positive");
  if (d < 1 || k <= d) fail(ErrorKind::InvalidArgument, "need 1 <= d < k");
  const double val = std::pow(X, -d) * std::pow(psi, d - k);
  // A relative guard absorbs rounding in products that are exact integers in real arithmetic.
  const double g = std::floor(val * (1.0 + 1e-12));
  if (!std::isfinite(g) || g >= 0x1p62) fail(ErrorKind::Overflow, "h exceeds the integer range");
  Transference t;
  t.h = static_cast<int64_t>(g);
  t.c = 0.5 * static_cast<double>(t.h + 1) * psi;
  t.R = 0.5 * static_cast<double>(t.h + 1) * X;
  return t;
}

double covering_radius(const LinearForms& forms, double R, std::span<const RealVec> gammas) {
  const auto h = static_cast<int64_t>(std::floor(R));
  std::vector<RealVec> orbit;
  for_each_in_cube(forms.cols, h, [&](const IntVec& n) {
    RealVec x(forms.rows);
    for (int j = 0; j < forms.rows; ++j) {
      double s = 0.0;
      for (int i = 0; i < forms.cols; ++i) s = s + forms(j, i) * static_cast<double>(n[i]);
      x[j] = frac(s);
    }
    orbit.push_back(std::move(x));
  });
  double worst = 0.0;
  if (forms.rows == 1) {
    std::vector<double> pts;
    for (const auto& x : orbit) pts.push_back(x[0]);
    std::sort(pts.begin(), pts.end());
    for (const auto& g : gammas) {
      const double y = frac(g[0]);
      auto it = std::lower_bound(pts.begin(), pts.end(), y);
      const double above = it == pts.end() ? pts.front() : *it;
      const double below = it == pts.begin() ? pts.back() : *(it - 1);
      worst = std::max(worst, std::min(dist_to_int(above - y), dist_to_int(y - below)));
    }
    return worst;
  }
  for (const auto& g : gammas) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : orbit) {
      double dd = 0.0;
      for (int j = 0; j < forms.rows && dd < best; ++j) dd = std::max(dd, dist_to_int(x[j] - g[j]));
      best = std::min(best, dd);
    }
    worst = std::max(worst, best);
  }
  return worst;
}

std::optional<IntVec> screen_irrationality(const LinearForms& forms, int64_t q_max, double tol) {
  for (int64_t h = 1; h <= q_max; ++h) {
    std::optional<IntVec> hit;
    for_each_in_shell(forms.cols, h, [&](const IntVec& q) {
      if (hit) return;
      for (int j = 0; j < forms.rows; ++j) {
        double s = 0.0;
        for (int i = 0; i < forms.cols; ++i) s = s + forms(j, i) * static_cast<double>(q[i]);
        if (dist_to_int(s) < tol) {
          hit = q;
          return;
        }
      }
    });
    if (hit) return hit;
  }
  return std::nullopt;
}

void write_profile_csv(std::ostream& os, const ApproximationProfile& profile) {
  const auto old = os.precision(17);
  os << "height,norm,q\n";
  for (const auto& r : profile.records) {
    os << r.height << ',' << r.value << ',';
    for (std::size_t i = 0; i < r.q.size(); ++i) os << (i ? " " : "") << r.q[i];
    os << '\n';
  }
  os.precision(old);
}

}  // namespace cutproj
