#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cutproj/geometry.hpp"
#include "cutproj/scheme.hpp"

namespace cutproj {

struct Convergent {
  int64_t p = 0;
  int64_t q = 1;
};

struct ContinuedFraction {
  std::vector<int64_t> quotients;
  std::vector<Convergent> convergents;
  /// The remainder vanished: x is rational with the listed expansion.
  bool terminated = false;
  /// The next quotient or convergent would overflow; x is rational at double precision.
  bool rational_termination = false;
};

/// a_0..a_depth (fewer on termination) and the matching convergents.
ContinuedFraction continued_fraction(double x, int depth);

/// (k-d) x d linear forms, row-major.
struct LinearForms {
  int rows = 1;
  int cols = 1;
  std::vector<double> a;

  static LinearForms of(const SchemeSpec& spec);
  double operator()(int j, int i) const { return a[static_cast<std::size_t>(j) * cols + i]; }
  /// ||L(q)||: max over forms of the distance to the nearest integer.
  double norm(std::span<const int64_t> q) const;
};

struct ApproximationRecord {
  IntVec q;
  double value = 0.0;
  int64_t height = 0;
};

struct ApproximationProfile {
  int64_t q_max = 0;
  std::vector<ApproximationRecord> records;
};

struct ProfileOptions {
  /// Maximum number of q visited by the exhaustive sweep.
  uint64_t budget = 100'000'000;
  /// Use continued fractions for a single form in one variable.
  bool cf_fast_path = true;
};

/// New minima of ||L(q)|| by height over 0 < |q| <= q_max; q is normalized so
/// its first nonzero entry is positive.
ApproximationProfile approximation_profile(const LinearForms& forms, int64_t q_max, const ProfileOptions& options = {});

/// psi(r) = c r^{-a} (log r)^{-b}, evaluated at max(r, 2).
struct PsiFamily {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;
  double operator()(double r) const;
};

/// min over records of ||L(q)|| / psi(|q|), the best constant C with
/// ||L(q)|| >= C psi(|q|) for all 0 < |q| <= q_max.
double empirical_constant(const ApproximationProfile& profile, const PsiFamily& psi);

enum class Series { Converges, Diverges };

struct KgClassification {
  Series verdict = Series::Converges;
  /// sum_{r=1}^{N} r^{m-1} psi(r)^n at N = 10, 100, ..., 10^6.
  std::vector<std::pair<int64_t, double>> partial_sums;
};

KgClassification kg_classify(const PsiFamily& psi, int m, int n);

struct Transference {
  double c = 0.0;
  double R = 0.0;
  int64_t h = 0;
};

/// h = floor(X^{-d} psi^{d-k}), c = (h+1) psi / 2, R = (h+1) X / 2. Throws
/// Overflow when h does not fit in 62 bits.
Transference transference(double psi, double X, int d, int k);

/// max over gammas of min_{|n| <= R} ||L(n) - gamma||.
double covering_radius(const LinearForms& forms, double R, std::span<const RealVec> gammas);

/// Smallest nonzero q with |q| <= q_max on which some single form is within
/// tol of an integer, if any.
std::optional<IntVec> screen_irrationality(const LinearForms& forms, int64_t q_max = 50, double tol = 1e-9);

/// Rows: height,norm,q...
void write_profile_csv(std::ostream& os, const ApproximationProfile& profile);

}  // namespace cutproj
