#pragma once

#include <span>

namespace cutproj {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least squares y = slope x + intercept.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

/// Kendall tau-a of y against its index (x assumed increasing).
double kendall_tau(std::span<const double> y);

/// Exponent e in y ~ C (log R)^e, fitted on log y against log log R.
LineFit log_power_fit(std::span<const double> R, std::span<const double> y);

/// Exponent e in y ~ C R^e.
LineFit power_fit(std::span<const double> R, std::span<const double> y);

/// Quantile by linear interpolation of the sorted sample, q in [0,1].
double quantile(std::span<const double> sorted, double q);

}  // namespace cutproj
