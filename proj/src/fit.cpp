#include "cutproj/fit.hpp"

#include <cmath>
#include <vector>

#include "cutproj/error.hpp"

namespace cutproj {

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) fail(ErrorKind::InvalidArgument, "fit needs two or more pairs");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) fail(ErrorKind::InvalidArgument, "fit abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  return f;
}

double kendall_tau(std::span<const double> y) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += (y[j] > y[i]) - (y[j] < y[i]);
  return 2.0 * s / (static_cast<double>(n) * static_cast<double>(n - 1));
}

LineFit log_power_fit(std::span<const double> R, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < R.size(); ++i)
    if (R[i] > std::exp(1.0) && y[i] > 0.0) {
      lx.push_back(std::log(std::log(R[i])));
      ly.push_back(std::log(y[i]));
    }
  return least_squares(lx, ly);
}

LineFit power_fit(std::span<const double> R, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < R.size(); ++i)
    if (R[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(R[i]));
      ly.push_back(std::log(y[i]));
    }
  return least_squares(lx, ly);
}

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) fail(ErrorKind::InvalidArgument, "quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= sorted.size()) return sorted.back();
  const double f = pos - static_cast<double>(i);
  return sorted[i] * (1.0 - f) + sorted[i + 1] * f;
}

}  // namespace cutproj
