#pragma once

#include <vector>

#include "cutproj/scheme.hpp"

namespace fixtures {

inline constexpr double kGolden = 0.618034;

inline cutproj::SchemeSpec make(int d, int k, std::vector<double> alpha, std::vector<double> t,
                                std::vector<double> m_map = {}) {
  cutproj::SchemeSpec s;
  s.d = d;
  s.k = k;
  s.alpha = std::move(alpha);
  s.t = std::move(t);
  s.m_map = std::move(m_map);
  cutproj::validate(s);
  return s;
}

/// Sturmian scheme with slope 0.618034.
inline cutproj::SchemeSpec golden(double t = 0.1) { return make(1, 2, {kGolden}, {t}); }

/// The exact golden conjugate, for tests that rely on its continued fraction.
inline cutproj::SchemeSpec golden_exact(double t = 0.1) { return make(1, 2, {0.6180339887498949}, {t}); }

}  // namespace fixtures
