#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cutproj {

using IntVec = std::vector<int64_t>;
using RealVec = std::vector<double>;

/// Fractional part in [0,1). A value that rounds up to 1.0 is folded to 0.0,
/// which is the same point of the torus. The SIMD kernels reproduce this exactly.
inline double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

/// Distance to the nearest integer.
inline double dist_to_int(double x) {
  double f = x - std::floor(x);
  return f < 0.5 ? f : 1.0 - f;
}

/// Sup norm of an integer vector.
int64_t height(std::span<const int64_t> v);

/// Half-open axes-parallel box [lo, hi).
struct Box {
  RealVec lo;
  RealVec hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool empty(double tol = 0.0) const;
  double volume() const;
  bool contains(std::span<const double> x) const;
  Box intersect(const Box& other) const;

  friend bool operator==(const Box&, const Box&) = default;
};

nlohmann::json to_json(const Box& box);

/// Bounded convex body in R^d: an axes-parallel box, a Euclidean ball, or the
/// convex hull of a vertex list (d <= 3).
class ConvexBody {
 public:
  enum class Kind { Box, Ball, Polytope };

  static ConvexBody box(RealVec lo, RealVec hi);
  /// [-half, half]^d
  static ConvexBody cube(int d, double half);
  static ConvexBody ball(int d, double radius, RealVec center = {});
  static ConvexBody polytope(std::vector<RealVec> vertices);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  /// Closed membership of x in scale * body, with tolerance `tol` on the boundary.
  bool contains(std::span<const double> x, double scale = 1.0, double tol = 1e-12) const;

  /// Closed bounding box of scale * body.
  Box bounding_box(double scale = 1.0) const;

  /// Throws UnboundedShape when any parameter is non-finite or degenerate.
  void validate_bounded() const;
  bool contains_origin_interior() const;
  /// Radius of the largest Euclidean ball about the origin inside the body.
  double inradius_about_origin() const;

  /// Volume of scale * body.
  double volume(double scale = 1.0) const;

  /// Upper bound on |N_kappa(boundary of scale * body)|; exact for balls and
  /// for planar boxes.
  double collar_volume(double scale, double kappa) const;

  nlohmann::json to_json() const;
  static ConvexBody from_json(const nlohmann::json& j);

 private:
  struct HalfSpace {
    RealVec normal;
    double offset;  // normal . x <= offset
  };

  void build_facets();
  double perimeter_2d() const;

  Kind kind_ = Kind::Box;
  int dim_ = 0;
  RealVec lo_, hi_;
  RealVec center_;
  double radius_ = 0.0;
  std::vector<RealVec> vertices_;
  std::vector<HalfSpace> facets_;
};

/// Calls f(p) for every p in the integer box [lo, hi] (inclusive), first
/// coordinate slowest.
template <class F>
void for_each_in_box(std::span<const int64_t> lo, std::span<const int64_t> hi, F&& f) {
  const std::size_t d = lo.size();
  for (std::size_t i = 0; i < d; ++i)
    if (lo[i] > hi[i]) return;
  IntVec p(lo.begin(), lo.end());
  while (true) {
    f(std::as_const(p));
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (p[i] < hi[i]) {
        ++p[i];
        break;
      }
      p[i] = lo[i];
      if (i == 0) return;
    }
    if (d == 0) return;
  }
}

/// Cube [-h, h]^d.
template <class F>
void for_each_in_cube(int d, int64_t h, F&& f) {
  IntVec lo(d, -h), hi(d, h);
  for_each_in_box(lo, hi, std::forward<F>(f));
}

/// Integer points with sup norm exactly h.
template <class F>
void for_each_in_shell(int d, int64_t h, F&& f) {
  if (h == 0) {
    IntVec zero(d, 0);
    f(std::as_const(zero));
    return;
  }
  // Face decomposition: the first coordinate with |p_i| == h is i; earlier
  // coordinates are strictly inside, later ones anywhere in [-h, h].
  for (int i = 0; i < d; ++i) {
    IntVec lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
      if (j < i) {
        lo[j] = -h + 1;
        hi[j] = h - 1;
      } else {
        lo[j] = -h;
        hi[j] = h;
      }
    }
    for (int64_t s : {-h, h}) {
      lo[i] = hi[i] = s;
      for_each_in_box(lo, hi, f);
    }
  }
}

}  // namespace cutproj
