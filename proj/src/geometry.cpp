#include "cutproj/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "cutproj/error.hpp"

namespace cutproj {

namespace {

double unit_ball_volume(int d) {
  // V_d = pi^{d/2} / Gamma(d/2 + 1)
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Andrew's monotone chain; counter-clockwise, no repeated endpoint.
std::vector<RealVec> hull_2d(std::vector<RealVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const RealVec& o, const RealVec& a, const RealVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<RealVec> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

int64_t height(std::span<const int64_t> v) {
  int64_t h = 0;
  for (int64_t x : v) h = std::max<int64_t>(h, x < 0 ? -x : x);
  return h;
}

bool Box::empty(double tol) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (hi[i] - lo[i] <= tol) return true;
  return false;
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
  return v;
}

bool Box::contains(std::span<const double> x) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(x[i] >= lo[i] && x[i] < hi[i])) return false;
  return true;
}

Box Box::intersect(const Box& other) const {
  Box out{lo, hi};
  for (std::size_t i = 0; i < lo.size(); ++i) {
    out.lo[i] = std::max(lo[i], other.lo[i]);
    out.hi[i] = std::min(hi[i], other.hi[i]);
  }
  return out;
}

nlohmann::json to_json(const Box& box) { return {{"lo", box.lo}, {"hi", box.hi}}; }

ConvexBody ConvexBody::box(RealVec lo, RealVec hi) {
  if (lo.size() != hi.size() || lo.empty())
    fail(ErrorKind::InvalidArgument, "box bounds must have equal nonzero length");
  ConvexBody b;
  b.kind_ = Kind::Box;
  b.dim_ = static_cast<int>(lo.size());
  b.lo_ = std::move(lo);
  b.hi_ = std::move(hi);
  return b;
}

ConvexBody ConvexBody::cube(int d, double half) { return box(RealVec(d, -half), RealVec(d, half)); }

ConvexBody ConvexBody::ball(int d, double radius, RealVec center) {
  if (d <= 0) fail(ErrorKind::InvalidArgument, "ball dimension must be positive");
  if (center.empty()) center.assign(d, 0.0);
  if (static_cast<int>(center.size()) != d)
    fail(ErrorKind::InvalidArgument, "ball center has wrong dimension");
  ConvexBody b;
  b.kind_ = Kind::Ball;
  b.dim_ = d;
  b.radius_ = radius;
  b.center_ = std::move(center);
  return b;
}

ConvexBody ConvexBody::polytope(std::vector<RealVec> vertices) {
  if (vertices.empty()) fail(ErrorKind::InvalidArgument, "polytope needs vertices");
  ConvexBody b;
  b.kind_ = Kind::Polytope;
  b.dim_ = static_cast<int>(vertices.front().size());
  for (const auto& v : vertices)
    if (static_cast<int>(v.size()) != b.dim_)
      fail(ErrorKind::InvalidArgument, "polytope vertices have mixed dimensions");
  if (b.dim_ < 1 || b.dim_ > 3)
    fail(ErrorKind::InvalidArgument, "polytope shapes are supported for d <= 3");
  b.vertices_ = std::move(vertices);
  b.build_facets();
  return b;
}

void ConvexBody::build_facets() {
  facets_.clear();
  const auto& v = vertices_;
  const std::size_t n = v.size();
  auto try_plane = [&](RealVec normal, const RealVec& anchor) {
    double len = std::sqrt(dot(normal, normal));
    if (len < 1e-14) return;
    for (double& c : normal) c /= len;
    double off = dot(normal, anchor);
    bool all_below = true, all_above = true;
    for (const auto& w : v) {
      double s = dot(normal, w) - off;
      if (s > 1e-12) all_below = false;
      if (s < -1e-12) all_above = false;
    }
    if (all_below) facets_.push_back({normal, off});
    if (all_above) {
      for (double& c : normal) c = -c;
      facets_.push_back({normal, -off});
    }
  };
  if (dim_ == 1) {
    for (std::size_t i = 0; i < n; ++i) try_plane({1.0}, v[i]);
  } else if (dim_ == 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        try_plane({v[j][1] - v[i][1], v[i][0] - v[j][0]}, v[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l) {
          RealVec a{v[j][0] - v[i][0], v[j][1] - v[i][1], v[j][2] - v[i][2]};
          RealVec b{v[l][0] - v[i][0], v[l][1] - v[i][1], v[l][2] - v[i][2]};
          try_plane({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]},
                    v[i]);
        }
  }
}

bool ConvexBody::contains(std::span<const double> x, double scale, double tol) const {
  switch (kind_) {
    case Kind::Box:
      for (int i = 0; i < dim_; ++i)
        if (x[i] < scale * lo_[i] - tol || x[i] > scale * hi_[i] + tol) return false;
      return true;
    case Kind::Ball: {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        double dx = x[i] - scale * center_[i];
        s += dx * dx;
      }
      return std::sqrt(s) <= scale * radius_ + tol;
    }
    case Kind::Polytope:
      for (const auto& f : facets_)
        if (dot(f.normal, x) > scale * f.offset + tol) return false;
      return !facets_.empty();
  }
  return false;
}

Box ConvexBody::bounding_box(double scale) const {
  Box b{RealVec(dim_), RealVec(dim_)};
  for (int i = 0; i < dim_; ++i) {
    switch (kind_) {
      case Kind::Box:
        b.lo[i] = scale * lo_[i];
        b.hi[i] = scale * hi_[i];
        break;
      case Kind::Ball:
        b.lo[i] = scale * (center_[i] - radius_);
        b.hi[i] = scale * (center_[i] + radius_);
        break;
      case Kind::Polytope: {
        double mn = vertices_[0][i], mx = vertices_[0][i];
        for (const auto& v : vertices_) {
          mn = std::min(mn, v[i]);
          mx = std::max(mx, v[i]);
        }
        b.lo[i] = scale * mn;
        b.hi[i] = scale * mx;
        break;
      }
    }
  }
  return b;
}

void ConvexBody::validate_bounded() const {
  auto finite = [](const RealVec& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  switch (kind_) {
    case Kind::Box:
      if (!finite(lo_) || !finite(hi_)) fail(ErrorKind::UnboundedShape, "box has non-finite bounds");
      for (int i = 0; i < dim_; ++i)
        if (!(hi_[i] > lo_[i])) fail(ErrorKind::UnboundedShape, "box has an empty side");
      break;
    case Kind::Ball:
      if (!std::isfinite(radius_) || !finite(center_) || !(radius_ > 0.0))
        fail(ErrorKind::UnboundedShape, "ball radius must be finite and positive");
      break;
    case Kind::Polytope:
      for (const auto& v : vertices_)
        if (!finite(v)) fail(ErrorKind::UnboundedShape, "polytope has non-finite vertex");
      if (facets_.empty()) fail(ErrorKind::UnboundedShape, "polytope is not full-dimensional");
      break;
  }
}

bool ConvexBody::contains_origin_interior() const {
  RealVec zero(dim_, 0.0);
  switch (kind_) {
    case Kind::Box:
      for (int i = 0; i < dim_; ++i)
        if (!(lo_[i] < 0.0 && hi_[i] > 0.0)) return false;
      return true;
    case Kind::Ball:
      return std::sqrt(dot(center_, center_)) < radius_;
    case Kind::Polytope:
      for (const auto& f : facets_)
        if (!(f.offset > 1e-12)) return false;
      return !facets_.empty();
  }
  return false;
}

double ConvexBody::inradius_about_origin() const {
  double best = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case Kind::Box:
      for (int i = 0; i < dim_; ++i) best = std::min({best, -lo_[i], hi_[i]});
      break;
    case Kind::Ball:
      best = radius_ - std::sqrt(dot(center_, center_));
      break;
    case Kind::Polytope:
      for (const auto& f : facets_) best = std::min(best, f.offset);
      break;
  }
  return std::max(best, 0.0);
}

double ConvexBody::volume(double scale) const {
  const double s = std::pow(scale, dim_);
  switch (kind_) {
    case Kind::Box: {
      double v = 1.0;
      for (int i = 0; i < dim_; ++i) v *= hi_[i] - lo_[i];
      return s * v;
    }
    case Kind::Ball:
      return s * unit_ball_volume(dim_) * std::pow(radius_, dim_);
    case Kind::Polytope: {
      if (dim_ == 1) {
        Box b = bounding_box(1.0);
        return s * (b.hi[0] - b.lo[0]);
      }
      if (dim_ != 2) fail(ErrorKind::InvalidArgument, "polytope volume implemented for d <= 2");
      auto h = hull_2d(vertices_);
      double a = 0.0;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& p = h[i];
        const auto& q = h[(i + 1) % h.size()];
        a += p[0] * q[1] - q[0] * p[1];
      }
      return s * 0.5 * std::abs(a);
    }
  }
  return 0.0;
}

double ConvexBody::perimeter_2d() const {
  switch (kind_) {
    case Kind::Box:
      return 2.0 * ((hi_[0] - lo_[0]) + (hi_[1] - lo_[1]));
    case Kind::Ball:
      return 2.0 * std::numbers::pi * radius_;
    case Kind::Polytope: {
      auto h = hull_2d(vertices_);
      double p = 0.0;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& a = h[i];
        const auto& b = h[(i + 1) % h.size()];
        p += std::hypot(b[0] - a[0], b[1] - a[1]);
      }
      return p;
    }
  }
  return 0.0;
}

double ConvexBody::collar_volume(double scale, double kappa) const {
  if (kind_ == Kind::Ball) {
    double r = scale * radius_;
    return unit_ball_volume(dim_) *
           (std::pow(r + kappa, dim_) - std::pow(std::max(r - kappa, 0.0), dim_));
  }
  if (dim_ == 1) {
    Box b = bounding_box(scale);
    double len = b.hi[0] - b.lo[0];
    return len >= 2.0 * kappa ? 4.0 * kappa : len + 2.0 * kappa;
  }
  if (dim_ == 2) {
    double area = volume(scale);
    double per = scale * perimeter_2d();
    double outer = area + per * kappa + std::numbers::pi * kappa * kappa;
    double inner = 0.0;
    if (kind_ == Kind::Box) {
      inner = std::max(scale * (hi_[0] - lo_[0]) - 2 * kappa, 0.0) *
              std::max(scale * (hi_[1] - lo_[1]) - 2 * kappa, 0.0);
    } else {
      inner = std::max(area - per * kappa, 0.0);
    }
    return outer - inner;
  }
  if (kind_ == Kind::Box) {
    double outer = 1.0, inner = 1.0;
    for (int i = 0; i < dim_; ++i) {
      double w = scale * (hi_[i] - lo_[i]);
      outer *= w + 2 * kappa;
      inner *= std::max(w - 2 * kappa, 0.0);
    }
    return outer - inner;
  }
  fail(ErrorKind::InvalidArgument, "collar volume of polytopes implemented for d <= 2");
}

nlohmann::json ConvexBody::to_json() const {
  switch (kind_) {
    case Kind::Box:
      return {{"kind", "box"}, {"lo", lo_}, {"hi", hi_}};
    case Kind::Ball:
      return {{"kind", "ball"}, {"dim", dim_}, {"radius", radius_}, {"center", center_}};
    case Kind::Polytope:
      return {{"kind", "polytope"}, {"vertices", vertices_}};
  }
  return {};
}

ConvexBody ConvexBody::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "box") return box(j.at("lo").get<RealVec>(), j.at("hi").get<RealVec>());
  if (kind == "ball") {
    RealVec center = j.value("center", RealVec{});
    int d = j.contains("dim") ? j.at("dim").get<int>() : static_cast<int>(center.size());
    return ball(d, j.at("radius").get<double>(), center);
  }
  if (kind == "polytope") return polytope(j.at("vertices").get<std::vector<RealVec>>());
  fail(ErrorKind::InvalidArgument, "unknown body kind '" + kind + "'");
}

}  // namespace cutproj
