#include "papf/geom.hpp"

#include <algorithm>
#include <limits>

namespace papf {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

void require_finite(Vec2 v, const char* what) {
  if (!v.finite())
    throw InvalidInput(std::string(what) + " must be finite");
}

double segment_distance(Vec2 a, Vec2 b, Vec2 q, Vec2* foot) {
  const Vec2 ab = b - a;
  double t = (q - a).dot(ab) / ab.norm_sq();
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 p = a + ab * t;
  if (foot)
    *foot = p;
  return distance(p, q);
}

// Minimum distance from q to the polygon ring, plus the foot point.
ClosestPoint ring_closest(std::span<const Vec2> ring, Vec2 q) {
  ClosestPoint best{ring.front(), std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < ring.size(); ++i) {
    Vec2 foot;
    const double d = segment_distance(ring[i], ring[(i + 1) % ring.size()], q, &foot);
    if (d < best.distance)
      best = {foot, d};
  }
  return best;
}

TangentCone make_cone(double bisector, double half_width) {
  TangentCone cone;
  cone.theta_ib = Angle(bisector);
  cone.half_width = half_width;
  cone.theta_t1 = Angle(bisector - half_width);
  cone.theta_t2 = Angle(bisector + half_width);
  return cone;
}

} // namespace

double wrap_angle(double radians) {
  if (!std::isfinite(radians))
    throw InvalidInput("angle must be finite");
  double r = std::remainder(radians, kTwoPi);
  if (r <= -kPi)
    r += kTwoPi;
  return r;
}

double angle_diff(Angle a, Angle b) { return wrap_angle(a.radians() - b.radians()); }

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3)
    throw InvalidInput("polygon needs at least 3 vertices");
  for (const Vec2& v : vertices_)
    require_finite(v, "polygon vertex");

  // Every turn must be a strict left turn, and the turns must add up to one
  // full revolution (rules out self-intersecting stars).
  double winding = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e0 = vertices_[(i + 1) % n] - vertices_[i];
    const Vec2 e1 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    if (e0.cross(e1) <= 0.0)
      throw InvalidInput("polygon must be strictly convex with counter-clockwise vertices");
    winding += std::atan2(e0.cross(e1), e0.dot(e1));
  }
  if (std::abs(winding - kTwoPi) > 1e-6)
    throw InvalidInput("polygon is self-intersecting");

  // Area centroid.
  double area2 = 0.0;
  Vec2 acc;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 b = vertices_[(i + 1) % n];
    const double w = a.cross(b);
    area2 += w;
    acc += (a + b) * w;
  }
  centroid_ = acc / (3.0 * area2);
}

Obstacle::Obstacle(Circle c) : shape_(c) {
  require_finite(c.center, "circle center");
  if (!std::isfinite(c.radius) || c.radius <= 0.0)
    throw InvalidInput("circle radius must be positive");
}

std::span<const Vec2> Obstacle::vertices() const {
  if (const auto* p = std::get_if<ConvexPolygon>(&shape_))
    return p->vertices();
  return {};
}

Obstacle Obstacle::translated(Vec2 offset) const {
  if (const auto* c = std::get_if<Circle>(&shape_))
    return Obstacle(Circle{c->center + offset, c->radius});
  std::vector<Vec2> moved;
  for (const Vec2& v : vertices())
    moved.push_back(v + offset);
  return Obstacle(ConvexPolygon(std::move(moved)));
}

double signed_distance(const Obstacle& obs, Vec2 q) {
  require_finite(q, "query point");
  if (const auto* c = std::get_if<Circle>(&obs.shape()))
    return distance(q, c->center) - c->radius;
  const auto ring = obs.vertices();
  const double d = ring_closest(ring, q).distance;
  return inside_convex_ring(ring, q) ? -d : d;
}

bool contains(const Obstacle& obs, Vec2 q) { return signed_distance(obs, q) <= 0.0; }

ClosestPoint closest_point(const Obstacle& obs, Vec2 q) {
  require_finite(q, "query point");
  if (const auto* c = std::get_if<Circle>(&obs.shape())) {
    const Vec2 rel = q - c->center;
    const double r = rel.norm();
    const double d = r - c->radius;
    if (d <= 0.0)
      throw InsideObstacle("point is inside a circular obstacle");
    return {c->center + rel * (c->radius / r), d};
  }
  const auto ring = obs.vertices();
  if (inside_convex_ring(ring, q))
    throw InsideObstacle("point is inside a polygonal obstacle");
  return ring_closest(ring, q);
}

TangentCone tangent_cone(const Obstacle& obs, Vec2 q) {
  require_finite(q, "query point");
  if (const auto* c = std::get_if<Circle>(&obs.shape())) {
    const Vec2 to_center = c->center - q;
    const double r = to_center.norm();
    if (r <= c->radius)
      throw InsideObstacle("point is inside a circular obstacle");
    return make_cone(to_center.heading(), std::asin(c->radius / r));
  }

  const auto& poly = std::get<ConvexPolygon>(obs.shape());
  if (inside_convex_ring(poly.vertices(), q))
    throw InsideObstacle("point is inside a polygonal obstacle");

  // Seen from outside a convex shape every vertex lies within less than a
  // half turn of the centroid direction, so offsets from it do not wrap.
  const Angle ref((poly.centroid() - q).heading());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Vec2& v : poly.vertices()) {
    const double off = angle_diff(Angle((v - q).heading()), ref);
    lo = std::min(lo, off);
    hi = std::max(hi, off);
  }
  return make_cone(ref.radians() + 0.5 * (lo + hi), 0.5 * (hi - lo));
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3)
    return points;

  std::vector<Vec2> hull(2 * points.size());
  std::size_t k = 0;
  auto turn = [&](Vec2 o, Vec2 a, Vec2 b) { return (a - o).cross(b - o); };
  for (const Vec2& p : points) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0)
      --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = points.rbegin() + 1; it != points.rend(); ++it) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], *it) <= 0.0)
      --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

bool inside_convex_ring(std::span<const Vec2> ccw_ring, Vec2 q) {
  const std::size_t n = ccw_ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ccw_ring[i];
    const Vec2 b = ccw_ring[(i + 1) % n];
    if ((b - a).cross(q - a) < 0.0)
      return false;
  }
  return true;
}

} // namespace papf
