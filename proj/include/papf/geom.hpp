#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace papf {

inline constexpr double kPi = std::numbers::pi;

/// Raised for non-finite numbers and malformed shapes.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a query point is inside (or on) an obstacle.
class InsideObstacle : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm_sq() const { return x * x + y * y; }
  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  /// z-component of the 3D cross product.
  constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
  /// Quadrant-correct direction of this vector, in (-pi, pi].
  double heading() const { return std::atan2(y, x); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }

  static Vec2 unit(double radians) { return {std::cos(radians), std::sin(radians)}; }
};

inline constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Reduces a finite angle to (-pi, pi]. Throws InvalidInput otherwise.
double wrap_angle(double radians);

/// Heading on the circle, always stored in (-pi, pi].
class Angle {
public:
  constexpr Angle() = default;
  explicit Angle(double radians) : value_(wrap_angle(radians)) {}

  static Angle degrees(double deg) { return Angle(deg * kPi / 180.0); }

  constexpr double radians() const { return value_; }
  double degrees() const { return value_ * 180.0 / kPi; }
  Vec2 unit() const { return Vec2::unit(value_); }

  Angle operator+(double delta) const { return Angle(value_ + delta); }
  Angle operator-(double delta) const { return Angle(value_ - delta); }
  constexpr bool operator==(const Angle&) const = default;

private:
  double value_ = 0.0;
};

/// Shortest signed rotation taking b onto a; a tie at +/-pi resolves to +pi.
double angle_diff(Angle a, Angle b);

struct Circle {
  Vec2 center;
  double radius = 1.0;
};

/// Strictly convex polygon with counter-clockwise vertices.
class ConvexPolygon {
public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  std::span<const Vec2> vertices() const { return vertices_; }
  Vec2 centroid() const { return centroid_; }

private:
  std::vector<Vec2> vertices_;
  Vec2 centroid_;
};

struct ClosestPoint {
  Vec2 point;
  double distance = 0.0;
};

/// Angular interval an obstacle subtends from a viewpoint, kept as
/// bisector + half width so cones straddling the +/-pi cut need no special case.
struct TangentCone {
  Angle theta_t1;
  Angle theta_t2;
  Angle theta_ib;
  double half_width = 0.0;
};

class Obstacle {
public:
  using Shape = std::variant<Circle, ConvexPolygon>;

  Obstacle(Circle c);
  Obstacle(ConvexPolygon p) : shape_(std::move(p)) {}

  static Obstacle circle(Vec2 center, double radius) { return Obstacle(Circle{center, radius}); }
  static Obstacle polygon(std::vector<Vec2> vertices) {
    return Obstacle(ConvexPolygon(std::move(vertices)));
  }

  const Shape& shape() const { return shape_; }
  bool is_circle() const { return std::holds_alternative<Circle>(shape_); }

  /// Vertices for polygons; empty for circles.
  std::span<const Vec2> vertices() const;

  /// Copy moved by a rigid offset.
  Obstacle translated(Vec2 offset) const;

private:
  Shape shape_;
};

/// Euclidean distance to the boundary; negative inside, zero on the boundary.
double signed_distance(const Obstacle& obs, Vec2 q);

/// True when q is inside the obstacle or on its boundary.
bool contains(const Obstacle& obs, Vec2 q);

ClosestPoint closest_point(const Obstacle& obs, Vec2 q);

TangentCone tangent_cone(const Obstacle& obs, Vec2 q);

/// Andrew's monotone chain. Returns the hull counter-clockwise without
/// collinear points.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Inclusive point-in-convex-polygon test for a counter-clockwise ring.
bool inside_convex_ring(std::span<const Vec2> ccw_ring, Vec2 q);

} // namespace papf
