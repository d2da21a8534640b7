#include "papf/fields.hpp"

#include <cmath>

namespace papf {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0)
    throw InvalidInput(std::string("field parameter ") + name + " must be positive");
}

} // namespace

void FieldParams::validate() const {
  require_positive(k_att, "k_att");
  require_positive(d_g, "d_g");
  require_positive(k_rep, "k_rep");
  require_positive(d_o, "d_o");
  require_positive(k_prd, "k_prd");
  require_positive(d_prd, "d_prd");
  if (!std::isfinite(n) || n < 0.0)
    throw InvalidInput("field parameter n must be non-negative");
}

ForceSample attractive(Vec2 q, Vec2 goal, const FieldParams& p) {
  const Vec2 to_goal = goal - q;
  const double d = to_goal.norm();
  if (d == 0.0)
    return {};

  ForceSample out;
  double magnitude;
  if (d <= p.d_g) {
    out.potential = 0.5 * p.k_att * d * d;
    magnitude = p.k_att * d;
  } else {
    out.potential = p.d_g * p.k_att * d - 0.5 * p.k_att * p.d_g * p.d_g;
    magnitude = p.d_g * p.k_att;
  }
  out.force = to_goal * (magnitude / d);
  return out;
}

ForceSample repulsive_single(Vec2 q, Vec2 goal, const Obstacle& obs, const FieldParams& p) {
  const ClosestPoint cp = closest_point(obs, q);
  const double d = cp.distance;
  if (d > p.d_o)
    return {};

  const double slack = 1.0 / d - 1.0 / p.d_o;
  const Vec2 to_goal = goal - q;
  const double d_goal = to_goal.norm();
  const double goal_factor = std::pow(d_goal, p.n);

  ForceSample out;
  out.potential = 0.5 * p.k_rep * slack * slack * goal_factor;

  const double away = p.k_rep * slack * goal_factor / (d * d);
  out.force = (q - cp.point) * (away / d);

  if (p.n != 0.0 && d_goal > 0.0) {
    const double toward = 0.5 * p.n * p.k_rep * slack * slack * std::pow(d_goal, p.n - 1.0);
    out.force += to_goal * (toward / d_goal);
  }
  return out;
}

ForceSample repulsive_total(Vec2 q, Vec2 goal, std::span<const Obstacle> obstacles,
                            const FieldParams& p) {
  ForceSample sum;
  for (const Obstacle& obs : obstacles)
    sum += repulsive_single(q, goal, obs, p);
  return sum;
}

ForceSample predictive_single(Vec2 q, Angle heading, const Obstacle& obs, const FieldParams& p) {
  const ClosestPoint cp = closest_point(obs, q);
  const TangentCone cone = tangent_cone(obs, q);
  const double deviation = angle_diff(cone.theta_ib, heading);

  ForceSample out;
  out.potential = p.k_prd * std::exp(-cp.distance / p.d_prd - std::abs(deviation));

  const Vec2 away = (q - cp.point) / cp.distance;
  const double lateral_dir = cone.theta_ib.radians() + (deviation >= 0.0 ? -0.5 : 0.5) * kPi;
  out.force = away * (out.potential / p.d_prd) + Vec2::unit(lateral_dir) * out.potential;
  return out;
}

ForceSample predictive_total(Vec2 q, Angle heading, std::span<const Obstacle> obstacles,
                             const FieldParams& p) {
  ForceSample sum;
  for (const Obstacle& obs : obstacles)
    sum += predictive_single(q, heading, obs, p);
  return sum;
}

Vec2 total_force(Vec2 q, Angle heading, Vec2 goal, std::span<const Obstacle> obstacles,
                 const FieldParams& p, MethodVariant mode) {
  Vec2 f = attractive(q, goal, p).force + repulsive_total(q, goal, obstacles, p).force;
  if (uses_predictive_field(mode))
    f += predictive_total(q, heading, obstacles, p).force;
  return f;
}

} // namespace papf
