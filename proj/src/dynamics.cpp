#include "papf/dynamics.hpp"

#include <algorithm>

namespace papf {

void MotionParams::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(dtheta_max))
    throw InvalidInput("motion parameter dtheta_max must be positive");
  if (!ok(theta1) || !(theta1 < theta2) || !(theta2 <= kPi))
    throw InvalidInput("motion thresholds must satisfy 0 < theta1 < theta2 <= 180 deg");
  if (!ok(v_min) || !(v_min <= v_c) || !(v_c <= v_max) || !std::isfinite(v_max))
    throw InvalidInput("motion speeds must satisfy 0 < v_min <= v_c <= v_max");
  if (!ok(accel_step))
    throw InvalidInput("motion parameter accel_step must be positive");
  if (!ok(dt))
    throw InvalidInput("motion parameter dt must be positive");
}

double ideal_turn(Angle previous, Vec2 force) {
  if (force.x == 0.0 && force.y == 0.0)
    throw ZeroGradient("steering force vanished");
  return angle_diff(Angle(force.heading()), previous);
}

double limit_turn(double dtheta_ideal, const MotionParams& p) {
  return std::clamp(dtheta_ideal, -p.dtheta_max, p.dtheta_max);
}

double adjust_velocity(double speed, double dtheta_ideal, const MotionParams& p) {
  const double turn = std::abs(dtheta_ideal);
  if (turn <= p.theta1)
    return speed < p.v_max ? std::min(speed + p.accel_step, p.v_max) : speed;
  if (turn <= p.theta2) {
    if (speed < p.v_c)
      return std::min(speed + p.accel_step, p.v_c);
    return std::max(speed - p.accel_step, p.v_c);
  }
  return speed > p.v_min ? std::max(speed - p.accel_step, p.v_min) : speed;
}

VehicleState integrate(const VehicleState& state, double dtheta, double new_speed,
                       const MotionParams& p) {
  VehicleState next;
  next.heading = state.heading + dtheta;
  next.speed = new_speed;
  next.position = state.position + next.heading.unit() * (new_speed * p.dt);
  return next;
}

} // namespace papf
