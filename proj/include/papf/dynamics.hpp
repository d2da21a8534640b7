#pragma once

#include "papf/geom.hpp"

namespace papf {

/// Raised when the steering force is zero and no heading can be derived.
class ZeroGradient : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct VehicleState {
  Vec2 position;
  Angle heading;
  double speed = 0.0; ///< map units per step
};

/// Kinematic limits. Angles in radians, speeds in map units per step.
struct MotionParams {
  double dtheta_max = 20.0 * kPi / 180.0; ///< largest heading change in one step
  double theta1 = 1.0 * kPi / 180.0;      ///< |ideal turn| at or below this accelerates
  double theta2 = 5.0 * kPi / 180.0;      ///< |ideal turn| above this decelerates
  double v_c = 0.1;                       ///< cruise speed
  double v_min = 0.06;
  double v_max = 0.17;
  double accel_step = 0.002; ///< speed change allowed per step
  double dt = 1.0;

  void validate() const;
};

/// Signed rotation from the previous heading to the force direction.
/// Throws ZeroGradient for a zero force.
double ideal_turn(Angle previous, Vec2 force);

/// Saturates a turn to [-dtheta_max, dtheta_max].
double limit_turn(double dtheta_ideal, const MotionParams& p);

/// Three-regime speed schedule keyed on |ideal turn|: accelerate toward
/// v_max, regress toward v_c, or decelerate toward v_min, each by at most
/// accel_step. The target is never overshot.
double adjust_velocity(double speed, double dtheta_ideal, const MotionParams& p);

/// Turns by dtheta, then advances new_speed * dt along the new heading.
VehicleState integrate(const VehicleState& state, double dtheta, double new_speed,
                       const MotionParams& p);

} // namespace papf
