#pragma once

#include "papf/geom.hpp"
#include "papf/method.hpp"

#include <span>

namespace papf {

/// Potential-field coefficients. Lengths are in map units.
struct FieldParams {
  double k_att = 1.0;  ///< attractive gain
  double d_g = 10.0;   ///< radius where attraction switches from parabolic to linear
  double k_rep = 1.0;  ///< repulsive gain
  double d_o = 5.0;    ///< repulsive influence range, measured from the closest boundary point
  double n = 1.0;      ///< exponent on goal distance in the repulsive potential
  double k_prd = 1.0;  ///< predictive gain
  double d_prd = 10.0; ///< predictive decay length

  /// Throws InvalidInput when a coefficient is out of range.
  void validate() const;
};

struct ForceSample {
  Vec2 force;
  double potential = 0.0;

  ForceSample& operator+=(const ForceSample& o) {
    force += o.force;
    potential += o.potential;
    return *this;
  }
};

/// Piecewise parabolic/linear goal attraction. Zero at the goal.
ForceSample attractive(Vec2 q, Vec2 goal, const FieldParams& p);

/// Bounded-range repulsion from one obstacle. The force is the sum of a push
/// away from the closest boundary point and a pull toward the goal that
/// comes from the goal-distance factor; together they equal -grad U.
ForceSample repulsive_single(Vec2 q, Vec2 goal, const Obstacle& obs, const FieldParams& p);

ForceSample repulsive_total(Vec2 q, Vec2 goal, std::span<const Obstacle> obstacles,
                            const FieldParams& p);

/// Heading-dependent field that grows when the vehicle points into the
/// obstacle's tangent cone. The lateral part pushes the heading off the cone
/// bisector toward the side it already leans to; dead ahead counts as
/// leaning left, so the push goes right.
ForceSample predictive_single(Vec2 q, Angle heading, const Obstacle& obs, const FieldParams& p);

ForceSample predictive_total(Vec2 q, Angle heading, std::span<const Obstacle> obstacles,
                             const FieldParams& p);

/// Steering force for one planner step.
Vec2 total_force(Vec2 q, Angle heading, Vec2 goal, std::span<const Obstacle> obstacles,
                 const FieldParams& p, MethodVariant mode);

} // namespace papf
