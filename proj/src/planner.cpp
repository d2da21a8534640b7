#include "papf/planner.hpp"

#include <algorithm>

namespace papf {

void PlannerConfig::validate() const {
  field.validate();
  motion.validate();
  if (!std::isfinite(goal_tolerance) || goal_tolerance <= 0.0)
    throw InvalidInput("goal_tolerance must be positive");
  if (max_steps == 0)
    throw InvalidInput("max_steps must be positive");
  if (stuck_window < 2)
    throw InvalidInput("stuck_window must be at least 2");
  if (!std::isfinite(stuck_displacement) || stuck_displacement < 0.0)
    throw InvalidInput("stuck_displacement must be non-negative");
}

std::string_view to_string(Termination t) {
  switch (t) {
  case Termination::Success:
    return "Success";
  case Termination::LocalMinimum:
    return "LocalMinimum";
  case Termination::Collision:
    return "Collision";
  case Termination::StepBudgetExhausted:
    return "StepBudgetExhausted";
  }
  return "?";
}

std::optional<Termination> check_termination(std::span<const TrajectorySample> history,
                                              const PlannerConfig& cfg, Vec2 goal,
                                              std::span<const Obstacle> obstacles) {
  const TrajectorySample& last = history.back();
  const Vec2 q = last.state.position;

  if (std::any_of(obstacles.begin(), obstacles.end(),
                  [&](const Obstacle& o) { return contains(o, q); }))
    return Termination::Collision;
  if (distance(q, goal) <= cfg.goal_tolerance)
    return Termination::Success;
  if (history.size() > cfg.stuck_window) {
    const Vec2 before = history[history.size() - 1 - cfg.stuck_window].state.position;
    if (distance(q, before) < cfg.stuck_displacement)
      return Termination::LocalMinimum;
  }
  if (last.step >= cfg.max_steps)
    return Termination::StepBudgetExhausted;
  return std::nullopt;
}

PlanResult plan(const VehicleState& start, Vec2 goal, std::span<const Obstacle> obstacles,
                const PlannerConfig& cfg) {
  cfg.validate();
  if (!start.position.finite() || !goal.finite())
    throw InvalidScenario("start and goal must be finite");
  for (const Obstacle& o : obstacles)
    if (contains(o, start.position))
      throw InvalidScenario("start position lies inside an obstacle");

  const MethodVariant variant = cfg.variant;
  const MotionParams& motion = cfg.motion;

  PlanResult result;
  result.trajectory.reserve(std::min<std::size_t>(cfg.max_steps + 1, 1 << 16));
  result.trajectory.push_back({0, start});

  // A start that already satisfies a stopping rule yields a one-sample plan.
  if (auto t = check_termination(result.trajectory, cfg, goal, obstacles)) {
    result.termination = *t;
    return result;
  }

  VehicleState state = start;
  for (std::size_t step = 1;; ++step) {
    const Vec2 force = total_force(state.position, state.heading, goal, obstacles, cfg.field, variant);

    double turn;
    try {
      turn = ideal_turn(state.heading, force);
    } catch (const ZeroGradient&) {
      result.termination = Termination::LocalMinimum;
      break;
    }

    const double speed =
        uses_velocity_adjustment(variant) ? adjust_velocity(state.speed, turn, motion) : motion.v_c;
    if (uses_angle_limit(variant))
      turn = limit_turn(turn, motion);

    state = integrate(state, turn, speed, motion);
    result.trajectory.push_back({step, state});

    if (auto t = check_termination(result.trajectory, cfg, goal, obstacles)) {
      result.termination = *t;
      break;
    }
  }
  result.steps_taken = result.trajectory.size() - 1;
  return result;
}

} // namespace papf
