#pragma once

#include "papf/dynamics.hpp"
#include "papf/fields.hpp"
#include "papf/method.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace papf {

/// Raised when a plan cannot start (e.g. the start lies inside an obstacle).
class InvalidScenario : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct PlannerConfig {
  FieldParams field;
  MotionParams motion;
  MethodVariant variant = MethodVariant::PAPF;
  double goal_tolerance = 0.5;
  std::size_t max_steps = 20000;
  std::size_t stuck_window = 200;
  double stuck_displacement = 0.2; ///< 0.01 * v_c * stuck_window with the defaults

  void validate() const;
};

enum class Termination { Success, LocalMinimum, Collision, StepBudgetExhausted };

std::string_view to_string(Termination t);

struct TrajectorySample {
  std::size_t step = 0;
  VehicleState state;
};

struct PlanResult {
  std::vector<TrajectorySample> trajectory;
  Termination termination = Termination::StepBudgetExhausted;
  std::size_t steps_taken = 0;

  bool success() const { return termination == Termination::Success; }
};

/// Stopping rule applied after every step. Priority:
/// Collision > Success > LocalMinimum > StepBudgetExhausted.
/// Returns nullopt to keep going.
std::optional<Termination> check_termination(std::span<const TrajectorySample> history,
                                              const PlannerConfig& cfg, Vec2 goal,
                                              std::span<const Obstacle> obstacles);

/// Runs the steering loop from start until a termination condition fires.
/// Each step: total force, ideal turn, speed schedule (VA variants), turn
/// saturation (AL variants), integration.
PlanResult plan(const VehicleState& start, Vec2 goal, std::span<const Obstacle> obstacles,
                const PlannerConfig& cfg);

} // namespace papf
