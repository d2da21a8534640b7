#pragma once

#include "papf/planner.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace papf {

class UnknownScenario : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientData : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Planner failure annotated with the (variant, goal) pair that raised it.
class BenchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Named numeric overrides on top of a base PlannerConfig, grouped the way
/// scenario files group them. Angles are in degrees.
struct ConfigOverrides {
  std::map<std::string, double> field;   ///< k_att, d_g, k_rep, d_o, n, k_prd, d_prd
  std::map<std::string, double> motion;  ///< dtheta_max_deg, theta1_deg, theta2_deg, v_c, v_min, v_max, accel_step, dt
  std::map<std::string, double> planner; ///< goal_tolerance, max_steps, stuck_window, stuck_displacement

  bool empty() const { return field.empty() && motion.empty() && planner.empty(); }
  bool operator==(const ConfigOverrides&) const = default;
};

/// Applies overrides; throws InvalidInput naming any unknown key.
PlannerConfig apply_overrides(PlannerConfig cfg, const ConfigOverrides& overrides);

struct Scenario {
  std::string name;
  Vec2 start;
  double start_speed = 0.1;
  /// Initial heading; when unset each plan starts pointed at its own goal.
  std::optional<Angle> start_heading;
  std::vector<Vec2> goals;
  std::vector<Obstacle> obstacles;
  ConfigOverrides overrides;

  /// Throws InvalidScenario when start or a goal is inside an obstacle or no goal is given.
  void validate() const;
  Scenario translated(Vec2 offset) const;
  VehicleState start_state(Vec2 goal) const;
};

/// Calibrated default profile. Speeds and the 20 deg turn limit follow the
/// published experiment; field gains and VA thresholds were tuned on the
/// builtin scenarios.
PlannerConfig paper_like_config();

std::vector<std::string> builtin_scenario_names();

/// single_circle, crescent or reachability_fan. Throws UnknownScenario.
Scenario builtin_scenario(std::string_view name);

struct Metrics {
  double max_turn_per_step = 0.0; ///< radians
  std::size_t steps_taken = 0;
  double path_length = 0.0;
  double min_clearance = 0.0; ///< +inf without obstacles
  double mean_speed = 0.0;
  bool success = false;
};

/// Throws InsufficientData for trajectories with fewer than two samples.
Metrics compute_metrics(const PlanResult& result, std::span<const Obstacle> obstacles);

/// Area between the trajectory and the start-to-end chord, positive where the
/// path bulges to the left of the chord direction.
double signed_chord_area(const PlanResult& result);

struct GoalOutcome {
  std::size_t goal_index = 0;
  Vec2 goal;
  PlanResult plan;
  Metrics metrics;
};

struct ComparisonRow {
  MethodVariant variant = MethodVariant::TAPF;
  std::vector<GoalOutcome> goals;

  std::size_t reached() const;
};

struct ComparisonTable {
  std::string scenario;
  std::vector<ComparisonRow> rows;
};

/// One plan per (variant, goal). Plans run concurrently when `parallel` is
/// set; rows keep the order of `variants` and goals keep scenario order.
ComparisonTable run_comparison(const Scenario& scenario, std::span<const MethodVariant> variants,
                               const PlannerConfig& cfg, bool parallel = true);

} // namespace papf
