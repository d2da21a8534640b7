#include "papf/bench.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <limits>

namespace papf {

namespace {

constexpr double kDeg = kPi / 180.0;

using FieldSetter = std::function<void(PlannerConfig&, double)>;

const std::map<std::string, FieldSetter>& field_setters() {
  static const std::map<std::string, FieldSetter> table = {
      {"k_att", [](PlannerConfig& c, double v) { c.field.k_att = v; }},
      {"d_g", [](PlannerConfig& c, double v) { c.field.d_g = v; }},
      {"k_rep", [](PlannerConfig& c, double v) { c.field.k_rep = v; }},
      {"d_o", [](PlannerConfig& c, double v) { c.field.d_o = v; }},
      {"n", [](PlannerConfig& c, double v) { c.field.n = v; }},
      {"k_prd", [](PlannerConfig& c, double v) { c.field.k_prd = v; }},
      {"d_prd", [](PlannerConfig& c, double v) { c.field.d_prd = v; }},
  };
  return table;
}

const std::map<std::string, FieldSetter>& motion_setters() {
  static const std::map<std::string, FieldSetter> table = {
      {"dtheta_max_deg", [](PlannerConfig& c, double v) { c.motion.dtheta_max = v * kDeg; }},
      {"theta1_deg", [](PlannerConfig& c, double v) { c.motion.theta1 = v * kDeg; }},
      {"theta2_deg", [](PlannerConfig& c, double v) { c.motion.theta2 = v * kDeg; }},
      {"v_c", [](PlannerConfig& c, double v) { c.motion.v_c = v; }},
      {"v_min", [](PlannerConfig& c, double v) { c.motion.v_min = v; }},
      {"v_max", [](PlannerConfig& c, double v) { c.motion.v_max = v; }},
      {"accel_step", [](PlannerConfig& c, double v) { c.motion.accel_step = v; }},
      {"dt", [](PlannerConfig& c, double v) { c.motion.dt = v; }},
  };
  return table;
}

std::size_t as_count(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v != std::floor(v))
    throw InvalidInput(std::string("planner.") + name + " must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

const std::map<std::string, FieldSetter>& planner_setters() {
  static const std::map<std::string, FieldSetter> table = {
      {"goal_tolerance", [](PlannerConfig& c, double v) { c.goal_tolerance = v; }},
      {"max_steps", [](PlannerConfig& c, double v) { c.max_steps = as_count(v, "max_steps"); }},
      {"stuck_window",
       [](PlannerConfig& c, double v) { c.stuck_window = as_count(v, "stuck_window"); }},
      {"stuck_displacement", [](PlannerConfig& c, double v) { c.stuck_displacement = v; }},
  };
  return table;
}

void apply_group(PlannerConfig& cfg, const std::map<std::string, double>& values,
                 const std::map<std::string, FieldSetter>& setters, const char* group) {
  for (const auto& [key, value] : values) {
    auto it = setters.find(key);
    if (it == setters.end())
      throw InvalidInput(std::string("unknown parameter ") + group + "." + key);
    if (!std::isfinite(value))
      throw InvalidInput(std::string("parameter ") + group + "." + key + " must be finite");
    it->second(cfg, value);
  }
}

// Quadrilateral covering the annulus sector [a0, a1] between radii r_in and
// r_out around center, counter-clockwise.
Obstacle annulus_piece(Vec2 center, double r_in, double r_out, double a0, double a1) {
  return Obstacle::polygon({
      center + Vec2::unit(a0) * r_in,
      center + Vec2::unit(a0) * r_out,
      center + Vec2::unit(a1) * r_out,
      center + Vec2::unit(a1) * r_in,
  });
}

Scenario single_circle() {
  Scenario s;
  s.name = "single_circle";
  const Vec2 start{20.0, 200.0};
  const Vec2 goal{420.0, 200.0};
  s.start = start;
  s.goals = {goal};
  s.obstacles = {Obstacle::circle({220.0, 199.85}, 15.0)};
  return s;
}

// Concave crescent opening toward the start, made of overlapping annulus
// pieces. The goal sits behind its back.
Scenario crescent() {
  Scenario s;
  s.name = "crescent";
  const Vec2 start{20.0, 200.0};
  const Vec2 goal{420.0, 200.0};
  s.start = start;
  s.goals = {goal};

  const Vec2 center{220.0, 200.0};
  constexpr int kPieces = 6;
  constexpr double kSpan = 150.0 * kDeg;
  constexpr double kOverlap = 2.0 * kDeg;
  for (int i = 0; i < kPieces; ++i) {
    const double a0 = -0.5 * kSpan + kSpan * i / kPieces;
    const double a1 = -0.5 * kSpan + kSpan * (i + 1) / kPieces;
    s.obstacles.push_back(annulus_piece(center, 40.0, 55.0, a0 - kOverlap, a1 + kOverlap));
  }
  return s;
}

// One flat-faced convex obstacle with eleven goals spread vertically
// behind it.
Scenario reachability_fan() {
  Scenario s;
  s.name = "reachability_fan";
  s.start = {20.0, 207.5};
  s.obstacles = {Obstacle::polygon({{200.0, 162.5}, {230.0, 162.5}, {230.0, 252.5}, {200.0, 252.5}})};
  for (int k = 0; k < 11; ++k)
    s.goals.push_back({380.0, 125.0 + 15.0 * k});
  return s;
}

} // namespace

PlannerConfig apply_overrides(PlannerConfig cfg, const ConfigOverrides& overrides) {
  apply_group(cfg, overrides.field, field_setters(), "field");
  apply_group(cfg, overrides.motion, motion_setters(), "motion");
  apply_group(cfg, overrides.planner, planner_setters(), "planner");
  return cfg;
}

void Scenario::validate() const {
  if (goals.empty())
    throw InvalidScenario("scenario " + name + " has no goals");
  for (const Obstacle& o : obstacles) {
    if (contains(o, start))
      throw InvalidScenario("scenario " + name + ": start lies inside an obstacle");
    for (const Vec2& g : goals)
      if (contains(o, g))
        throw InvalidScenario("scenario " + name + ": a goal lies inside an obstacle");
  }
}

Scenario Scenario::translated(Vec2 offset) const {
  Scenario out = *this;
  out.start = start + offset;
  for (Vec2& g : out.goals)
    g = g + offset;
  for (Obstacle& o : out.obstacles)
    o = o.translated(offset);
  return out;
}

VehicleState Scenario::start_state(Vec2 goal) const {
  const Angle heading = start_heading ? *start_heading : Angle((goal - start).heading());
  return {start, heading, start_speed};
}

PlannerConfig paper_like_config() {
  PlannerConfig cfg;
  cfg.field.k_att = 1.0;
  cfg.field.d_g = 20.0;
  cfg.field.k_rep = 100.0;
  cfg.field.d_o = 15.0;
  cfg.field.n = 1.0;
  cfg.field.k_prd = 40.0;
  cfg.field.d_prd = 100.0;

  cfg.motion.dtheta_max = 20.0 * kDeg;
  cfg.motion.theta1 = 1.0 * kDeg;
  cfg.motion.theta2 = 5.0 * kDeg;
  cfg.motion.v_c = 0.1;
  cfg.motion.v_min = 0.06;
  cfg.motion.v_max = 0.17;
  cfg.motion.accel_step = 0.002;
  cfg.motion.dt = 1.0;

  cfg.goal_tolerance = 0.5;
  cfg.max_steps = 20000;
  cfg.stuck_window = 200;
  cfg.stuck_displacement = 0.01 * cfg.motion.v_c * static_cast<double>(cfg.stuck_window);
  return cfg;
}

std::vector<std::string> builtin_scenario_names() {
  return {"single_circle", "crescent", "reachability_fan"};
}

Scenario builtin_scenario(std::string_view name) {
  if (name == "single_circle")
    return single_circle();
  if (name == "crescent")
    return crescent();
  if (name == "reachability_fan")
    return reachability_fan();
  throw UnknownScenario("unknown scenario '" + std::string(name) + "'");
}

Metrics compute_metrics(const PlanResult& result, std::span<const Obstacle> obstacles) {
  const auto& traj = result.trajectory;
  if (traj.size() < 2)
    throw InsufficientData("metrics need at least two trajectory samples");

  Metrics m;
  m.steps_taken = result.steps_taken;
  m.success = result.success();
  m.min_clearance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const VehicleState& s = traj[i].state;
    for (const Obstacle& o : obstacles)
      m.min_clearance = std::min(m.min_clearance, signed_distance(o, s.position));
    if (i == 0)
      continue;
    const VehicleState& prev = traj[i - 1].state;
    m.path_length += distance(prev.position, s.position);
    m.max_turn_per_step = std::max(m.max_turn_per_step, std::abs(angle_diff(s.heading, prev.heading)));
  }
  m.mean_speed = m.steps_taken > 0 ? m.path_length / static_cast<double>(m.steps_taken) : 0.0;
  return m;
}

double signed_chord_area(const PlanResult& result) {
  const auto& traj = result.trajectory;
  if (traj.size() < 3)
    return 0.0;
  // Shoelace over the trajectory closed by the chord back to the start,
  // taken relative to the start to keep the terms small.
  const Vec2 origin = traj.front().state.position;
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i)
    twice += (traj[i].state.position - origin).cross(traj[i + 1].state.position - origin);
  return -0.5 * twice;
}

std::size_t ComparisonRow::reached() const {
  return static_cast<std::size_t>(
      std::count_if(goals.begin(), goals.end(), [](const GoalOutcome& g) { return g.metrics.success; }));
}

ComparisonTable run_comparison(const Scenario& scenario, std::span<const MethodVariant> variants,
                               const PlannerConfig& cfg, bool parallel) {
  scenario.validate();
  const PlannerConfig base = apply_overrides(cfg, scenario.overrides);

  auto run_one = [&](MethodVariant variant, std::size_t goal_index) {
    PlannerConfig c = base;
    c.variant = variant;
    GoalOutcome out;
    out.goal_index = goal_index;
    out.goal = scenario.goals[goal_index];
    try {
      out.plan = plan(scenario.start_state(out.goal), out.goal, scenario.obstacles, c);
      out.metrics = compute_metrics(out.plan, scenario.obstacles);
    } catch (const std::exception& e) {
      throw BenchError("variant " + std::string(to_string(variant)) + ", goal " +
                       std::to_string(goal_index) + ": " + e.what());
    }
    return out;
  };

  ComparisonTable table;
  table.scenario = scenario.name;
  std::vector<std::vector<std::future<GoalOutcome>>> pending;
  for (MethodVariant v : variants) {
    table.rows.push_back({v, {}});
    auto& futures = pending.emplace_back();
    for (std::size_t g = 0; g < scenario.goals.size(); ++g)
      futures.push_back(std::async(parallel ? std::launch::async : std::launch::deferred, run_one, v, g));
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    for (auto& f : pending[r])
      table.rows[r].goals.push_back(f.get());
  return table;
}

} // namespace papf
