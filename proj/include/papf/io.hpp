#pragma once

#include "papf/bench.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace papf {

/// Malformed or unreadable input document. The message names the offending
/// field, e.g. "obstacles[1].r: expected a positive number".
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Scenario documents:
//   { "name": ..., "start": {x, y, yaw_deg?, speed?}, "goals": [{x, y}...],
//     "obstacles": [{"type": "circle", cx, cy, r} | {"type": "polygon", "vertices": [[x, y]...]}],
//     "params": {"field": {...}, "motion": {...}, "planner": {...}} }
// Without yaw_deg each plan starts pointed at its goal.

Scenario parse_scenario(std::string_view text, std::string fallback_name = "scenario");
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

/// Parameter profile document: {"name", "note", "field", "motion", "planner"}.
/// Groups use the same keys as scenario params and are applied on top of the
/// library defaults.
PlannerConfig parse_profile(std::string_view text);
PlannerConfig load_profile(const std::filesystem::path& path);
std::string profile_to_json(const PlannerConfig& cfg, std::string_view name, std::string_view note);

/// Header `step,x,y,yaw_deg,speed`, one row per sample, round-trip precision.
void write_trajectory_csv(std::ostream& out, const PlanResult& result);
std::vector<TrajectorySample> read_trajectory_csv(std::istream& in);

/// One record per (variant, goal) with the Metrics fields and termination.
std::string metrics_json(const ComparisonTable& table);
/// Fixed-width table, followed by a per-goal success matrix when the
/// scenario has more than one goal.
std::string metrics_text(const ComparisonTable& table);

/// Obstacles, start, goals and every trajectory of the table.
std::string render_svg(const Scenario& scenario, const ComparisonTable& table);

} // namespace papf
