// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "oracles.hpp"

#include "papf/bench.hpp"
#include "papf/io.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace papf;

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kGradientTol = 1e-4;
constexpr double kContinuityTol = 1e-12;
constexpr double kFadeFraction = 1e-4;
constexpr double kFadeTol = 1e-6;
constexpr double kTurnSlack = 1e-12;
constexpr double kSpeedSlack = 1e-15;
constexpr double kTurnRatio = 5.0;
constexpr std::size_t kCentralFailures = 3;
constexpr double kBudgetGradient = 1.0;
constexpr double kBudgetSingle = 10.0;
constexpr double kBudgetCrescent = 10.0;
constexpr double kBudgetFan = 30.0;

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  Verdict verdict;
  double seconds = 0.0;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel_err(Vec2 approx, Vec2 exact) {
  return (approx - exact).norm() / exact.norm();
}

Vec2 fd_gradient(const std::function<double(Vec2)>& f, Vec2 q) {
  const double h = kFdStep;
  return {(f({q.x + h, q.y}) - f({q.x - h, q.y})) / (2 * h), (f({q.x, q.y + h}) - f({q.x, q.y - h})) / (2 * h)};
}

Verdict attractive_gradient(const FieldParams& p) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> radius(0.5, 4.0 * p.d_g), angle(-kPi, kPi);
  const Vec2 goal{420, 200};
  double worst = 0.0;
  int inner = 0;
  for (int i = 0; i < 100; ++i) {
    const double r = radius(rng);
    const Vec2 q = goal + Vec2::unit(angle(rng)) * r;
    inner += r <= p.d_g;
    const Vec2 fd = fd_gradient([&](Vec2 x) { return oracle::attractive_potential(x, goal, p.k_att, p.d_g); }, q);
    worst = std::max(worst, rel_err(-1.0 * fd, attractive(q, goal, p).force));
  }
  return {worst <= kGradientTol && inner > 0 && inner < 100,
          "max rel err " + fmt("%.2e", worst) + ", " + std::to_string(inner) + "/100 inside d_g"};
}

Verdict repulsive_gradient(const FieldParams& p) {
  std::mt19937_64 rng(103);
  const Vec2 center{220, 199.85};
  const double radius = 15.0;
  const Obstacle obs = Obstacle::circle(center, radius);
  const Vec2 goal{420, 200};
  std::uniform_real_distribution<double> gap(0.1 * p.d_o, 0.9 * p.d_o), angle(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec2 q = center + Vec2::unit(angle(rng)) * (radius + gap(rng));
    const Vec2 fd = fd_gradient(
        [&](Vec2 x) {
          return oracle::repulsive_potential(oracle::circle_distance(x, center, radius), oracle::dist(x, goal), p.k_rep,
                                             p.d_o, p.n);
        },
        q);
    worst = std::max(worst, rel_err(-1.0 * fd, repulsive_single(q, goal, obs, p).force));
  }
  return {worst <= kGradientTol, "max rel err " + fmt("%.2e", worst)};
}

Verdict continuity(const FieldParams& p) {
  const Vec2 goal{0, 0};
  const Vec2 below{std::nextafter(p.d_g, 0.0), 0}, above{std::nextafter(p.d_g, 2 * p.d_g), 0};
  const ForceSample a = attractive(below, goal, p), b = attractive(above, goal, p);
  const double u_gap = std::abs(a.potential - b.potential) / std::abs(a.potential);
  const double f_gap = (a.force - b.force).norm() / a.force.norm();

  const Obstacle obs = Obstacle::circle({0, 0}, 10.0);
  const Vec2 q{10.0 + p.d_o * (1.0 - kFadeFraction), 0};
  const double fade = repulsive_single(q, {200, 0}, obs, p).potential;
  return {u_gap <= kContinuityTol && f_gap <= kContinuityTol && fade >= 0.0 && fade < kFadeTol * p.k_rep,
          "potential gap " + fmt("%.1e", u_gap) + ", force gap " + fmt("%.1e", f_gap) + ", U near d_o " +
              fmt("%.2e", fade)};
}

struct Runs {
  ComparisonTable single, crescent, fan;
  double t_single = 0, t_crescent = 0, t_fan = 0;
};

ComparisonTable timed(const std::string& name, const PlannerConfig& cfg, bool parallel, double& t) {
  const auto t0 = Clock::now();
  ComparisonTable table = run_comparison(builtin_scenario(name), kAllVariants, cfg, parallel);
  t = seconds_since(t0);
  return table;
}

Runs run_all(const PlannerConfig& cfg, bool parallel) {
  Runs r;
  r.single = timed("single_circle", cfg, parallel, r.t_single);
  r.crescent = timed("crescent", cfg, parallel, r.t_crescent);
  r.fan = timed("reachability_fan", cfg, parallel, r.t_fan);
  return r;
}

const ComparisonRow& row(const ComparisonTable& t, MethodVariant v) {
  for (const ComparisonRow& r : t.rows)
    if (r.variant == v)
      return r;
  throw std::logic_error("missing variant");
}

template <class F>
void each_plan(const Runs& runs, F&& f) {
  for (const ComparisonTable* t : {&runs.single, &runs.crescent, &runs.fan})
    for (const ComparisonRow& r : t->rows)
      for (const GoalOutcome& g : r.goals)
        f(*t, r.variant, g);
}

Verdict turn_bound(const Runs& runs, const PlannerConfig& cfg) {
  double worst = 0.0;
  std::size_t plans = 0;
  each_plan(runs, [&](const ComparisonTable&, MethodVariant v, const GoalOutcome& g) {
    if (!uses_angle_limit(v))
      return;
    ++plans;
    const auto& tr = g.plan.trajectory;
    for (std::size_t i = 1; i < tr.size(); ++i)
      worst = std::max(worst, std::abs(oracle::shortest_rotation(tr[i].state.heading.radians(),
                                                                 tr[i - 1].state.heading.radians())));
  });
  return {worst <= cfg.motion.dtheta_max + kTurnSlack,
          std::to_string(plans) + " plans, max turn " + fmt("%.6f", worst * 180 / kPi) + " deg"};
}

Verdict speed_envelope(const Runs& runs, const PlannerConfig& cfg) {
  const MotionParams& m = cfg.motion;
  std::size_t steps = 0, violations = 0;
  double lo = m.v_max, hi = m.v_min;
  auto scenario_for = [&](const ComparisonTable& t) { return builtin_scenario(t.scenario); };
  each_plan(runs, [&](const ComparisonTable& t, MethodVariant v, const GoalOutcome& g) {
    if (!uses_velocity_adjustment(v))
      return;
    const Scenario s = scenario_for(t);
    const PlannerConfig pc = apply_overrides(cfg, s.overrides);
    const auto& tr = g.plan.trajectory;
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const double speed = tr[i].state.speed;
      lo = std::min(lo, speed);
      hi = std::max(hi, speed);
      if (speed < m.v_min - kSpeedSlack || speed > m.v_max + kSpeedSlack)
        ++violations;
      if (i + 1 == tr.size())
        break;
      ++steps;
      const VehicleState& a = tr[i].state;
      const Vec2 f = total_force(a.position, a.heading, g.goal, s.obstacles, pc.field, v);
      const double ideal = ideal_turn(a.heading, f);
      const double next = tr[i + 1].state.speed;
      bool ok;
      if (std::abs(ideal) <= m.theta1)
        ok = next >= speed;
      else if (std::abs(ideal) > m.theta2)
        ok = next <= speed;
      else
        ok = std::abs(next - m.v_c) <= std::abs(speed - m.v_c) + kSpeedSlack;
      violations += !ok;
    }
  });
  return {violations == 0 && steps > 0,
          std::to_string(steps) + " steps replayed, speed in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "], " +
              std::to_string(violations) + " violations"};
}

Verdict single_circle_order(const Runs& runs) {
  const auto& t = runs.single;
  auto m = [&](MethodVariant v) { return row(t, v).goals[0].metrics; };
  const Metrics tapf = m(MethodVariant::TAPF), al = m(MethodVariant::AL), alva = m(MethodVariant::AL_VA),
                papf = m(MethodVariant::PAPF);
  const bool all_success = tapf.success && al.success && alva.success && papf.success;
  const bool order = papf.steps_taken < alva.steps_taken && alva.steps_taken < tapf.steps_taken &&
                     tapf.steps_taken <= al.steps_taken;
  const double limited = std::max({al.max_turn_per_step, alva.max_turn_per_step, papf.max_turn_per_step});
  const bool turns = tapf.max_turn_per_step > kTurnRatio * limited;
  std::ostringstream d;
  d << "steps papf " << papf.steps_taken << " < al_va " << alva.steps_taken << " < tapf " << tapf.steps_taken
    << " <= al " << al.steps_taken << ", max turn tapf " << fmt("%.2f", tapf.max_turn_per_step * 180 / kPi)
    << " deg vs limited " << fmt("%.2f", limited * 180 / kPi) << " deg";
  return {all_success && order && turns && runs.t_single < kBudgetSingle, d.str()};
}

Verdict crescent_trap(const Runs& runs, const PlannerConfig& cfg) {
  const GoalOutcome& tapf = row(runs.crescent, MethodVariant::TAPF).goals[0];
  const GoalOutcome& papf = row(runs.crescent, MethodVariant::PAPF).goals[0];
  const bool trapped = tapf.plan.termination == Termination::LocalMinimum && tapf.plan.steps_taken < cfg.max_steps;
  const bool escaped = papf.plan.success() && papf.metrics.min_clearance > 0.0;
  return {trapped && escaped && runs.t_crescent < kBudgetCrescent,
          "tapf " + std::string(to_string(tapf.plan.termination)) + " at step " +
              std::to_string(tapf.plan.steps_taken) + ", papf " + std::string(to_string(papf.plan.termination)) +
              " with clearance " + fmt("%.3f", papf.metrics.min_clearance)};
}

Verdict fan_reachability(const Runs& runs) {
  const Scenario fan = builtin_scenario("reachability_fan");
  const ComparisonRow& papf = row(runs.fan, MethodVariant::PAPF);
  const ComparisonRow& tapf = row(runs.fan, MethodVariant::TAPF);
  Vec2 centroid{0, 0};
  for (Vec2 v : fan.obstacles[0].vertices())
    centroid += v;
  centroid = centroid / static_cast<double>(fan.obstacles[0].vertices().size());

  std::size_t central_minima = 0, sides = 0;
  std::string tapf_map, papf_map;
  for (std::size_t i = 0; i < fan.goals.size(); ++i) {
    const GoalOutcome& t = tapf.goals[i];
    const GoalOutcome& p = papf.goals[i];
    tapf_map += t.plan.success() ? 'Y' : '-';
    papf_map += p.plan.success() ? 'Y' : '-';
    const bool central = i >= 2 && i + 2 < fan.goals.size();
    central_minima += central && t.plan.termination == Termination::LocalMinimum;
    const double offset = (centroid - fan.start).cross(fan.goals[i] - fan.start);
    const double area = signed_chord_area(p.plan);
    sides += offset != 0.0 && (offset > 0) == (area > 0);
  }
  return {papf.reached() == fan.goals.size() && central_minima >= kCentralFailures && sides == fan.goals.size() &&
              runs.t_fan < kBudgetFan,
          "papf " + papf_map + ", tapf " + tapf_map + ", central minima " + std::to_string(central_minima) +
              ", side matches " + std::to_string(sides) + "/" + std::to_string(fan.goals.size())};
}

Verdict safety(const Runs& runs) {
  std::size_t runs_checked = 0, samples = 0, bad = 0;
  double worst = std::numeric_limits<double>::infinity();
  each_plan(runs, [&](const ComparisonTable& t, MethodVariant, const GoalOutcome& g) {
    if (!g.plan.success())
      return;
    const Scenario s = builtin_scenario(t.scenario);
    ++runs_checked;
    for (const TrajectorySample& ts : g.plan.trajectory) {
      ++samples;
      for (const Obstacle& o : s.obstacles) {
        const double d = signed_distance(o, ts.state.position);
        worst = std::min(worst, d);
        bad += d <= 0.0;
      }
    }
  });
  return {bad == 0 && runs_checked > 0, std::to_string(runs_checked) + " successful runs, " + std::to_string(samples) +
                                            " samples, min clearance " + fmt("%.3f", worst)};
}

std::vector<std::string> csv_dump(const Runs& runs) {
  std::vector<std::string> out;
  each_plan(runs, [&](const ComparisonTable&, MethodVariant, const GoalOutcome& g) {
    std::ostringstream ss;
    write_trajectory_csv(ss, g.plan);
    out.push_back(ss.str());
  });
  return out;
}

Verdict determinism(const Runs& first, const PlannerConfig& cfg) {
  const std::vector<std::string> a = csv_dump(first);
  const std::vector<std::string> b = csv_dump(run_all(cfg, false));
  const std::vector<std::string> c = csv_dump(run_all(cfg, true));
  std::size_t bytes = 0, same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    bytes += a[i].size();
    same += i < b.size() && i < c.size() && a[i] == b[i] && a[i] == c[i];
  }
  return {a.size() == b.size() && a.size() == c.size() && same == a.size(),
          std::to_string(same) + "/" + std::to_string(a.size()) + " CSV files identical over 3 runs (" +
              std::to_string(bytes) + " bytes each)"};
}

} // namespace

int main() {
  const PlannerConfig cfg = paper_like_config();
  std::vector<Criterion> results;
  auto check = [&](int id, std::string name, const std::function<Verdict()>& f, double budget = 0.0) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(t0);
    if (budget > 0.0 && t >= budget) {
      v.pass = false;
      v.detail += ", over the " + fmt("%.0f", budget) + " s budget";
    }
    results.push_back({id, std::move(name), v, t});
    const Criterion& c = results.back();
    std::printf("[%s] %d %s: %s (%.3f s)\n", c.verdict.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                c.verdict.detail.c_str(), c.seconds);
    std::fflush(stdout);
  };

  check(1, "attractive gradient", [&] { return attractive_gradient(cfg.field); }, kBudgetGradient);
  check(2, "repulsive gradient", [&] { return repulsive_gradient(cfg.field); }, kBudgetGradient);
  check(3, "boundary continuity", [&] { return continuity(cfg.field); });

  Runs runs;
  const auto t0 = Clock::now();
  runs = run_all(cfg, true);
  std::printf("       planned 3 scenarios x 4 variants in %.3f s (single %.3f, crescent %.3f, fan %.3f)\n",
              seconds_since(t0), runs.t_single, runs.t_crescent, runs.t_fan);

  check(4, "turn limit", [&] { return turn_bound(runs, cfg); });
  check(5, "speed envelope", [&] { return speed_envelope(runs, cfg); });
  check(6, "single circle ordering", [&] { return single_circle_order(runs); });
  check(7, "crescent local minimum", [&] { return crescent_trap(runs, cfg); });
  check(8, "fan reachability", [&] { return fan_reachability(runs); });
  check(9, "safety", [&] { return safety(runs); });
  check(10, "determinism", [&] { return determinism(runs, cfg); });

  std::size_t passed = 0;
  for (const Criterion& c : results)
    passed += c.verdict.pass;
  std::printf("%zu/%zu criteria passed\n", passed, results.size());
  return passed == results.size() ? 0 : 1;
}
