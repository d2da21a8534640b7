#include "papf/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace papf {

namespace {

using nlohmann::json;

constexpr double kDeg = kPi / 180.0;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw FormatError(where + ": " + what);
}

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

double number(const json& j, const std::string& where) {
  if (!j.is_number())
    fail(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    fail(where, "expected a finite number");
  return v;
}

const json& member(const json& obj, const std::string& key, const std::string& base) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(join(base, key), "missing");
  return *it;
}

double number_at(const json& obj, const std::string& key, const std::string& base) {
  return number(member(obj, key, base), join(base, key));
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object())
    fail(where, "expected an object");
}

void require_array(const json& j, const std::string& where) {
  if (!j.is_array())
    fail(where, "expected an array");
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known, const std::string& base) {
  for (const auto& [key, value] : obj.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      fail(join(base, key), "unknown key");
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("document: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FormatError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Vec2 point(const json& j, const std::string& where) {
  if (j.is_array()) {
    if (j.size() != 2)
      fail(where, "expected [x, y]");
    return {number(j[0], index(where, 0)), number(j[1], index(where, 1))};
  }
  require_object(j, where);
  reject_unknown(j, {"x", "y"}, where);
  return {number_at(j, "x", where), number_at(j, "y", where)};
}

std::map<std::string, double> group_values(const json& j, const std::string& where) {
  require_object(j, where);
  std::map<std::string, double> out;
  for (const auto& [key, value] : j.items())
    out[key] = number(value, join(where, key));
  return out;
}

ConfigOverrides read_groups(const json& obj, const std::string& base) {
  ConfigOverrides o;
  if (auto it = obj.find("field"); it != obj.end())
    o.field = group_values(*it, join(base, "field"));
  if (auto it = obj.find("motion"); it != obj.end())
    o.motion = group_values(*it, join(base, "motion"));
  if (auto it = obj.find("planner"); it != obj.end())
    o.planner = group_values(*it, join(base, "planner"));
  return o;
}

// Re-raises an override error with the document path of the bad key.
PlannerConfig apply_checked(const PlannerConfig& base, const ConfigOverrides& o, const std::string& where) {
  try {
    return apply_overrides(base, o);
  } catch (const InvalidInput& e) {
    fail(where, e.what());
  }
}

Obstacle obstacle(const json& j, const std::string& where) {
  require_object(j, where);
  const json& type = member(j, "type", where);
  if (!type.is_string())
    fail(join(where, "type"), "expected \"circle\" or \"polygon\"");
  const std::string kind = type.get<std::string>();
  try {
    if (kind == "circle") {
      reject_unknown(j, {"type", "cx", "cy", "r"}, where);
      const double r = number_at(j, "r", where);
      if (r <= 0.0)
        fail(join(where, "r"), "expected a positive radius");
      return Obstacle::circle({number_at(j, "cx", where), number_at(j, "cy", where)}, r);
    }
    if (kind == "polygon") {
      reject_unknown(j, {"type", "vertices"}, where);
      const std::string vw = join(where, "vertices");
      const json& vs = member(j, "vertices", where);
      require_array(vs, vw);
      std::vector<Vec2> pts;
      for (std::size_t i = 0; i < vs.size(); ++i)
        pts.push_back(point(vs[i], index(vw, i)));
      return Obstacle::polygon(std::move(pts));
    }
  } catch (const InvalidInput& e) {
    fail(where, e.what());
  }
  fail(join(where, "type"), "expected \"circle\" or \"polygon\", got \"" + kind + "\"");
}

json group_json(const std::map<std::string, double>& values) {
  json j = json::object();
  for (const auto& [k, v] : values)
    j[k] = v;
  return j;
}

json finite_or_null(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

std::string full_precision(double v) {
  std::array<char, 32> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    fail(where, "expected a number, got \"" + std::string(s) + "\"");
  return v;
}

} // namespace

Scenario parse_scenario(std::string_view text, std::string fallback_name) {
  const json doc = parse_document(text);
  require_object(doc, "document");
  reject_unknown(doc, {"name", "start", "goals", "obstacles", "params"}, "");

  Scenario s;
  s.name = std::move(fallback_name);
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string())
      fail("name", "expected a string");
    s.name = it->get<std::string>();
  }

  const json& start = member(doc, "start", "");
  require_object(start, "start");
  reject_unknown(start, {"x", "y", "yaw_deg", "speed"}, "start");
  s.start = {number_at(start, "x", "start"), number_at(start, "y", "start")};
  if (auto it = start.find("yaw_deg"); it != start.end())
    s.start_heading = Angle(number(*it, "start.yaw_deg") * kDeg);
  if (auto it = start.find("speed"); it != start.end()) {
    s.start_speed = number(*it, "start.speed");
    if (s.start_speed < 0.0)
      fail("start.speed", "expected a non-negative number");
  }

  const json& goals = member(doc, "goals", "");
  require_array(goals, "goals");
  if (goals.empty())
    fail("goals", "expected at least one goal");
  for (std::size_t i = 0; i < goals.size(); ++i)
    s.goals.push_back(point(goals[i], index("goals", i)));

  if (auto it = doc.find("obstacles"); it != doc.end()) {
    require_array(*it, "obstacles");
    for (std::size_t i = 0; i < it->size(); ++i)
      s.obstacles.push_back(obstacle((*it)[i], index("obstacles", i)));
  }

  if (auto it = doc.find("params"); it != doc.end()) {
    require_object(*it, "params");
    reject_unknown(*it, {"field", "motion", "planner"}, "params");
    s.overrides = read_groups(*it, "params");
    apply_checked(PlannerConfig{}, s.overrides, "params");
  }

  try {
    s.validate();
  } catch (const InvalidScenario& e) {
    throw FormatError(e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  try {
    return parse_scenario(read_file(path), path.stem().string());
  } catch (const FormatError& e) {
    const std::string prefix = path.string() + ": ";
    if (std::string_view(e.what()).starts_with(prefix))
      throw;
    throw FormatError(prefix + e.what());
  }
}

std::string scenario_to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  json start = {{"x", s.start.x}, {"y", s.start.y}, {"speed", s.start_speed}};
  if (s.start_heading)
    start["yaw_deg"] = s.start_heading->degrees();
  doc["start"] = start;

  doc["goals"] = json::array();
  for (Vec2 g : s.goals)
    doc["goals"].push_back({{"x", g.x}, {"y", g.y}});

  doc["obstacles"] = json::array();
  for (const Obstacle& o : s.obstacles) {
    if (const auto* c = std::get_if<Circle>(&o.shape())) {
      doc["obstacles"].push_back({{"type", "circle"}, {"cx", c->center.x}, {"cy", c->center.y}, {"r", c->radius}});
    } else {
      json vs = json::array();
      for (Vec2 v : o.vertices())
        vs.push_back({v.x, v.y});
      doc["obstacles"].push_back({{"type", "polygon"}, {"vertices", vs}});
    }
  }

  if (!s.overrides.empty()) {
    json params = json::object();
    if (!s.overrides.field.empty())
      params["field"] = group_json(s.overrides.field);
    if (!s.overrides.motion.empty())
      params["motion"] = group_json(s.overrides.motion);
    if (!s.overrides.planner.empty())
      params["planner"] = group_json(s.overrides.planner);
    doc["params"] = params;
  }
  return doc.dump(2) + "\n";
}

PlannerConfig parse_profile(std::string_view text) {
  const json doc = parse_document(text);
  require_object(doc, "document");
  reject_unknown(doc, {"name", "note", "field", "motion", "planner"}, "");
  PlannerConfig cfg = apply_checked(PlannerConfig{}, read_groups(doc, ""), "profile");
  try {
    cfg.validate();
  } catch (const InvalidInput& e) {
    fail("profile", e.what());
  }
  return cfg;
}

PlannerConfig load_profile(const std::filesystem::path& path) {
  try {
    return parse_profile(read_file(path));
  } catch (const FormatError& e) {
    const std::string prefix = path.string() + ": ";
    if (std::string_view(e.what()).starts_with(prefix))
      throw;
    throw FormatError(prefix + e.what());
  }
}

std::string profile_to_json(const PlannerConfig& cfg, std::string_view name, std::string_view note) {
  json doc;
  doc["name"] = name;
  doc["note"] = note;
  doc["field"] = {{"k_att", cfg.field.k_att}, {"d_g", cfg.field.d_g},     {"k_rep", cfg.field.k_rep},
                  {"d_o", cfg.field.d_o},     {"n", cfg.field.n},         {"k_prd", cfg.field.k_prd},
                  {"d_prd", cfg.field.d_prd}};
  doc["motion"] = {{"dtheta_max_deg", cfg.motion.dtheta_max / kDeg},
                   {"theta1_deg", cfg.motion.theta1 / kDeg},
                   {"theta2_deg", cfg.motion.theta2 / kDeg},
                   {"v_c", cfg.motion.v_c},
                   {"v_min", cfg.motion.v_min},
                   {"v_max", cfg.motion.v_max},
                   {"accel_step", cfg.motion.accel_step},
                   {"dt", cfg.motion.dt}};
  doc["planner"] = {{"goal_tolerance", cfg.goal_tolerance},
                    {"max_steps", cfg.max_steps},
                    {"stuck_window", cfg.stuck_window},
                    {"stuck_displacement", cfg.stuck_displacement}};
  return doc.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& out, const PlanResult& result) {
  out << "step,x,y,yaw_deg,speed\n";
  for (const TrajectorySample& s : result.trajectory)
    out << s.step << ',' << full_precision(s.state.position.x) << ',' << full_precision(s.state.position.y) << ','
        << full_precision(s.state.heading.degrees()) << ',' << full_precision(s.state.speed) << '\n';
}

std::vector<TrajectorySample> read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "step,x,y,yaw_deg,speed")
    fail("csv header", "expected step,x,y,yaw_deg,speed");

  std::vector<TrajectorySample> out;
  for (std::size_t row = 1; std::getline(in, line); ++row) {
    if (line.empty())
      continue;
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos; rest.remove_prefix(comma + 1))
      cells.push_back(rest.substr(0, comma));
    cells.push_back(rest);
    const std::string where = "csv row " + std::to_string(row);
    if (cells.size() != 5)
      fail(where, "expected 5 columns");

    TrajectorySample s;
    const double step = parse_double(cells[0], where + " step");
    if (step < 0.0 || step != std::floor(step))
      fail(where + " step", "expected a non-negative integer");
    s.step = static_cast<std::size_t>(step);
    s.state.position = {parse_double(cells[1], where + " x"), parse_double(cells[2], where + " y")};
    s.state.heading = Angle(parse_double(cells[3], where + " yaw_deg") * kDeg);
    s.state.speed = parse_double(cells[4], where + " speed");
    out.push_back(s);
  }
  return out;
}

std::string metrics_json(const ComparisonTable& table) {
  json doc;
  doc["scenario"] = table.scenario;
  doc["runs"] = json::array();
  for (const ComparisonRow& row : table.rows) {
    for (const GoalOutcome& g : row.goals) {
      doc["runs"].push_back({
          {"variant", to_string(row.variant)},
          {"goal_index", g.goal_index},
          {"goal", {{"x", g.goal.x}, {"y", g.goal.y}}},
          {"termination", to_string(g.plan.termination)},
          {"success", g.metrics.success},
          {"steps_taken", g.metrics.steps_taken},
          {"max_turn_deg", g.metrics.max_turn_per_step / kDeg},
          {"path_length", g.metrics.path_length},
          {"min_clearance", finite_or_null(g.metrics.min_clearance)},
          {"mean_speed", g.metrics.mean_speed},
      });
    }
  }
  doc["reached"] = json::object();
  for (const ComparisonRow& row : table.rows)
    doc["reached"][std::string(to_string(row.variant))] = row.reached();
  return doc.dump(2) + "\n";
}

std::string metrics_text(const ComparisonTable& table) {
  std::ostringstream out;
  out << "scenario " << table.scenario << "\n";
  out << std::left << std::setw(8) << "variant" << std::right << std::setw(6) << "goal" << "  " << std::left
      << std::setw(20) << "termination" << std::right << std::setw(8) << "steps" << std::setw(12) << "max_turn"
      << std::setw(12) << "length" << std::setw(12) << "clearance" << std::setw(10) << "speed" << "\n";
  out << std::fixed;
  for (const ComparisonRow& row : table.rows) {
    for (const GoalOutcome& g : row.goals) {
      const Metrics& m = g.metrics;
      out << std::left << std::setw(8) << to_string(row.variant) << std::right << std::setw(6) << g.goal_index << "  "
          << std::left << std::setw(20) << to_string(g.plan.termination) << std::right << std::setw(8)
          << m.steps_taken << std::setw(12) << std::setprecision(3) << m.max_turn_per_step / kDeg << std::setw(12)
          << std::setprecision(2) << m.path_length << std::setw(12) << std::setprecision(3);
      if (std::isfinite(m.min_clearance))
        out << m.min_clearance;
      else
        out << "inf";
      out << std::setw(10) << std::setprecision(4) << m.mean_speed << "\n";
    }
  }

  const std::size_t goals = table.rows.empty() ? 0 : table.rows.front().goals.size();
  if (goals > 1) {
    out << "\nreached";
    for (std::size_t g = 0; g < goals; ++g)
      out << std::setw(4) << ("g" + std::to_string(g));
    out << "  total\n";
    for (const ComparisonRow& row : table.rows) {
      out << std::left << std::setw(7) << to_string(row.variant) << std::right;
      for (const GoalOutcome& g : row.goals)
        out << std::setw(4) << (g.metrics.success ? "Y" : "-");
      out << "  " << row.reached() << "/" << row.goals.size() << "\n";
    }
  }
  return out.str();
}

std::string render_svg(const Scenario& scenario, const ComparisonTable& table) {
  double lo_x = scenario.start.x, hi_x = scenario.start.x;
  double lo_y = scenario.start.y, hi_y = scenario.start.y;
  auto grow = [&](Vec2 p) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  };
  for (Vec2 g : scenario.goals)
    grow(g);
  for (const Obstacle& o : scenario.obstacles) {
    if (const auto* c = std::get_if<Circle>(&o.shape())) {
      grow(c->center - Vec2{c->radius, c->radius});
      grow(c->center + Vec2{c->radius, c->radius});
    } else {
      for (Vec2 v : o.vertices())
        grow(v);
    }
  }
  for (const ComparisonRow& row : table.rows)
    for (const GoalOutcome& g : row.goals)
      for (const TrajectorySample& s : g.plan.trajectory)
        grow(s.state.position);

  const double margin = 0.05 * std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
  lo_x -= margin;
  lo_y -= margin;
  hi_x += margin;
  hi_y += margin;
  const double w = hi_x - lo_x, h = hi_y - lo_y;
  const double stroke = 0.003 * std::max(w, h);
  // World y grows upward, SVG y grows downward.
  auto px = [&](Vec2 p) {
    std::ostringstream s;
    s << std::setprecision(8) << (p.x - lo_x) << ',' << (hi_y - p.y);
    return s.str();
  };

  static constexpr std::array<const char*, 4> kColors = {"#d62728", "#ff7f0e", "#2ca02c", "#1f77b4"};

  std::ostringstream out;
  out << std::setprecision(8);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << h << "\" width=\"800\" height=\""
      << std::lround(800.0 * h / w) << "\">\n";
  out << "<title>" << scenario.name << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const Obstacle& o : scenario.obstacles) {
    if (const auto* c = std::get_if<Circle>(&o.shape())) {
      out << "<circle cx=\"" << c->center.x - lo_x << "\" cy=\"" << hi_y - c->center.y << "\" r=\"" << c->radius
          << "\" fill=\"#888888\"/>\n";
    } else {
      out << "<polygon fill=\"#888888\" points=\"";
      for (Vec2 v : o.vertices())
        out << px(v) << ' ';
      out << "\"/>\n";
    }
  }
  for (const ComparisonRow& row : table.rows) {
    const char* color = kColors[static_cast<std::size_t>(row.variant) % kColors.size()];
    for (const GoalOutcome& g : row.goals) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << stroke << "\" points=\"";
      for (const TrajectorySample& s : g.plan.trajectory)
        out << px(s.state.position) << ' ';
      out << "\"><title>" << to_string(row.variant) << " goal " << g.goal_index << " "
          << to_string(g.plan.termination) << "</title></polyline>\n";
    }
  }
  out << "<circle cx=\"" << scenario.start.x - lo_x << "\" cy=\"" << hi_y - scenario.start.y << "\" r=\""
      << 4 * stroke << "\" fill=\"black\"/>\n";
  for (Vec2 g : scenario.goals)
    out << "<circle cx=\"" << g.x - lo_x << "\" cy=\"" << hi_y - g.y << "\" r=\"" << 4 * stroke
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\"/>\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const char* color = kColors[static_cast<std::size_t>(table.rows[i].variant) % kColors.size()];
    out << "<text x=\"" << 2 * stroke << "\" y=\"" << (i + 1) * 12 * stroke << "\" font-size=\"" << 10 * stroke
        << "\" fill=\"" << color << "\">" << to_string(table.rows[i].variant) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

} // namespace papf
