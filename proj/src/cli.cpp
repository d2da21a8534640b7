#include "papf/cli.hpp"

#include "papf/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace papf::cli {

namespace {

namespace fs = std::filesystem;

struct RunSpec {
  std::string scenario = "single_circle";
  std::vector<std::string> variants;
  std::string profile = "paper_like";
  std::string out_dir = ".";
  std::vector<std::string> emit;
  std::optional<std::size_t> max_steps;
};

/// Usage or configuration problem reported as exit status 1.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Scenario resolve_scenario(const std::string& source) {
  const auto names = builtin_scenario_names();
  if (std::find(names.begin(), names.end(), source) != names.end())
    return builtin_scenario(source);
  if (fs::is_regular_file(source))
    return load_scenario(source);
  throw UnknownScenario("unknown scenario '" + source + "' (builtin: single_circle, crescent, reachability_fan)");
}

PlannerConfig resolve_profile(const std::string& source) {
  if (source == "paper_like")
    return paper_like_config();
  if (source == "default")
    return PlannerConfig{};
  if (fs::is_regular_file(source))
    return load_profile(source);
  throw UsageError("unknown profile '" + source + "' (builtin: paper_like, default)");
}

std::vector<MethodVariant> resolve_variants(const std::vector<std::string>& names) {
  std::vector<MethodVariant> out;
  for (const std::string& n : names) {
    auto v = parse_variant(n);
    if (!v)
      throw UsageError("unknown variant '" + n + "' (expected tapf, al, al_va or papf)");
    if (std::find(out.begin(), out.end(), *v) != out.end())
      throw UsageError("variant '" + n + "' given twice");
    out.push_back(*v);
  }
  return out;
}

struct Emit {
  bool csv = false;
  bool svg = false;
  bool metrics = false;
};

Emit resolve_emit(const std::vector<std::string>& items) {
  Emit e;
  for (const std::string& item : items) {
    if (item == "csv")
      e.csv = true;
    else if (item == "svg")
      e.svg = true;
    else if (item == "metrics")
      e.metrics = true;
    else
      throw UsageError("unknown --emit item '" + item + "' (expected csv, svg or metrics)");
  }
  return e;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << content) || !f.flush())
    throw UsageError(path.string() + ": cannot write file");
}

void emit_artifacts(const Scenario& scenario, const ComparisonTable& table, const Emit& emit, const fs::path& dir,
                    const std::string& svg_stem, std::ostream& out) {
  if (!emit.csv && !emit.svg && !emit.metrics)
    return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw UsageError(dir.string() + ": cannot create output directory");

  std::vector<fs::path> written;
  if (emit.csv) {
    for (const ComparisonRow& row : table.rows) {
      for (const GoalOutcome& g : row.goals) {
        std::string stem = scenario.name + "_" + std::string(to_string(row.variant));
        if (scenario.goals.size() > 1)
          stem += "_g" + std::to_string(g.goal_index);
        std::ostringstream csv;
        write_trajectory_csv(csv, g.plan);
        written.push_back(dir / (stem + ".csv"));
        write_file(written.back(), csv.str());
      }
    }
  }
  if (emit.svg) {
    written.push_back(dir / (svg_stem + ".svg"));
    write_file(written.back(), render_svg(scenario, table));
  }
  if (emit.metrics) {
    written.push_back(dir / (svg_stem + "_metrics.json"));
    write_file(written.back(), metrics_json(table));
    written.push_back(dir / (svg_stem + "_metrics.txt"));
    write_file(written.back(), metrics_text(table));
  }
  for (const fs::path& p : written)
    out << "wrote " << p.string() << "\n";
}

int execute(const RunSpec& spec, bool compare, std::ostream& out) {
  const std::vector<MethodVariant> variants = resolve_variants(spec.variants);
  if (compare && variants.size() < 2)
    throw UsageError("compare needs at least two variants");
  if (!compare && variants.size() != 1)
    throw UsageError("run takes exactly one variant");
  const Emit emit = resolve_emit(spec.emit);

  Scenario scenario = resolve_scenario(spec.scenario);
  const PlannerConfig cfg = resolve_profile(spec.profile);
  if (spec.max_steps) {
    if (*spec.max_steps == 0)
      throw UsageError("--max-steps must be positive");
    scenario.overrides.planner["max_steps"] = static_cast<double>(*spec.max_steps);
  }

  const ComparisonTable table = run_comparison(scenario, variants, cfg);
  out << metrics_text(table);

  const std::string stem = compare ? scenario.name : scenario.name + "_" + std::string(to_string(variants.front()));
  emit_artifacts(scenario, table, emit, spec.out_dir, stem, out);

  const bool all_ok = std::all_of(table.rows.begin(), table.rows.end(),
                                  [](const ComparisonRow& r) { return r.reached() == r.goals.size(); });
  return all_ok ? kOk : kPlanFailed;
}

void add_common(CLI::App* cmd, RunSpec& spec) {
  cmd->add_option("--scenario", spec.scenario, "builtin scenario name or scenario file")->capture_default_str();
  cmd->add_option("--profile", spec.profile, "paper_like, default, or a profile file")->capture_default_str();
  cmd->add_option("--out", spec.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--emit", spec.emit, "artifacts to write: csv, svg, metrics")->delimiter(',');
  cmd->add_option("--max-steps", spec.max_steps, "step budget per plan");
}

} // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Potential field path planner with turn, speed and predictive extensions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "papf 1.0.0");

  RunSpec run_spec;
  run_spec.variants = {"papf"};
  auto* run = app.add_subcommand("run", "plan with one variant");
  add_common(run, run_spec);
  run->add_option("--variant", run_spec.variants, "tapf, al, al_va or papf")
      ->expected(1)
      ->default_str("papf");

  RunSpec cmp_spec;
  cmp_spec.variants = {"tapf", "al", "al_va", "papf"};
  auto* compare = app.add_subcommand("compare", "plan with several variants and tabulate");
  add_common(compare, cmp_spec);
  compare->add_option("--variants", cmp_spec.variants, "comma separated list")->delimiter(',')->default_str("tapf,al,al_va,papf");

  std::string export_source, export_out;
  auto* exp = app.add_subcommand("export-scenario", "write a scenario as a scenario file");
  exp->add_option("--scenario", export_source, "builtin scenario name or scenario file")->required();
  exp->add_option("--out", export_out, "destination file (stdout when omitted)");

  std::string profile_source = "paper_like", profile_out;
  auto* prof = app.add_subcommand("export-profile", "write a parameter profile file");
  prof->add_option("--profile", profile_source, "paper_like, default, or a profile file")->capture_default_str();
  prof->add_option("--out", profile_out, "destination file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed())
      return execute(run_spec, false, out);
    if (compare->parsed())
      return execute(cmp_spec, true, out);
    if (exp->parsed()) {
      const std::string text = scenario_to_json(resolve_scenario(export_source));
      if (export_out.empty())
        out << text;
      else
        write_file(export_out, text);
      return kOk;
    }
    if (prof->parsed()) {
      const std::string note = profile_source == "paper_like"
                                   ? "Speeds and turn limit follow the published experiment. Field gains, "
                                     "velocity thresholds and stopping rules are calibration values tuned on "
                                     "the builtin scenarios, not published data."
                                   : "";
      const std::string text = profile_to_json(resolve_profile(profile_source), profile_source, note);
      if (profile_out.empty())
        out << text;
      else
        write_file(profile_out, text);
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace papf::cli
