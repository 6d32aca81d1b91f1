#include "commands.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "follower/engine.hpp"
#include "follower/export.hpp"
#include "follower/metrics.hpp"
#include "follower/scenarios.hpp"
#include "follower/svg.hpp"

namespace fs = std::filesystem;

namespace follower::cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamFlags {
  std::optional<int> steps;
  std::optional<double> dt;
  std::optional<double> k;
  std::optional<double> lm;
  std::optional<std::uint64_t> seed;
  int threads = 1;

  void attach(CLI::App &app) {
    app.add_option("--steps", steps, "Maximum number of steps (t_max)")->check(CLI::NonNegativeNumber);
    app.add_option("--dt", dt, "Time step in seconds")->check(CLI::PositiveNumber);
    app.add_option("--k", k, "Rotation gain K (0 disables the heuristic)")->check(CLI::NonNegativeNumber);
    app.add_option("--lm", lm, "Neighbor region radius L_m in meters")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  }

  SimParams resolve(const Scenario &scenario) const {
    SimParams p = scenario.overrides.apply({});
    if (steps) p.t_max = *steps;
    if (dt) p.dt = *dt;
    if (k) p.k_gain = *k;
    if (lm) p.neighbor_radius = *lm;
    if (seed) p.seed = *seed;
    return p;
  }
};

Scenario resolve_scenario(const std::string &selector, std::uint64_t seed) {
  if (auto s = builtin_scenario(selector, seed)) return *s;
  return load_scenario_file(selector);
}

void prepare_output(const fs::path &dir, const std::vector<std::string> &files, bool force) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory '" + dir.string() + "': " + ec.message());
  if (force) return;
  for (const auto &f : files) {
    if (fs::exists(dir / f)) {
      throw UsageError("'" + (dir / f).string() + "' exists; pass --force to overwrite");
    }
  }
}

void write_file(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << content;
}

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Model require_model(const std::string &name) {
  auto m = parse_model(name);
  if (!m) throw UsageError("unknown model '" + name + "' (expected orca or follower)");
  return *m;
}

struct Prepared {
  Scenario scenario;
  SimParams params;
};

Prepared prepare(const std::string &selector, const ParamFlags &flags) {
  Prepared p;
  p.scenario = resolve_scenario(selector, flags.seed.value_or(SimParams{}.seed));
  p.params = flags.resolve(p.scenario);
  try {
    p.params.validate();
  } catch (const std::invalid_argument &e) {
    throw UsageError(std::string("invalid parameters: ") + e.what());
  }
  validate_scenario(p.scenario, p.params.agent_radius);
  return p;
}

int cmd_run(const std::string &selector, const std::string &model, const ParamFlags &flags,
            const std::string &out_dir, bool force, bool svg, bool trajectory, std::ostream &out) {
  Prepared prep = prepare(selector, flags);
  if (!model.empty()) prep.params.model = require_model(model);

  std::vector<std::string> files{"metrics.csv", "summary.json"};
  if (trajectory) files.push_back("trajectory.csv");
  if (svg) files.push_back("trajectory.svg");
  prepare_output(out_dir, files, force);

  const TrajectoryLog log = run(prep.scenario, prep.params, {flags.threads});
  const MetricSeries m1 = metric_series(log, MetricKind::m1, prep.params.dt);
  const MetricSeries m2 = metric_series(log, MetricKind::m2, prep.params.dt);

  const fs::path dir(out_dir);
  if (trajectory) {
    std::ostringstream csv;
    write_trajectory_csv(csv, log.records);
    write_file(dir / "trajectory.csv", csv.str());
  }
  {
    std::ostringstream csv;
    write_metrics_csv(csv, m1, m2);
    write_file(dir / "metrics.csv", csv.str());
  }
  const RunSummary summary = summarize(prep.scenario.name, log, prep.params);
  write_file(dir / "summary.json", summary_to_json(summary).dump(2) + "\n");
  if (svg) write_file(dir / "trajectory.svg", render_trajectories(log.records));

  out << prep.scenario.name << " [" << to_string(prep.params.model) << "]: " << summary.steps
      << " steps" << (summary.deadlock ? " (deadlock)" : "") << ", m1_auc=" << summary.m1_auc
      << ", m2_auc=" << summary.m2_auc << ", min_dist=" << summary.min_pair_distance << "\n";
  return kExitOk;
}

int cmd_compare(const std::string &selector, const std::string &models_text,
                const ParamFlags &flags, const std::string &out_dir, bool force,
                std::ostream &out) {
  const auto names = split_list(models_text);
  if (names.size() < 2) throw UsageError("--models needs at least two entries");
  std::vector<Model> models;
  for (const auto &n : names) models.push_back(require_model(n));
  const Prepared prep = prepare(selector, flags);
  prepare_output(out_dir, {"compare.csv", "compare.json", "m1.svg", "m2.svg"}, force);

  std::vector<LabeledRun> runs;
  nlohmann::ordered_json summaries = nlohmann::ordered_json::array();
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < models.size(); ++i) {
    SimParams p = prep.params;
    p.model = models[i];
    const TrajectoryLog log = run(prep.scenario, p, {flags.threads});
    std::string label = names[i];
    if (const int dup = seen[names[i]]++; dup > 0) label += "#" + std::to_string(dup + 1);
    runs.push_back({label, metric_series(log, MetricKind::m1, p.dt),
                    metric_series(log, MetricKind::m2, p.dt)});
    auto j = summary_to_json(summarize(prep.scenario.name, log, p));
    j["label"] = label;
    summaries.push_back(std::move(j));
    out << label << ": steps=" << log.steps() << " m2_auc=" << series_auc(runs.back().m2)
        << " m2_peak=" << runs.back().m2.peak() << "\n";
  }

  std::size_t n = 0;
  for (const auto &r : runs) n = std::max(n, r.m1.values.size());
  std::vector<Curve> c1;
  std::vector<Curve> c2;
  for (const auto &r : runs) {
    c1.push_back({r.label, r.m1.padded(n).values});
    c2.push_back({r.label, r.m2.padded(n).values});
  }
  const fs::path dir(out_dir);
  std::ostringstream csv;
  write_compare_csv(csv, runs);
  write_file(dir / "compare.csv", csv.str());
  write_file(dir / "compare.json", summaries.dump(2) + "\n");
  write_file(dir / "m1.svg", render_curves("M1 " + prep.scenario.name, c1, prep.params.dt));
  write_file(dir / "m2.svg", render_curves("M2 " + prep.scenario.name, c2, prep.params.dt));
  return kExitOk;
}

int cmd_plot(const std::string &trajectory, const std::string &out_file, int quiver, bool force,
             std::ostream &out, std::ostream &err) {
  std::ifstream in(trajectory);
  if (!in) {
    err << "error: cannot open '" << trajectory << "'\n";
    return kExitUsage;
  }
  std::vector<StepRecord> records;
  try {
    records = read_trajectory_csv(in);
  } catch (const CsvError &e) {
    err << "error: " << trajectory << ": " << e.what() << "\n";
    return kExitUsage;
  }
  if (!force && fs::exists(out_file)) {
    throw UsageError("'" + out_file + "' exists; pass --force to overwrite");
  }
  TrajectoryPlotOptions opts;
  opts.quiver_every = quiver;
  write_file(out_file, render_trajectories(records, opts));
  out << "wrote " << out_file << "\n";
  return kExitOk;
}

int cmd_bench(const std::string &agents_text, const std::string &models_text, int steps,
              std::uint64_t seed, int threads, const std::string &out_file, bool force,
              std::ostream &out, std::ostream &err) {
  std::vector<int> counts;
  for (const auto &a : split_list(agents_text)) {
    int n = 0;
    const auto res = std::from_chars(a.data(), a.data() + a.size(), n);
    if (res.ec != std::errc() || res.ptr != a.data() + a.size() || n < 1) {
      throw UsageError("bad agent count '" + a + "'");
    }
    counts.push_back(n);
  }
  if (counts.empty()) throw UsageError("--agents is empty");
  std::vector<Model> models;
  for (const auto &m : split_list(models_text)) models.push_back(require_model(m));
  if (models.empty()) throw UsageError("--models is empty");
  if (!out_file.empty() && !force && fs::exists(out_file)) {
    throw UsageError("'" + out_file + "' exists; pass --force to overwrite");
  }

  std::vector<BenchRow> rows;
  for (int n : counts) {
    for (Model m : models) {
      const int one[] = {n};
      const auto r = bench_runtime(m, one, steps, seed, {}, {threads});
      rows.insert(rows.end(), r.begin(), r.end());
    }
  }
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  if (out_file.empty()) {
    out << csv.str();
  } else {
    write_file(out_file, csv.str());
  }

  // follower / orca ratio per agent count, when both were measured. Kept off
  // stdout when the table itself goes there.
  std::ostream &note = out_file.empty() ? err : out;
  for (int n : counts) {
    double orca = 0.0;
    double fol = 0.0;
    for (const auto &r : rows) {
      if (r.agents != n) continue;
      (r.model == Model::orca ? orca : fol) = r.mean_step_seconds;
    }
    if (orca > 0.0 && fol > 0.0) note << "agents=" << n << " follower/orca=" << fol / orca << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Crowd simulation with emergent grouping on an ORCA substrate", "follower"};
  app.require_subcommand(1);

  ParamFlags run_flags;
  std::string run_scenario, run_model, run_out;
  bool run_force = false, run_svg = false, run_no_traj = false;
  auto *run_cmd = app.add_subcommand("run", "Simulate one scenario and export results");
  run_cmd->add_option("--scenario", run_scenario, "Built-in name or scenario JSON path")->required();
  run_cmd->add_option("--model", run_model, "orca or follower (default: scenario params, else follower)");
  run_cmd->add_option("--out", run_out, "Output directory")->required();
  run_cmd->add_flag("--force", run_force, "Overwrite existing outputs");
  run_cmd->add_flag("--svg", run_svg, "Also write trajectory.svg");
  run_cmd->add_flag("--no-trajectory", run_no_traj, "Skip trajectory.csv");
  run_flags.attach(*run_cmd);

  ParamFlags cmp_flags;
  std::string cmp_scenario, cmp_models = "orca,follower", cmp_out;
  bool cmp_force = false;
  auto *cmp_cmd = app.add_subcommand("compare", "Run several models on one scenario");
  cmp_cmd->add_option("--scenario", cmp_scenario, "Built-in name or scenario JSON path")->required();
  cmp_cmd->add_option("--models", cmp_models, "Comma-separated models");
  cmp_cmd->add_option("--out", cmp_out, "Output directory")->required();
  cmp_cmd->add_flag("--force", cmp_force, "Overwrite existing outputs");
  cmp_flags.attach(*cmp_cmd);

  std::string plot_in, plot_out;
  int plot_quiver = 0;
  bool plot_force = false;
  auto *plot_cmd = app.add_subcommand("plot", "Render a trajectory CSV as SVG");
  plot_cmd->add_option("--trajectory", plot_in, "trajectory.csv from a run")->required();
  plot_cmd->add_option("--out", plot_out, "SVG file to write")->required();
  plot_cmd->add_option("--quiver", plot_quiver, "Draw p/g arrows every N steps")->check(CLI::NonNegativeNumber);
  plot_cmd->add_flag("--force", plot_force, "Overwrite existing output");

  std::string bench_agents = "100,500,1000", bench_models = "orca,follower", bench_out;
  int bench_steps = 50, bench_threads = 1;
  std::uint64_t bench_seed = 42;
  bool bench_force = false;
  auto *bench_cmd = app.add_subcommand("bench", "Time steps on scaled circle scenarios");
  bench_cmd->add_option("--agents", bench_agents, "Comma-separated agent counts");
  bench_cmd->add_option("--models", bench_models, "Comma-separated models");
  bench_cmd->add_option("--steps", bench_steps, "Timed steps per run")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed, "Random seed");
  bench_cmd->add_option("--threads", bench_threads, "Worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_out, "CSV file (stdout when omitted)");
  bench_cmd->add_flag("--force", bench_force, "Overwrite existing output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*run_cmd) {
      return cmd_run(run_scenario, run_model, run_flags, run_out, run_force, run_svg,
                     !run_no_traj, out);
    }
    if (*cmp_cmd) return cmd_compare(cmp_scenario, cmp_models, cmp_flags, cmp_out, cmp_force, out);
    if (*plot_cmd) return cmd_plot(plot_in, plot_out, plot_quiver, plot_force, out, err);
    if (*bench_cmd) {
      return cmd_bench(bench_agents, bench_models, bench_steps, bench_seed, bench_threads,
                       bench_out, bench_force, out, err);
    }
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ScenarioError &e) {
    err << "error: " << e.what() << "\n";
    return kExitScenario;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitScenario;
  }
  return kExitUsage;
}

}  // namespace follower::cli
