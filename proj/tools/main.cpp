// pwlcf command-line front end: scenario ingestion, deterministic CSV
// outputs, and a run manifest per invocation.
//
// Exit codes: 0 success, 2 input error, 3 model-precondition violation.

#include <cstdint>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pwlcf/demo.hpp"
#include "pwlcf/errors.hpp"
#include "pwlcf/eulerian.hpp"
#include "pwlcf/io.hpp"
#include "pwlcf/law.hpp"
#include "pwlcf/open_road.hpp"
#include "pwlcf/ring.hpp"
#include "pwlcf/stationary.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

struct GlobalOptions {
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;  // overrides scenario seeds
  bool quiet = false;
};

struct RunManifest {
  std::string subcommand;
  json config = json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
};

void write_manifest(const GlobalOptions& global, const RunManifest& manifest) {
  json doc{{"subcommand", manifest.subcommand},
           {"config", manifest.config},
           {"seed", manifest.seed},
           {"version", kVersion},
           {"outputs", manifest.outputs}};
  pwlcf::write_text_file(
      (std::filesystem::path(global.out_dir) / "manifest.json").string(),
      doc.dump(2) + "\n");
}

std::string out_path(const GlobalOptions& global, const std::string& name) {
  return (std::filesystem::path(global.out_dir) / name).string();
}

void say(const GlobalOptions& global, const std::string& line) {
  if (!global.quiet) std::cout << line << '\n';
}

std::vector<double> parse_grid(const std::string& text) {
  // "start:stop:step" or comma-separated values
  std::vector<double> values;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const auto colon2 = text.find(':', colon + 1);
    if (colon2 == std::string::npos) {
      throw std::invalid_argument("grid: expected start:stop:step");
    }
    const double start = std::stod(text.substr(0, colon));
    const double stop = std::stod(text.substr(colon + 1, colon2 - colon - 1));
    const double step = std::stod(text.substr(colon2 + 1));
    if (!(step > 0.0)) throw std::invalid_argument("grid: step must be positive");
    for (double v = start; v <= stop + 1e-12; v += step) values.push_back(v);
    return values;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    values.push_back(std::stod(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

int run_fit(const GlobalOptions& global, const std::string& samples_file,
            std::size_t pieces) {
  const std::vector<pwlcf::Sample> samples = pwlcf::load_samples_csv(samples_file);
  const pwlcf::FitResult fit = pwlcf::fit_concave(samples, pieces);
  const std::string law_path = out_path(global, "law.json");
  pwlcf::save_law(fit.law, law_path);

  const double y_jam = pwlcf::law_zero_crossing(fit.law);
  json report{{"samples", samples.size()},
              {"pieces_requested", fit.pieces_requested},
              {"pieces_selected", fit.pieces_selected},
              {"sup_error_envelope", fit.sup_error_envelope},
              {"sup_error_samples", fit.sup_error_samples},
              {"fitted_y_jam", y_jam}};
  const std::string report_path = out_path(global, "fit_report.json");
  pwlcf::write_text_file(report_path, report.dump(2) + "\n");

  say(global, "fit: " + std::to_string(fit.pieces_selected) + " pieces, sup error vs envelope " +
                  pwlcf::format_double(fit.sup_error_envelope) + " m/step (vs samples " +
                  pwlcf::format_double(fit.sup_error_samples) + ")");
  RunManifest manifest{"fit",
                       json{{"samples_file", samples_file}, {"pieces", pieces}},
                       0,
                       {law_path, report_path}};
  write_manifest(global, manifest);
  return 0;
}

int run_diagram(const GlobalOptions& global, const std::string& law_file,
                const std::string& grid_text, bool empirical, int emp_nu,
                std::int64_t emp_horizon, bool parallel) {
  const pwlcf::PwlLaw law = pwlcf::load_law(law_file);
  const std::vector<double> densities = parse_grid(grid_text);
  if (densities.empty()) throw std::invalid_argument("diagram: empty density grid");

  const std::uint64_t seed = global.seed.value_or(0);
  std::vector<pwlcf::FlowDiagramRow> rows(densities.size());
  auto fill_row = [&](std::size_t i) {
    pwlcf::FlowDiagramRow row;
    row.rho = densities[i];
    row.q_model = law.flow(densities[i]);
    if (empirical) {
      if (!(densities[i] > 0.0)) {
        throw std::invalid_argument("diagram: empirical column needs rho > 0");
      }
      const std::vector<double> one{densities[i]};
      row.q_empirical =
          pwlcf::empirical_diagram(law, one, emp_nu, emp_horizon, seed).front().q;
    }
    rows[i] = row;
  };
  if (parallel) {
    std::vector<std::future<void>> work;
    work.reserve(densities.size());
    for (std::size_t i = 0; i < densities.size(); ++i) {
      work.push_back(std::async(std::launch::async, fill_row, i));
    }
    for (auto& w : work) w.get();
  } else {
    for (std::size_t i = 0; i < densities.size(); ++i) fill_row(i);
  }

  const std::string flow_path = out_path(global, "flow_diagram.csv");
  pwlcf::write_flow_diagram_csv(flow_path, rows);

  std::vector<double> headways;
  for (double rho : densities) {
    if (rho > 0.0) headways.push_back(1.0 / rho);
  }
  std::vector<std::string> outputs{flow_path};
  if (!headways.empty()) {
    const std::string speed_path = out_path(global, "speed_diagram.csv");
    pwlcf::write_speed_diagram_csv(speed_path, pwlcf::speed_diagram(law, headways));
    outputs.push_back(speed_path);
  }
  say(global, "diagram: " + std::to_string(rows.size()) + " densities written");
  RunManifest manifest{"diagram",
                       json{{"law_file", law_file},
                            {"grid", grid_text},
                            {"empirical", empirical},
                            {"empirical_nu", emp_nu},
                            {"empirical_horizon", emp_horizon}},
                       seed, outputs};
  write_manifest(global, manifest);
  return 0;
}

int run_ring(const GlobalOptions& global, const std::string& scenario_file) {
  pwlcf::RingScenario scenario = pwlcf::load_ring_scenario(scenario_file);
  if (global.seed) scenario.seed = *global.seed;
  const pwlcf::RingConfig config{scenario.nu, scenario.mu};
  pwlcf::RingState start =
      scenario.noisy
          ? pwlcf::noisy_ring_state(config, scenario.noise_amplitude, scenario.seed)
          : pwlcf::uniform_ring_state(config);
  const auto trajectory =
      pwlcf::simulate_ring(std::move(start), scenario.law, config, scenario.horizon);

  const std::string traj_path = out_path(global, "trajectory.csv");
  const std::string head_path = out_path(global, "headways.csv");
  pwlcf::write_ring_trajectory_csv(traj_path, trajectory);
  pwlcf::write_ring_headways_csv(head_path, trajectory, config);

  json summary{{"nu", scenario.nu}, {"mu", scenario.mu}, {"horizon", scenario.horizon}};
  if (trajectory.size() >= 2) {
    const std::vector<double> chi = pwlcf::growth_rate(trajectory);
    summary["growth_rate_mean"] = pwlcf::mean(chi);
    summary["growth_rate"] = chi;
    say(global, "ring: mean growth rate " + pwlcf::format_double(pwlcf::mean(chi)) +
                    " m/step over " + std::to_string(scenario.horizon) + " steps");
  }
  if (scenario.law.stable()) {
    const pwlcf::EigenPair pair = pwlcf::eigen_solution_ring(scenario.law, config);
    summary["v_bar"] = pair.v_bar;
  }
  const std::string summary_path = out_path(global, "ring_summary.json");
  pwlcf::write_text_file(summary_path, summary.dump(2) + "\n");

  RunManifest manifest{"ring",
                       json{{"scenario_file", scenario_file},
                            {"nu", scenario.nu},
                            {"mu", scenario.mu},
                            {"horizon", scenario.horizon},
                            {"init", scenario.noisy ? "noisy" : "uniform"},
                            {"noise_amplitude", scenario.noise_amplitude}},
                       scenario.seed,
                       {traj_path, head_path, summary_path}};
  write_manifest(global, manifest);
  return 0;
}

int run_open(const GlobalOptions& global, const std::string& scenario_file,
             const std::string& emit_scenario) {
  pwlcf::OpenScenario scenario = scenario_file.empty()
                                     ? pwlcf::demo::default_open_scenario()
                                     : pwlcf::load_open_scenario(scenario_file);
  if (global.seed) scenario.seed = *global.seed;
  if (!emit_scenario.empty()) {
    pwlcf::save_open_scenario(scenario, emit_scenario);
    say(global, "open: scenario written to " + emit_scenario);
    return 0;
  }

  pwlcf::OpenState start =
      pwlcf::uniform_open_state(scenario.nu, scenario.initial_headway);
  const auto trajectory =
      pwlcf::simulate_open(std::move(start), scenario.law, scenario.profile,
                           scenario.horizon);

  const std::string traj_path = out_path(global, "trajectory.csv");
  pwlcf::write_open_trajectory_csv(traj_path, trajectory);

  json summary{{"nu", scenario.nu},
               {"horizon", scenario.horizon},
               {"ordering_violation_steps",
                pwlcf::count_ordering_violations(trajectory)}};
  std::vector<std::string> outputs{traj_path};

  if (scenario.nu >= 2) {
    const auto series = pwlcf::hysteresis_series(trajectory, scenario.profile);
    const std::string hyst_path = out_path(global, "hysteresis.csv");
    pwlcf::write_hysteresis_csv(hyst_path, series);
    outputs.push_back(hyst_path);
    summary["final_mean_headway"] = series.back().mean_headway;
    say(global, "open: final mean headway " +
                    pwlcf::format_double(series.back().mean_headway) + " m");

    // loop gap between the last two opposing ramps, when the profile has them
    const auto& segs = scenario.profile.segments();
    std::vector<const pwlcf::ProfileSegment*> ramps;
    for (const auto& s : segs) {
      if (s.kind == pwlcf::SegmentKind::linear_ramp && s.v_start != s.v_end) {
        ramps.push_back(&s);
      }
    }
    const pwlcf::ProfileSegment* branch_a = nullptr;
    const pwlcf::ProfileSegment* branch_b = nullptr;
    for (std::size_t i = 0; i + 1 < ramps.size(); ++i) {
      const bool opposing = (ramps[i]->v_end - ramps[i]->v_start) *
                                (ramps[i + 1]->v_end - ramps[i + 1]->v_start) <
                            0.0;
      if (opposing) {
        branch_a = ramps[i];
        branch_b = ramps[i + 1];
      }
    }
    if (branch_a != nullptr) {
      const double gap = pwlcf::hysteresis_loop_gap(
          series, branch_a->t_start, branch_a->t_end, branch_b->t_start,
          branch_b->t_end);
      summary["loop_gap_m"] = gap;
      say(global, "open: hysteresis loop gap " + pwlcf::format_double(gap) + " m");
    }
  }
  const std::string summary_path = out_path(global, "open_summary.json");
  pwlcf::write_text_file(summary_path, summary.dump(2) + "\n");
  outputs.push_back(summary_path);

  RunManifest manifest{"open",
                       json{{"scenario_file",
                             scenario_file.empty() ? "<builtin-default>" : scenario_file},
                            {"nu", scenario.nu},
                            {"initial_headway_m", scenario.initial_headway},
                            {"horizon", scenario.horizon}},
                       scenario.seed, outputs};
  write_manifest(global, manifest);
  return 0;
}

int run_eigen(const GlobalOptions& global, const std::string& law_file,
              std::optional<int> nu, std::optional<double> mu,
              std::optional<double> v1) {
  const pwlcf::PwlLaw law = pwlcf::load_law(law_file);
  if (!nu) throw std::invalid_argument("eigen: --nu is required");
  json doc;
  pwlcf::EigenPair pair;
  double residual = 0.0;
  if (mu && !v1) {
    const pwlcf::RingConfig config{*nu, *mu};
    pair = pwlcf::eigen_solution_ring(law, config);
    residual = pwlcf::eigen_residual(law, config, pair);
    doc["mode"] = "ring";
    doc["y_bar"] = config.mean_headway();
  } else if (v1 && !mu) {
    pair = pwlcf::eigen_solution_open(law, *v1, *nu);
    residual = pwlcf::eigen_residual_open(law, *v1, pair);
    doc["mode"] = "open";
    doc["y_tilde"] = pwlcf::stationary_headway(law, *v1).value;
  } else {
    throw std::invalid_argument("eigen: pass exactly one of --mu (ring) or --v1 (open)");
  }
  doc["v_bar"] = static_cast<double>(pair.v_bar);
  std::vector<double> profile(pair.x.begin(), pair.x.end());
  doc["x"] = profile;
  doc["residual"] = residual;
  const std::string eigen_path = out_path(global, "eigen.json");
  pwlcf::write_text_file(eigen_path, doc.dump(2) + "\n");
  say(global, "eigen: v_bar " + pwlcf::format_double(pair.v_bar) + ", residual " +
                  pwlcf::format_double(residual));

  RunManifest manifest{"eigen",
                       json{{"law_file", law_file},
                            {"nu", *nu},
                            {"mu", mu ? json(*mu) : json()},
                            {"v1", v1 ? json(*v1) : json()}},
                       0,
                       {eigen_path}};
  write_manifest(global, manifest);
  return 0;
}

int run_dual(const GlobalOptions& global, const std::string& instance_file) {
  const pwlcf::DualInstance instance = pwlcf::load_dual_instance(instance_file);
  const pwlcf::CountField counts =
      pwlcf::solve_counts(instance.grid, instance.arrivals, instance.horizon);
  const pwlcf::TimeField times =
      pwlcf::solve_times(instance.grid, instance.arrivals, instance.horizon);
  const std::int64_t discrepancy =
      pwlcf::duality_check(instance.grid, instance.arrivals, instance.horizon);

  const std::string counts_path = out_path(global, "counts.csv");
  const std::string times_path = out_path(global, "times.csv");
  pwlcf::write_counts_csv(counts_path, counts);
  pwlcf::write_times_csv(times_path, times);

  json report{{"segments", instance.grid.size()},
              {"horizon", instance.horizon},
              {"cars", times.car_count()},
              {"max_duality_discrepancy", discrepancy}};
  const std::string report_path = out_path(global, "duality_report.json");
  pwlcf::write_text_file(report_path, report.dump(2) + "\n");
  say(global, "dual: max duality discrepancy " + std::to_string(discrepancy));

  RunManifest manifest{"dual",
                       json{{"instance_file", instance_file}},
                       0,
                       {counts_path, times_path, report_path}};
  write_manifest(global, manifest);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOptions global;
  CLI::App app{"piecewise-linear car-following toolkit"};
  app.require_subcommand(1);
  app.add_option("--out", global.out_dir, "output directory")->capture_default_str();
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt =
      app.add_option("--seed", seed_value, "override the scenario seed");
  app.add_flag("--quiet", global.quiet, "suppress stdout summaries");

  // fit
  std::string samples_file;
  std::size_t pieces = 1;
  CLI::App* fit = app.add_subcommand("fit", "concave piecewise-linear diagram fit");
  fit->add_option("samples", samples_file, "CSV with header y,v")->required();
  fit->add_option("pieces", pieces, "number of pieces")->required();

  // diagram
  std::string law_file;
  std::string grid_text;
  std::vector<std::string> empirical_args;
  bool parallel = false;
  CLI::App* diagram = app.add_subcommand("diagram", "model (and simulated) flow diagram");
  diagram->add_option("law", law_file, "law JSON file")->required();
  diagram->add_option("--rho", grid_text, "density grid: start:stop:step or comma list")
      ->required();
  diagram->add_option("--empirical", empirical_args,
                      "append a simulated column: NU HORIZON")
      ->expected(2);
  diagram->add_flag("--parallel", parallel, "sweep densities in parallel");

  // ring
  std::string ring_scenario;
  CLI::App* ring = app.add_subcommand("ring", "ring-road simulation");
  ring->add_option("scenario", ring_scenario, "ring scenario JSON")->required();

  // open
  std::string open_scenario;
  std::string emit_scenario;
  CLI::App* open = app.add_subcommand("open", "open-road (lead-driven) simulation");
  open->add_option("scenario", open_scenario,
                   "open scenario JSON (omit for the built-in demonstration)");
  open->add_option("--emit-scenario", emit_scenario,
                   "write the scenario JSON to this path and exit");

  // eigen
  std::string eigen_law;
  std::optional<int> eigen_nu;
  std::optional<double> eigen_mu;
  std::optional<double> eigen_v1;
  CLI::App* eigen = app.add_subcommand("eigen", "stationary eigenpair and residual");
  eigen->add_option("law", eigen_law, "law JSON file")->required();
  eigen->add_option("--nu", eigen_nu, "car count")->required();
  eigen->add_option("--mu", eigen_mu, "ring length (ring mode)");
  eigen->add_option("--v1", eigen_v1, "lead velocity (open mode)");

  // dual
  std::string instance_file;
  CLI::App* dual = app.add_subcommand("dual", "Eulerian count/passage-time duals");
  dual->add_option("instance", instance_file, "dual instance JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (seed_opt->count() > 0) global.seed = seed_value;

  try {
    std::filesystem::create_directories(global.out_dir);
    if (fit->parsed()) return run_fit(global, samples_file, pieces);
    if (diagram->parsed()) {
      const bool empirical = !empirical_args.empty();
      const int emp_nu = empirical ? std::stoi(empirical_args[0]) : 0;
      const std::int64_t emp_horizon =
          empirical ? std::stoll(empirical_args[1]) : 0;
      return run_diagram(global, law_file, grid_text, empirical, emp_nu,
                         emp_horizon, parallel);
    }
    if (ring->parsed()) return run_ring(global, ring_scenario);
    if (open->parsed()) return run_open(global, open_scenario, emit_scenario);
    if (eigen->parsed()) return run_eigen(global, eigen_law, eigen_nu, eigen_mu, eigen_v1);
    if (dual->parsed()) return run_dual(global, instance_file);
  } catch (const pwlcf::ModelError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
