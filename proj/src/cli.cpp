/* Copyright 2026 The Gatesteer Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "gatesteer/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "gatesteer/errors.hpp"
#include "gatesteer/invariants.hpp"
#include "gatesteer/scenario.hpp"

namespace gatesteer {

namespace {

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // print negative zero as "0"
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ScenarioConfig load_base(const std::string& preset_name,
                         const std::string& config_path,
                         const std::string& out_dir) {
  if (preset_name.empty() && config_path.empty())
    throw ConfigError("need --preset and/or --config");
  std::optional<ScenarioConfig> base;
  if (!preset_name.empty()) base = preset(preset_name);
  ScenarioConfig scenario =
      config_path.empty() ? *base : load_scenario_file(config_path, base);
  if (!out_dir.empty()) scenario.output_path = out_dir;
  return scenario;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Quantum gate synthesis by Lyapunov tracking control"};
  app.require_subcommand(1);

  std::string preset_name, config_path, out_dir, matrix_path;
  double tau_min = 0.0, tau_max = 0.0;
  int tau_count = 101;
  std::optional<double> sweep_t_max, t_off;
  int count = 50;
  unsigned long long seed = 1;
  double rot_gain = 0.05, rot_tau = 1.0, rot_omega = 1.0;
  double rot_t_max = 100.0 * 3.14159265358979323846;

  CLI::App* sim = app.add_subcommand("simulate", "Run one scenario");
  sim->add_option("--config", config_path, "scenario config file");
  sim->add_option("--preset", preset_name, "built-in scenario name");
  sim->add_option("--out", out_dir, "output directory override");

  CLI::App* sweep = app.add_subcommand("sweep", "Fidelity grid over tau and t");
  sweep->add_option("--config", config_path, "scenario config file");
  sweep->add_option("--preset", preset_name, "built-in scenario name");
  sweep->add_option("--out", out_dir, "output directory override");
  sweep->add_option("--tau-min", tau_min, "smallest tau")->required();
  sweep->add_option("--tau-max", tau_max, "largest tau")->required();
  sweep->add_option("--tau-count", tau_count, "number of tau values");
  sweep->add_option("--t-max", sweep_t_max, "duration of each run");

  CLI::App* rot = app.add_subcommand(
      "rotations", "Batch of random single-qubit rotation targets");
  rot->add_option("--count", count, "number of targets");
  rot->add_option("--seed", seed, "generator seed");
  rot->add_option("--gain", rot_gain, "control gain K");
  rot->add_option("--tau", rot_tau, "tracking shift");
  rot->add_option("--omega", rot_omega, "qubit frequency");
  rot->add_option("--t-max", rot_t_max, "duration of each run");
  rot->add_option("--out", out_dir, "output directory for rotations.csv");

  CLI::App* equiv = app.add_subcommand(
      "equivalence", "Equivalence-class persistence run with switch-off");
  equiv->add_option("--preset", preset_name, "fig5a or fig5b");
  equiv->add_option("--config", config_path, "scenario config file");
  equiv->add_option("--t-off", t_off, "control switch-off time");
  equiv->add_option("--out", out_dir, "output directory override");

  CLI::App* inv = app.add_subcommand(
      "invariants", "Local invariants of a 4x4 matrix file");
  inv->add_option("--matrix", matrix_path, "16 lines of 're im'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (sim->parsed()) {
      run_scenario(load_base(preset_name, config_path, out_dir), out);
    } else if (sweep->parsed()) {
      const ScenarioConfig base = load_base(preset_name, config_path, out_dir);
      tau_sweep(base, tau_min, tau_max, tau_count,
                sweep_t_max.value_or(base.t_max), out);
    } else if (rot->parsed()) {
      const HamiltonianSpec system{HamiltonianKind::SingleQubit, rot_omega,
                                   0.0, 0.0};
      const RotationBatchResult batch =
          rotation_batch(system, rot_gain, rot_tau, rot_t_max, count, seed);
      int reached = 0;
      for (const RotationSample& s : batch.samples)
        if (s.peak_fidelity >= 0.99) ++reached;
      out << "rotations: count = " << count << ", seed = " << seed
          << ", median peak F = " << fmt(batch.median_peak)
          << ", min peak F = " << fmt(batch.min_peak) << ", peak F >= 0.99 for "
          << reached << "/" << count << "\n";
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        const std::string path =
            (std::filesystem::path(out_dir) / "rotations.csv").string();
        std::ofstream csv(path);
        if (!csv) throw IoError("cannot open " + path + " for writing");
        csv << "index,theta,polar,azimuth,peak_t,peak_F\n";
        for (std::size_t i = 0; i < batch.samples.size(); ++i) {
          const RotationSample& s = batch.samples[i];
          csv << i << ',' << fmt(s.target.theta) << ',' << fmt(s.target.polar)
              << ',' << fmt(s.target.azimuth) << ',' << fmt(s.peak_time) << ','
              << fmt(s.peak_fidelity) << '\n';
        }
      }
    } else if (equiv->parsed()) {
      equivalence_run(load_base(preset_name, config_path, out_dir), t_off, out);
    } else if (inv->parsed()) {
      out << format_invariants_report(read_matrix_file(matrix_path, 4));
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace gatesteer
