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
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gatesteer/propagator.hpp"

namespace gatesteer {

enum class TargetKind { Hadamard, Cnot, Rotation, CustomFile };
enum class ControlSet { SigmaX2, SigmaX1PlusX2, SigmaXSingle };

/// One named experiment: system, target gate, control set and run parameters.
/// Serialised as flat key = value text (one key per line, '#' comments); see
/// scenario_schema() for the key list.
struct ScenarioConfig {
  std::string name = "scenario";
  HamiltonianSpec system;
  TargetKind target = TargetKind::Hadamard;
  RotationTarget rotation;   // used when target == Rotation
  std::string target_file;   // used when target == CustomFile
  ControlSet control_set = ControlSet::SigmaXSingle;
  double gain = 0.05;
  double tau = 0.0;
  double t_max = 10.0;
  double step = 1e-3;
  double sample_interval = 1e-2;
  std::optional<double> control_off_time;
  bool record_invariants = false;
  int reunitarize_every = 100;
  std::string output_path = "out";
};

/// Built-in scenarios: "fig1", "fig2", "fig4", "fig5a", "fig5b".
/// Throws ConfigError for unknown names.
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// The documented config keys, one per line, for --help style output.
std::string scenario_schema();

/// Parse a scenario from key = value text, starting from `base` when given.
ScenarioConfig load_scenario(std::istream& in,
                             std::optional<ScenarioConfig> base = {});
ScenarioConfig load_scenario_file(const std::string& path,
                                  std::optional<ScenarioConfig> base = {});

/// Build the runnable SimulationConfig (target and control matrices
/// materialised, law validated). Throws ConfigError on inconsistent choices.
SimulationConfig resolve(const ScenarioConfig& scenario);

/// Run the scenario, write `<out>/<name>.csv` and `<out>/<name>.meta`, and
/// log a peak-fidelity summary (and a warning when the tracked operator is
/// degenerate at the start).
SimulationTrace run_scenario(const ScenarioConfig& scenario, std::ostream& log);

/// Fidelity-versus-(tau, t) grid of independent runs.
struct SweepGrid {
  std::vector<double> tau_values;
  std::vector<double> t_values;
  std::vector<std::vector<double>> fidelity;  // [tau index][t index]
};

/// One simulation per tau (fanned out across hardware threads, gathered in
/// tau order); writes `<out>/<name>_sweep.csv` in long format `tau,t,F` and
/// logs the grid maximum.
SweepGrid tau_sweep(const ScenarioConfig& base, double tau_min, double tau_max,
                    int tau_count, double t_max, std::ostream& log);

/// Equivalence-class persistence run: control switched off at t_off (when
/// absent, detected as the first time the squared field norm stays below
/// 1e-6 K^2 for one full time unit; falls back to t_max/2), invariants
/// recorded, plus a closed-form no-control baseline written to
/// `<out>/<name>_baseline.csv` as `t,D`.
SimulationTrace equivalence_run(const ScenarioConfig& base,
                                std::optional<double> t_off, std::ostream& log);

/// Trace CSV: header t,V,F,f1[,f2...][,D], 12 significant digits.
void write_trace_csv(const SimulationTrace& trace, const std::string& path);
void write_trace_csv(const SimulationTrace& trace, std::ostream& out);

/// Sidecar with every scenario field, in the config schema (reloadable).
void write_metadata(const ScenarioConfig& scenario, const std::string& path);

/// Dense complex matrix as dim^2 lines of "re im", row-major.
ComplexMatrix read_matrix_file(const std::string& path, int dim);

/// Invariants report for a 4x4 matrix: the triple and the distance to the
/// CNOT class, 12 significant digits.
std::string format_invariants_report(const ComplexMatrix& u);

}  // namespace gatesteer
