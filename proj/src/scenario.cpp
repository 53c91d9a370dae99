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
#include "gatesteer/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "gatesteer/errors.hpp"
#include "gatesteer/invariants.hpp"

namespace gatesteer {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // print negative zero as "0"
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': " + value);
  }
  if (pos != value.size())
    throw ConfigError("config: trailing junk for '" + key + "': " + value);
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: bad boolean for '" + key + "': " + value);
}

std::string system_name(HamiltonianKind kind) {
  switch (kind) {
    case HamiltonianKind::SingleQubit: return "single_qubit";
    case HamiltonianKind::Ising: return "ising";
    case HamiltonianKind::Heisenberg: return "heisenberg";
  }
  return "?";
}

std::string target_name(const ScenarioConfig& s) {
  switch (s.target) {
    case TargetKind::Hadamard: return "hadamard";
    case TargetKind::Cnot: return "cnot";
    case TargetKind::Rotation: return "rotation";
    case TargetKind::CustomFile: return "file:" + s.target_file;
  }
  return "?";
}

std::string control_set_name(ControlSet c) {
  switch (c) {
    case ControlSet::SigmaX2: return "sigma_x2";
    case ControlSet::SigmaX1PlusX2: return "sigma_x1_plus_x2";
    case ControlSet::SigmaXSingle: return "sigma_x_single";
  }
  return "?";
}

void apply_key(ScenarioConfig& s, const std::string& key,
               const std::string& value) {
  if (key == "name") {
    s.name = value;
  } else if (key == "system") {
    if (value == "single_qubit") s.system.kind = HamiltonianKind::SingleQubit;
    else if (value == "ising") s.system.kind = HamiltonianKind::Ising;
    else if (value == "heisenberg") s.system.kind = HamiltonianKind::Heisenberg;
    else throw ConfigError("config: unknown system '" + value + "'");
  } else if (key == "omega1") {
    s.system.omega1 = parse_double(key, value);
  } else if (key == "omega2") {
    s.system.omega2 = parse_double(key, value);
  } else if (key == "coupling") {
    s.system.coupling = parse_double(key, value);
  } else if (key == "target") {
    if (value == "hadamard") s.target = TargetKind::Hadamard;
    else if (value == "cnot") s.target = TargetKind::Cnot;
    else if (value == "rotation") s.target = TargetKind::Rotation;
    else if (value.rfind("file:", 0) == 0) {
      s.target = TargetKind::CustomFile;
      s.target_file = value.substr(5);
    } else {
      throw ConfigError("config: unknown target '" + value + "'");
    }
  } else if (key == "theta") {
    s.rotation.theta = parse_double(key, value);
  } else if (key == "polar") {
    s.rotation.polar = parse_double(key, value);
  } else if (key == "azimuth") {
    s.rotation.azimuth = parse_double(key, value);
  } else if (key == "control_set") {
    if (value == "sigma_x2") s.control_set = ControlSet::SigmaX2;
    else if (value == "sigma_x1_plus_x2") s.control_set = ControlSet::SigmaX1PlusX2;
    else if (value == "sigma_x_single") s.control_set = ControlSet::SigmaXSingle;
    else throw ConfigError("config: unknown control_set '" + value + "'");
  } else if (key == "gain") {
    s.gain = parse_double(key, value);
  } else if (key == "tau") {
    s.tau = parse_double(key, value);
  } else if (key == "t_max") {
    s.t_max = parse_double(key, value);
  } else if (key == "step") {
    s.step = parse_double(key, value);
  } else if (key == "sample_interval") {
    s.sample_interval = parse_double(key, value);
  } else if (key == "control_off_time") {
    if (value.empty() || value == "none") s.control_off_time.reset();
    else s.control_off_time = parse_double(key, value);
  } else if (key == "record_invariants") {
    s.record_invariants = parse_bool(key, value);
  } else if (key == "reunitarize_every") {
    const double v = parse_double(key, value);
    s.reunitarize_every = static_cast<int>(v);
    if (s.reunitarize_every < 1 || s.reunitarize_every != v)
      throw ConfigError("config: reunitarize_every must be a positive integer");
  } else if (key == "output_path") {
    s.output_path = value;
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

void ensure_parent_dir(const std::string& path) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(parent, ec);
  if (ec) throw IoError("cannot create directory " + parent.string());
}

std::ofstream open_output(const std::string& path) {
  ensure_parent_dir(path);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

std::string output_file(const ScenarioConfig& s, const std::string& suffix) {
  return (std::filesystem::path(s.output_path) / (s.name + suffix)).string();
}

}  // namespace

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig s;
  s.name = name;
  if (name == "fig1") {
    s.system = {HamiltonianKind::SingleQubit, 1.0, 0.0, 0.0};
    s.target = TargetKind::Hadamard;
    s.control_set = ControlSet::SigmaXSingle;
    s.gain = 0.05;
    s.tau = 1.0;
    s.t_max = 40.0 * kPi;  // twenty precession cycles
    s.sample_interval = 0.01;
    return s;
  }
  if (name == "fig2" || name == "fig5a") {
    s.system = {HamiltonianKind::Ising, 1.0, 2.0, 0.05};
    s.target = TargetKind::Cnot;
    s.control_set = ControlSet::SigmaX2;
    s.gain = 0.1;
    s.tau = 0.3;
    s.t_max = 400.0;
    s.sample_interval = 0.05;
    s.record_invariants = (name == "fig5a");
    return s;
  }
  if (name == "fig4" || name == "fig5b") {
    s.system = {HamiltonianKind::Heisenberg, 1.0, 2.0, 0.2};
    s.target = TargetKind::Cnot;
    s.control_set = ControlSet::SigmaX2;
    s.gain = 0.2;
    s.tau = 0.2;
    s.t_max = 200.0;
    s.sample_interval = 0.05;
    s.record_invariants = (name == "fig5b");
    return s;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig4", "fig5a", "fig5b"};
}

std::string scenario_schema() {
  return
      "name = <string>\n"
      "system = single_qubit | ising | heisenberg\n"
      "omega1 = <angular frequency, > 0>\n"
      "omega2 = <angular frequency, > 0 for two-qubit systems>\n"
      "coupling = <J>\n"
      "target = hadamard | cnot | rotation | file:<path>\n"
      "theta = <rotation angle>\n"
      "polar = <rotation axis polar angle>\n"
      "azimuth = <rotation axis azimuth>\n"
      "control_set = sigma_x_single | sigma_x2 | sigma_x1_plus_x2\n"
      "gain = <K, > 0>\n"
      "tau = <tracking shift>\n"
      "t_max = <duration>\n"
      "step = <RK4 step>\n"
      "sample_interval = <recording cadence>\n"
      "control_off_time = <time> | none\n"
      "record_invariants = true | false\n"
      "reunitarize_every = <steps>\n"
      "output_path = <directory>\n";
}

ScenarioConfig load_scenario(std::istream& in,
                             std::optional<ScenarioConfig> base) {
  ScenarioConfig s = base ? *std::move(base) : ScenarioConfig{};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    apply_key(s, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return s;
}

ScenarioConfig load_scenario_file(const std::string& path,
                                  std::optional<ScenarioConfig> base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  return load_scenario(in, std::move(base));
}

SimulationConfig resolve(const ScenarioConfig& scenario) {
  validate(scenario.system);
  const int dim = dimension(scenario.system);

  ComplexMatrix target;
  switch (scenario.target) {
    case TargetKind::Hadamard: target = hadamard(); break;
    case TargetKind::Cnot: target = cnot(); break;
    case TargetKind::Rotation: target = rotation_gate(scenario.rotation); break;
    case TargetKind::CustomFile:
      target = read_matrix_file(scenario.target_file, dim);
      break;
  }
  if (target.dim() != dim)
    throw ConfigError("config: target dimension does not match the system");

  std::vector<ComplexMatrix> controls;
  switch (scenario.control_set) {
    case ControlSet::SigmaXSingle:
      controls.push_back(pauli(PauliAxis::X));
      break;
    case ControlSet::SigmaX2:
      controls.push_back(embed(pauli(PauliAxis::X), 2));
      break;
    case ControlSet::SigmaX1PlusX2:
      controls.push_back(embed(pauli(PauliAxis::X), 1) +
                         embed(pauli(PauliAxis::X), 2));
      break;
  }
  if (controls.front().dim() != dim)
    throw ConfigError("config: control_set does not match the system");

  const ControlSystem system = make_control_system(scenario.system, controls);

  SimulationConfig cfg;
  cfg.system = scenario.system;
  cfg.law = make_control_law(system, target, scenario.tau, scenario.gain);
  cfg.t_max = scenario.t_max;
  cfg.step = scenario.step;
  cfg.sample_interval = scenario.sample_interval;
  cfg.control_off_time = scenario.control_off_time;
  cfg.record_invariants = scenario.record_invariants;
  cfg.reunitarize_every = scenario.reunitarize_every;
  validate(cfg);
  return cfg;
}

SimulationTrace run_scenario(const ScenarioConfig& scenario, std::ostream& log) {
  const SimulationConfig cfg = resolve(scenario);
  if (starts_degenerate(cfg.law))
    log << "warning: tracked operator is ineffective at tau = "
        << fmt(scenario.tau) << " (fields start at zero)\n";
  const SimulationTrace trace = simulate(cfg);
  write_trace_csv(trace, output_file(scenario, ".csv"));
  write_metadata(scenario, output_file(scenario, ".meta"));
  const auto [t_peak, f_peak] = peak_fidelity(trace);
  log << scenario.name << ": peak F = " << fmt(f_peak) << " at t = "
      << fmt(t_peak) << "\n";
  return trace;
}

SweepGrid tau_sweep(const ScenarioConfig& base, double tau_min, double tau_max,
                    int tau_count, double t_max, std::ostream& log) {
  if (tau_count < 2) throw ConfigError("tau_sweep: tau_count must be >= 2");
  if (!(tau_max >= tau_min)) throw ConfigError("tau_sweep: bad tau range");

  SweepGrid grid;
  grid.tau_values.resize(tau_count);
  for (int i = 0; i < tau_count; ++i)
    grid.tau_values[i] =
        tau_min + (tau_max - tau_min) * i / static_cast<double>(tau_count - 1);
  grid.fidelity.resize(tau_count);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::vector<double>> times(tau_count);
  const auto worker = [&] {
    try {
      for (int i = next.fetch_add(1); i < tau_count && !failed;
           i = next.fetch_add(1)) {
        ScenarioConfig row = base;
        row.tau = grid.tau_values[i];
        row.t_max = t_max;
        row.record_invariants = false;
        const SimulationTrace trace = simulate(resolve(row));
        times[i].reserve(trace.samples.size());
        grid.fidelity[i].reserve(trace.samples.size());
        for (const TraceSample& s : trace.samples) {
          times[i].push_back(s.t);
          grid.fidelity[i].push_back(s.fidelity);
        }
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      failed = true;
    }
  };
  const int n_workers = std::max(
      1, std::min<int>(tau_count,
                       static_cast<int>(std::thread::hardware_concurrency())));
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  grid.t_values = times.front();

  std::ofstream out = open_output(output_file(base, "_sweep.csv"));
  out << "tau,t,F\n";
  double best_f = -1.0, best_tau = 0.0, best_t = 0.0;
  for (int i = 0; i < tau_count; ++i) {
    for (std::size_t j = 0; j < grid.t_values.size(); ++j) {
      out << fmt(grid.tau_values[i]) << ',' << fmt(grid.t_values[j]) << ','
          << fmt(grid.fidelity[i][j]) << '\n';
      if (grid.fidelity[i][j] > best_f) {
        best_f = grid.fidelity[i][j];
        best_tau = grid.tau_values[i];
        best_t = grid.t_values[j];
      }
    }
  }
  log << base.name << " sweep: max F = " << fmt(best_f) << " at tau = "
      << fmt(best_tau) << ", t = " << fmt(best_t) << "\n";
  return grid;
}

SimulationTrace equivalence_run(const ScenarioConfig& base,
                                std::optional<double> t_off, std::ostream& log) {
  ScenarioConfig scenario = base;
  scenario.record_invariants = true;
  if (t_off && (*t_off <= 0.0 || *t_off >= scenario.t_max))
    throw ConfigError("equivalence_run: t_off must lie in (0, t_max)");

  if (!t_off) {
    // Detect where the fields have died down: first time the squared field
    // norm stays below 1e-6 K^2 for one full time unit.
    ScenarioConfig probe = scenario;
    probe.record_invariants = false;
    const SimulationTrace free_run = simulate(resolve(probe));
    const double threshold = 1e-6 * scenario.gain * scenario.gain;
    double window_start = 0.0;
    bool in_window = false;
    for (const TraceSample& s : free_run.samples) {
      double f2 = 0.0;
      for (double f : s.fields) f2 += f * f;
      if (f2 < threshold) {
        if (!in_window) {
          in_window = true;
          window_start = s.t;
        } else if (s.t - window_start >= 1.0) {
          t_off = window_start;
          break;
        }
      } else {
        in_window = false;
      }
    }
    if (!t_off) {
      t_off = 0.5 * scenario.t_max;
      log << "warning: fields never settled below 1e-6 K^2; switching off at "
          << fmt(*t_off) << "\n";
    }
  }
  scenario.control_off_time = t_off;

  const SimulationConfig cfg = resolve(scenario);
  const SimulationTrace trace = simulate(cfg);
  write_trace_csv(trace, output_file(scenario, ".csv"));
  write_metadata(scenario, output_file(scenario, ".meta"));

  // No-control baseline from the same H0, via the closed-form propagator.
  const SpectralDecomposition h0_spec = herm_eig(materialize_h0(scenario.system));
  const MakhlinInvariants ref = makhlin(cfg.law.target);
  std::ofstream out = open_output(output_file(scenario, "_baseline.csv"));
  out << "t,D\n";
  for (const TraceSample& s : trace.samples)
    out << fmt(s.t) << ','
        << fmt(distance_to_class(expm_herm_scaled(h0_spec, s.t), ref)) << '\n';

  double max_after = 0.0, min_after = 1e300;
  for (const TraceSample& s : trace.samples) {
    if (s.t < *t_off || !s.distance) continue;
    max_after = std::max(max_after, *s.distance);
    min_after = std::min(min_after, *s.distance);
  }
  log << scenario.name << ": control off at t = " << fmt(*t_off)
      << "; D in [" << fmt(min_after) << ", " << fmt(max_after)
      << "] afterwards\n";
  return trace;
}

void write_trace_csv(const SimulationTrace& trace, std::ostream& out) {
  const std::size_t n_fields =
      trace.samples.empty() ? 0 : trace.samples.front().fields.size();
  out << "t,V,F";
  for (std::size_t i = 1; i <= n_fields; ++i) out << ",f" << i;
  if (trace.metadata.record_invariants) out << ",D";
  out << '\n';
  for (const TraceSample& s : trace.samples) {
    out << fmt(s.t) << ',' << fmt(s.lyapunov) << ',' << fmt(s.fidelity);
    for (double f : s.fields) out << ',' << fmt(f);
    if (trace.metadata.record_invariants) out << ',' << fmt(*s.distance);
    out << '\n';
  }
}

void write_trace_csv(const SimulationTrace& trace, const std::string& path) {
  std::ofstream out = open_output(path);
  write_trace_csv(trace, out);
  if (!out) throw IoError("failed writing " + path);
}

void write_metadata(const ScenarioConfig& s, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "name = " << s.name << '\n'
      << "system = " << system_name(s.system.kind) << '\n'
      << "omega1 = " << fmt(s.system.omega1) << '\n'
      << "omega2 = " << fmt(s.system.omega2) << '\n'
      << "coupling = " << fmt(s.system.coupling) << '\n'
      << "target = " << target_name(s) << '\n';
  if (s.target == TargetKind::Rotation)
    out << "theta = " << fmt(s.rotation.theta) << '\n'
        << "polar = " << fmt(s.rotation.polar) << '\n'
        << "azimuth = " << fmt(s.rotation.azimuth) << '\n';
  out << "control_set = " << control_set_name(s.control_set) << '\n'
      << "gain = " << fmt(s.gain) << '\n'
      << "tau = " << fmt(s.tau) << '\n'
      << "t_max = " << fmt(s.t_max) << '\n'
      << "step = " << fmt(s.step) << '\n'
      << "sample_interval = " << fmt(s.sample_interval) << '\n'
      << "control_off_time = "
      << (s.control_off_time ? fmt(*s.control_off_time) : std::string("none"))
      << '\n'
      << "record_invariants = " << (s.record_invariants ? "true" : "false")
      << '\n'
      << "reunitarize_every = " << s.reunitarize_every << '\n'
      << "output_path = " << s.output_path << '\n';
  if (!out) throw IoError("failed writing " + path);
}

ComplexMatrix read_matrix_file(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read matrix file " + path);
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im))
        throw ConfigError("matrix file " + path + ": expected " +
                          std::to_string(dim * dim) + " 're im' lines");
      m(r, c) = Complex{re, im};
    }
  if (!m.all_finite())
    throw ConfigError("matrix file " + path + ": non-finite entries");
  return m;
}

std::string format_invariants_report(const ComplexMatrix& u) {
  const MakhlinInvariants inv = makhlin(u);
  const double d = distance_to_class(u, cnot());
  std::ostringstream out;
  out << "d1 = " << fmt(inv.d1) << '\n'
      << "d2 = " << fmt(inv.d2) << '\n'
      << "d3 = " << fmt(inv.d3) << '\n'
      << "D_to_cnot = " << fmt(d) << '\n';
  return out.str();
}

}  // namespace gatesteer
