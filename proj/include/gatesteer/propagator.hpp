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

#include <optional>
#include <utility>
#include <vector>

#include "gatesteer/control.hpp"
#include "gatesteer/matrix.hpp"
#include "gatesteer/operators.hpp"

namespace gatesteer {

/// Run parameters for one closed-loop integration of
/// i dU/dt = (H0 + sum_n f_n(t) H_n) U, U(0) = I.
struct SimulationConfig {
  HamiltonianSpec system;
  ControlLaw law;
  double t_max = 0.0;
  double step = 1e-3;              // fixed RK4 step h
  double sample_interval = 1e-2;   // trace recording cadence
  std::optional<double> control_off_time;  // fields forced to 0 for t >= this
  bool record_invariants = false;  // append class distance D (two-qubit only)
  int reunitarize_every = 100;     // polar repair cadence, in steps
};

/// Throws ConfigError unless h <= sample_interval <= t_max, the switch-off
/// time (when present) lies in [0, t_max], and the invariants column is only
/// requested for two-qubit systems.
void validate(const SimulationConfig& config);

struct TraceSample {
  double t = 0.0;
  ComplexMatrix u;
  std::vector<double> fields;  // applied fields (zero past switch-off)
  double lyapunov = 0.0;       // V against the tracked operator
  double fidelity = 0.0;       // F against the bare target O
  std::optional<double> distance;  // D to the target's equivalence class
};

struct SimulationTrace {
  std::vector<TraceSample> samples;
  SimulationConfig metadata;
  double max_unitarity_defect = 0.0;
};

/// -i (H0 + sum_n f_n H_n) u with the feedback fields evaluated at (u, t);
/// fields are identically zero for t >= control_off_time. Enforces the
/// unitarity precondition (defect <= 1e-6) and throws NotUnitary otherwise.
ComplexMatrix rhs(const ControlSystem& system, const ControlLaw& law,
                  const ComplexMatrix& u, double t,
                  std::optional<double> control_off_time = {});

/// Fixed-step classical RK4 from U(0) = I to t_max, with the feedback
/// evaluated inside every stage, polar re-unitarization every
/// reunitarize_every steps, and samples recorded every sample_interval.
/// Throws UnstableIntegration if the defect exceeds 1e-6 before a repair.
SimulationTrace simulate(const SimulationConfig& config);

/// Earliest time with F >= threshold: picks the first qualifying sample and
/// refines it by a step-h scan from the preceding sample. Empty when the
/// threshold is never reached.
std::optional<std::pair<double, double>> find_gate_time(
    const SimulationTrace& trace, double threshold);

/// (time, fidelity) of the trace's fidelity peak, refined by a golden-section
/// scan around the best sample.
std::pair<double, double> peak_fidelity(const SimulationTrace& trace);

struct RotationSample {
  RotationTarget target;
  double peak_time = 0.0;
  double peak_fidelity = 0.0;
};

struct RotationBatchResult {
  std::vector<RotationSample> samples;
  double median_peak = 0.0;
  double min_peak = 0.0;
};

/// Runs `count` single-qubit simulations against rotation gates drawn
/// uniformly (theta, azimuth in [0, 2pi), polar in [0, pi]) from a seeded
/// deterministic generator, recording each peak fidelity and its time.
/// Independent runs fan out across hardware threads; results are ordered by
/// draw index regardless of scheduling.
RotationBatchResult rotation_batch(const HamiltonianSpec& system, double gain,
                                   double tau, double t_max, int count,
                                   unsigned long long seed, double step = 1e-3,
                                   double sample_interval = 1e-2);

}  // namespace gatesteer
