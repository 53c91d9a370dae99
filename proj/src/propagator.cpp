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
#include "gatesteer/propagator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

#include "gatesteer/errors.hpp"
#include "gatesteer/invariants.hpp"

namespace gatesteer {

namespace {

std::vector<double> applied_fields(const ControlLaw& law,
                                   const ComplexMatrix& u, double t,
                                   const std::optional<double>& t_off) {
  if (t_off && t >= *t_off)
    return std::vector<double>(law.controls.size(), 0.0);
  return control_fields(law, u, t);
}

ComplexMatrix derivative(const ComplexMatrix& h0, const ControlLaw& law,
                         const ComplexMatrix& u, double t,
                         const std::optional<double>& t_off) {
  ComplexMatrix h = h0;
  const std::vector<double> fields = applied_fields(law, u, t, t_off);
  for (std::size_t n = 0; n < fields.size(); ++n)
    if (fields[n] != 0.0) h += law.controls[n] * Complex{fields[n], 0.0};
  return Complex{0.0, -1.0} * (h * u);
}

// Shared integration state so that trace refinement replays exactly the
// arithmetic of the original run (same step grid, same repair cadence).
struct Stepper {
  const ComplexMatrix& h0;
  const ControlLaw& law;
  double h;
  std::optional<double> t_off;
  int reunitarize_every;

  ComplexMatrix u;
  long long step_index = 0;

  double t() const { return static_cast<double>(step_index) * h; }

  void rk4(double dt) {
    const double t0 = t();
    const ComplexMatrix k1 = derivative(h0, law, u, t0, t_off);
    const ComplexMatrix k2 = derivative(
        h0, law, u + k1 * Complex{0.5 * dt, 0.0}, t0 + 0.5 * dt, t_off);
    const ComplexMatrix k3 = derivative(
        h0, law, u + k2 * Complex{0.5 * dt, 0.0}, t0 + 0.5 * dt, t_off);
    const ComplexMatrix k4 =
        derivative(h0, law, u + k3 * Complex{dt, 0.0}, t0 + dt, t_off);
    u += (k1 + k2 * Complex{2.0, 0.0} + k3 * Complex{2.0, 0.0} + k4) *
         Complex{dt / 6.0, 0.0};
  }

  // One full grid step, with the repair cadence tied to the global index.
  // Returns the pre-repair defect when a repair happened.
  std::optional<double> advance() {
    rk4(h);
    ++step_index;
    if (step_index % reunitarize_every == 0) {
      const double defect = unitarity_defect(u);
      if (defect > 1e-6)
        throw UnstableIntegration("simulate: unitarity defect above 1e-6");
      u = reunitarize(u);
      return defect;
    }
    return std::nullopt;
  }

  // State at an off-grid time at most a few samples ahead: full grid steps
  // then one partial RK4 step. Used only for diagnostics refinement.
  ComplexMatrix state_at(double t_target) const {
    Stepper probe = *this;
    while (probe.t() + probe.h <= t_target + 1e-12 * probe.h) probe.advance();
    const double rest = t_target - probe.t();
    if (rest > 1e-12 * probe.h) probe.rk4(rest);
    return probe.u;
  }
};

Stepper stepper_at(const SimulationTrace& trace, const ComplexMatrix& h0,
                   std::size_t sample_index) {
  const SimulationConfig& cfg = trace.metadata;
  const TraceSample& s = trace.samples[sample_index];
  Stepper st{h0,
             cfg.law,
             cfg.step,
             cfg.control_off_time,
             cfg.reunitarize_every,
             s.u,
             std::llround(s.t / cfg.step)};
  return st;
}

}  // namespace

void validate(const SimulationConfig& config) {
  validate(config.system);
  if (!(config.step > 0.0)) throw ConfigError("simulate: step must be > 0");
  if (config.step > config.sample_interval ||
      config.sample_interval > config.t_max)
    throw ConfigError("simulate: need step <= sample_interval <= t_max");
  if (config.control_off_time &&
      (*config.control_off_time < 0.0 || *config.control_off_time > config.t_max))
    throw ConfigError("simulate: control_off_time outside [0, t_max]");
  if (config.reunitarize_every < 1)
    throw ConfigError("simulate: reunitarize_every must be >= 1");
  if (config.record_invariants && dimension(config.system) != 4)
    throw ConfigError("simulate: invariants are defined for two-qubit runs");
}

ComplexMatrix rhs(const ControlSystem& system, const ControlLaw& law,
                  const ComplexMatrix& u, double t,
                  std::optional<double> control_off_time) {
  if (unitarity_defect(u) > 1e-6)
    throw NotUnitary("rhs: state defect above 1e-6");
  return derivative(system.h0, law, u, t, control_off_time);
}

SimulationTrace simulate(const SimulationConfig& config) {
  validate(config);
  const ComplexMatrix h0 = materialize_h0(config.system);
  const int dim = h0.dim();
  if (config.law.target.dim() != dim)
    throw DimMismatch("simulate: law does not match the system dimension");

  const long long n_steps = std::llround(config.t_max / config.step);
  const long long sample_every =
      std::max<long long>(1, std::llround(config.sample_interval / config.step));

  SimulationTrace trace;
  trace.metadata = config;

  const MakhlinInvariants target_invariants =
      config.record_invariants ? makhlin(config.law.target) : MakhlinInvariants{};

  Stepper st{h0,
             config.law,
             config.step,
             config.control_off_time,
             config.reunitarize_every,
             ComplexMatrix::identity(dim),
             0};

  const auto record = [&] {
    TraceSample s;
    s.t = st.t();
    s.u = st.u;
    s.fields = applied_fields(config.law, st.u, s.t, config.control_off_time);
    s.lyapunov = lyapunov_v(config.law, st.u, s.t);
    s.fidelity = fidelity(st.u, config.law.target);
    if (config.record_invariants)
      s.distance = distance_to_class(st.u, target_invariants);
    trace.max_unitarity_defect =
        std::max(trace.max_unitarity_defect, unitarity_defect(st.u));
    trace.samples.push_back(std::move(s));
  };

  record();
  for (long long k = 0; k < n_steps; ++k) {
    if (const auto defect = st.advance())
      trace.max_unitarity_defect = std::max(trace.max_unitarity_defect, *defect);
    if (st.step_index % sample_every == 0 || st.step_index == n_steps) record();
  }
  return trace;
}

std::optional<std::pair<double, double>> find_gate_time(
    const SimulationTrace& trace, double threshold) {
  if (trace.samples.empty()) throw ConfigError("find_gate_time: empty trace");
  if (!(threshold > 0.0) || threshold > 1.0)
    throw ConfigError("find_gate_time: threshold must be in (0, 1]");

  std::size_t hit = trace.samples.size();
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    if (trace.samples[i].fidelity >= threshold) {
      hit = i;
      break;
    }
  }
  if (hit == trace.samples.size()) return std::nullopt;
  const TraceSample& found = trace.samples[hit];
  if (hit == 0) return std::make_pair(found.t, found.fidelity);

  // Scan at step h from the previous sample for the earliest crossing.
  const ComplexMatrix h0 = materialize_h0(trace.metadata.system);
  Stepper st = stepper_at(trace, h0, hit - 1);
  const long long end_index = std::llround(found.t / trace.metadata.step);
  while (st.step_index < end_index) {
    st.advance();
    const double f = fidelity(st.u, trace.metadata.law.target);
    if (f >= threshold) return std::make_pair(st.t(), f);
  }
  return std::make_pair(found.t, found.fidelity);
}

std::pair<double, double> peak_fidelity(const SimulationTrace& trace) {
  if (trace.samples.empty()) throw ConfigError("peak_fidelity: empty trace");
  std::size_t best = 0;
  for (std::size_t i = 1; i < trace.samples.size(); ++i)
    if (trace.samples[i].fidelity > trace.samples[best].fidelity) best = i;
  if (trace.samples.size() == 1)
    return {trace.samples[0].t, trace.samples[0].fidelity};

  // Golden-section maximisation over the bracketing sample interval; the
  // fidelity is smooth and the sampling cadence is far below its oscillation
  // period, so the bracket is unimodal.
  const std::size_t lo_idx = best > 0 ? best - 1 : best;
  const std::size_t hi_idx =
      best + 1 < trace.samples.size() ? best + 1 : best;
  const ComplexMatrix h0 = materialize_h0(trace.metadata.system);
  const Stepper base = stepper_at(trace, h0, lo_idx);
  const auto eval = [&](double t) {
    return fidelity(base.state_at(t), trace.metadata.law.target);
  };

  double a = trace.samples[lo_idx].t;
  double b = trace.samples[hi_idx].t;
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < 80 && (b - a) > 1e-10 * std::max(1.0, std::abs(b));
       ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(x1);
    }
  }
  double t_peak = 0.5 * (a + b);
  double f_peak = eval(t_peak);
  if (trace.samples[best].fidelity > f_peak) {
    t_peak = trace.samples[best].t;
    f_peak = trace.samples[best].fidelity;
  }
  return {t_peak, f_peak};
}

namespace {

// Uniform double in [0, 1) from raw engine output, so that draws are
// bit-identical across platforms and standard libraries.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

RotationBatchResult rotation_batch(const HamiltonianSpec& system, double gain,
                                   double tau, double t_max, int count,
                                   unsigned long long seed, double step,
                                   double sample_interval) {
  if (count < 1) throw ConfigError("rotation_batch: count must be >= 1");
  if (dimension(system) != 2)
    throw ConfigError("rotation_batch: single-qubit systems only");

  const double two_pi = 2.0 * 3.14159265358979323846;
  std::mt19937_64 rng(seed);
  std::vector<RotationTarget> targets(count);
  for (RotationTarget& r : targets) {
    r.theta = two_pi * uniform01(rng);
    r.polar = 0.5 * two_pi * uniform01(rng);
    r.azimuth = two_pi * uniform01(rng);
  }

  const ControlSystem sys =
      make_control_system(system, {pauli(PauliAxis::X)});

  RotationBatchResult result;
  result.samples.resize(count);
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto worker = [&] {
    try {
      for (int i = next.fetch_add(1); i < count && !failed;
           i = next.fetch_add(1)) {
        SimulationConfig cfg;
        cfg.system = system;
        cfg.law = make_control_law(sys, rotation_gate(targets[i]), tau, gain);
        cfg.t_max = t_max;
        cfg.step = step;
        cfg.sample_interval = sample_interval;
        const SimulationTrace trace = simulate(cfg);
        const auto [t_peak, f_peak] = peak_fidelity(trace);
        result.samples[i] = RotationSample{targets[i], t_peak, f_peak};
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      failed = true;
    }
  };
  const int n_workers = std::max(
      1, std::min<int>(count, static_cast<int>(
                                  std::thread::hardware_concurrency())));
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  std::vector<double> peaks;
  peaks.reserve(count);
  for (const RotationSample& s : result.samples) peaks.push_back(s.peak_fidelity);
  std::sort(peaks.begin(), peaks.end());
  result.min_peak = peaks.front();
  result.median_peak = count % 2 == 1
                           ? peaks[count / 2]
                           : 0.5 * (peaks[count / 2 - 1] + peaks[count / 2]);
  return result;
}

}  // namespace gatesteer
