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
#include "gatesteer/control.hpp"

#include <cmath>
#include <utility>

#include "gatesteer/errors.hpp"

namespace gatesteer {

namespace {

// Diagonal within an absolute tolerance tied to the matrix scale.
bool is_diagonal(const ComplexMatrix& m) {
  const double tol = 1e-14 * std::max(m.frobenius_norm(), 1.0);
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      if (r != c && std::abs(m(r, c)) > tol) return false;
  return true;
}

}  // namespace

ControlSystem make_control_system(const HamiltonianSpec& spec,
                                  std::vector<ComplexMatrix> controls) {
  ControlSystem sys;
  sys.h0 = materialize_h0(spec);
  sys.h0_spec = herm_eig(sys.h0);
  sys.controls = std::move(controls);
  return sys;
}

ControlLaw make_control_law(const ControlSystem& system, ComplexMatrix target,
                            double tau, double gain) {
  if (target.dim() != system.h0.dim())
    throw DimMismatch("make_control_law: target/H0 dimension mismatch");
  if (unitarity_defect(target) > 1e-12)
    throw NotUnitary("make_control_law: target gate is not unitary");
  if (!(gain > 0.0)) throw ConfigError("make_control_law: gain K must be > 0");
  for (const ComplexMatrix& hn : system.controls) {
    if (hn.dim() != system.h0.dim())
      throw DimMismatch("make_control_law: control dimension mismatch");
    if (hermiticity_defect(hn) > 1e-12)
      throw NotHermitian("make_control_law: control Hamiltonian not Hermitian");
  }

  ControlLaw law;
  law.target = std::move(target);
  law.tau = tau;
  law.gain = gain;
  law.h0_spec = system.h0_spec;
  law.controls = system.controls;
  if (is_diagonal(system.h0)) {
    law.h0_diag.resize(system.h0.dim());
    for (int i = 0; i < system.h0.dim(); ++i)
      law.h0_diag[i] = system.h0(i, i).real();
  } else {
    law.basis_target = law.h0_spec.eigenvectors.adjoint() * law.target;
  }
  return law;
}

ComplexMatrix tracked_target(const ControlLaw& law, double t) {
  const double s = t + law.tau;
  const int n = law.target.dim();
  if (!law.h0_diag.empty()) {
    // Row-phase structure of exp(-i H0 s) O for diagonal H0.
    ComplexMatrix out = law.target;
    for (int r = 0; r < n; ++r) {
      const double ph = -law.h0_diag[r] * s;
      const Complex w{std::cos(ph), std::sin(ph)};
      for (int c = 0; c < n; ++c) out(r, c) *= w;
    }
    return out;
  }
  // V diag(e^{-i lambda s}) (V^dag O)
  ComplexMatrix scaled = law.basis_target;
  for (int r = 0; r < n; ++r) {
    const double ph = -law.h0_spec.eigenvalues[r] * s;
    const Complex w{std::cos(ph), std::sin(ph)};
    for (int c = 0; c < n; ++c) scaled(r, c) *= w;
  }
  return law.h0_spec.eigenvectors * scaled;
}

double fidelity(const ComplexMatrix& u1, const ComplexMatrix& u2) {
  if (u1.dim() != u2.dim()) throw DimMismatch("fidelity: dimension mismatch");
  return std::abs(inner_trace(u1, u2)) / static_cast<double>(u1.dim());
}

double lyapunov_v(const ControlLaw& law, const ComplexMatrix& u, double t) {
  const double n = static_cast<double>(u.dim());
  const Complex z = inner_trace(tracked_target(law, t), u);
  return 1.0 - std::norm(z) / (n * n);
}

std::vector<double> control_fields(const ControlLaw& law,
                                   const ComplexMatrix& u, double t) {
  const ComplexMatrix tracked = tracked_target(law, t);
  const Complex z_conj = std::conj(inner_trace(tracked, u));
  std::vector<double> fields;
  fields.reserve(law.controls.size());
  for (const ComplexMatrix& hn : law.controls) {
    const Complex w = inner_trace(tracked, hn * u);
    fields.push_back(law.gain * (Complex{0.0, -1.0} * w * z_conj).real());
  }
  return fields;
}

bool starts_degenerate(const ControlLaw& law) {
  const int n = law.target.dim();
  const double scale = 1e-10 * law.gain * static_cast<double>(n) * n;
  for (double f : control_fields(law, ComplexMatrix::identity(n), 0.0))
    if (std::abs(f) >= scale) return false;
  return true;
}

}  // namespace gatesteer
