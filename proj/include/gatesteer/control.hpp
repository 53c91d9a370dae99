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

#include <vector>

#include "gatesteer/matrix.hpp"
#include "gatesteer/operators.hpp"

namespace gatesteer {

/// Free Hamiltonian plus control Hamiltonians, with the spectral
/// decomposition of H0 cached for exp(-i H0 t).
struct ControlSystem {
  ComplexMatrix h0;
  SpectralDecomposition h0_spec;
  std::vector<ComplexMatrix> controls;
};

ControlSystem make_control_system(const HamiltonianSpec& spec,
                                  std::vector<ComplexMatrix> controls);

/// Tracking-control law: target gate O, tracking shift tau, gain K, and the
/// spectral data needed to evaluate the tracked operator
/// O~(t + tau) = exp(-i H0 (t + tau)) O.
///
/// The feedback fields are
///   f_n = K Re{ Tr(-i O~^dag(t+tau) H_n U) [Tr(O~^dag(t+tau) U)]^* },
/// which makes the Lyapunov function V = 1 - |Tr(O~^dag(t+tau) U)|^2 / N^2
/// decrease as dV/dt = -(2 / (K N^2)) sum_n f_n^2 along the closed loop.
struct ControlLaw {
  ComplexMatrix target;
  double tau = 0.0;
  double gain = 0.0;  // K > 0
  SpectralDecomposition h0_spec;
  std::vector<ComplexMatrix> controls;

  // Fast path when H0 is diagonal: its diagonal, in matrix order.
  // exp(-i H0 s) then just scales row i of the target by exp(-i h0_diag[i] s).
  std::vector<double> h0_diag;
  // General path: eigenvectors^dag * target, premultiplied once.
  ComplexMatrix basis_target;
};

/// Validates the law invariants: unitary target (defect <= 1e-12), K > 0,
/// Hermitian controls (defect <= 1e-12 each). Throws NotUnitary, ConfigError
/// or NotHermitian.
ControlLaw make_control_law(const ControlSystem& system, ComplexMatrix target,
                            double tau, double gain);

/// O~(t + tau) = exp(-i H0 (t + tau)) O. Unitary; equals O at t = -tau.
ComplexMatrix tracked_target(const ControlLaw& law, double t);

/// |Tr(u1^dag u2)| / N. Throws DimMismatch.
double fidelity(const ComplexMatrix& u1, const ComplexMatrix& u2);

/// V = 1 - |Tr(O~^dag(t+tau) u)|^2 / N^2, in [0, 1]; zero exactly when
/// u matches the tracked operator up to a global phase.
double lyapunov_v(const ControlLaw& law, const ComplexMatrix& u, double t);

/// The feedback fields f_n at state u and time t, one per control.
std::vector<double> control_fields(const ControlLaw& law,
                                   const ComplexMatrix& u, double t);

/// True when the tracked operator is ineffective at the start of a run:
/// every |f_n(U=I, t=0)| < 1e-10 K N^2, the degenerate-shift situation where
/// the fields never ignite.
bool starts_degenerate(const ControlLaw& law);

}  // namespace gatesteer
