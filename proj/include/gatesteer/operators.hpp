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

#include "gatesteer/matrix.hpp"

namespace gatesteer {

enum class PauliAxis { X, Y, Z };

/// The 2x2 Pauli matrix for the given axis.
ComplexMatrix pauli(PauliAxis axis);

/// Embed a single-qubit operator into the two-qubit register:
/// site 1 -> op (x) I, site 2 -> I (x) op. Qubit 1 is the most significant
/// bit in the |00>,|01>,|10>,|11> basis. Throws BadSite for other sites.
ComplexMatrix embed(const ComplexMatrix& op, int site);

/// (1/sqrt2) [[1, 1], [1, -1]].
ComplexMatrix hadamard();

/// Controlled-NOT in the |00>,|01>,|10>,|11> basis; qubit 1 controls.
ComplexMatrix cnot();

/// Axis-angle parametrisation of a single-qubit rotation
/// exp(-i theta/2 n.sigma), with n given by (polar, azimuth).
struct RotationTarget {
  double theta = 0.0;    // rotation angle, [0, 2pi)
  double polar = 0.0;    // axis polar angle, [0, pi]
  double azimuth = 0.0;  // axis azimuth, [0, 2pi)
};

ComplexMatrix rotation_gate(const RotationTarget& r);

enum class HamiltonianKind { SingleQubit, Ising, Heisenberg };

/// Parameters of the free Hamiltonian (hbar = 1, angular frequencies):
///   SingleQubit: (omega1/2) sz
///   Ising:       (omega1/2) sz1 + (omega2/2) sz2 + (J/4) sz1 sz2
///   Heisenberg:  (omega1/2) sz1 + (omega2/2) sz2 + (J/4) sigma1.sigma2
struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::SingleQubit;
  double omega1 = 1.0;
  double omega2 = 0.0;   // unused for SingleQubit
  double coupling = 0.0; // J; 0 for SingleQubit
};

/// Throws ConfigError when frequencies are out of range for the kind.
void validate(const HamiltonianSpec& spec);

/// Hilbert-space dimension for the kind (2 or 4).
int dimension(const HamiltonianSpec& spec);

ComplexMatrix materialize_h0(const HamiltonianSpec& spec);

}  // namespace gatesteer
