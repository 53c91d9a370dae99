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

/// The local-invariant triple of a two-qubit gate:
/// d1 = Re G1, d2 = Im G1, d3 = G2 with
///   G1 = Tr^2(m) det(U^dag) / 16   (complex)
///   G2 = (Tr^2(m) - Tr(m^2)) det(U^dag) / 4   (real)
/// computed in the Bell-type basis given by q_matrix(). Two gates are locally
/// equivalent (equal up to single-qubit operations on either side) exactly
/// when their triples agree.
struct MakhlinInvariants {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// The fixed 4x4 basis-change matrix
///   (1/sqrt2) [[1, 0, 0, i], [0, i, 1, 0], [0, i, -1, 0], [1, 0, 0, -i]].
ComplexMatrix q_matrix();

/// m_U = Q^T U^T Q^* Q^dag U Q; symmetric for unitary input.
/// Throws NotUnitary when the input defect exceeds 1e-8.
ComplexMatrix m_matrix(const ComplexMatrix& u);

/// Throws NotUnitary, or NonRealG2 if |Im G2| > 1e-6.
MakhlinInvariants makhlin(const ComplexMatrix& u);

/// Euclidean distance between two invariant triples.
double invariant_distance(const MakhlinInvariants& a,
                          const MakhlinInvariants& b);

/// Distance between the invariants of u and those of a reference gate.
double distance_to_class(const ComplexMatrix& u, const ComplexMatrix& ref);

/// Same, against a precomputed reference triple (for sweep loops).
double distance_to_class(const ComplexMatrix& u, const MakhlinInvariants& ref);

/// Closed form for the distance between the free Ising propagator
/// exp(-i H0 t) and the CNOT class: sqrt5 cos^2(J t / 2).
double free_ising_distance(double coupling, double t);

}  // namespace gatesteer
