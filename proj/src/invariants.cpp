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
#include "gatesteer/invariants.hpp"

#include <cmath>

#include "gatesteer/errors.hpp"

namespace gatesteer {

namespace {

// Cofactor-expansion determinant; pivot-free, fine for N <= 4.
Complex det(const ComplexMatrix& m) {
  const int n = m.dim();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Complex sum = 0.0;
  double sign = 1.0;
  for (int c = 0; c < n; ++c) {
    ComplexMatrix minor(n - 1);
    for (int r = 1; r < n; ++r) {
      int mc = 0;
      for (int k = 0; k < n; ++k)
        if (k != c) minor(r - 1, mc++) = m(r, k);
    }
    sum += sign * m(0, c) * det(minor);
    sign = -sign;
  }
  return sum;
}

void require_two_qubit_unitary(const ComplexMatrix& u, const char* who) {
  if (u.dim() != 4) throw DimMismatch(std::string(who) + ": input must be 4x4");
  if (unitarity_defect(u) > 1e-8)
    throw NotUnitary(std::string(who) + ": input is not unitary");
}

}  // namespace

ComplexMatrix q_matrix() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  return ComplexMatrix::from_rows({{s, 0.0, 0.0, i * s},
                                   {0.0, i * s, s, 0.0},
                                   {0.0, i * s, -s, 0.0},
                                   {s, 0.0, 0.0, -i * s}});
}

ComplexMatrix m_matrix(const ComplexMatrix& u) {
  require_two_qubit_unitary(u, "m_matrix");
  const ComplexMatrix q = q_matrix();
  // With B = Q^dag U Q, Q^T U^T Q^* = B^T, so m = B^T B is symmetric by
  // construction.
  const ComplexMatrix b = q.adjoint() * u * q;
  return b.transpose() * b;
}

MakhlinInvariants makhlin(const ComplexMatrix& u) {
  const ComplexMatrix m = m_matrix(u);
  const Complex tr = m.trace();
  const Complex tr_sq = (m * m).trace();
  const Complex det_u_dag = std::conj(det(u));
  const Complex g1 = tr * tr * det_u_dag / 16.0;
  const Complex g2 = (tr * tr - tr_sq) * det_u_dag / 4.0;
  if (std::abs(g2.imag()) > 1e-6)
    throw NonRealG2("makhlin: G2 has a non-negligible imaginary part");
  return MakhlinInvariants{g1.real(), g1.imag(), g2.real()};
}

double invariant_distance(const MakhlinInvariants& a,
                          const MakhlinInvariants& b) {
  const double e1 = a.d1 - b.d1, e2 = a.d2 - b.d2, e3 = a.d3 - b.d3;
  return std::sqrt(e1 * e1 + e2 * e2 + e3 * e3);
}

double distance_to_class(const ComplexMatrix& u, const ComplexMatrix& ref) {
  return invariant_distance(makhlin(u), makhlin(ref));
}

double distance_to_class(const ComplexMatrix& u, const MakhlinInvariants& ref) {
  return invariant_distance(makhlin(u), ref);
}

double free_ising_distance(double coupling, double t) {
  const double c = std::cos(0.5 * coupling * t);
  return std::sqrt(5.0) * c * c;
}

}  // namespace gatesteer
