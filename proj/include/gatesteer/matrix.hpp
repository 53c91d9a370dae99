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

#include <complex>
#include <initializer_list>
#include <vector>

namespace gatesteer {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for the unitary dynamics of
/// one or two qubits (N <= 4), so every operation favours clarity and
/// robustness over asymptotic cost.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), entries_(dim * dim) {}

  static ComplexMatrix identity(int dim);
  /// Build from nested row lists: ComplexMatrix::from_rows({{a, b}, {c, d}}).
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  int dim() const { return dim_; }

  Complex& operator()(int row, int col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(int row, int col) const {
    return entries_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
    m *= scale;
    return m;
  }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex scale) {
    m *= scale;
    return m;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);

 private:
  int dim_ = 0;
  std::vector<Complex> entries_;
};

/// Eigenvalues (ascending, ties kept in input order) and the unitary matrix
/// of column eigenvectors of a Hermitian matrix.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Kronecker product; the first factor is the most significant subsystem.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||m - m^dag||_F.
double hermiticity_defect(const ComplexMatrix& m);

/// ||u^dag u - I||_F.
double unitarity_defect(const ComplexMatrix& u);

/// Tr(a^dag b) without forming the product matrix.
Complex inner_trace(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
/// Throws NotHermitian when ||h - h^dag||_F exceeds 1e-10 relative.
SpectralDecomposition herm_eig(const ComplexMatrix& h);

/// exp(-i H s) from the spectral decomposition of H; returns the exact
/// identity at s = 0.
ComplexMatrix expm_herm_scaled(const SpectralDecomposition& spec, double s);

/// Closest unitary (polar factor) u (u^dag u)^{-1/2}. Throws SingularInput
/// when the smallest eigenvalue of u^dag u is at or below 1e-6.
ComplexMatrix reunitarize(const ComplexMatrix& u);

}  // namespace gatesteer
