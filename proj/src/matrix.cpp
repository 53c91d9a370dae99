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
#include "gatesteer/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gatesteer/errors.hpp"

namespace gatesteer {

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const int dim = static_cast<int>(rows.size());
  ComplexMatrix m(dim);
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim)
      throw DimMismatch("from_rows: ragged row list");
    int c = 0;
    for (const Complex& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& v : entries_) s += std::norm(v);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& v : entries_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw DimMismatch("operator+=: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw DimMismatch("operator-=: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (Complex& v : entries_) v *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw DimMismatch("operator*: dimension mismatch");
  const int n = lhs.dim_;
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < n; ++k) {
      const Complex v = lhs(r, k);
      if (v == Complex{}) continue;
      for (int c = 0; c < n; ++c) out(r, c) += v * rhs(k, c);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l)
          out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) {
  double s = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      s += std::norm(m(r, c) - std::conj(m(c, r)));
  return std::sqrt(s);
}

double unitarity_defect(const ComplexMatrix& u) {
  const int n = u.dim();
  double s = 0.0;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Complex g = 0.0;
      for (int k = 0; k < n; ++k) g += std::conj(u(k, r)) * u(k, c);
      if (r == c) g -= 1.0;
      s += std::norm(g);
    }
  }
  return std::sqrt(s);
}

Complex inner_trace(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimMismatch("inner_trace: dimension mismatch");
  Complex s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) s += std::conj(a(r, c)) * b(r, c);
  return s;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One two-sided Jacobi rotation zeroing a(p, q). The rotation is unitary,
// R = [[c, -s e^{i phi}], [s e^{-i phi}, c]] on the (p, q) plane with
// phi = arg a(p, q).
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, int p, int q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;
  const double theta =
      0.5 * std::atan2(2.0 * mag, a(p, p).real() - a(q, q).real());
  const double c = std::cos(theta), s = std::sin(theta);
  const Complex se_pos = s * phase;             // s e^{i phi}
  const Complex se_neg = s * std::conj(phase);  // s e^{-i phi}
  const int n = a.dim();
  // A <- R^dag A
  for (int k = 0; k < n; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk + se_pos * aqk;
    a(q, k) = -se_neg * apk + c * aqk;
  }
  // A <- A R, V <- V R
  for (int k = 0; k < n; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp + se_neg * akq;
    a(k, q) = -se_pos * akp + c * akq;
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp + se_neg * vkq;
    v(k, q) = -se_pos * vkp + c * vkq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

}  // namespace

SpectralDecomposition herm_eig(const ComplexMatrix& h) {
  const int n = h.dim();
  if (n < 1) throw DimMismatch("herm_eig: empty matrix");
  if (!h.all_finite()) throw NotHermitian("herm_eig: non-finite entries");
  const double norm = h.frobenius_norm();
  if (hermiticity_defect(h) > 1e-10 * std::max(norm, 1.0))
    throw NotHermitian("herm_eig: input is not Hermitian");

  ComplexMatrix a = h;
  // Symmetrize so roundoff-level asymmetry cannot bias the sweeps.
  for (int r = 0; r < n; ++r)
    for (int c = r; c < n; ++c) {
      const Complex m = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = m;
      a(c, r) = std::conj(m);
    }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double tol = 1e-15 * std::max(norm, 1e-300);
  for (int sweep = 0; sweep < 60 && offdiag_norm(a) > tol; ++sweep)
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a(i, i).real() < a(j, j).real();
  });

  SpectralDecomposition spec;
  spec.eigenvalues.resize(n);
  spec.eigenvectors = ComplexMatrix(n);
  for (int c = 0; c < n; ++c) {
    spec.eigenvalues[c] = a(order[c], order[c]).real();
    for (int r = 0; r < n; ++r) spec.eigenvectors(r, c) = v(r, order[c]);
  }
  return spec;
}

ComplexMatrix expm_herm_scaled(const SpectralDecomposition& spec, double s) {
  const int n = spec.eigenvectors.dim();
  if (s == 0.0) return ComplexMatrix::identity(n);
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Complex sum = 0.0;
      for (int k = 0; k < n; ++k) {
        const double ph = -spec.eigenvalues[k] * s;
        sum += spec.eigenvectors(r, k) * Complex{std::cos(ph), std::sin(ph)} *
               std::conj(spec.eigenvectors(c, k));
      }
      out(r, c) = sum;
    }
  }
  return out;
}

ComplexMatrix reunitarize(const ComplexMatrix& u) {
  const int n = u.dim();
  ComplexMatrix gram(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex g = 0.0;
      for (int k = 0; k < n; ++k) g += std::conj(u(k, r)) * u(k, c);
      gram(r, c) = g;
    }
  const SpectralDecomposition spec = herm_eig(gram);
  if (spec.eigenvalues.front() <= 1e-6)
    throw SingularInput("reunitarize: input is numerically singular");
  // u (u^dag u)^{-1/2}
  ComplexMatrix inv_sqrt(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Complex sum = 0.0;
      for (int k = 0; k < n; ++k)
        sum += spec.eigenvectors(r, k) / std::sqrt(spec.eigenvalues[k]) *
               std::conj(spec.eigenvectors(c, k));
      inv_sqrt(r, c) = sum;
    }
  return u * inv_sqrt;
}

}  // namespace gatesteer
