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
#include "gatesteer/operators.hpp"

#include <cmath>

#include "gatesteer/errors.hpp"

namespace gatesteer {

namespace {
constexpr Complex kI{0.0, 1.0};
}

ComplexMatrix pauli(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::X:
      return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    case PauliAxis::Y:
      return ComplexMatrix::from_rows({{0.0, -kI}, {kI, 0.0}});
    case PauliAxis::Z:
      return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  }
  throw ConfigError("pauli: unknown axis");
}

ComplexMatrix embed(const ComplexMatrix& op, int site) {
  if (op.dim() != 2) throw DimMismatch("embed: operator must be 2x2");
  const ComplexMatrix eye = ComplexMatrix::identity(2);
  if (site == 1) return kron(op, eye);
  if (site == 2) return kron(eye, op);
  throw BadSite("embed: site must be 1 or 2");
}

ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix::from_rows({{s, s}, {s, -s}});
}

ComplexMatrix cnot() {
  return ComplexMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                   {0.0, 1.0, 0.0, 0.0},
                                   {0.0, 0.0, 0.0, 1.0},
                                   {0.0, 0.0, 1.0, 0.0}});
}

ComplexMatrix rotation_gate(const RotationTarget& r) {
  const double nx = std::sin(r.polar) * std::cos(r.azimuth);
  const double ny = std::sin(r.polar) * std::sin(r.azimuth);
  const double nz = std::cos(r.polar);
  const double c = std::cos(0.5 * r.theta);
  const double s = std::sin(0.5 * r.theta);
  ComplexMatrix out = ComplexMatrix::identity(2);
  out *= Complex{c, 0.0};
  ComplexMatrix axis = pauli(PauliAxis::X) * Complex{nx, 0.0};
  axis += pauli(PauliAxis::Y) * Complex{ny, 0.0};
  axis += pauli(PauliAxis::Z) * Complex{nz, 0.0};
  out -= axis * (kI * s);
  return out;
}

void validate(const HamiltonianSpec& spec) {
  if (!(spec.omega1 > 0.0))
    throw ConfigError("HamiltonianSpec: omega1 must be positive");
  if (spec.kind != HamiltonianKind::SingleQubit && !(spec.omega2 > 0.0))
    throw ConfigError("HamiltonianSpec: omega2 must be positive");
  if (!std::isfinite(spec.coupling))
    throw ConfigError("HamiltonianSpec: coupling must be finite");
}

int dimension(const HamiltonianSpec& spec) {
  return spec.kind == HamiltonianKind::SingleQubit ? 2 : 4;
}

ComplexMatrix materialize_h0(const HamiltonianSpec& spec) {
  validate(spec);
  const ComplexMatrix sz = pauli(PauliAxis::Z);
  if (spec.kind == HamiltonianKind::SingleQubit)
    return sz * Complex{0.5 * spec.omega1, 0.0};

  ComplexMatrix h = embed(sz, 1) * Complex{0.5 * spec.omega1, 0.0};
  h += embed(sz, 2) * Complex{0.5 * spec.omega2, 0.0};
  const double j4 = 0.25 * spec.coupling;
  h += kron(sz, sz) * Complex{j4, 0.0};
  if (spec.kind == HamiltonianKind::Heisenberg) {
    const ComplexMatrix sx = pauli(PauliAxis::X);
    const ComplexMatrix sy = pauli(PauliAxis::Y);
    h += kron(sx, sx) * Complex{j4, 0.0};
    h += kron(sy, sy) * Complex{j4, 0.0};
  }
  return h;
}

}  // namespace gatesteer
