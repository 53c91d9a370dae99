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

#include <random>
#include <vector>

#include "gatesteer/control.hpp"
#include "gatesteer/matrix.hpp"
#include "gatesteer/scenario.hpp"

namespace gatesteer::testing {

struct Rng {
  explicit Rng(unsigned long long seed) : eng(seed) {}
  std::mt19937_64 eng;
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(eng() >> 11) * 0x1.0p-53);
  }
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix random_hermitian(Rng& rng, int dim);

/// Haar-ish random unitary: eigenvector matrix of a random Hermitian.
ComplexMatrix random_unitary(Rng& rng, int dim);

/// Random (2x2 unitary) (x) (2x2 unitary), each with a random phase.
ComplexMatrix random_local_unitary(Rng& rng);

/// Independent eigenvalue oracle for 4x4 Hermitian matrices: brute-force
/// sign-change scan plus bisection on the characteristic polynomial
/// det(h - x I), with its own determinant expansion. Returns ascending roots.
std::vector<double> charpoly_eigenvalues_4x4(const ComplexMatrix& h);

/// Closed-loop dissipation audit: integrates the scenario with its own RK4
/// at `fd_step` up to `t_end`, differentiates the Lyapunov sequence with a
/// five-point stencil, and compares against -(2/(K N^2)) sum_n f_n^2 at every
/// point where sum_n f_n^2 > 1e-8.
struct DissipationReport {
  double max_relative_error = 0.0;
  long checked_points = 0;
  double worst_t = 0.0;
  double worst_fd = 0.0;
  double worst_predicted = 0.0;
};

DissipationReport dissipation_check(const ScenarioConfig& scenario,
                                    double fd_step, double t_end);

}  // namespace gatesteer::testing
