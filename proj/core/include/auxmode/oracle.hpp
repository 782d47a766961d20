// Copyright 2026 The auxmode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "auxmode/core.hpp"

/**
 * Brute-force verifiers that share no code path with the closed forms in
 * `scattering` and `dynamics`: a Cramer-rule frequency-domain solve, a
 * fixed-step lab-frame RK4 integrator, grid + golden-section maximisation,
 * and a trapezoid quadrature of the homodyne signal built on a 2x2 matrix
 * exponential.
 */
namespace auxmode::oracle {

class IntegrationDiverged : public std::runtime_error {
 public:
  IntegrationDiverged() : std::runtime_error("ode integration diverged") {}
};

struct StationaryFields {
  Complex a;  ///< a(w) / c_in(w)
  Complex b;  ///< b(w) / c_in(w)
  Complex s;  ///< S11 one-sided, S21 two-sided
};

/// Solves (a, b) = -(M + i w I)^{-1} (sqrt(ka), sqrt(kb)) by Cramer's rule
/// and applies the boundary condition.
StationaryFields direct_solve(const CavityParams& params, double omega);

struct OdeTrajectory {
  std::vector<double> times;
  std::vector<Complex> a_vals;
  std::vector<Complex> b_vals;
  std::vector<Complex> out_vals;
};

/// alpha_in exp(-i wp t).
Complex input_field(const Drive& drive, double t);

/// Classical RK4 of the lab-frame mean-field equations from an empty cavity
/// with fixed step t_end / steps. Every `record_every`-th step is stored
/// (the final step always is). Requires steps >= 1000.
OdeTrajectory ode_integrate(const CavityParams& params, const Drive& drive,
                            const QubitShift& shift, double t_end, long steps,
                            long record_every = 1);

/// max(1000, ceil(steps_per_radian * t_end * max|eigenvalue|)) where the
/// eigenvalue bound comes from the lab-frame matrix norm.
long recommended_steps(const CavityParams& params, const Drive& drive,
                       const QubitShift& shift, double t_end,
                       double steps_per_radian = 25.0);

struct GridMaximum {
  double argmax = 0.0;
  double max = 0.0;
};

using ScalarFunction = std::function<double(double)>;

/// Golden-section search for a maximum on [lo, hi] down to `width`.
GridMaximum golden_maximize(const ScalarFunction& f, double lo, double hi,
                            double width = 1e-10);

/// n-point uniform scan followed by golden refinement around the best
/// sample. Requires n >= 1000 and lo < hi.
GridMaximum grid_maximize(const ScalarFunction& f, double lo, double hi,
                          long n);

/// All interior local maxima of the n-point scan, each refined.
std::vector<GridMaximum> grid_local_maxima(const ScalarFunction& f, double lo,
                                           double hi, long n);

/// As grid_local_maxima for minima; `max` holds the minimum value.
std::vector<GridMaximum> grid_local_minima(const ScalarFunction& f, double lo,
                                           double hi, long n);

/// Trapezoid quadrature of <Y_0(t)> - <Y_1(t)> over [0, tau] on the graded
/// mesh t_j = tau (j / steps)^3, normalised like dynamics::snr. The
/// homodyne angle comes from direct_solve. Requires steps >= 10^4.
double snr_quadrature(const CavityParams& params, const Drive& drive,
                      double chi, double tau, long steps);

}  // namespace auxmode::oracle
