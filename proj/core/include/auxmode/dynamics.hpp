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

#include <array>
#include <span>
#include <string>
#include <vector>

#include "auxmode/core.hpp"
#include "auxmode/scattering.hpp"

/**
 * Transient response of the driven two-mode cavity.
 *
 * The mean fields obey d/dt (a, b) = M (a, b) + (sqrt(ka), sqrt(kb)) c_in with
 * c_in(t) = alpha_in exp(-i wp t) and the cavity initially empty. The output
 * field follows from the boundary condition c_out + c_in = a sqrt(ka) +
 * b sqrt(kb). Diagonalising M + i wp I yields
 *
 *   one-sided:  c_out / c_in = sum_k A_k (1 - exp(lambda_k t)) - 1
 *   two-sided:  c_out / c_in = sum_k A_k (1 - exp(mu_k t))
 *
 * and the finite-duration signal-to-noise ratio of a homodyne measurement in
 * closed form.
 */
namespace auxmode::dynamics {

/// Raised when the mode pair sits at an exceptional point and the system
/// matrix cannot be diagonalised.
class DegenerateModesError : public DomainError {
 public:
  DegenerateModesError()
      : DomainError("degenerate mode pair: eigendecomposition invalid") {}
};

struct Vec2 {
  Complex a;
  Complex b;
};

/// Unconjugated bilinear product u_a v_a + u_b v_b.
constexpr Complex dot(const Vec2& u, const Vec2& v) { return u.a * v.a + u.b * v.b; }

struct Mat2 {
  Complex m11;
  Complex m12;
  Complex m21;
  Complex m22;

  constexpr Vec2 apply(const Vec2& v) const {
    return {m11 * v.a + m12 * v.b, m21 * v.a + m22 * v.b};
  }
};

struct SystemMatrix {
  Mat2 m;
  CavityKind kind = CavityKind::OneSided;
};

/// Lab-frame coupling matrix. One-sided: diagonal -i W - k/2, off-diagonal
/// -sqrt(ka kb)/2. Two-sided (equal decay through both ports): diagonal
/// -i W - k, off-diagonal -sqrt(ka kb).
SystemMatrix system_matrix(const CavityParams& params);

/// (sqrt(kappa_a), sqrt(kappa_b)).
Vec2 coupling_vector(const CavityParams& params);

/**
 * Spectral data of M + i wp I = m I + [[z, x], [x, -z]].
 *
 * lambda_bar = (+r, -r) with r the principal root of x^2 + z^2, and
 * eta_k = (x, lambda_bar_k - z) / sqrt(2 lambda_bar_k (lambda_bar_k - z)).
 * The sign of eta_2 is fixed so that eta_1a = -eta_2b and eta_1b = eta_2a;
 * zeta holds the inverse transformation (a, b) = sum_k d_k zeta_k.
 */
struct EigenSystem {
  Complex x;
  Complex z;
  Complex trace_half;
  std::array<Complex, 2> lambda_bar;
  std::array<Complex, 2> lambda;
  std::array<Vec2, 2> eta;
  std::array<Vec2, 2> zeta;
};

/// Throws DegenerateModesError when |x^2 + z^2| < 1e-24 (|x|^2 + |z|^2).
EigenSystem eigensystem(const SystemMatrix& matrix, double omega_p);

struct TransientSolution {
  std::array<Complex, 2> lambda;  ///< lambda_k (one-sided) or mu_k
  std::array<Complex, 2> coeff;   ///< A_k
  QubitState qubit_state = QubitState::Ground;
  CavityKind kind = CavityKind::OneSided;
  EigenSystem eigen;
  Vec2 coupling;
};

/// A_k = -(1/lambda_k) (eta_k . k)(zeta_k . k) with mode a shifted by
/// state_sign * chi.
TransientSolution transient_coefficients(const CavityParams& params,
                                         const Drive& drive,
                                         const QubitShift& shift);

/// <c_out(t)> / <c_in(t)>; output on the opposite port for two-sided.
Complex output_field_ratio(const TransientSolution& sol, double t);

struct IntracavityFields {
  Complex a;
  Complex b;
};

/// <a(t)> / <c_in(t)> and <b(t)> / <c_in(t)>.
IntracavityFields intracavity_fields(const TransientSolution& sol, double t);

/// Quadrature angle alpha with exp(i alpha) dS = |dS|, i.e. -arg(dS).
double homodyne_angle(const scattering::ContrastResult& contrast);

/// <Y_l(t)> = 2 |alpha_in| Re{exp(i alpha) c_out(t) / c_in(t)}.
double quadrature_expectation(const TransientSolution& sol, double alpha,
                              double t, double amplitude);

/**
 * Signal-to-noise ratio after integrating the homodyne signal over [0, tau],
 * normalised to |alpha_in| sqrt(2 tau):
 *
 *   |Re[exp(i alpha) sum_{k,l} (-1)^l A_{k,l} (1 + (1 - exp(lambda_{k,l} tau))
 *                                              / (lambda_{k,l} tau))]|
 *
 * with alpha the homodyne angle of the stationary contrast. A mode pair at
 * (or within 1e-6 relative of) an exceptional point is evaluated through
 * the confluent limit of the same spectral sum.
 */
double snr(const CavityParams& params, const Drive& drive, double chi,
           double tau);

struct SnrCurve {
  std::vector<double> tau;
  std::vector<double> value;
  double alpha = 0.0;
  std::string scenario;
};

SnrCurve snr_curve(const CavityParams& params, const Drive& drive, double chi,
                   std::span<const double> taus, std::string scenario);

/// min over k and both qubit states of |Re lambda_{k,l}|.
double slowest_decay_rate(const CavityParams& params, const Drive& drive,
                          double chi);

/// exp(u) - 1 without cancellation near u = 0.
Complex expm1(Complex u);

/// (1 - exp(u)) / u, equal to -1 at u = 0.
Complex ring_up_deficit(Complex u);

}  // namespace auxmode::dynamics
