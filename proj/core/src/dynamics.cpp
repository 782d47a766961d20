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

#include "auxmode/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace auxmode::dynamics {

namespace {

constexpr Complex kI{0.0, 1.0};

// Relative size of |x^2 + z^2| below which the matrix counts as defective.
constexpr double kDegenerateTolerance = 1e-24;
// Relative splitting |r| / (|x| + |z|) below which snr switches to the
// confluent form; the eigen route loses ~eps / splitting digits.
constexpr double kConfluentSplitting = 1e-6;

// Small-|u| cutoff for the series forms below.
constexpr double kSeriesRadius = 0.5;

double coupling_scale(CavityKind kind) {
  return kind == CavityKind::OneSided ? 0.5 : 1.0;
}

// F(u) = (u - expm1(u)) / u^2, so that (1 + (1 - e^u)/u) / lambda = tau F(u).
Complex averaged_response(Complex u) {
  if (std::abs(u) < kSeriesRadius) {
    // -sum_{n>=2} u^{n-2} / n!
    Complex term{1.0, 0.0};
    Complex sum{0.0, 0.0};
    double factorial = 1.0;
    for (int n = 2; n < 26; ++n) {
      factorial *= n;
      sum += term / factorial;
      term *= u;
    }
    return -sum;
  }
  return (u - expm1(u)) / (u * u);
}

// dF/du = (2 expm1(u) - u (e^u + 1)) / u^3.
Complex averaged_response_slope(Complex u) {
  if (std::abs(u) < kSeriesRadius) {
    // sum_{m>=3} (2 - m) u^{m-3} / m!
    Complex term{1.0, 0.0};
    Complex sum{0.0, 0.0};
    double factorial = 2.0;
    for (int m = 3; m < 28; ++m) {
      factorial *= m;
      sum += (2.0 - m) * term / factorial;
      term *= u;
    }
    return sum;
  }
  const Complex e = std::exp(u);
  return (2.0 * expm1(u) - u * (e + 1.0)) / (u * u * u);
}

struct RotatingFrame {
  Complex trace_half;
  Complex x;
  Complex z;
};

RotatingFrame split_traceless(const SystemMatrix& matrix, double omega_p) {
  const Complex d11 = matrix.m.m11 + kI * omega_p;
  const Complex d22 = matrix.m.m22 + kI * omega_p;
  return {0.5 * (d11 + d22), matrix.m.m12, 0.5 * (d11 - d22)};
}

// sum_k A_k (1 + (1 - exp(lambda_k tau)) / (lambda_k tau)) for one qubit state.
Complex integrated_pair_sum(const CavityParams& shifted, double omega_p,
                            double tau) {
  const SystemMatrix matrix = system_matrix(shifted);
  const RotatingFrame frame = split_traceless(matrix, omega_p);
  const Complex r = std::sqrt(frame.x * frame.x + frame.z * frame.z);
  const double scale = std::abs(frame.x) + std::abs(frame.z);
  const Vec2 k = coupling_vector(shifted);

  if (std::abs(r) >= kConfluentSplitting * scale) {
    const EigenSystem eig = eigensystem(matrix, omega_p);
    Complex sum{0.0, 0.0};
    for (int i = 0; i < 2; ++i) {
      const Complex coeff = -dot(eig.eta[i], k) * dot(eig.zeta[i], k) / eig.lambda[i];
      sum += coeff * (1.0 + ring_up_deficit(eig.lambda[i] * tau));
    }
    return sum;
  }

  // Confluent limit: k^T psi(m I + A) k with A^2 = r^2 I -> psi(m) k.k +
  // psi'(m) k^T A k, psi(lambda) = tau F(lambda tau).
  const Complex u = frame.trace_half * tau;
  const Complex psi = tau * averaged_response(u);
  const Complex psi_slope = tau * tau * averaged_response_slope(u);
  const double kk = std::norm(k.a) + std::norm(k.b);
  const Complex kak = frame.z * (k.a * k.a - k.b * k.b) + 2.0 * frame.x * k.a * k.b;
  return -(psi * kk + psi_slope * kak);
}

}  // namespace

Complex expm1(Complex u) {
  const double re = u.real();
  const double im = u.imag();
  const double half_sin = std::sin(0.5 * im);
  return {std::expm1(re) * std::cos(im) - 2.0 * half_sin * half_sin,
          std::exp(re) * std::sin(im)};
}

Complex ring_up_deficit(Complex u) {
  if (u == Complex{0.0, 0.0}) {
    return {-1.0, 0.0};
  }
  return -expm1(u) / u;
}

SystemMatrix system_matrix(const CavityParams& params) {
  params.validate();
  const double c = coupling_scale(params.kind);
  const double cross = -c * std::sqrt(params.kappa_a * params.kappa_b);
  SystemMatrix matrix;
  matrix.kind = params.kind;
  matrix.m.m11 = Complex(-c * params.kappa_a, -params.omega_a);
  matrix.m.m22 = Complex(-c * params.kappa_b, -params.omega_b);
  matrix.m.m12 = cross;
  matrix.m.m21 = cross;
  return matrix;
}

Vec2 coupling_vector(const CavityParams& params) {
  return {std::sqrt(params.kappa_a), std::sqrt(params.kappa_b)};
}

EigenSystem eigensystem(const SystemMatrix& matrix, double omega_p) {
  const RotatingFrame frame = split_traceless(matrix, omega_p);
  const Complex x = frame.x;
  const Complex z = frame.z;
  const Complex r2 = x * x + z * z;
  if (std::abs(r2) < kDegenerateTolerance * (std::norm(x) + std::norm(z))) {
    throw DegenerateModesError();
  }

  EigenSystem eig;
  eig.x = x;
  eig.z = z;
  eig.trace_half = frame.trace_half;
  eig.lambda_bar = {std::sqrt(r2), -std::sqrt(r2)};

  for (int k = 0; k < 2; ++k) {
    const Complex lb = eig.lambda_bar[k];
    // lambda_bar - z, through x^2 / (lambda_bar + z) when that avoids
    // cancellation.
    const Complex shifted = std::abs(lb + z) > std::abs(lb - z)
                                ? x * x / (lb + z)
                                : lb - z;
    const Complex norm = std::sqrt(2.0 * lb * shifted);
    eig.eta[k] = {x / norm, shifted / norm};
    eig.lambda[k] = frame.trace_half + lb;
  }

  // eta_2 = +-(eta_1b, -eta_1a); pick the sign matching the first vector.
  const Vec2 partner{eig.eta[0].b, -eig.eta[0].a};
  const double same = std::norm(eig.eta[1].a - partner.a) + std::norm(eig.eta[1].b - partner.b);
  const double flipped = std::norm(eig.eta[1].a + partner.a) + std::norm(eig.eta[1].b + partner.b);
  if (flipped < same) {
    eig.eta[1] = {-eig.eta[1].a, -eig.eta[1].b};
  }

  eig.zeta[0] = {-eig.eta[1].b, eig.eta[1].a};
  eig.zeta[1] = {eig.eta[0].b, -eig.eta[0].a};
  return eig;
}

TransientSolution transient_coefficients(const CavityParams& params,
                                         const Drive& drive,
                                         const QubitShift& shift) {
  drive.validate();
  shift.validate();
  const CavityParams shifted = with_qubit_shift(params, shift.chi, shift.state);
  TransientSolution sol;
  sol.kind = params.kind;
  sol.qubit_state = shift.state;
  sol.coupling = coupling_vector(shifted);
  sol.eigen = eigensystem(system_matrix(shifted), drive.omega_p);
  for (int k = 0; k < 2; ++k) {
    sol.lambda[k] = sol.eigen.lambda[k];
    sol.coeff[k] = -dot(sol.eigen.eta[k], sol.coupling) *
                   dot(sol.eigen.zeta[k], sol.coupling) / sol.lambda[k];
  }
  return sol;
}

Complex output_field_ratio(const TransientSolution& sol, double t) {
  if (!(t >= 0.0)) {
    throw DomainError("time must be non-negative");
  }
  Complex ratio{0.0, 0.0};
  for (int k = 0; k < 2; ++k) {
    ratio -= sol.coeff[k] * expm1(sol.lambda[k] * t);
  }
  if (sol.kind == CavityKind::OneSided) {
    ratio -= 1.0;
  }
  return ratio;
}

IntracavityFields intracavity_fields(const TransientSolution& sol, double t) {
  if (!(t >= 0.0)) {
    throw DomainError("time must be non-negative");
  }
  IntracavityFields fields{};
  for (int k = 0; k < 2; ++k) {
    const Vec2& eta = sol.eigen.eta[k];
    const Complex ring_up = -t * ring_up_deficit(sol.lambda[k] * t);  // (e^{lt}-1)/l
    const Complex d_k = dot(eta, sol.coupling) * ring_up;
    fields.a += sol.eigen.zeta[k].a * d_k;
    fields.b += sol.eigen.zeta[k].b * d_k;
  }
  return fields;
}

double homodyne_angle(const scattering::ContrastResult& contrast) {
  if (contrast.magnitude == 0.0) {
    throw DomainError("no contrast: homodyne angle undefined");
  }
  return -std::arg(contrast.delta_s);
}

double quadrature_expectation(const TransientSolution& sol, double alpha,
                              double t, double amplitude) {
  const Complex rotated = std::polar(1.0, alpha) * output_field_ratio(sol, t);
  return 2.0 * amplitude * rotated.real();
}

double snr(const CavityParams& params, const Drive& drive, double chi,
           double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("measurement duration tau must be positive");
  }
  const NormalizedPoint point = normalize(params, drive, QubitShift{chi, QubitState::Ground});
  if (chi == 0.0) {
    return 0.0;
  }
  const double alpha = homodyne_angle(scattering::contrast(point, params.kind));

  Complex total{0.0, 0.0};
  for (QubitState state : {QubitState::Ground, QubitState::Excited}) {
    const CavityParams shifted = with_qubit_shift(params, chi, state);
    total += state_sign(state) * integrated_pair_sum(shifted, drive.omega_p, tau);
  }
  return std::abs((std::polar(1.0, alpha) * total).real());
}

SnrCurve snr_curve(const CavityParams& params, const Drive& drive, double chi,
                   std::span<const double> taus, std::string scenario) {
  SnrCurve curve;
  curve.scenario = std::move(scenario);
  curve.tau.assign(taus.begin(), taus.end());
  curve.value.reserve(taus.size());
  if (chi > 0.0) {
    const NormalizedPoint point = normalize(params, drive, QubitShift{chi, QubitState::Ground});
    curve.alpha = homodyne_angle(scattering::contrast(point, params.kind));
  }
  for (double tau : taus) {
    curve.value.push_back(snr(params, drive, chi, tau));
  }
  return curve;
}

double slowest_decay_rate(const CavityParams& params, const Drive& drive,
                          double chi) {
  double slowest = std::numeric_limits<double>::infinity();
  for (QubitState state : {QubitState::Ground, QubitState::Excited}) {
    const TransientSolution sol = transient_coefficients(params, drive, QubitShift{chi, state});
    for (const Complex& l : sol.lambda) {
      slowest = std::min(slowest, std::abs(l.real()));
    }
  }
  return slowest;
}

}  // namespace auxmode::dynamics
