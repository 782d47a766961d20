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

#include "auxmode/scattering.hpp"

#include <cmath>

namespace auxmode::scattering {

namespace {

// |da + db| below this with da db != 0 is treated as the t -> infinity pole.
constexpr double kPoleGuard = 1e-30;

double contrast_prefactor(CavityKind kind) {
  return kind == CavityKind::OneSided ? 4.0 : 2.0;
}

}  // namespace

Complex s11(double delta_a, double delta_b) {
  const double sum = delta_a + delta_b;
  const double product = delta_a * delta_b;
  if (product == 0.0) {
    return {1.0, 0.0};
  }
  if (std::abs(sum) < kPoleGuard) {
    return {-1.0, 0.0};
  }
  return Complex(sum, -2.0 * product) / Complex(sum, 2.0 * product);
}

Complex s21(double delta_a, double delta_b) {
  const double sum = delta_a + delta_b;
  const double product = delta_a * delta_b;
  if (product == 0.0) {
    return {1.0, 0.0};
  }
  if (std::abs(sum) < kPoleGuard) {
    return {0.0, 0.0};
  }
  return Complex(sum, 0.0) / Complex(sum, product);
}

Complex coefficient(double delta_a, double delta_b, CavityKind kind) {
  return kind == CavityKind::OneSided ? s11(delta_a, delta_b)
                                      : s21(delta_a, delta_b);
}

ContrastResult contrast(const NormalizedPoint& point, CavityKind kind) {
  if (!(point.epsilon >= 0.0)) {
    throw DomainError("contrast requires epsilon >= 0");
  }
  const Complex up = coefficient(
      shifted_delta_a(point, QubitState::Ground), point.delta_b, kind);
  const Complex down = coefficient(
      shifted_delta_a(point, QubitState::Excited), point.delta_b, kind);
  ContrastResult result;
  result.delta_s = up - down;
  result.magnitude = std::abs(result.delta_s);
  result.arg = std::arg(result.delta_s);
  return result;
}

double theoretical_max_contrast(CavityKind kind) {
  return kind == CavityKind::OneSided ? 2.0 : 1.0;
}

double epsilon_threshold(double delta_b, CavityKind kind) {
  const double b2 = delta_b * delta_b;
  if (std::isinf(b2)) {
    return kind == CavityKind::OneSided ? 1.0 : 2.0;
  }
  if (kind == CavityKind::OneSided) {
    return 4.0 * b2 / (1.0 + 4.0 * b2);
  }
  return 2.0 * b2 / (1.0 + b2);
}

double single_peak_detuning(double delta_b, CavityKind kind) {
  const double b2 = delta_b * delta_b;
  if (kind == CavityKind::OneSided) {
    return -delta_b / (1.0 + 4.0 * b2);
  }
  return -delta_b / (1.0 + b2);
}

double single_peak_contrast(double delta_b, double epsilon, CavityKind kind) {
  const double eps_th = epsilon_threshold(delta_b, kind);
  if (epsilon == 0.0) {
    return 0.0;
  }
  return contrast_prefactor(kind) * epsilon * eps_th /
         (epsilon * epsilon + eps_th * eps_th);
}

OptimaReport optimal_detunings(double delta_b, double epsilon,
                               CavityKind kind) {
  if (!std::isfinite(delta_b) || !std::isfinite(epsilon) || epsilon < 0.0) {
    throw DomainError("optimal_detunings requires finite db and epsilon >= 0");
  }
  OptimaReport report;
  report.epsilon_th = epsilon_threshold(delta_b, kind);
  const double centre = single_peak_detuning(delta_b, kind);
  if (epsilon <= report.epsilon_th) {
    report.regime = Regime::SingleMaximum;
    report.maxima = {centre};
    report.peak_value = single_peak_contrast(delta_b, epsilon, kind);
    return report;
  }
  const double half_split =
      0.5 * std::sqrt(epsilon * epsilon -
                      report.epsilon_th * report.epsilon_th);
  report.regime = Regime::DoubleMaximum;
  report.maxima = {centre - half_split, centre + half_split};
  report.minimum_at = centre;
  report.peak_value = theoretical_max_contrast(kind);
  return report;
}

double delta_b_threshold(double epsilon, CavityKind kind) {
  const double saturation = kind == CavityKind::OneSided ? 1.0 : 2.0;
  if (!(epsilon >= 0.0) || !(epsilon < saturation)) {
    throw DomainError(
        "threshold undefined: shift exceeds single-mode saturation");
  }
  if (kind == CavityKind::OneSided) {
    return 0.5 * std::sqrt(epsilon / (1.0 - epsilon));
  }
  return std::sqrt(epsilon / (2.0 - epsilon));
}

OptimalFrequencies optimal_frequencies(double epsilon, double kappa_a,
                                       double kappa_b) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw DomainError("optimal_frequencies requires 0 < epsilon < 1");
  }
  if (!(kappa_a > 0.0) || !(kappa_b > 0.0) || !std::isfinite(kappa_a) ||
      !std::isfinite(kappa_b)) {
    throw DomainError("decay rates kappa_a and kappa_b must be positive");
  }
  // kappa_a |da^1| and kappa_b db_th at the threshold detuning.
  const double mode_a_term = 0.5 * kappa_a * std::sqrt(epsilon * (1.0 - epsilon));
  const double mode_b_term = 0.5 * kappa_b * std::sqrt(epsilon / (1.0 - epsilon));
  return OptimalFrequencies{
      .mode_splitting = -mode_a_term - mode_b_term,
      .pump_offset = 0.5 * (mode_a_term - mode_b_term),
  };
}

}  // namespace auxmode::scattering
