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

#include <optional>
#include <vector>

#include "auxmode/core.hpp"

/**
 * Stationary scattering coefficients of the two-mode cavity and the
 * closed-form optima of the qubit-state contrast.
 *
 * Reflection of a one-sided cavity, with t = 2 da db / (da + db):
 *
 *   S11 = (da + db - 2i da db) / (da + db + 2i da db) = (1 - it) / (1 + it)
 *
 * Transmission of a two-sided cavity, with t = da db / (da + db):
 *
 *   S21 = (da + db) / (da + db + i da db) = 1 / (1 + it)
 *
 * S11 lies on the unit circle. S21 lies on the circle of radius 1/2 centred
 * at 1/2 on the real axis.
 */
namespace auxmode::scattering {

/// One-sided reflection coefficient. The removable point da = db = 0
/// returns 1; a vanishing da + db with da db != 0 returns the pole limit -1.
Complex s11(double delta_a, double delta_b);

/// Two-sided side-1 to side-2 transmission coefficient. da = db = 0 returns
/// 1; the pole limit (t -> infinity) returns 0.
Complex s21(double delta_a, double delta_b);

/// s11 or s21 depending on the cavity kind.
Complex coefficient(double delta_a, double delta_b, CavityKind kind);

struct ContrastResult {
  Complex delta_s;
  double magnitude = 0.0;
  double arg = 0.0;
};

/// S(da + eps/2, db) - S(da - eps/2, db).
ContrastResult contrast(const NormalizedPoint& point, CavityKind kind);

/// 2 for one-sided reflection, 1 for two-sided transmission.
double theoretical_max_contrast(CavityKind kind);

/// 4 db^2 / (1 + 4 db^2) one-sided, 2 db^2 / (1 + db^2) two-sided.
double epsilon_threshold(double delta_b, CavityKind kind);

/// Detuning da^1 of the single maximum (or of the minimum separating the
/// two maxima): -db / (1 + 4 db^2) one-sided, -db / (1 + db^2) two-sided.
double single_peak_detuning(double delta_b, CavityKind kind);

/// |dS| at da^1: c eps eps_th / (eps^2 + eps_th^2), c = 4 (one-sided) or 2.
double single_peak_contrast(double delta_b, double epsilon, CavityKind kind);

enum class Regime { SingleMaximum, DoubleMaximum };

struct OptimaReport {
  double epsilon_th = 0.0;
  Regime regime = Regime::SingleMaximum;
  std::vector<double> maxima;
  std::optional<double> minimum_at;
  double peak_value = 0.0;
};

/// Maxima of |dS| over da at fixed (db, eps). eps == eps_th is reported as a
/// single maximum with coincident roots.
OptimaReport optimal_detunings(double delta_b, double epsilon,
                               CavityKind kind);

/// Largest |db| that still allows the theoretical maximum contrast:
/// sqrt(eps / (1 - eps)) / 2 one-sided (0 <= eps < 1),
/// sqrt(eps / (2 - eps)) two-sided (0 <= eps < 2). The positive branch is
/// returned; -delta_b_threshold is equivalent under db -> -db, da -> -da.
double delta_b_threshold(double epsilon, CavityKind kind);

struct OptimalFrequencies {
  double mode_splitting = 0.0;  ///< omega_a - omega_b
  double pump_offset = 0.0;     ///< omega_p - (omega_a + omega_b) / 2
};

/// Mode splitting and pump placement of a one-sided cavity that realise
/// db = delta_b_threshold(eps) and da = da^1(db). Requires 0 < eps < 1.
OptimalFrequencies optimal_frequencies(double epsilon, double kappa_a,
                                       double kappa_b);

}  // namespace auxmode::scattering
