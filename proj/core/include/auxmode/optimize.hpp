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

#include <span>
#include <string_view>
#include <vector>

#include "auxmode/core.hpp"
#include "auxmode/dynamics.hpp"

/**
 * Finite-duration SNR maximisation with kappa_a = 1 as the unit.
 *
 * Working points are expressed in the rotating frame of the pump
 * (omega_p = 0), so omega_a and omega_b are the detunings Delta_a, Delta_b.
 * The qubit shift is chi = epsilon / 2.
 */
namespace auxmode::optimize {

enum class Strategy {
  FixedKappaEqual,      ///< kappa_b = kappa_a at the stationary optimum
  FixedKappaTen,        ///< kappa_b = 10 kappa_a at the stationary optimum
  OptimizedKappaB,      ///< kappa_b maximised per duration, ratios held fixed
  Unconstrained,        ///< (Delta_a, Delta_b, kappa_b) maximised per duration
  SingleModeReference,  ///< db = 1e3, da = 0, kappa_b = kappa_a
};

std::string_view to_string(Strategy strategy);
Strategy parse_strategy(std::string_view text);

struct OperatingPoint {
  double detuning_a = 0.0;  ///< Delta_a = omega_a - omega_p
  double detuning_b = 0.0;  ///< Delta_b = omega_b - omega_p
  double kappa_b = 1.0;
};

/// Normalised auxiliary detuning standing in for a far-detuned mode b.
inline constexpr double kSingleModeDeltaB = 1e3;

struct KappaBounds {
  double lo = 1e-2;
  double hi = 1e4;
};

/// db = delta_b_threshold(eps), da = da^1(db) realised with the given
/// kappa_b. At or beyond single-mode saturation (eps >= 1 one-sided,
/// eps >= 2 two-sided) the threshold diverges and db = kSingleModeDeltaB.
OperatingPoint preset_point(double epsilon, double kappa_b,
                            CavityKind kind = CavityKind::OneSided);

OperatingPoint single_mode_point();

CavityParams to_params(const OperatingPoint& point,
                       CavityKind kind = CavityKind::OneSided);

double snr_at(double epsilon, const OperatingPoint& point, double tau,
              CavityKind kind = CavityKind::OneSided);

struct Optimum {
  OperatingPoint point;
  double snr = 0.0;
};

/// Maximises snr over kappa_b in log space: 200-point scan plus the
/// kappa_a and 10 kappa_a presets, then golden-section refinement.
Optimum optimize_kappa_b(double epsilon, double tau, KappaBounds bounds = {},
                         CavityKind kind = CavityKind::OneSided);

/// Coordinate descent over (Delta_a, Delta_b / kappa_b, log kappa_b) with
/// scanned golden-section line searches and pattern moves, best of several
/// seeds: the kappa_b optimum and presets across the kappa_b bounds.
Optimum optimize_unconstrained(double epsilon, double tau,
                               KappaBounds bounds = {},
                               CavityKind kind = CavityKind::OneSided);

/// Same descent from an explicit seed point.
Optimum optimize_unconstrained_from(double epsilon, double tau,
                                    const OperatingPoint& seed,
                                    KappaBounds bounds = {},
                                    CavityKind kind = CavityKind::OneSided);

struct Scenario {
  double epsilon = 0.0;
  Strategy strategy = Strategy::FixedKappaEqual;
  // alpha is the homodyne angle of the first duration's working point.
  dynamics::SnrCurve result;
  std::vector<OperatingPoint> optimal_params;  ///< one per duration
};

Scenario evaluate_strategy(double epsilon, Strategy strategy,
                           std::span<const double> taus,
                           KappaBounds bounds = {},
                           CavityKind kind = CavityKind::OneSided);

/// Every strategy for every epsilon on the shared duration grid.
std::vector<Scenario> strategy_comparison(std::span<const double> epsilons,
                                          std::span<const double> taus,
                                          CavityKind kind = CavityKind::OneSided);

}  // namespace auxmode::optimize
