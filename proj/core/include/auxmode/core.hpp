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

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

/**
 * Domain types shared by every auxmode module.
 *
 * A cavity hosts two modes: the fundamental mode `a`, dispersively coupled to
 * a qubit, and an auxiliary mode `b` that couples to the same external field
 * but not to the qubit. All frequencies are angular frequencies in a single
 * consistent unit; nothing in the library multiplies by 2*pi.
 */
namespace auxmode {

using Complex = std::complex<double>;

/// Raised when an input lies outside the domain where a formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class CavityKind { OneSided, TwoSided };

std::string_view to_string(CavityKind kind);
/// Accepts "one_sided"/"two_sided" (also "1s"/"2s").
CavityKind parse_cavity_kind(std::string_view text);

struct CavityParams {
  double omega_a = 0.0;
  double omega_b = 0.0;
  double kappa_a = 1.0;
  double kappa_b = 1.0;
  CavityKind kind = CavityKind::OneSided;

  /// Throws DomainError unless all values are finite and both decay rates
  /// are strictly positive.
  void validate() const;
};

struct Drive {
  double omega_p = 0.0;
  Complex alpha_in{1.0, 0.0};
  // Port carrying the input field for two-sided cavities; the signal is read
  // on the opposite port. Ignored for one-sided cavities.
  int input_side = 1;

  void validate() const;
};

enum class QubitState : int { Ground = 0, Excited = 1 };

/// +1 for the ground state, -1 for the excited state. State 0 pushes mode a
/// up by +chi, state 1 pulls it down by -chi.
constexpr double state_sign(QubitState state) {
  return state == QubitState::Ground ? 1.0 : -1.0;
}

struct QubitShift {
  double chi = 0.0;
  QubitState state = QubitState::Ground;

  void validate() const;
};

/// Dimensionless working coordinates:
/// delta_x = (omega_x - omega_p) / kappa_x and epsilon = 2 chi / kappa_a.
struct NormalizedPoint {
  double delta_a = 0.0;
  double delta_b = 0.0;
  double epsilon = 0.0;
};

NormalizedPoint normalize(const CavityParams& params, const Drive& drive,
                          const QubitShift& shift);

/// delta_a + epsilon/2 for the ground state, delta_a - epsilon/2 otherwise.
double shifted_delta_a(const NormalizedPoint& point, QubitState state);

/// Copy of `params` with mode a moved by state_sign(state) * chi.
CavityParams with_qubit_shift(const CavityParams& params, double chi,
                              QubitState state);

}  // namespace auxmode
