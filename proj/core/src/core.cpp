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

#include "auxmode/core.hpp"

#include <cmath>

namespace auxmode {

std::string_view to_string(CavityKind kind) {
  switch (kind) {
    case CavityKind::OneSided:
      return "one_sided";
    case CavityKind::TwoSided:
      return "two_sided";
  }
  return "unknown";
}

CavityKind parse_cavity_kind(std::string_view text) {
  if (text == "one_sided" || text == "1s" || text == "one-sided") {
    return CavityKind::OneSided;
  }
  if (text == "two_sided" || text == "2s" || text == "two-sided") {
    return CavityKind::TwoSided;
  }
  throw DomainError("unknown cavity kind '" + std::string(text) +
                    "' (expected one_sided or two_sided)");
}

void CavityParams::validate() const {
  if (!std::isfinite(omega_a) || !std::isfinite(omega_b) ||
      !std::isfinite(kappa_a) || !std::isfinite(kappa_b)) {
    throw DomainError("cavity parameters must be finite");
  }
  if (!(kappa_a > 0.0) || !(kappa_b > 0.0)) {
    throw DomainError("decay rates kappa_a and kappa_b must be positive");
  }
}

void Drive::validate() const {
  if (!std::isfinite(omega_p) || !std::isfinite(alpha_in.real()) ||
      !std::isfinite(alpha_in.imag())) {
    throw DomainError("drive parameters must be finite");
  }
  if (input_side != 1 && input_side != 2) {
    throw DomainError("input_side must be 1 or 2");
  }
}

void QubitShift::validate() const {
  if (!std::isfinite(chi) || chi < 0.0) {
    throw DomainError("dispersive shift chi must be finite and non-negative");
  }
}

NormalizedPoint normalize(const CavityParams& params, const Drive& drive,
                          const QubitShift& shift) {
  params.validate();
  drive.validate();
  shift.validate();
  return NormalizedPoint{
      .delta_a = (params.omega_a - drive.omega_p) / params.kappa_a,
      .delta_b = (params.omega_b - drive.omega_p) / params.kappa_b,
      .epsilon = 2.0 * shift.chi / params.kappa_a,
  };
}

double shifted_delta_a(const NormalizedPoint& point, QubitState state) {
  return point.delta_a + state_sign(state) * 0.5 * point.epsilon;
}

CavityParams with_qubit_shift(const CavityParams& params, double chi,
                              QubitState state) {
  CavityParams shifted = params;
  shifted.omega_a += state_sign(state) * chi;
  return shifted;
}

}  // namespace auxmode
