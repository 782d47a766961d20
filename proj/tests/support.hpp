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

#include <algorithm>
#include <cmath>
#include <random>

#include "auxmode/core.hpp"
#include "auxmode/dynamics.hpp"

namespace auxmode::testing {

// A driven cavity with kappa_a = 1, kappa_b / kappa_a in [0.1, 100]
// (log-uniform), both detunings within +-2 linewidths and chi in [0, 0.6].
struct Scenario {
  CavityParams params;
  Drive drive;
  double chi = 0.0;
};

class ScenarioGenerator {
 public:
  explicit ScenarioGenerator(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  Scenario next(CavityKind kind) {
    Scenario s;
    s.params.kind = kind;
    s.params.kappa_a = 1.0;
    s.params.kappa_b = std::pow(10.0, uniform(-1.0, 2.0));
    s.drive.omega_p = uniform(-2.0, 2.0);
    s.params.omega_a = s.drive.omega_p + uniform(-2.0, 2.0);
    s.params.omega_b = s.drive.omega_p + uniform(-2.0, 2.0) * s.params.kappa_b;
    s.chi = uniform(0.0, 0.6);
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline double slowest_rate(const dynamics::TransientSolution& sol) {
  return std::min(std::abs(sol.lambda[0].real()), std::abs(sol.lambda[1].real()));
}

}  // namespace auxmode::testing
