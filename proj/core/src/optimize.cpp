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

#include "auxmode/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "auxmode/scattering.hpp"

namespace auxmode::optimize {

namespace {

constexpr int kKappaScanPoints = 200;
constexpr int kLineScanHalfWidth = 10;
constexpr int kMaxSweeps = 200;
constexpr double kWindowShrink = 0.5;

double saturation(CavityKind kind) {
  return kind == CavityKind::OneSided ? 1.0 : 2.0;
}

void check_epsilon(double epsilon, CavityKind kind) {
  if (!std::isfinite(epsilon) || epsilon < 0.0 || epsilon > saturation(kind)) {
    throw DomainError("epsilon must lie in [0, " +
                      std::to_string(saturation(kind)) + "]");
  }
}

void check_bounds(const KappaBounds& bounds) {
  if (!(bounds.lo > 0.0) || !(bounds.lo < bounds.hi) || !std::isfinite(bounds.hi)) {
    throw DomainError("kappa_b bounds must satisfy 0 < lo < hi");
  }
}

struct LineResult {
  double x;
  double value;
};

// Golden-section maximum of f on [lo, hi].
LineResult golden(const std::function<double(double)>& f, double lo, double hi,
                  double width) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > width && c < d) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? LineResult{c, fc} : LineResult{d, fd};
}

// Scans `xs`, then refines between the neighbours of the best sample.
LineResult scan_and_refine(const std::function<double(double)>& f,
                           std::vector<double> xs, double width) {
  std::sort(xs.begin(), xs.end());
  std::size_t best = 0;
  double best_value = f(xs[0]);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double v = f(xs[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = xs[best == 0 ? 0 : best - 1];
  const double hi = xs[std::min(best + 1, xs.size() - 1)];
  LineResult result{xs[best], best_value};
  if (lo < hi) {
    const LineResult refined = golden(f, lo, hi, width);
    if (refined.value > result.value) result = refined;
  }
  return result;
}

double homodyne_angle_at(double epsilon, const OperatingPoint& point,
                         CavityKind kind) {
  if (epsilon == 0.0) return 0.0;
  const CavityParams params = to_params(point, kind);
  const NormalizedPoint np = normalize(params, Drive{}, QubitShift{0.5 * epsilon});
  const auto c = scattering::contrast(np, kind);
  return c.magnitude > 0.0 ? dynamics::homodyne_angle(c) : 0.0;
}

// Search objective. A probe with vanishing stationary contrast has no
// homodyne angle and carries no usable signal, so it scores zero.
double search_value(double epsilon, const OperatingPoint& point, double tau, CavityKind kind) {
  if (epsilon == 0.0) return 0.0;
  const CavityParams params = to_params(point, kind);
  const NormalizedPoint np = normalize(params, Drive{}, QubitShift{0.5 * epsilon});
  if (scattering::contrast(np, kind).magnitude == 0.0) return 0.0;
  return dynamics::snr(params, Drive{}, 0.5 * epsilon, tau);
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::FixedKappaEqual:
      return "kappa_equal";
    case Strategy::FixedKappaTen:
      return "kappa_ten";
    case Strategy::OptimizedKappaB:
      return "kappa_optimized";
    case Strategy::Unconstrained:
      return "unconstrained";
    case Strategy::SingleModeReference:
      return "single_mode";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view text) {
  for (Strategy s : {Strategy::FixedKappaEqual, Strategy::FixedKappaTen,
                     Strategy::OptimizedKappaB, Strategy::Unconstrained,
                     Strategy::SingleModeReference}) {
    if (text == to_string(s)) return s;
  }
  throw DomainError("unknown strategy '" + std::string(text) + "'");
}

OperatingPoint preset_point(double epsilon, double kappa_b, CavityKind kind) {
  check_epsilon(epsilon, kind);
  const double delta_b = epsilon < saturation(kind)
                             ? scattering::delta_b_threshold(epsilon, kind)
                             : kSingleModeDeltaB;
  const double delta_a = scattering::single_peak_detuning(delta_b, kind);
  return {delta_a, delta_b * kappa_b, kappa_b};
}

OperatingPoint single_mode_point() { return {0.0, kSingleModeDeltaB, 1.0}; }

CavityParams to_params(const OperatingPoint& point, CavityKind kind) {
  return CavityParams{point.detuning_a, point.detuning_b, 1.0, point.kappa_b, kind};
}

double snr_at(double epsilon, const OperatingPoint& point, double tau,
              CavityKind kind) {
  return dynamics::snr(to_params(point, kind), Drive{}, 0.5 * epsilon, tau);
}

Optimum optimize_kappa_b(double epsilon, double tau, KappaBounds bounds,
                         CavityKind kind) {
  check_bounds(bounds);
  check_epsilon(epsilon, kind);
  auto objective = [&](double log_kappa) {
    return search_value(epsilon, preset_point(epsilon, std::pow(10.0, log_kappa), kind), tau, kind);
  };
  const double lo = std::log10(bounds.lo);
  const double hi = std::log10(bounds.hi);
  std::vector<double> grid;
  grid.reserve(kKappaScanPoints + 2);
  for (int i = 0; i < kKappaScanPoints; ++i) {
    grid.push_back(lo + (hi - lo) * i / (kKappaScanPoints - 1));
  }
  for (double seed : {0.0, 1.0}) {  // kappa_b = kappa_a and 10 kappa_a
    if (seed > lo && seed < hi) grid.push_back(seed);
  }
  const LineResult best = scan_and_refine(objective, grid, 1e-9);
  const double kappa_b = std::clamp(std::pow(10.0, best.x), bounds.lo, bounds.hi);
  return {preset_point(epsilon, kappa_b, kind), best.value};
}

Optimum optimize_unconstrained_from(double epsilon, double tau,
                                    const OperatingPoint& seed,
                                    KappaBounds bounds, CavityKind kind) {
  check_bounds(bounds);
  check_epsilon(epsilon, kind);
  const double log_lo = std::log10(bounds.lo);
  const double log_hi = std::log10(bounds.hi);
  const double seed_kappa = std::clamp(seed.kappa_b, bounds.lo, bounds.hi);
  // Search in (Delta_a, delta_b = Delta_b / kappa_b, log10 kappa_b): moving
  // kappa_b at fixed delta_b keeps the stationary contrast, which removes the
  // ridge that couples Delta_b and kappa_b.
  std::array<double, 3> x{seed.detuning_a, seed.detuning_b / seed_kappa, std::log10(seed_kappa)};
  auto point_of = [&](const std::array<double, 3>& v) {
    const double kappa_b = std::clamp(std::pow(10.0, v[2]), bounds.lo, bounds.hi);
    return OperatingPoint{v[0], v[1] * kappa_b, kappa_b};
  };
  auto value_of = [&](const std::array<double, 3>& v) {
    return search_value(epsilon, point_of(v), tau, kind);
  };

  double current = value_of(x);
  std::array<double, 3> window{
      0.5 * std::max({std::abs(x[0]), epsilon, 1e-3}),
      0.5 * std::max({std::abs(x[1]), epsilon, 1e-3}),
      1.0,
  };

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double before = current;
    const std::array<double, 3> start = x;
    for (std::size_t c = 0; c < 3; ++c) {
      double lo = x[c] - window[c];
      double hi = x[c] + window[c];
      if (c == 2) {
        lo = std::max(lo, log_lo);
        hi = std::min(hi, log_hi);
      }
      if (!(lo < hi)) continue;
      std::vector<double> samples;
      samples.reserve(2 * kLineScanHalfWidth + 2);
      for (int i = -kLineScanHalfWidth; i <= kLineScanHalfWidth; ++i) {
        samples.push_back(lo + (hi - lo) * (i + kLineScanHalfWidth) / (2.0 * kLineScanHalfWidth));
      }
      samples.push_back(x[c]);
      auto along = [&](double value) {
        std::array<double, 3> trial = x;
        trial[c] = value;
        return value_of(trial);
      };
      const LineResult line =
          scan_and_refine(along, samples, 1e-12 * std::max(1.0, std::abs(x[c])));
      double moved = 0.0;
      if (line.value > current) {
        moved = std::abs(line.x - x[c]);
        x[c] = line.x;
        current = line.value;
      }
      // Keep the window wide while the coordinate is still travelling.
      window[c] = std::max(kWindowShrink * window[c], 2.0 * moved);
    }
    // Pattern move along the net displacement of this sweep follows curved
    // ridges that single coordinates only crawl along.
    const std::array<double, 3> step{x[0] - start[0], x[1] - start[1], x[2] - start[2]};
    if (step[0] != 0.0 || step[1] != 0.0 || step[2] != 0.0) {
      const std::array<double, 3> origin = x;
      auto along = [&](double s) {
        std::array<double, 3> trial{origin[0] + s * step[0], origin[1] + s * step[1],
                                    std::clamp(origin[2] + s * step[2], log_lo, log_hi)};
        return value_of(trial);
      };
      std::vector<double> samples;
      samples.reserve(2 * kLineScanHalfWidth + 1);
      for (int i = 0; i <= 2 * kLineScanHalfWidth; ++i) {
        samples.push_back(-1.0 + 4.0 * i / (2.0 * kLineScanHalfWidth));
      }
      const LineResult line = scan_and_refine(along, samples, 1e-12);
      if (line.value > current) {
        x = {origin[0] + line.x * step[0], origin[1] + line.x * step[1],
             std::clamp(origin[2] + line.x * step[2], log_lo, log_hi)};
        current = line.value;
      }
    }
    const bool settled = current - before <= 1e-15 * std::max(1.0, current);
    const bool narrow = window[0] < 1e-9 * std::max(1.0, std::abs(x[0])) &&
                        window[1] < 1e-9 * std::max(1.0, std::abs(x[1])) && window[2] < 1e-9;
    if (settled && narrow) break;
  }
  return {point_of(x), current};
}

Optimum optimize_unconstrained(double epsilon, double tau, KappaBounds bounds,
                               CavityKind kind) {
  const Optimum constrained = optimize_kappa_b(epsilon, tau, bounds, kind);
  // Short durations can have several local maxima; a few fixed seeds keep the
  // search deterministic while covering the leaky and narrow auxiliary modes.
  std::vector<OperatingPoint> seeds{constrained.point};
  for (double kappa_b : {bounds.lo, 1.0, 10.0, bounds.hi}) {
    if (kappa_b >= bounds.lo && kappa_b <= bounds.hi) {
      seeds.push_back(preset_point(epsilon, kappa_b, kind));
    }
  }
  Optimum best = constrained;
  for (const OperatingPoint& seed : seeds) {
    const Optimum candidate = optimize_unconstrained_from(epsilon, tau, seed, bounds, kind);
    if (candidate.snr > best.snr) best = candidate;
  }
  return best;
}

Scenario evaluate_strategy(double epsilon, Strategy strategy,
                           std::span<const double> taus, KappaBounds bounds,
                           CavityKind kind) {
  Scenario scenario;
  scenario.epsilon = epsilon;
  scenario.strategy = strategy;
  scenario.result.scenario = std::string(to_string(strategy));
  scenario.result.tau.assign(taus.begin(), taus.end());

  for (double tau : taus) {
    Optimum opt;
    switch (strategy) {
      case Strategy::FixedKappaEqual:
        opt.point = preset_point(epsilon, 1.0, kind);
        opt.snr = snr_at(epsilon, opt.point, tau, kind);
        break;
      case Strategy::FixedKappaTen:
        opt.point = preset_point(epsilon, 10.0, kind);
        opt.snr = snr_at(epsilon, opt.point, tau, kind);
        break;
      case Strategy::OptimizedKappaB:
        opt = optimize_kappa_b(epsilon, tau, bounds, kind);
        break;
      case Strategy::Unconstrained:
        opt = optimize_unconstrained(epsilon, tau, bounds, kind);
        break;
      case Strategy::SingleModeReference:
        opt.point = single_mode_point();
        opt.snr = snr_at(epsilon, opt.point, tau, kind);
        break;
    }
    scenario.result.value.push_back(opt.snr);
    scenario.optimal_params.push_back(opt.point);
  }
  if (!scenario.optimal_params.empty()) {
    scenario.result.alpha = homodyne_angle_at(epsilon, scenario.optimal_params.front(), kind);
  }
  return scenario;
}

std::vector<Scenario> strategy_comparison(std::span<const double> epsilons,
                                          std::span<const double> taus,
                                          CavityKind kind) {
  std::vector<Scenario> scenarios;
  for (double epsilon : epsilons) {
    if (!(epsilon > 0.0) || epsilon > saturation(kind)) {
      throw DomainError("strategy comparison need epsilon in (0, saturation]");
    }
    for (Strategy s : {Strategy::FixedKappaEqual, Strategy::FixedKappaTen,
                       Strategy::OptimizedKappaB, Strategy::Unconstrained,
                       Strategy::SingleModeReference}) {
      scenarios.push_back(evaluate_strategy(epsilon, s, taus, {}, kind));
    }
  }
  return scenarios;
}

}  // namespace auxmode::optimize
