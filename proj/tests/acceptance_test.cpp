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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Usage: acceptance_test <path-to-auxmode-binary> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "auxmode/core.hpp"
#include "auxmode/dynamics.hpp"
#include "auxmode/optimize.hpp"
#include "auxmode/oracle.hpp"
#include "auxmode/scattering.hpp"
#include "support.hpp"

namespace {

using namespace auxmode;
using auxmode::testing::ScenarioGenerator;
using auxmode::testing::slowest_rate;

constexpr CavityKind k1 = CavityKind::OneSided;
constexpr CavityKind k2 = CavityKind::TwoSided;

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Tracks the worst observed deviation against a tolerance.
class Worst {
 public:
  explicit Worst(std::string label, double tol) : label_(std::move(label)), tol_(tol) {}
  void see(double deviation) {
    worst_ = std::max(worst_, std::isnan(deviation) ? INFINITY : deviation);
  }
  bool ok() const { return worst_ < tol_; }
  std::string text() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s worst %.3e (tol %.0e)", label_.c_str(), worst_, tol_);
    return buf;
  }

 private:
  std::string label_;
  double tol_;
  double worst_ = 0.0;
};

Verdict combine(std::initializer_list<const Worst*> parts, std::string extra = {}) {
  Verdict v;
  for (const Worst* w : parts) {
    v.pass = v.pass && w->ok();
    if (!v.detail.empty()) v.detail += "; ";
    v.detail += w->text();
  }
  if (!extra.empty()) v.detail += "; " + extra;
  return v;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// 1 ---------------------------------------------------------------------
Verdict max_contrast_at_threshold() {
  Worst one("one-sided |dS|-2", 1e-9), two("two-sided |dS|-1", 1e-9);
  for (double db : {0.05, 0.1, 0.5, 1.0}) {
    for (CavityKind kind : {k1, k2}) {
      const double eps = scattering::epsilon_threshold(db, kind);
      const double da = scattering::single_peak_detuning(db, kind);
      const double mag = scattering::contrast({da, db, eps}, kind).magnitude;
      (kind == k1 ? one : two).see(std::abs(mag - scattering::theoretical_max_contrast(kind)));
    }
  }
  return combine({&one, &two});
}

// 2 ---------------------------------------------------------------------
Verdict two_regime_structure() {
  Worst loc("maxima location", 1e-6), minimum("minimum value", 1e-9);
  bool counts_ok = true;
  for (double db : {0.05, 0.1, 0.5, 1.0}) {
    for (CavityKind kind : {k1, k2}) {
      const double th = scattering::epsilon_threshold(db, kind);
      const double eps = 2.0 * th;
      auto f = [&](double da) { return scattering::contrast({da, db, eps}, kind).magnitude; };
      const double c = scattering::single_peak_detuning(db, kind);
      const double half = 0.5 * std::sqrt(eps * eps - th * th);
      const auto maxima = oracle::grid_local_maxima(f, c - 4.0 * half, c + 4.0 * half, 400001);
      if (maxima.size() != 2) {
        counts_ok = false;
        continue;
      }
      loc.see(std::abs(maxima[0].argmax - (c - half)));
      loc.see(std::abs(maxima[1].argmax - (c + half)));
      const auto minima = oracle::grid_local_minima(f, c - half, c + half, 100001);
      if (minima.size() != 1) {
        counts_ok = false;
        continue;
      }
      loc.see(std::abs(minima[0].argmax - c));
      minimum.see(std::abs(minima[0].max - scattering::single_peak_contrast(db, eps, kind)));
    }
  }
  Verdict v = combine({&loc, &minimum}, counts_ok ? "exactly two maxima, one minimum"
                                                  : "wrong number of extrema");
  v.pass = v.pass && counts_ok;
  return v;
}

// 3 ---------------------------------------------------------------------
Verdict single_mode_recovery() {
  Worst w11("s11", 1e-5), w21("s21", 1e-5);
  for (int i = 0; i <= 10000; ++i) {
    const double da = -5.0 + 10.0 * i / 10000.0;
    w11.see(std::abs(scattering::s11(da, 1e6) - Complex(1.0, -2.0 * da) / Complex(1.0, 2.0 * da)));
    w21.see(std::abs(scattering::s21(da, 1e6) - 1.0 / Complex(1.0, da)));
  }
  return combine({&w11, &w21});
}

// 4 ---------------------------------------------------------------------
Verdict cross_kind_identities() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(-3.0, 3.0), e(0.0, 1.0);
  Worst s("s11 vs 2 s21 - 1", 1e-12), d("dS11 vs 2 dS21", 1e-12);
  for (int i = 0; i < 10000; ++i) {
    const double da = u(rng), db = u(rng), eps = e(rng);
    s.see(std::abs(scattering::s11(da, db) - (2.0 * scattering::s21(2 * da, 2 * db) - 1.0)));
    d.see(std::abs(scattering::contrast({da, db, eps}, k1).delta_s -
                   2.0 * scattering::contrast({2 * da, 2 * db, 2 * eps}, k2).delta_s));
  }
  return combine({&s, &d});
}

// 5 ---------------------------------------------------------------------
Verdict eigendecomposition_soundness() {
  ScenarioGenerator gen(505);
  Worst ortho("orthonormality", 1e-10), comp("component relations", 1e-10),
      resid("relative residual", 1e-10);
  double max_re = -INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const auto s = gen.next(i % 2 ? k2 : k1);
    const auto matrix = dynamics::system_matrix(s.params);
    const auto eig = dynamics::eigensystem(matrix, s.drive.omega_p);
    dynamics::Mat2 m = matrix.m;
    m.m11 += Complex(0.0, s.drive.omega_p);
    m.m22 += Complex(0.0, s.drive.omega_p);
    const double scale = std::abs(m.m11) + std::abs(m.m12) + std::abs(m.m22);
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) {
        ortho.see(std::abs(dynamics::dot(eig.eta[k], eig.eta[l]) - (k == l ? 1.0 : 0.0)));
      }
      const auto lhs = m.apply(eig.eta[k]);
      resid.see(std::hypot(std::abs(lhs.a - eig.lambda[k] * eig.eta[k].a),
                           std::abs(lhs.b - eig.lambda[k] * eig.eta[k].b)) / scale);
      max_re = std::max(max_re, eig.lambda[k].real());
    }
    comp.see(std::abs(eig.eta[0].a + eig.eta[1].b));
    comp.see(std::abs(eig.eta[0].b - eig.eta[1].a));
  }
  Verdict v = combine({&ortho, &comp, &resid}, fmt("max Re lambda %.3e", max_re));
  v.pass = v.pass && max_re < 0.0;
  return v;
}

// 6 ---------------------------------------------------------------------
Verdict stationary_transient_consistency() {
  ScenarioGenerator gen(606);
  Worst one("A1+A2-1 vs S11", 1e-9), two("A1+A2 vs S21", 1e-9), late("ratio at t*rate=40", 1e-6);
  for (int i = 0; i < 2000; ++i) {
    const CavityKind kind = i % 2 ? k2 : k1;
    const auto s = gen.next(kind);
    for (QubitState q : {QubitState::Ground, QubitState::Excited}) {
      const QubitShift shift{s.chi, q};
      const auto sol = dynamics::transient_coefficients(s.params, s.drive, shift);
      const auto np = normalize(s.params, s.drive, shift);
      const Complex stat = scattering::coefficient(shifted_delta_a(np, q), np.delta_b, kind);
      const Complex sum = sol.coeff[0] + sol.coeff[1];
      (kind == k1 ? one : two).see(std::abs(sum - (kind == k1 ? 1.0 : 0.0) - stat));
      for (double multiple : {40.0, 60.0, 200.0}) {
        late.see(std::abs(dynamics::output_field_ratio(sol, multiple / slowest_rate(sol)) - stat));
      }
    }
  }
  return combine({&one, &two, &late});
}

// 7 ---------------------------------------------------------------------
Verdict oracle_equivalence() {
  ScenarioGenerator gen(707);
  Worst out("output", 1e-6), cavity("intracavity", 1e-6);
  long total_steps = 0;
  for (int i = 0; i < 50; ++i) {
    const CavityKind kind = i % 2 ? k2 : k1;
    const auto s = gen.next(kind);
    const QubitShift shift{s.chi, i % 4 < 2 ? QubitState::Ground : QubitState::Excited};
    const auto sol = dynamics::transient_coefficients(s.params, s.drive, shift);
    const double t_end = 40.0 / slowest_rate(sol);
    long steps = oracle::recommended_steps(s.params, s.drive, shift, t_end);
    steps = (steps + 199) / 200 * 200;
    total_steps += steps;
    const auto traj = oracle::ode_integrate(s.params, s.drive, shift, t_end, steps, steps / 200);
    double scale_out = 0.0, scale_cav = 0.0, err_out = 0.0, err_cav = 0.0;
    for (std::size_t j = 0; j < traj.times.size(); ++j) {
      const Complex cin = oracle::input_field(s.drive, traj.times[j]);
      const auto f = dynamics::intracavity_fields(sol, traj.times[j]);
      const Complex o = dynamics::output_field_ratio(sol, traj.times[j]);
      scale_out = std::max(scale_out, std::abs(o));
      scale_cav = std::max({scale_cav, std::abs(f.a), std::abs(f.b)});
      err_out = std::max(err_out, std::abs(traj.out_vals[j] / cin - o));
      err_cav = std::max({err_cav, std::abs(traj.a_vals[j] / cin - f.a),
                          std::abs(traj.b_vals[j] / cin - f.b)});
    }
    out.see(err_out / scale_out);
    cavity.see(err_cav / scale_cav);
  }
  return combine({&out, &cavity}, fmt("50 scenarios, %.3g RK4 steps", double(total_steps)));
}

// 8 ---------------------------------------------------------------------
Verdict snr_closed_form_vs_quadrature() {
  ScenarioGenerator gen(808);
  Worst w("|snr - quadrature|", 1e-6);
  for (int i = 0; i < 50; ++i) {
    auto s = gen.next(i % 2 ? k2 : k1);
    s.chi = std::max(s.chi, 1e-3);
    const double tau = std::pow(10.0, gen.uniform(-1.0, 4.0));
    w.see(std::abs(dynamics::snr(s.params, s.drive, s.chi, tau) -
                   oracle::snr_quadrature(s.params, s.drive, s.chi, tau, 200000)));
  }
  return combine({&w}, "50 scenarios, tau*kappa_a in [0.1, 1e4]");
}

// 9 ---------------------------------------------------------------------
Verdict single_mode_asymptotes() {
  Verdict v;
  const std::pair<double, double> cases[] = {{0.01, 0.04}, {0.1, 0.396}, {0.5, 1.6}, {1.0, 2.0}};
  for (auto [eps, want] : cases) {
    const double got = optimize::snr_at(eps, optimize::single_mode_point(), 1e4);
    const bool ok = std::abs(got - want) < 1e-2;
    v.pass = v.pass && ok;
    if (!v.detail.empty()) v.detail += "; ";
    v.detail += fmt("eps=%g: %.5f vs %.3f", eps, got, want);
  }
  return v;
}

// 10 --------------------------------------------------------------------
double ninety_percent_time(const std::function<double(double)>& curve, double asymptote) {
  double lo = -2.0, hi = 8.0;  // log10 tau
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (curve(std::pow(10.0, mid)) >= 0.9 * asymptote ? hi : lo) = mid;
  }
  return std::pow(10.0, hi);
}

Verdict snr_curve_structure() {
  std::vector<double> taus;
  for (int i = 0; i <= 32; ++i) taus.push_back(std::pow(10.0, 0.125 * i));
  Worst dominance("kappa_equal - kappa_optimized excess", 1e-6);
  Worst gain("unconstrained - kappa_optimized at tau=1e4", 1e-3);
  for (double eps : {0.01, 0.1, 0.5, 1.0}) {
    const auto equal = optimize::evaluate_strategy(eps, optimize::Strategy::FixedKappaEqual, taus);
    const auto opt = optimize::evaluate_strategy(eps, optimize::Strategy::OptimizedKappaB, taus);
    for (std::size_t i = 0; i < taus.size(); ++i) {
      dominance.see(std::max(0.0, equal.result.value[i] - opt.result.value[i]));
    }
    const double free = optimize::optimize_unconstrained(eps, 1e4).snr;
    gain.see(std::abs(free - opt.result.value.back()));
  }
  // 90%-of-asymptote time of the kappa_b-optimised curve (stationary-optimal
  // detuning ratios, kappa_b free) against 10 / eps.
  bool timing_ok = true;
  std::string timing = "t90*eps/10 (kappa_optimized):";
  std::string reference = "kappa_equal for comparison:";
  for (double eps : {0.01, 0.1, 0.5}) {
    const double asym = scattering::theoretical_max_contrast(k1);
    const double t_opt = ninety_percent_time(
        [&](double tau) { return optimize::optimize_kappa_b(eps, tau).snr; }, asym);
    const auto p1 = optimize::preset_point(eps, 1.0);
    const double t_eq = ninety_percent_time(
        [&](double tau) { return optimize::snr_at(eps, p1, tau); },
        optimize::snr_at(eps, p1, 1e12));
    const double ratio = t_opt * eps / 10.0;
    timing_ok = timing_ok && ratio > 1.0 / 3.0 && ratio < 3.0;
    timing += fmt(" %.3f", ratio);
    reference += fmt(" %.3f", t_eq * eps / 10.0);
  }
  Verdict v = combine({&dominance, &gain}, timing + " (window 1/3..3); " + reference);
  v.pass = v.pass && timing_ok;
  return v;
}

// 11 --------------------------------------------------------------------
Verdict frequency_placement() {
  Worst trip("round trip", 1e-12);
  for (double ka : {1.0, 2.0, 0.3}) {
    for (double kb : {1.0, 4.0, 25.0}) {
      for (int i = 1; i < 100; ++i) {
        const double eps = i / 100.0;
        const auto f = scattering::optimal_frequencies(eps, ka, kb);
        const double wp = 0.7;
        const double mean = wp - f.pump_offset;
        const CavityParams p{mean + 0.5 * f.mode_splitting, mean - 0.5 * f.mode_splitting, ka, kb};
        const auto np = normalize(p, Drive{wp}, QubitShift{0.5 * eps * ka});
        const double db = scattering::delta_b_threshold(eps, k1);
        trip.see(std::abs(np.delta_b - db));
        trip.see(std::abs(np.delta_a - scattering::single_peak_detuning(db, k1)));
      }
    }
  }
  bool exact = true;
  for (double ka : {1.0, 2.0, 4.0}) {
    for (double kb : {1.0, 3.0}) {
      const auto f = scattering::optimal_frequencies(0.5, ka, kb);
      exact = exact && std::abs(0.5 * f.mode_splitting - f.pump_offset) == 0.25 * ka;
    }
  }
  Verdict v = combine({&trip}, exact ? "|Omega_a - w_p| = kappa_a/4 exactly at eps=1/2"
                                     : "|Omega_a - w_p| != kappa_a/4 at eps=1/2");
  v.pass = v.pass && exact;
  return v;
}

// 12 --------------------------------------------------------------------
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict cli_determinism(const std::string& binary, const std::filesystem::path& scratch) {
  Verdict v;
  std::filesystem::create_directories(scratch);
  const auto config = scratch / "snr_config.json";
  std::ofstream(config) << R"({"epsilon": 0.1, "strategy": ["kappa_equal", "kappa_optimized"], "tau_points": 9})";

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"scatter", "scatter --preset eps_0.1"},
      {"snr", "--config \"" + config.string() + "\" snr"},
  };
  int identical = 0;
  for (const auto& [name, args] : runs) {
    const auto a = scratch / (name + "_1.csv");
    const auto b = scratch / (name + "_2.csv");
    const int ra = shell("\"" + binary + "\" --output \"" + a.string() + "\" " + args);
    const int rb = shell("\"" + binary + "\" --output \"" + b.string() + "\" " + args);
    const std::string da = slurp(a), db = slurp(b);
    if (ra == 0 && rb == 0 && !da.empty() && da == db) {
      ++identical;
    } else {
      v.pass = false;
      v.detail += name + " runs differ; ";
    }
  }
  v.detail += std::to_string(identical) + "/2 byte-identical reruns; ";

  const std::vector<std::string> presets = {
      "scatter --preset eps_0.01", "scatter --preset eps_0.1",     "scatter --preset eps_0.9",
      "thresholds --preset unit_interval", "snr --preset eps_0.01", "snr --preset eps_0.1",
      "snr --preset eps_0.5",     "snr --preset eps_1",         "optimize --preset fine_grid",
      "frequencies",            "thresholds",
  };
  int passed = 0;
  for (const auto& args : presets) {
    const auto log = scratch / "verify.log";
    const int rc = shell("\"" + binary + "\" --verify --output /dev/null " + args + " 2> \"" +
                         log.string() + "\"");
    if (rc == 0) {
      ++passed;
    } else {
      v.pass = false;
      v.detail += "[" + args + "] exit " + std::to_string(rc) + "; ";
    }
  }
  v.detail += std::to_string(passed) + "/" + std::to_string(presets.size()) +
              " preset runs pass --verify";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <auxmode-binary> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const std::string binary = argv[1];
  const std::filesystem::path scratch = argv[2];

  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "max_contrast_at_threshold", max_contrast_at_threshold},
      {2, "two_regime_structure", two_regime_structure},
      {3, "single_mode_recovery", single_mode_recovery},
      {4, "cross_kind_identities", cross_kind_identities},
      {5, "eigendecomposition_soundness", eigendecomposition_soundness},
      {6, "stationary_transient_consistency", stationary_transient_consistency},
      {7, "analytic_fields_match_rk4", oracle_equivalence},
      {8, "snr_closed_form_vs_quadrature", snr_closed_form_vs_quadrature},
      {9, "single_mode_asymptotes_eps_half_asserts_formula_1.6_not_listed_0.625",
       single_mode_asymptotes},
      {10, "snr_curve_structure", snr_curve_structure},
      {11, "frequency_placement", frequency_placement},
      {12, "cli_determinism_and_preset_verify", [&] { return cli_determinism(binary, scratch); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%2d] %s (%.1fs): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                v.detail.c_str());
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
