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

#include "cli/commands.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "auxmode/core.hpp"
#include "auxmode/dynamics.hpp"
#include "auxmode/optimize.hpp"
#include "auxmode/oracle.hpp"
#include "auxmode/scattering.hpp"

namespace auxmode::cli {

namespace {

constexpr double kScatterTolerance = 1e-9;
constexpr double kThresholdTolerance = 1e-4;
constexpr double kSnrTolerance = 1e-5;
constexpr double kDominanceTolerance = 1e-6;
constexpr double kRoundTripTolerance = 1e-12;
constexpr long kThresholdGrid = 10000;

// Runs body(i) for i in [0, n) on a few threads. Each index owns its output
// slot, so results come back in grid order regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string fmt(double v) { return format_number(v); }

double number(const Params& p, const char* key) { return p.at(key).get<double>(); }

long integer(const Params& p, const char* key) { return p.at(key).get<long>(); }

std::string text(const Params& p, const char* key) { return p.at(key).get<std::string>(); }

std::vector<double> numbers(const Params& p, const char* key) {
  return p.at(key).get<std::vector<double>>();
}

std::vector<std::string> texts(const Params& p, const char* key) {
  return p.at(key).get<std::vector<std::string>>();
}

CavityKind kind_of(const Params& p) {
  try {
    return parse_cavity_kind(text(p, "kind"));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

double saturation(CavityKind kind) { return kind == CavityKind::OneSided ? 1.0 : 2.0; }

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

std::vector<double> linear_grid(double lo, double hi, long n) {
  require(n >= 0, "point count must be non-negative");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    grid.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return grid;
}

std::vector<double> log_grid(double lo, double hi, long n) {
  require(n >= 0, "tau_points must be non-negative");
  require(lo > 0.0 && hi >= lo, "tau range must satisfy 0 < tau_min <= tau_max");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  const double span = std::log10(hi / lo);
  for (long i = 0; i < n; ++i) {
    grid.push_back(n == 1 ? lo : lo * std::pow(10.0, span * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  return grid;
}

// Explicit `key` list wins over the generated grid.
std::vector<double> explicit_or_linear(const Params& p, const char* key) {
  std::vector<double> values = numbers(p, key);
  if (values.empty()) {
    values = linear_grid(number(p, "epsilon_min"), number(p, "epsilon_max"), integer(p, "points"));
  }
  return values;
}

std::vector<double> tau_grid(const Params& p) {
  std::vector<double> taus = numbers(p, "taus");
  if (taus.empty()) {
    taus = log_grid(number(p, "tau_min"), number(p, "tau_max"), integer(p, "tau_points"));
  }
  for (double t : taus) require(t > 0.0, "durations must be positive");
  return taus;
}

optimize::KappaBounds bounds_of(const Params& p) {
  optimize::KappaBounds b{number(p, "kappa_b_min"), number(p, "kappa_b_max")};
  require(b.lo > 0.0 && b.lo < b.hi, "kappa_b bounds must satisfy 0 < kappa_b_min < kappa_b_max");
  return b;
}

long quadrature_steps(const Params& p) {
  const long steps = integer(p, "quadrature_steps");
  require(steps >= 10000, "quadrature_steps must be at least 10000");
  return steps;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string describe(const std::string& what, double got, double want) {
  std::ostringstream os;
  os << what << ": got " << fmt(got) << ", expected " << fmt(want) << ", diff "
     << fmt(std::abs(got - want));
  return os.str();
}

// ---------------------------------------------------------------- scatter

CommandResult scatter_impl(const Params& p, bool verify) {
  const CavityKind kind = kind_of(p);
  const double epsilon = number(p, "epsilon");
  require(epsilon >= 0.0, "epsilon must be non-negative");
  const long points = integer(p, "points");
  const std::vector<double> delta_as =
      linear_grid(number(p, "delta_a_min"), number(p, "delta_a_max"), points);

  std::vector<double> delta_bs;
  for (double m : numbers(p, "delta_b_over_th")) {
    require(epsilon < saturation(kind),
            "delta_b_over_th needs epsilon below " + fmt(saturation(kind)));
    delta_bs.push_back(m * scattering::delta_b_threshold(epsilon, kind));
  }
  for (double db : numbers(p, "delta_b")) delta_bs.push_back(db);

  struct Row {
    double da, db, abs_ds, arg_ds;
    Complex s0, s1;
  };
  std::vector<Row> rows;
  for (double db : delta_bs) {
    for (double da : delta_as) rows.push_back({da, db, 0, 0, {}, {}});
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    Row& r = rows[i];
    const NormalizedPoint np{r.da, r.db, epsilon};
    const auto c = scattering::contrast(np, kind);
    r.abs_ds = c.magnitude;
    r.arg_ds = c.arg;
    r.s0 = scattering::coefficient(shifted_delta_a(np, QubitState::Ground), r.db, kind);
    r.s1 = scattering::coefficient(shifted_delta_a(np, QubitState::Excited), r.db, kind);
  });

  CommandResult out;
  out.table.columns = {"delta_a", "delta_b", "epsilon", "kind", "abs_delta_s",
                       "arg_delta_s", "re_s0", "im_s0", "re_s1", "im_s1"};
  const std::string kind_name(to_string(kind));
  for (const Row& r : rows) {
    out.table.rows.push_back({r.da, r.db, epsilon, kind_name, r.abs_ds, r.arg_ds,
                              r.s0.real(), r.s0.imag(), r.s1.real(), r.s1.imag()});
  }

  if (verify) {
    for (const Row& r : rows) {
      const NormalizedPoint np{r.da, r.db, epsilon};
      int state = 0;
      for (QubitState q : {QubitState::Ground, QubitState::Excited}) {
        const CavityParams cp{shifted_delta_a(np, q), r.db, 1.0, 1.0, kind};
        const Complex direct = oracle::direct_solve(cp, 0.0).s;
        const Complex mine = state == 0 ? r.s0 : r.s1;
        ++out.verification.checks;
        if (std::abs(direct - mine) > kScatterTolerance) {
          out.verification.failures.push_back(
              describe("scatter delta_a=" + fmt(r.da) + " delta_b=" + fmt(r.db) +
                           " state=" + std::to_string(state),
                       std::abs(mine), std::abs(direct)));
        }
        ++state;
      }
    }
  }
  return out;
}

// ------------------------------------------------------------- thresholds

CommandResult thresholds_impl(const Params& p, bool verify) {
  const std::vector<double> epsilons = explicit_or_linear(p, "epsilons");
  for (double e : epsilons) require(e >= 0.0, "epsilon must be non-negative");

  CommandResult out;
  out.table.columns = {"epsilon", "delta_b_th_one_sided", "delta_b_th_two_sided"};
  for (double e : epsilons) {
    std::vector<Cell> row{e};
    for (CavityKind kind : {CavityKind::OneSided, CavityKind::TwoSided}) {
      if (e < saturation(kind)) {
        row.emplace_back(scattering::delta_b_threshold(e, kind));
      } else {
        row.emplace_back(Undefined{});
      }
    }
    out.table.rows.push_back(std::move(row));
  }

  if (verify) {
    struct Check {
      double epsilon;
      CavityKind kind;
      std::string failure;
    };
    std::vector<Check> checks;
    for (double e : epsilons) {
      for (CavityKind kind : {CavityKind::OneSided, CavityKind::TwoSided}) {
        if (e > 0.0 && e < saturation(kind)) checks.push_back({e, kind, {}});
      }
    }
    parallel_for(checks.size(), [&](std::size_t i) {
      Check& c = checks[i];
      const double db = scattering::delta_b_threshold(c.epsilon, c.kind) * (1.0 - 1e-6);
      const double centre = scattering::single_peak_detuning(db, c.kind);
      auto f = [&](double da) {
        return scattering::contrast({da, db, c.epsilon}, c.kind).magnitude;
      };
      const auto best = oracle::grid_maximize(f, centre - c.epsilon, centre + c.epsilon,
                                              kThresholdGrid);
      const double want = scattering::theoretical_max_contrast(c.kind);
      if (!near(best.max, want, kThresholdTolerance)) {
        c.failure = describe("threshold epsilon=" + fmt(c.epsilon) + " kind=" +
                                 std::string(to_string(c.kind)),
                             best.max, want);
      }
    });
    for (const Check& c : checks) {
      ++out.verification.checks;
      if (!c.failure.empty()) out.verification.failures.push_back(c.failure);
    }
  }
  return out;
}

// -------------------------------------------------------- snr / optimize

struct SnrRow {
  std::string strategy;
  double tau_kappa_a = 0.0;
  double value = 0.0;
  CavityParams params;  // working point, time unit 1 / kappa_a
  double chi = 0.0;
  double tau = 0.0;
};

std::vector<std::string> strategy_names(const Params& p) {
  std::vector<std::string> names = texts(p, "strategy");
  for (const auto& n : names) {
    if (n == "custom") continue;
    try {
      optimize::parse_strategy(n);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  return names;
}

std::vector<SnrRow> evaluate_rows(double epsilon, const std::vector<std::string>& strategies,
                                  const std::vector<double>& taus, const Params& p,
                                  CavityKind kind) {
  const bool any_named =
      std::any_of(strategies.begin(), strategies.end(), [](const auto& s) { return s != "custom"; });
  if (any_named) {
    require(epsilon >= 0.0 && epsilon <= saturation(kind),
            "epsilon must lie in [0, " + fmt(saturation(kind)) + "] for named strategies");
  }
  const optimize::KappaBounds bounds = bounds_of(p);

  std::vector<SnrRow> rows;
  for (const auto& s : strategies) {
    for (double t : taus) {
      SnrRow r;
      r.strategy = s;
      r.tau_kappa_a = t;
      rows.push_back(r);
    }
  }
  parallel_for(rows.size(), [&](std::size_t i) {
    SnrRow& r = rows[i];
    if (r.strategy == "custom") {
      const double ka = number(p, "kappa_a");
      const double kb = number(p, "kappa_b");
      r.params = CavityParams{number(p, "delta_a") * ka, number(p, "delta_b") * kb, ka, kb, kind};
      r.chi = 0.5 * epsilon * ka;
      r.tau = r.tau_kappa_a / ka;
      r.value = dynamics::snr(r.params, Drive{}, r.chi, r.tau);
      return;
    }
    const double tau = r.tau_kappa_a;
    const auto scenario = optimize::evaluate_strategy(
        epsilon, optimize::parse_strategy(r.strategy), std::span<const double>(&tau, 1), bounds, kind);
    r.params = optimize::to_params(scenario.optimal_params.front(), kind);
    r.chi = 0.5 * epsilon;
    r.tau = tau;
    r.value = scenario.result.value.front();
  });
  return rows;
}

void verify_quadrature(const std::vector<SnrRow>& rows, long steps, VerificationReport& report,
                       const std::string& label) {
  std::vector<std::string> failures(rows.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const SnrRow& r = rows[i];
    const double q = oracle::snr_quadrature(r.params, Drive{}, r.chi, r.tau, steps);
    if (!near(r.value, q, kSnrTolerance)) {
      failures[i] = describe(label + " strategy=" + r.strategy + " tau=" + fmt(r.tau_kappa_a),
                             r.value, q);
    }
  });
  for (auto& f : failures) {
    ++report.checks;
    if (!f.empty()) report.failures.push_back(std::move(f));
  }
}

CommandResult snr_impl(const Params& p, bool verify) {
  const CavityKind kind = kind_of(p);
  const double epsilon = number(p, "epsilon");
  require(epsilon >= 0.0, "epsilon must be non-negative");
  require(number(p, "kappa_a") > 0.0 && number(p, "kappa_b") > 0.0,
          "decay rates must be positive");
  const auto strategies = strategy_names(p);
  const auto taus = tau_grid(p);
  const long steps = quadrature_steps(p);
  const auto rows = evaluate_rows(epsilon, strategies, taus, p, kind);

  CommandResult out;
  out.table.columns = {"tau_kappa_a", "strategy", "snr_normalized", "kappa_b_used"};
  for (const auto& r : rows) {
    out.table.rows.push_back({r.tau_kappa_a, r.strategy, r.value, r.params.kappa_b / r.params.kappa_a});
  }
  if (verify) verify_quadrature(rows, steps, out.verification, "snr");
  return out;
}

CommandResult optimize_impl(const Params& p, bool verify) {
  const CavityKind kind = kind_of(p);
  const auto epsilons = numbers(p, "epsilons");
  for (double e : epsilons) {
    require(e > 0.0 && e <= saturation(kind),
            "epsilons must lie in (0, " + fmt(saturation(kind)) + "]");
  }
  const auto taus = tau_grid(p);
  const long steps = quadrature_steps(p);
  const std::vector<std::string> strategies = {"kappa_equal", "kappa_ten", "kappa_optimized",
                                               "unconstrained", "single_mode"};

  CommandResult out;
  out.table.columns = {"epsilon",   "strategy", "tau_kappa_a", "snr_normalized",
                       "kappa_b",   "detuning_a", "detuning_b"};
  for (double e : epsilons) {
    const auto rows = evaluate_rows(e, strategies, taus, p, kind);
    for (const auto& r : rows) {
      out.table.rows.push_back({e, r.strategy, r.tau_kappa_a, r.value, r.params.kappa_b,
                                r.params.omega_a, r.params.omega_b});
    }
    if (!verify) continue;
    const std::size_t n = taus.size();
    auto at = [&](std::size_t strategy, std::size_t t) { return rows[strategy * n + t].value; };
    for (std::size_t t = 0; t < n; ++t) {
      const std::string where = "epsilon=" + fmt(e) + " tau=" + fmt(taus[t]);
      const std::pair<std::size_t, std::size_t> dominance[] = {{2, 0}, {2, 1}, {3, 2}};
      for (auto [hi, lo] : dominance) {
        ++out.verification.checks;
        if (at(hi, t) < at(lo, t) - kDominanceTolerance) {
          out.verification.failures.push_back(describe(
              "optimize " + where + " " + strategies[hi] + " below " + strategies[lo], at(hi, t),
              at(lo, t)));
        }
      }
    }
    verify_quadrature(rows, steps, out.verification, "optimize epsilon=" + fmt(e));
  }
  return out;
}

// ------------------------------------------------------------ frequencies

CommandResult frequencies_impl(const Params& p, bool verify) {
  const std::vector<double> epsilons = explicit_or_linear(p, "epsilons");
  const double ka = number(p, "kappa_a");
  const double kb = number(p, "kappa_b");
  require(ka > 0.0 && kb > 0.0 && std::isfinite(ka) && std::isfinite(kb),
          "decay rates must be positive");

  CommandResult out;
  out.table.columns = {"epsilon", "mode_splitting", "pump_offset"};
  for (double e : epsilons) {
    if (!(e > 0.0 && e < 1.0)) {
      out.table.rows.push_back({e, Undefined{}, Undefined{}});
      continue;
    }
    const auto f = scattering::optimal_frequencies(e, ka, kb);
    out.table.rows.push_back({e, f.mode_splitting, f.pump_offset});
    if (!verify) continue;

    // Place the pump at zero and recover the mode frequencies.
    const double sum = -2.0 * f.pump_offset;
    const CavityParams cp{0.5 * (sum + f.mode_splitting), 0.5 * (sum - f.mode_splitting), ka, kb,
                          CavityKind::OneSided};
    const NormalizedPoint np = normalize(cp, Drive{}, QubitShift{0.5 * e * ka});
    const double db_th = scattering::delta_b_threshold(e, CavityKind::OneSided);
    const double da_1 = scattering::single_peak_detuning(db_th, CavityKind::OneSided);
    const std::string where = "frequencies epsilon=" + fmt(e);
    out.verification.checks += 2;
    if (!near(np.delta_a, da_1, kRoundTripTolerance)) {
      out.verification.failures.push_back(describe(where + " delta_a", np.delta_a, da_1));
    }
    if (!near(np.delta_b, db_th, kRoundTripTolerance)) {
      out.verification.failures.push_back(describe(where + " delta_b", np.delta_b, db_th));
    }
  }
  return out;
}

// ------------------------------------------------------------ registry

Params list(std::initializer_list<double> values) { return Params(std::vector<double>(values)); }

Params slist(std::initializer_list<const char*> values) {
  Params out = Params::array();
  for (const char* v : values) out.push_back(v);
  return out;
}

std::vector<ParamSpec> snr_common() {
  return {
      {"kind", ParamType::String, "one_sided", "cavity kind: one_sided or two_sided"},
      {"taus", ParamType::NumberList, list({}), "explicit durations tau*kappa_a (overrides tau grid)"},
      {"tau_min", ParamType::Number, 1.0, "smallest duration tau*kappa_a"},
      {"tau_max", ParamType::Number, 1e4, "largest duration tau*kappa_a"},
      {"tau_points", ParamType::Integer, 25, "log-spaced durations"},
      {"kappa_b_min", ParamType::Number, 1e-2, "lower kappa_b/kappa_a bound for optimisation"},
      {"kappa_b_max", ParamType::Number, 1e4, "upper kappa_b/kappa_a bound for optimisation"},
      {"quadrature_steps", ParamType::Integer, 20000, "trapezoid steps used by --verify"},
  };
}

std::vector<CommandSpec> build_commands() {
  std::vector<CommandSpec> out;

  CommandSpec scatter{
      "scatter",
      "contrast |S(0) - S(1)| across a delta_a sweep",
      {
          {"kind", ParamType::String, "one_sided", "cavity kind: one_sided or two_sided"},
          {"epsilon", ParamType::Number, 0.01, "qubit shift 2 chi / kappa_a"},
          {"delta_a_min", ParamType::Number, -0.15, "sweep start"},
          {"delta_a_max", ParamType::Number, 0.05, "sweep end"},
          {"points", ParamType::Integer, 2001, "sweep points (0 gives an empty table)"},
          {"delta_b_over_th", ParamType::NumberList, list({0.5, 1.0, 2.0}),
           "delta_b values as multiples of the threshold"},
          {"delta_b", ParamType::NumberList, list({1e3}), "absolute delta_b values"},
      },
      {
          {"eps_0.01", Params{{"epsilon", 0.01}, {"delta_a_min", -0.15}, {"delta_a_max", 0.05}}},
          {"eps_0.1", Params{{"epsilon", 0.1}, {"delta_a_min", -0.5}, {"delta_a_max", 0.3}}},
          {"eps_0.9", Params{{"epsilon", 0.9}, {"delta_a_min", -2.0}, {"delta_a_max", 2.0}}},
      },
      scatter_impl,
  };
  out.push_back(std::move(scatter));

  CommandSpec thresholds{
      "thresholds",
      "delta_b threshold for maximal contrast, both cavity kinds",
      {
          {"epsilons", ParamType::NumberList, list({}), "explicit epsilon values (overrides grid)"},
          {"epsilon_min", ParamType::Number, 0.0, "grid start"},
          {"epsilon_max", ParamType::Number, 2.0, "grid end"},
          {"points", ParamType::Integer, 41, "grid points"},
      },
      {
          {"unit_interval", Params{{"epsilon_min", 0.0}, {"epsilon_max", 1.0}, {"points", 101}}},
      },
      thresholds_impl,
  };
  out.push_back(std::move(thresholds));

  std::vector<ParamSpec> snr_params = {
      {"epsilon", ParamType::Number, 0.01, "qubit shift 2 chi / kappa_a"},
      {"strategy", ParamType::StringList, slist({"kappa_equal"}),
       "kappa_equal, kappa_ten, kappa_optimized, unconstrained, single_mode or custom"},
      {"delta_a", ParamType::Number, 0.0, "custom strategy: delta_a"},
      {"delta_b", ParamType::Number, 1e3, "custom strategy: delta_b"},
      {"kappa_a", ParamType::Number, 1.0, "custom strategy: kappa_a"},
      {"kappa_b", ParamType::Number, 1.0, "custom strategy: kappa_b"},
  };
  for (auto& s : snr_common()) snr_params.push_back(std::move(s));
  const Params all_strategies =
      slist({"kappa_equal", "kappa_ten", "kappa_optimized", "unconstrained", "single_mode"});
  std::map<std::string, Params> snr_presets;
  const std::pair<const char*, double> snr_epsilons[] = {
      {"eps_0.01", 0.01}, {"eps_0.1", 0.1}, {"eps_0.5", 0.5}, {"eps_1", 1.0}};
  for (auto [name, e] : snr_epsilons) {
    snr_presets[name] = Params{{"epsilon", e}, {"strategy", all_strategies}};
  }
  out.push_back({"snr", "finite-duration SNR over a duration grid", std::move(snr_params),
                 std::move(snr_presets), snr_impl});

  std::vector<ParamSpec> opt_params = {
      {"epsilons", ParamType::NumberList, list({0.01, 0.1, 0.5, 1.0}), "epsilon values"},
  };
  for (auto& s : snr_common()) opt_params.push_back(std::move(s));
  for (auto& s : opt_params) {
    if (s.key == "tau_points") s.default_value = 13;
  }
  out.push_back({"optimize",
                 "all strategies per epsilon with the per-duration working point",
                 std::move(opt_params),
                 {{"fine_grid", Params{{"tau_points", 25}}}},
                 optimize_impl});

  out.push_back({"frequencies",
                 "optimal mode splitting and pump offset",
                 {
                     {"epsilons", ParamType::NumberList, list({}), "explicit epsilon values (overrides grid)"},
                     {"epsilon_min", ParamType::Number, 0.05, "grid start"},
                     {"epsilon_max", ParamType::Number, 0.95, "grid end"},
                     {"points", ParamType::Integer, 19, "grid points"},
                     {"kappa_a", ParamType::Number, 1.0, "decay rate of mode a"},
                     {"kappa_b", ParamType::Number, 1.0, "decay rate of mode b"},
                 },
                 {},
                 frequencies_impl});
  return out;
}

Params coerce(const ParamSpec& spec, const Params& value) {
  auto fail = [&]() -> ConfigError {
    return ConfigError("invalid value for '" + spec.key + "': " + value.dump());
  };
  auto finite = [&](const Params& v) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) throw fail();
    return v.get<double>();
  };
  switch (spec.type) {
    case ParamType::Number:
      return finite(value);
    case ParamType::Integer:
      if (!value.is_number_integer()) throw fail();
      return value.get<long>();
    case ParamType::String:
      if (!value.is_string()) throw fail();
      return value;
    case ParamType::NumberList: {
      Params out = Params::array();
      if (value.is_array()) {
        for (const auto& v : value) out.push_back(finite(v));
      } else {
        out.push_back(finite(value));
      }
      return out;
    }
    case ParamType::StringList: {
      Params out = Params::array();
      if (value.is_array()) {
        for (const auto& v : value) {
          if (!v.is_string()) throw fail();
          out.push_back(v);
        }
      } else if (value.is_string()) {
        out.push_back(value);
      } else {
        throw fail();
      }
      return out;
    }
  }
  throw fail();
}

const ParamSpec& find_param(const CommandSpec& command, const std::string& key) {
  for (const auto& s : command.params) {
    if (s.key == key) return s;
  }
  throw ConfigError("unknown key '" + key + "' for command " + command.name);
}

double parse_double(const std::string& key, const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError("invalid number for '" + key + "': '" + s + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> parts;
  if (s.empty()) return parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (s.back() == ',') parts.emplace_back();
  return parts;
}

}  // namespace

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> registry = build_commands();
  return registry;
}

const CommandSpec& find_command(std::string_view name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

Params parse_flag_value(const ParamSpec& spec, const std::string& raw) {
  switch (spec.type) {
    case ParamType::Number:
      return parse_double(spec.key, raw);
    case ParamType::Integer: {
      errno = 0;
      char* end = nullptr;
      const long v = std::strtol(raw.c_str(), &end, 10);
      if (raw.empty() || end != raw.c_str() + raw.size() || errno == ERANGE) {
        throw ConfigError("invalid integer for '" + spec.key + "': '" + raw + "'");
      }
      return v;
    }
    case ParamType::String:
      return raw;
    case ParamType::NumberList: {
      Params out = Params::array();
      for (const auto& part : split(raw)) out.push_back(parse_double(spec.key, part));
      return out;
    }
    case ParamType::StringList: {
      Params out = Params::array();
      for (const auto& part : split(raw)) out.push_back(part);
      return out;
    }
  }
  throw ConfigError("unsupported parameter type");
}

Params resolve_params(const CommandSpec& command, const std::optional<std::string>& preset,
                      const Params& config, const std::map<std::string, std::string>& flags) {
  Params p = Params::object();
  for (const auto& s : command.params) p[s.key] = s.default_value;
  if (preset) {
    const auto it = command.presets.find(*preset);
    if (it == command.presets.end()) {
      throw ConfigError("unknown preset '" + *preset + "' for command " + command.name);
    }
    for (const auto& [key, value] : it->second.items()) p[key] = coerce(find_param(command, key), value);
  }
  if (!config.is_null()) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : config.items()) p[key] = coerce(find_param(command, key), value);
  }
  for (const auto& [key, raw] : flags) p[key] = parse_flag_value(find_param(command, key), raw);
  return p;
}

CommandResult run_scatter(const Params& params, bool verify) { return scatter_impl(params, verify); }
CommandResult run_thresholds(const Params& params, bool verify) {
  return thresholds_impl(params, verify);
}
CommandResult run_snr(const Params& params, bool verify) { return snr_impl(params, verify); }
CommandResult run_optimize(const Params& params, bool verify) {
  return optimize_impl(params, verify);
}
CommandResult run_frequencies(const Params& params, bool verify) {
  return frequencies_impl(params, verify);
}

}  // namespace auxmode::cli
