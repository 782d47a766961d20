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

#include "cli/app.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "auxmode/core.hpp"
#include "cli/commands.hpp"
#include "cli/table.hpp"

#ifndef AUXMODE_VERSION
#define AUXMODE_VERSION "unknown"
#endif

namespace auxmode::cli {

namespace {

std::string default_text(const ParamSpec& spec) {
  if (spec.default_value.is_string()) return spec.default_value.get<std::string>();
  if (spec.default_value.is_array()) {
    std::string joined;
    for (const auto& v : spec.default_value) {
      if (!joined.empty()) joined += ",";
      joined += v.is_string() ? v.get<std::string>() : format_number(v.get<double>());
    }
    return joined.empty() ? "none" : joined;
  }
  if (spec.default_value.is_number_integer()) {
    return std::to_string(spec.default_value.get<long>());
  }
  return format_number(spec.default_value.get<double>());
}

struct SubcommandState {
  const CommandSpec* spec = nullptr;
  CLI::App* app = nullptr;
  std::string preset;
  std::map<std::string, std::string> raw;
  std::map<std::string, CLI::Option*> options;
};

Params load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  try {
    return Params::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Readout calculator for a qubit coupled to a two-mode cavity."};
  app.require_subcommand(1);
  app.set_version_flag("--version", AUXMODE_VERSION);

  std::string output_path;
  std::string format = "csv";
  std::string config_path;
  bool verify = false;
  auto* output_opt = app.add_option("--output,-o", output_path, "write data to this file instead of stdout");
  auto* format_opt = app.add_option("--format", format, "csv or json (default: csv)")
                         ->check(CLI::IsMember({"csv", "json"}));
  auto* verify_opt = app.add_flag("--verify", verify,
                                  "cross-check every row against the brute-force oracles");
  app.add_option("--config", config_path, "JSON object of parameter values");

  std::vector<SubcommandState> subs;
  subs.reserve(commands().size());
  for (const auto& spec : commands()) {
    SubcommandState& state = subs.emplace_back();
    state.spec = &spec;
    state.app = app.add_subcommand(spec.name, spec.description);
    state.app->fallthrough();
    if (!spec.presets.empty()) {
      std::vector<std::string> names;
      for (const auto& [name, unused] : spec.presets) names.push_back(name);
      state.app->add_option("--preset", state.preset, "named parameter set")
          ->check(CLI::IsMember(names));
    }
    for (const auto& param : spec.params) {
      state.options[param.key] = state.app->add_option(
          "--" + param.key, state.raw[param.key],
          param.help + " (default: " + default_text(param) + ")");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const SubcommandState* chosen = nullptr;
  for (const auto& s : subs) {
    if (s.app->parsed()) chosen = &s;
  }

  CommandResult result;
  Params params;
  std::optional<std::string> preset;
  try {
    Params config = Params::object();
    if (!config_path.empty()) {
      config = load_config(config_path);
      if (!config.is_object()) throw ConfigError("config must be a JSON object");
    }
    // Global settings may live in the config file; flags win.
    auto take = [&](const char* key) -> std::optional<Params> {
      if (!config.contains(key)) return std::nullopt;
      Params v = config[key];
      config.erase(key);
      return v;
    };
    if (auto v = take("output"); v && output_opt->count() == 0) {
      if (!v->is_string()) throw ConfigError("config 'output' must be a string");
      output_path = v->get<std::string>();
    }
    if (auto v = take("format"); v && format_opt->count() == 0) {
      if (!v->is_string() || (*v != "csv" && *v != "json")) {
        throw ConfigError("config 'format' must be \"csv\" or \"json\"");
      }
      format = v->get<std::string>();
    }
    if (auto v = take("verify"); v && verify_opt->count() == 0) {
      if (!v->is_boolean()) throw ConfigError("config 'verify' must be a boolean");
      verify = v->get<bool>();
    }
    if (auto v = take("preset")) {
      if (!v->is_string()) throw ConfigError("config 'preset' must be a string");
      preset = v->get<std::string>();
    }
    if (!chosen->preset.empty()) preset = chosen->preset;

    std::map<std::string, std::string> flags;
    for (const auto& [key, option] : chosen->options) {
      if (option->count() > 0) flags[key] = chosen->raw.at(key);
    }
    params = resolve_params(*chosen->spec, preset, config, flags);
    result = chosen->spec->run(params, verify);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!output_path.empty()) {
    file.open(output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << output_path << "'\n";
      return kExitConfig;
    }
    sink = &file;
  }
  if (format == "json") {
    nlohmann::ordered_json meta;
    meta["command"] = chosen->spec->name;
    meta["version"] = AUXMODE_VERSION;
    meta["preset"] = preset ? Params(*preset) : Params(nullptr);
    meta["config"] = params;
    write_json(result.table, meta, *sink);
  } else {
    write_csv(result.table, *sink);
  }
  sink->flush();

  if (verify) {
    const auto& report = result.verification;
    err << "verify: " << report.checks << " checks, " << report.failures.size() << " failures\n";
    for (const auto& f : report.failures) err << "verify FAIL " << f << "\n";
    if (!report.passed()) return kExitVerify;
  }
  return kExitOk;
}

}  // namespace auxmode::cli
