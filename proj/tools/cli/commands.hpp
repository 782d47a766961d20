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

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cli/table.hpp"

namespace auxmode::cli {

using Params = nlohmann::ordered_json;

/// Invalid or unknown configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParamType { Number, Integer, String, NumberList, StringList };

struct ParamSpec {
  std::string key;
  ParamType type;
  Params default_value;
  std::string help;
};

struct VerificationReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

struct CommandResult {
  Table table;
  VerificationReport verification;
};

struct CommandSpec {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  std::map<std::string, Params> presets;
  std::function<CommandResult(const Params&, bool)> run;
};

const std::vector<CommandSpec>& commands();
const CommandSpec& find_command(std::string_view name);

/// Converts one flag value to the JSON type the parameter expects.
/// Lists are comma separated.
Params parse_flag_value(const ParamSpec& spec, const std::string& text);

/// Builds the parameter record: defaults, then the preset, then `config`,
/// then `flags`. Unknown keys and ill-typed values throw ConfigError.
Params resolve_params(const CommandSpec& command, const std::optional<std::string>& preset,
                      const Params& config,
                      const std::map<std::string, std::string>& flags);

CommandResult run_scatter(const Params& params, bool verify);
CommandResult run_thresholds(const Params& params, bool verify);
CommandResult run_snr(const Params& params, bool verify);
CommandResult run_optimize(const Params& params, bool verify);
CommandResult run_frequencies(const Params& params, bool verify);

}  // namespace auxmode::cli
