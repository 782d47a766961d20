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

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace auxmode::cli {

/// A missing value (e.g. a threshold outside its domain).
struct Undefined {};

using Cell = std::variant<double, std::string, Undefined>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Nine significant digits in scientific notation.
std::string format_number(double value);

/// Header row, comma separated, '\n' line endings; undefined cells print as
/// "undefined".
void write_csv(const Table& table, std::ostream& out);

/// {"meta": meta, "rows": [{column: value, ...}, ...]}; undefined is null.
void write_json(const Table& table, const nlohmann::ordered_json& meta,
                std::ostream& out);

}  // namespace auxmode::cli
