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

#include "table.hpp"

#include <cstdio>

namespace auxmode::cli {

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.8e", value);
  return buffer;
}

namespace {

struct CsvCell {
  std::string operator()(double v) const { return format_number(v); }
  std::string operator()(const std::string& s) const { return s; }
  std::string operator()(Undefined) const { return "undefined"; }
};

struct JsonCell {
  nlohmann::ordered_json operator()(double v) const { return v; }
  nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  nlohmann::ordered_json operator()(Undefined) const { return nullptr; }
};

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << std::visit(CsvCell{}, row[i]);
    }
    out << '\n';
  }
}

void write_json(const Table& table, const nlohmann::ordered_json& meta,
                std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["meta"] = meta;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      record[table.columns[i]] = std::visit(JsonCell{}, row[i]);
    }
    doc["rows"].push_back(std::move(record));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace auxmode::cli
