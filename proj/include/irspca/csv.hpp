// SPDX-License-Identifier: Apache-2.0
//
// irspca: simulation of IRS-aided pilot contamination attacks and countermeasures
// Copyright (C) 2026 The irspca authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "irspca/error.hpp"
#include "irspca/scenario.hpp"

namespace irspca {

struct ResultRow {
  std::string sweep;   // swept parameter, empty without a sweep
  double sweep_value = std::numeric_limits<double>::quiet_NaN();
  std::string detector; // detector or beamforming condition, "-" when not applicable
  int M = 0;
  double gamma = 0;
  double r_p = 0;
  Onset nu = never;
  std::int64_t trials = 0;
  std::string metric;
  double value = 0;
  double stderr_ = 0;
  double truncated_fraction = 0;
  bool in_nats = false; // also report value / ln 2
};

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ResultRow> rows;

  /// First row matching all given fields; an empty detector matches any.
  const ResultRow &find(std::string_view metric, std::string_view detector, double sweep_value) const {
    for (const ResultRow &r : rows) {
      if (r.metric == metric && (detector.empty() || r.detector == detector) &&
          (std::isnan(sweep_value) ? std::isnan(r.sweep_value) : r.sweep_value == sweep_value)) {
        return r;
      }
    }
    throw contract_error("ResultTable: no row for metric '" + std::string(metric) + "'");
  }
};

inline constexpr std::string_view csv_header =
    "sweep,sweep_value,detector,M,gamma,r_p,nu,trials,metric,value,stderr,truncated_fraction,value_bits";

inline std::string format_sig9(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline void write_csv(const ResultTable &table, std::ostream &out) {
  if (table.rows.empty()) {
    throw contract_error("emit_csv: table has no rows");
  }
  for (const auto &[k, v] : table.metadata) {
    out << "# " << k << '=' << v << '\n';
  }
  out << csv_header << '\n';
  for (const ResultRow &r : table.rows) {
    out << r.sweep << ',' << (std::isnan(r.sweep_value) ? "" : format_sig9(r.sweep_value)) << ',' << r.detector
        << ',' << r.M << ',' << format_sig9(r.gamma) << ',' << format_sig9(r.r_p) << ','
        << (r.nu == never ? std::string("inf") : std::to_string(r.nu)) << ',' << r.trials << ',' << r.metric << ','
        << format_sig9(r.value) << ',' << format_sig9(r.stderr_) << ',' << format_sig9(r.truncated_fraction) << ','
        << (r.in_nats ? format_sig9(r.value / std::numbers::ln2) : "") << '\n';
  }
}

/// Writes the table to `path`. Nothing is created for an empty table.
inline void emit_csv(const ResultTable &table, const std::filesystem::path &path) {
  if (table.rows.empty()) {
    throw contract_error("emit_csv: table has no rows");
  }
  std::ostringstream text;
  write_csv(table, text);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw io_error("cannot open '" + path.string() + "' for writing");
  }
  out << text.str();
  out.flush();
  if (!out) {
    throw io_error("write to '" + path.string() + "' failed");
  }
}

struct CsvDocument {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) {
        return i;
      }
    }
    throw contract_error("CsvDocument: no column '" + std::string(name) + "'");
  }
};

namespace detail {

inline std::vector<std::string> split_commas(std::string_view line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto end = line.find(',', pos);
    out.emplace_back(line.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) {
      return out;
    }
    pos = end + 1;
  }
}

} // namespace detail

/// Reads text produced by write_csv.
inline CsvDocument parse_csv(std::string_view text) {
  CsvDocument doc;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      const std::string_view body = line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1);
      const auto eq = body.find('=');
      doc.metadata.emplace_back(std::string(body.substr(0, eq)),
                                eq == std::string_view::npos ? std::string() : std::string(body.substr(eq + 1)));
    } else if (doc.header.empty()) {
      doc.header = detail::split_commas(line);
    } else {
      auto fields = detail::split_commas(line);
      if (fields.size() != doc.header.size()) {
        throw io_error("csv: row has " + std::to_string(fields.size()) + " fields, header has " +
                       std::to_string(doc.header.size()));
      }
      doc.rows.push_back(std::move(fields));
    }
  }
  return doc;
}

} // namespace irspca
