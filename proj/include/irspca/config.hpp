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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "irspca/detection.hpp"
#include "irspca/error.hpp"
#include "irspca/scenario.hpp"

namespace irspca {

/// Everything an experiment needs besides its kind and sweep.
struct RunConfig {
  ScenarioConfig scenario;
  double gamma = 1000.0;
  double epsilon = 0.0;
  std::int64_t window_cap = 0;
  std::int64_t max_blocks = 0; // 0 selects 20 * gamma
  std::int64_t trials = 200;
  unsigned workers = 1;
  std::vector<DetectorKind> detectors{DetectorKind::gcusum, DetectorKind::ed};
  double r_p_step = 0.025; // grid step of the r_p search in figure 10
};

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline std::string format_double(double v) {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace detail

/// `key = value` lines; blank lines and text after '#' are ignored.
inline std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw config_error("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    KeyValue kv{std::string(detail::trim(line.substr(0, eq))), std::string(detail::trim(line.substr(eq + 1))),
                line_no};
    if (kv.key.empty() || kv.value.empty()) {
      throw config_error("line " + std::to_string(line_no) + ": empty key or value");
    }
    out.push_back(std::move(kv));
  }
  return out;
}

inline std::vector<KeyValue> read_key_value_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io_error("cannot read config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_key_values(buf.str());
  } catch (const config_error &e) {
    throw config_error(path + ": " + e.what());
  }
}

/// Splits a `key=value` override.
inline KeyValue split_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw config_error("expected key=value, got '" + std::string(text) + "'");
  }
  KeyValue kv{std::string(detail::trim(text.substr(0, eq))), std::string(detail::trim(text.substr(eq + 1))), 0};
  if (kv.key.empty() || kv.value.empty()) {
    throw config_error("expected key=value, got '" + std::string(text) + "'");
  }
  return kv;
}

inline double parse_real(std::string_view key, std::string_view text) {
  const std::string low = detail::lower(text);
  if (low == "inf" || low == "+inf" || low == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  double v = 0;
  const auto *first = text.data();
  const auto *last = text.data() + text.size();
  if (!text.empty() && *first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || std::isnan(v)) {
    throw config_error(std::string(key) + ": '" + std::string(text) + "' is not a number");
  }
  return v;
}

inline std::int64_t parse_integer(std::string_view key, std::string_view text) {
  const double v = parse_real(key, text);
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9.0e15) {
    throw config_error(std::string(key) + ": '" + std::string(text) + "' is not an integer");
  }
  return static_cast<std::int64_t>(v);
}

inline int parse_int(std::string_view key, std::string_view text) {
  const std::int64_t v = parse_integer(key, text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw config_error(std::string(key) + ": value out of range");
  }
  return static_cast<int>(v);
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  const std::string low = detail::lower(text);
  if (low == "true" || low == "1" || low == "yes" || low == "on") {
    return true;
  }
  if (low == "false" || low == "0" || low == "no" || low == "off") {
    return false;
  }
  throw config_error(std::string(key) + ": '" + std::string(text) + "' is not a boolean");
}

inline std::uint64_t parse_seed(std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw config_error("seed: '" + std::string(text) + "' is not an unsigned 64-bit integer");
  }
  return v;
}

inline Onset parse_onset(std::string_view text) {
  const double v = parse_real("nu", text);
  if (std::isinf(v) && v > 0) {
    return never;
  }
  const std::int64_t k = parse_integer("nu", text);
  if (k < 1) {
    throw config_error("nu: must be a positive block index or inf");
  }
  return k;
}

inline std::vector<DetectorKind> parse_detector_list(std::string_view text) {
  std::vector<DetectorKind> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    out.push_back(parse_detector_kind(detail::trim(text.substr(pos, end - pos))));
    pos = end + 1;
  }
  return out;
}

/// Applies one setting. `n1n2` sets both reflecting-array dimensions.
inline void apply_setting(RunConfig &cfg, std::string_view key, std::string_view value) {
  ScenarioConfig &s = cfg.scenario;
  auto real = [&] { return parse_real(key, value); };
  auto integer = [&] { return parse_int(key, value); };

  if (key == "d1") {
    s.d1 = real();
  } else if (key == "d2") {
    s.d2 = real();
  } else if (key == "d3") {
    s.d3 = real();
  } else if (key == "Rc") {
    s.Rc = real();
  } else if (key == "n1") {
    s.n1 = integer();
  } else if (key == "n2") {
    s.n2 = integer();
  } else if (key == "n1n2") {
    s.n1 = s.n2 = integer();
  } else if (key == "M") {
    s.M = integer();
  } else if (key == "J") {
    s.J = integer();
  } else if (key == "tau_p") {
    s.tau_p = integer();
  } else if (key == "tau_d") {
    s.tau_d = integer();
  } else if (key == "P_b_dbm") {
    s.P_b_dbm = real();
  } else if (key == "P_j_dbm") {
    s.P_j_dbm = real();
  } else if (key == "noise_dbm") {
    s.noise_dbm = real();
  } else if (key == "snr_b_target_db") {
    s.snr_b_target_db = real();
  } else if (key == "r_p") {
    s.r_p = real();
  } else if (key == "r_d") {
    s.r_d = real();
  } else if (key == "nu") {
    s.nu = parse_onset(value);
  } else if (key == "seed") {
    s.seed = parse_seed(value);
  } else if (key == "path_loss_exponent") {
    s.path_loss_exponent = real();
  } else if (key == "irs_link_exponent") {
    s.irs_link_exponent = real();
  } else if (key == "phi_p_random") {
    s.phi_p_random = parse_bool(key, value);
  } else if (key == "gamma") {
    cfg.gamma = real();
  } else if (key == "epsilon") {
    cfg.epsilon = real();
  } else if (key == "window_cap") {
    cfg.window_cap = parse_integer(key, value);
  } else if (key == "max_blocks") {
    cfg.max_blocks = parse_integer(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_integer(key, value);
  } else if (key == "workers") {
    const std::int64_t w = parse_integer(key, value);
    if (w < 1 || w > 4096) {
      throw config_error("workers: must lie in [1, 4096]");
    }
    cfg.workers = static_cast<unsigned>(w);
  } else if (key == "detectors") {
    cfg.detectors = parse_detector_list(value);
  } else if (key == "r_p_step") {
    cfg.r_p_step = real();
  } else {
    throw config_error("unknown key '" + std::string(key) + "'");
  }
}

inline void apply_settings(RunConfig &cfg, const std::vector<KeyValue> &settings) {
  for (const KeyValue &kv : settings) {
    try {
      apply_setting(cfg, kv.key, kv.value);
    } catch (const config_error &e) {
      if (kv.line > 0) {
        throw config_error("line " + std::to_string(kv.line) + ": " + e.what());
      }
      throw;
    }
  }
}

inline void validate(const RunConfig &cfg) {
  cfg.scenario.validate();
  if (!(cfg.gamma > std::numbers::e) || !std::isfinite(cfg.gamma)) {
    throw config_error("gamma: must be finite and exceed e");
  }
  if (!(cfg.epsilon >= 0) || !std::isfinite(cfg.epsilon)) {
    throw config_error("epsilon: must be finite and nonnegative");
  }
  if (cfg.window_cap < 0 || cfg.max_blocks < 0) {
    throw config_error("window_cap and max_blocks must be nonnegative");
  }
  if (cfg.trials < 1) {
    throw config_error("trials: must be at least 1");
  }
  if (cfg.detectors.empty()) {
    throw config_error("detectors: list is empty");
  }
  if (!(cfg.r_p_step > 0 && cfg.r_p_step <= 1)) {
    throw config_error("r_p_step: must lie in (0, 1]");
  }
}

/// Every setting in a fixed order, formatted losslessly.
inline std::vector<std::pair<std::string, std::string>> canonical_settings(const RunConfig &cfg) {
  const ScenarioConfig &s = cfg.scenario;
  auto f = detail::format_double;
  std::string detectors;
  for (DetectorKind k : cfg.detectors) {
    detectors += (detectors.empty() ? "" : ",") + std::string(to_string(k));
  }
  return {
      {"d1", f(s.d1)},
      {"d2", f(s.d2)},
      {"d3", f(s.d3)},
      {"Rc", f(s.Rc)},
      {"n1", std::to_string(s.n1)},
      {"n2", std::to_string(s.n2)},
      {"M", std::to_string(s.M)},
      {"J", std::to_string(s.J)},
      {"tau_p", std::to_string(s.tau_p)},
      {"tau_d", std::to_string(s.tau_d)},
      {"P_b_dbm", f(s.P_b_dbm)},
      {"P_j_dbm", f(s.P_j_dbm)},
      {"noise_dbm", f(s.noise_dbm)},
      {"snr_b_target_db", f(s.snr_b_target_db)},
      {"r_p", f(s.r_p)},
      {"r_d", f(s.r_d)},
      {"nu", s.nu == never ? "inf" : std::to_string(s.nu)},
      {"seed", std::to_string(s.seed)},
      {"path_loss_exponent", f(s.path_loss_exponent)},
      {"irs_link_exponent", f(s.irs_link_exponent)},
      {"phi_p_random", s.phi_p_random ? "true" : "false"},
      {"gamma", f(cfg.gamma)},
      {"epsilon", f(cfg.epsilon)},
      {"window_cap", std::to_string(cfg.window_cap)},
      {"max_blocks", std::to_string(cfg.max_blocks)},
      {"trials", std::to_string(cfg.trials)},
      {"detectors", detectors},
      {"r_p_step", f(cfg.r_p_step)},
  };
}

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Hash of the canonical settings; the worker count is excluded.
inline std::uint64_t config_hash(const RunConfig &cfg) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto &[k, v] : canonical_settings(cfg)) {
    h = fnv1a(k, h);
    h = fnv1a("=", h);
    h = fnv1a(v, h);
    h = fnv1a("\n", h);
  }
  return h;
}

} // namespace irspca
