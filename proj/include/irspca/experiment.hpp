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
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irspca/config.hpp"
#include "irspca/csv.hpp"
#include "irspca/detection.hpp"
#include "irspca/error.hpp"
#include "irspca/estimation.hpp"
#include "irspca/parallel.hpp"
#include "irspca/rng.hpp"
#include "irspca/scenario.hpp"
#include "irspca/transmission.hpp"

namespace irspca {

inline constexpr std::string_view tool_version = "irspca 0.1.0";

enum class ExperimentKind { calibrate, arl2fa, add, wawtg, snr };

inline std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
  case ExperimentKind::calibrate:
    return "calibrate";
  case ExperimentKind::arl2fa:
    return "arl2fa";
  case ExperimentKind::add:
    return "add";
  case ExperimentKind::wawtg:
    return "wawtg";
  case ExperimentKind::snr:
    return "snr";
  }
  return "unknown";
}

inline ExperimentKind parse_experiment_kind(std::string_view name) {
  for (ExperimentKind k : {ExperimentKind::calibrate, ExperimentKind::arl2fa, ExperimentKind::add,
                           ExperimentKind::wawtg, ExperimentKind::snr}) {
    if (to_string(k) == name) {
      return k;
    }
  }
  throw config_error("unknown experiment '" + std::string(name) + "'");
}

struct Sweep {
  std::string name;
  std::vector<std::string> values;
};

/// Parses `name=v1,v2,...`.
inline Sweep parse_sweep(std::string_view text) {
  const KeyValue kv = split_assignment(text);
  Sweep sweep{kv.key, {}};
  std::string_view rest = kv.value;
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto end = rest.find(',', pos);
    if (end == std::string_view::npos) {
      end = rest.size();
    }
    const std::string_view item = detail::trim(rest.substr(pos, end - pos));
    if (item.empty()) {
      throw config_error("sweep '" + sweep.name + "': empty value");
    }
    sweep.values.emplace_back(item);
    pos = end + 1;
  }
  return sweep;
}

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::calibrate;
  int figure = 0; // 4..10 for a figure preset, 0 otherwise
  RunConfig base;
  std::optional<Sweep> sweep;

  std::string label() const {
    return figure > 0 ? "figure-" + std::to_string(figure) : std::string(to_string(kind));
  }
};

inline std::vector<std::string> value_list(std::initializer_list<const char *> items) {
  return {items.begin(), items.end()};
}

/// Preset for one of the reproduced figures, at desk scale.
inline ExperimentSpec figure_spec(int figure) {
  ExperimentSpec spec;
  spec.figure = figure;
  RunConfig &b = spec.base;
  switch (figure) {
  case 4:
    spec.kind = ExperimentKind::add;
    b.gamma = 1000;
    b.scenario.r_p = 1.0;
    b.trials = 200;
    spec.sweep = Sweep{"M", value_list({"16", "32", "64"})};
    break;
  case 5:
    spec.kind = ExperimentKind::add;
    b.gamma = 1000;
    b.scenario.M = 64;
    b.trials = 200;
    spec.sweep = Sweep{"r_p", value_list({"0.05", "0.1", "0.2", "0.3", "0.5", "0.75", "1"})};
    break;
  case 6:
    spec.kind = ExperimentKind::wawtg;
    b.scenario.M = 64;
    b.scenario.r_p = 0.05;
    b.trials = 200;
    spec.sweep = Sweep{"gamma", value_list({"100", "300", "1000"})};
    break;
  case 7:
    spec.kind = ExperimentKind::snr;
    b.trials = 2000;
    spec.sweep = Sweep{"M", value_list({"16", "32", "64", "128", "256"})};
    break;
  case 8:
    spec.kind = ExperimentKind::snr;
    b.scenario.M = 128;
    b.trials = 2000;
    spec.sweep = Sweep{"J", value_list({"1", "5", "10", "15", "20", "30"})};
    break;
  case 9:
    spec.kind = ExperimentKind::snr;
    b.scenario.M = 128;
    b.trials = 2000;
    spec.sweep = Sweep{"r_p", value_list({"0", "0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9", "1"})};
    break;
  case 10:
    spec.kind = ExperimentKind::snr;
    b.scenario.M = 128;
    b.trials = 1000;
    spec.sweep = Sweep{"n1n2", value_list({"3", "5", "7", "9", "11"})};
    break;
  default:
    throw config_error("unknown figure " + std::to_string(figure) + " (expected 4..10)");
  }
  return spec;
}

/// Per-condition means of the DT-phase SNRs over independent blocks.
struct SnrPoint {
  struct Condition {
    std::string name;
    double snr_b = 0, snr_b_err = 0;
    double snr_e = 0, snr_e_err = 0;
  };
  std::vector<Condition> conditions; // no_irs, irs, mrt_irs_pca, zf_irs_pca
  double alignment = 0, alignment_err = 0;
  double zf_fallback_fraction = 0;
  std::int64_t blocks = 0;

  const Condition &condition(std::string_view name) const {
    for (const Condition &c : conditions) {
      if (c.name == name) {
        return c;
      }
    }
    throw contract_error("SnrPoint: no condition '" + std::string(name) + "'");
  }
};

/// Block i uses stream (seed, i). The four conditions share each block's draws.
inline SnrPoint simulate_snr(const Scenario &s, std::int64_t blocks, unsigned workers) {
  if (blocks < 1) {
    throw contract_error("simulate_snr: blocks must be >= 1");
  }
  constexpr int n_cond = 4;
  struct Sample {
    double snr_b[n_cond];
    double snr_e[n_cond];
    double alignment;
    bool fallback;
  };
  std::vector<Sample> samples(static_cast<std::size_t>(blocks));
  parallel_for(samples.size(), workers, [&](std::size_t i) {
    RngStream rng(s.cfg.seed, i);
    const BlockChannels ch = sample_block(s, rng, true);
    const CVec y_clean = rpt_observation(s, ch, false);
    const CVec y_attack = rpt_observation(s, ch, true);
    const EstimationResult est = estimate_irs_direction(cn_observations(s, ch, rng));
    const ZfBeam zf = zf_beam(y_attack, est.h_bar_hat);
    const DtOutcome outcomes[n_cond] = {
        dt_outcome(s, ch, mrt_beam(y_clean), false),
        dt_outcome(s, ch, mrt_beam(y_clean), true),
        dt_outcome(s, ch, mrt_beam(y_attack), true),
        dt_outcome(s, ch, zf.w, true),
    };
    Sample &out = samples[i];
    for (int c = 0; c < n_cond; ++c) {
      out.snr_b[c] = outcomes[c].snr_b;
      out.snr_e[c] = outcomes[c].snr_e;
    }
    out.alignment = std::norm(est.h_bar_hat.dot(ch.h_I)) / ch.h_I.squaredNorm();
    out.fallback = zf.fallback;
  });

  SnrPoint point;
  point.blocks = blocks;
  const char *names[n_cond] = {"no_irs", "irs", "mrt_irs_pca", "zf_irs_pca"};
  std::vector<double> column(samples.size());
  auto summarize = [&](auto pick) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      column[i] = pick(samples[i]);
    }
    return detail::mean_and_error(column);
  };
  for (int c = 0; c < n_cond; ++c) {
    const auto b = summarize([c](const Sample &x) { return x.snr_b[c]; });
    const auto e = summarize([c](const Sample &x) { return x.snr_e[c]; });
    point.conditions.push_back({names[c], b.mean, b.stderr_, e.mean, e.stderr_});
  }
  const auto a = summarize([](const Sample &x) { return x.alignment; });
  point.alignment = a.mean;
  point.alignment_err = a.stderr_;
  point.zf_fallback_fraction = summarize([](const Sample &x) { return x.fallback ? 1.0 : 0.0; }).mean;
  return point;
}

namespace detail {

inline ResultRow base_row(const ExperimentSpec &spec, const RunConfig &cfg, double sweep_value) {
  ResultRow r;
  if (spec.sweep) {
    r.sweep = spec.sweep->name;
    r.sweep_value = sweep_value;
  }
  r.detector = "-";
  r.M = cfg.scenario.M;
  r.gamma = cfg.gamma;
  r.r_p = cfg.scenario.r_p;
  r.nu = cfg.scenario.nu;
  r.trials = cfg.trials;
  return r;
}

inline DetectorConfig detector_config(const RunConfig &cfg, const Scenario &s) {
  DetectorConfig d = calibrate(cfg.gamma, s.cfg.M, s.sigma0_sq, cfg.epsilon);
  d.window_cap = cfg.window_cap;
  if (cfg.max_blocks > 0) {
    d.max_blocks = cfg.max_blocks;
  }
  return d;
}

inline void add_snr_rows(std::vector<ResultRow> &rows, const ResultRow &proto, const SnrPoint &point,
                         std::string_view only = {}) {
  for (const SnrPoint::Condition &c : point.conditions) {
    if (!only.empty() && c.name != only) {
      continue;
    }
    ResultRow r = proto;
    r.detector = c.name;
    r.trials = point.blocks;
    r.metric = "snr_b";
    r.value = c.snr_b;
    r.stderr_ = c.snr_b_err;
    rows.push_back(r);
    r.metric = "snr_e";
    r.value = c.snr_e;
    r.stderr_ = c.snr_e_err;
    rows.push_back(r);
  }
}

inline ResultRow scalar_row(ResultRow proto, std::string metric, double value, double err = 0.0) {
  proto.metric = std::move(metric);
  proto.value = value;
  proto.stderr_ = err;
  return proto;
}

inline void run_point(const ExperimentSpec &spec, const RunConfig &cfg, double sweep_value,
                      std::vector<ResultRow> &rows) {
  const ResultRow proto = base_row(spec, cfg, sweep_value);
  switch (spec.kind) {
  case ExperimentKind::calibrate: {
    const Scenario s = build_scenario(cfg.scenario);
    const DetectorConfig d = detector_config(cfg, s);
    ResultRow r = proto;
    r.trials = 0;
    rows.push_back(scalar_row(r, "xi_bar", d.xi_bar));
    rows.push_back(scalar_row(r, "eta_g", d.eta_g));
    rows.push_back(scalar_row(r, "eta_e", d.eta_e));
    rows.push_back(scalar_row(r, "max_blocks", static_cast<double>(d.max_blocks)));
    rows.push_back(scalar_row(r, "sigma0_sq", s.sigma0_sq));
    rows.push_back(scalar_row(r, "mu", s.mu));
    return;
  }
  case ExperimentKind::arl2fa:
  case ExperimentKind::add:
  case ExperimentKind::wawtg: {
    const Scenario s = build_scenario(cfg.scenario);
    const DetectorConfig d = detector_config(cfg, s);
    const Onset nu = spec.kind == ExperimentKind::arl2fa ? never : cfg.scenario.nu;
    for (DetectorKind kind : cfg.detectors) {
      const MetricReport rep = estimate_metrics(s, kind, d, nu, cfg.trials, cfg.workers);
      ResultRow r = proto;
      r.detector = std::string(to_string(kind));
      r.nu = nu;
      r.truncated_fraction = rep.truncated_fraction;
      std::vector<std::string_view> wanted;
      if (spec.kind == ExperimentKind::arl2fa) {
        wanted = {"arl2fa"};
      } else if (spec.kind == ExperimentKind::add) {
        wanted = {"add", "false_alarm_fraction"};
      } else {
        wanted = {"wawtg", "add"};
      }
      for (std::string_view name : wanted) {
        const Metric &m = rep.metric(name);
        ResultRow row = scalar_row(r, m.name, m.value, m.stderr_);
        row.in_nats = m.in_nats;
        rows.push_back(row);
      }
    }
    return;
  }
  case ExperimentKind::snr: {
    if (spec.figure == 10) {
      // Eve picks the r_p maximizing her SNR under ZF; MRT is evaluated at r_p = 1.
      const int steps = static_cast<int>(std::floor(1.0 / cfg.r_p_step + 1e-9));
      double best_r_p = 0.0;
      std::optional<SnrPoint> best;
      for (int i = 0; i <= steps; ++i) {
        ScenarioConfig sc = cfg.scenario;
        sc.r_p = std::min(1.0, i * cfg.r_p_step);
        const SnrPoint p = simulate_snr(build_scenario(sc), cfg.trials, cfg.workers);
        if (!best || p.condition("zf_irs_pca").snr_e > best->condition("zf_irs_pca").snr_e) {
          best = p;
          best_r_p = sc.r_p;
        }
      }
      ScenarioConfig full = cfg.scenario;
      full.r_p = 1.0;
      const SnrPoint at_one = simulate_snr(build_scenario(full), cfg.trials, cfg.workers);
      ResultRow at_one_proto = proto;
      at_one_proto.r_p = 1.0;
      add_snr_rows(rows, at_one_proto, at_one, "no_irs");
      add_snr_rows(rows, at_one_proto, at_one, "irs");
      add_snr_rows(rows, at_one_proto, at_one, "mrt_irs_pca");
      ResultRow best_proto = proto;
      best_proto.r_p = best_r_p;
      add_snr_rows(rows, best_proto, *best, "zf_irs_pca");
      rows.push_back(scalar_row(best_proto, "r_p_opt", best_r_p));
      return;
    }
    const Scenario s = build_scenario(cfg.scenario);
    const SnrPoint p = simulate_snr(s, cfg.trials, cfg.workers);
    add_snr_rows(rows, proto, p);
    ResultRow r = proto;
    r.trials = p.blocks;
    const double a_cn = s.a_cn_norm_sq();
    rows.push_back(scalar_row(r, "snr_e_theorem4",
                              theorem4_snr(std::norm(s.a_tilde), std::norm(s.a_hat), s.a_e * s.a_e, s.sigma0_sq,
                                           s.sigma_e_sq, a_cn, s.cfg.M)));
    rows.push_back(scalar_row(r, "alignment", p.alignment, p.alignment_err));
    if (a_cn > 0) {
      rows.push_back(scalar_row(r, "alignment_target", alignment_target(a_cn)));
    }
    rows.push_back(scalar_row(r, "a_cn_norm_sq", a_cn));
    rows.push_back(scalar_row(r, "zf_fallback_fraction", p.zf_fallback_fraction));
    return;
  }
  }
}

} // namespace detail

/// Runs every sweep point in order and collects the rows.
inline ResultTable run_experiment(const ExperimentSpec &spec) {
  validate(spec.base);
  ResultTable table;
  table.metadata = {
      {"tool", std::string(tool_version)},
      {"experiment", spec.label()},
      {"seed", std::to_string(spec.base.scenario.seed)},
  };
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(spec.base)));
  table.metadata.emplace_back("config_hash", hash);
  if (spec.sweep) {
    std::string values;
    for (const std::string &v : spec.sweep->values) {
      values += (values.empty() ? "" : ",") + v;
    }
    table.metadata.emplace_back("sweep", spec.sweep->name + "=" + values);
  }
  if (spec.base.window_cap > 0) {
    table.metadata.emplace_back("window_cap", std::to_string(spec.base.window_cap));
  }

  if (!spec.sweep) {
    detail::run_point(spec, spec.base, std::numeric_limits<double>::quiet_NaN(), table.rows);
    return table;
  }
  if (spec.sweep->values.empty()) {
    throw config_error("sweep '" + spec.sweep->name + "' has no values");
  }
  if (spec.sweep->name == "seed" || spec.sweep->name == "workers" || spec.sweep->name == "detectors") {
    throw config_error("cannot sweep '" + spec.sweep->name + "'");
  }
  std::vector<std::pair<RunConfig, double>> points;
  for (const std::string &v : spec.sweep->values) {
    RunConfig cfg = spec.base;
    apply_setting(cfg, spec.sweep->name, v);
    validate(cfg);
    points.emplace_back(cfg, parse_real(spec.sweep->name, v));
  }
  for (const auto &[cfg, value] : points) {
    detail::run_point(spec, cfg, value, table.rows);
  }
  return table;
}

} // namespace irspca
