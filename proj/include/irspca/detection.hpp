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
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "irspca/error.hpp"
#include "irspca/linalg.hpp"
#include "irspca/parallel.hpp"
#include "irspca/rng.hpp"
#include "irspca/scenario.hpp"
#include "irspca/special.hpp"
#include "irspca/transmission.hpp"

namespace irspca {

enum class DetectorKind {
  gcusum, // generalized CUSUM over the unknown post-change scale
  ed,     // per-block energy detector
  ccusum, // CUSUM with the true attack amplitude (oracle, comparison only)
};

inline std::string_view to_string(DetectorKind kind) {
  switch (kind) {
  case DetectorKind::gcusum:
    return "gcusum";
  case DetectorKind::ed:
    return "ed";
  case DetectorKind::ccusum:
    return "ccusum";
  }
  return "unknown";
}

inline DetectorKind parse_detector_kind(std::string_view name) {
  if (name == "gcusum") {
    return DetectorKind::gcusum;
  }
  if (name == "ed") {
    return DetectorKind::ed;
  }
  if (name == "ccusum") {
    return DetectorKind::ccusum;
  }
  throw config_error("unknown detector '" + std::string(name) + "' (expected gcusum, ed or ccusum)");
}

struct DetectorConfig {
  double gamma = 0;   // target ARL2FA
  double xi_bar = 0;  // lower bound of the normalized post-change excess
  double eta_g = 0;   // GCUSUM (and C-CUSUM) threshold
  double eta_e = 0;   // energy-detector threshold on ||y||^2
  double epsilon = 0; // slack on eta_g
  std::int64_t max_blocks = 1;
  // Only the last `window_cap` change points are scanned by GCUSUM; 0 scans all.
  std::int64_t window_cap = 0;

  void validate() const {
    if (!(xi_bar > 0) || !(eta_g > 0) || !(eta_e > 0) || max_blocks < 1 || window_cap < 0) {
      throw config_error("detector: xi_bar, eta_g, eta_e must be positive and max_blocks >= 1");
    }
  }
};

/// Thresholds for a target ARL2FA `gamma`. GCUSUM follows the asymptotic
/// calibration xi_bar = 1/(sqrt(M) ln gamma), eta_g = (1 + epsilon) ln gamma;
/// the energy detector fires per block with probability 1/gamma under the null.
inline DetectorConfig calibrate(double gamma, int M, double sigma0_sq, double epsilon = 0.0) {
  if (!(gamma > std::numbers::e)) {
    throw contract_error("calibrate: gamma must exceed e");
  }
  if (M < 1 || !(sigma0_sq > 0) || !(epsilon >= 0)) {
    throw contract_error("calibrate: requires M >= 1, sigma0_sq > 0, epsilon >= 0");
  }
  DetectorConfig cfg;
  cfg.gamma = gamma;
  cfg.epsilon = epsilon;
  cfg.xi_bar = 1.0 / (std::sqrt(static_cast<double>(M)) * std::log(gamma));
  cfg.eta_g = (1.0 + epsilon) * std::log(gamma);
  cfg.eta_e = sigma0_sq * gamma_tail_quantile(M, 1.0 / gamma);
  cfg.max_blocks = static_cast<std::int64_t>(std::ceil(20.0 * gamma));
  return cfg;
}

/// sup over x >= xi_bar of { x m s_bar / (1 + x) - m ln(1 + x) }.
inline double gcusum_statistic(double s_bar, double m, double xi_bar) {
  if (!(s_bar > 0.0)) {
    throw domain_error("gcusum_statistic: s_bar must be positive");
  }
  if (s_bar - 1.0 >= xi_bar) {
    return m * (s_bar - std::log(s_bar) - 1.0);
  }
  return m * (xi_bar * s_bar / (1.0 + xi_bar) - std::log1p(xi_bar));
}

struct GcusumState {
  std::int64_t n = 0;
  // prefix_sums[i] = sum_{j<=i} ||y_j||^2 / sigma0^2, prefix_sums[0] = 0.
  std::vector<double> prefix_sums{0.0};
  double last_stat = -std::numeric_limits<double>::infinity();
};

struct StepResult {
  double stat = 0;
  bool alarm = false;
};

/// Scans every candidate change point k <= n using prefix sums, O(n) per block.
inline StepResult gcusum_step(GcusumState &state, const CVec &y, int M, double sigma0_sq, double xi_bar,
                              double eta_g, std::int64_t window_cap = 0) {
  if (y.size() != M) {
    throw contract_error("gcusum_step: observation length differs from M");
  }
  state.prefix_sums.push_back(state.prefix_sums.back() + y.squaredNorm() / sigma0_sq);
  const std::int64_t n = ++state.n;
  const double total = state.prefix_sums[n];
  const std::int64_t first = window_cap > 0 ? std::max<std::int64_t>(1, n - window_cap + 1) : 1;

  const double branch_slope = xi_bar / (1.0 + xi_bar);
  const double branch_log = std::log1p(xi_bar);
  double best = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = first; k <= n; ++k) {
    const double m = static_cast<double>(M) * static_cast<double>(n - k + 1);
    const double sum = total - state.prefix_sums[k - 1];
    const double s_bar = std::max(sum / m, 1e-300);
    const double stat = s_bar - 1.0 >= xi_bar ? m * (s_bar - std::log(s_bar) - 1.0)
                                              : branch_slope * sum - m * branch_log;
    best = std::max(best, stat);
  }
  state.last_stat = best;
  return {best, best > eta_g};
}

inline bool ed_step(const CVec &y, double eta_e) { return y.squaredNorm() > eta_e; }

/// Running state of one detector instance.
class SequentialDetector {
public:
  SequentialDetector(DetectorKind kind, const DetectorConfig &cfg, const Scenario &s)
      : kind_(kind), cfg_(cfg), M_(s.cfg.M), sigma0_sq_(s.sigma0_sq) {
    const double a_sq = std::norm(s.a_hat);
    ccusum_slope_ = a_sq / (sigma0_sq_ * (sigma0_sq_ + a_sq));
    ccusum_offset_ = std::log1p(a_sq / sigma0_sq_) * M_;
  }

  StepResult step(const CVec &y) {
    switch (kind_) {
    case DetectorKind::gcusum:
      return gcusum_step(gcusum_, y, M_, sigma0_sq_, cfg_.xi_bar, cfg_.eta_g, cfg_.window_cap);
    case DetectorKind::ed: {
      const double energy = y.squaredNorm();
      return {energy, energy > cfg_.eta_e};
    }
    case DetectorKind::ccusum:
      ccusum_ = std::max(0.0, ccusum_ + ccusum_slope_ * y.squaredNorm() - ccusum_offset_);
      return {ccusum_, ccusum_ > cfg_.eta_g};
    }
    return {};
  }

private:
  DetectorKind kind_;
  DetectorConfig cfg_;
  int M_;
  double sigma0_sq_;
  GcusumState gcusum_;
  double ccusum_ = 0.0;
  double ccusum_slope_ = 0.0;
  double ccusum_offset_ = 0.0;
};

struct TrialOutcome {
  std::int64_t T = 0; // alarm block, or max_blocks when truncated
  Onset nu = never;
  bool truncated = false;
  bool is_false_alarm = false;
  std::int64_t delay = 0; // (T - nu)^+
  double wtg = 0.0;       // nats accumulated over blocks nu <= k < T
};

/// Simulates blocks 1, 2, ... until the detector alarms or max_blocks is hit.
/// Blocks from the onset on carry the attack; until the alarm Alice transmits
/// with MRT and Eve's extra intercepted information is accumulated.
inline TrialOutcome run_trial(const Scenario &s, DetectorKind kind, const DetectorConfig &cfg, Onset nu,
                              RngStream &rng) {
  if (nu < 1) {
    throw contract_error("run_trial: onset must be >= 1");
  }
  SequentialDetector detector(kind, cfg, s);
  TrialOutcome out;
  out.nu = nu;
  out.truncated = true;
  out.T = cfg.max_blocks;
  for (std::int64_t k = 1; k <= cfg.max_blocks; ++k) {
    const BlockChannels ch = sample_block(s, rng, false);
    const bool attack = k >= nu;
    const CVec y = rpt_observation(s, ch, attack);
    if (detector.step(y).alarm) {
      out.T = k;
      out.truncated = false;
      break;
    }
    if (attack) {
      out.wtg += wtg_increment(s, ch, mrt_beam(y));
    }
  }
  out.is_false_alarm = !out.truncated && out.T < nu;
  out.delay = (nu != never && out.T >= nu) ? out.T - nu : 0;
  return out;
}

struct Metric {
  std::string name;
  double value = 0;
  double stderr_ = 0;
  bool in_nats = false;
};

struct MetricReport {
  DetectorKind detector = DetectorKind::gcusum;
  int M = 0;
  double gamma = 0;
  double r_p = 0;
  Onset nu = never;
  std::int64_t trials = 0;
  double truncated_fraction = 0;
  std::vector<Metric> metrics;
  std::vector<TrialOutcome> outcomes;

  const Metric &metric(std::string_view name) const {
    for (const Metric &m : metrics) {
      if (m.name == name) {
        return m;
      }
    }
    throw contract_error("MetricReport: no metric named '" + std::string(name) + "'");
  }
};

namespace detail {

struct MeanAndError {
  double mean = 0;
  double stderr_ = 0;
};

template <class Values>
MeanAndError mean_and_error(const Values &values) {
  MeanAndError r;
  const auto n = static_cast<double>(values.size());
  if (values.empty()) {
    return r;
  }
  double sum = 0;
  for (double v : values) {
    sum += v;
  }
  r.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) {
      ss += (v - r.mean) * (v - r.mean);
    }
    r.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  }
  return r;
}

} // namespace detail

/// Monte Carlo estimates from `trials` independent runs; trial i uses stream
/// (seed, stream_base + i).
///
/// With nu = never the report holds the ARL2FA (truncated runs count at
/// max_blocks). Otherwise it holds the average delay over successful
/// detections, the false-alarm fraction, and the mean WTG per DT symbol.
/// WADD/WAWTG are estimated at nu = 1, i.e. with an empty history.
inline MetricReport estimate_metrics(const Scenario &s, DetectorKind kind, const DetectorConfig &cfg, Onset nu,
                                     std::int64_t trials, unsigned workers = 1, std::uint64_t stream_base = 0) {
  if (trials < 1) {
    throw contract_error("estimate_metrics: trials must be >= 1");
  }
  MetricReport report;
  report.detector = kind;
  report.M = s.cfg.M;
  report.gamma = cfg.gamma;
  report.r_p = s.cfg.r_p;
  report.nu = nu;
  report.trials = trials;
  report.outcomes.resize(static_cast<std::size_t>(trials));
  parallel_for(report.outcomes.size(), workers, [&](std::size_t i) {
    RngStream rng(s.cfg.seed, stream_base + i);
    report.outcomes[i] = run_trial(s, kind, cfg, nu, rng);
  });

  std::int64_t truncated = 0;
  for (const TrialOutcome &o : report.outcomes) {
    truncated += o.truncated ? 1 : 0;
  }
  report.truncated_fraction = static_cast<double>(truncated) / static_cast<double>(trials);

  if (nu == never) {
    std::vector<double> run_lengths;
    for (const TrialOutcome &o : report.outcomes) {
      run_lengths.push_back(static_cast<double>(o.T));
    }
    const auto arl = detail::mean_and_error(run_lengths);
    report.metrics.push_back({"arl2fa", arl.mean, arl.stderr_, false});
    return report;
  }

  std::vector<double> delays, wtg, false_alarm;
  for (const TrialOutcome &o : report.outcomes) {
    false_alarm.push_back(o.is_false_alarm ? 1.0 : 0.0);
    if (!o.is_false_alarm) {
      delays.push_back(static_cast<double>(o.delay));
    }
    wtg.push_back(o.wtg / s.cfg.tau_d);
  }
  const auto add = detail::mean_and_error(delays);
  const auto fa = detail::mean_and_error(false_alarm);
  const auto w = detail::mean_and_error(wtg);
  report.metrics.push_back({"add", add.mean, add.stderr_, false});
  report.metrics.push_back({"false_alarm_fraction", fa.mean, fa.stderr_, false});
  report.metrics.push_back({"wawtg", w.mean, w.stderr_, true});
  return report;
}

} // namespace irspca
