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
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "irspca/error.hpp"
#include "irspca/linalg.hpp"
#include "irspca/rng.hpp"

namespace irspca {

/// Block index at which the attack starts; `never` encodes an attack that never occurs.
using Onset = std::int64_t;
inline constexpr Onset never = std::numeric_limits<Onset>::max();

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct ScenarioConfig {
  double d1 = 150.0; // m, Alice at (-d1, 0)
  double d2 = 20.0;  // m, Bob at (0, -d2), IRS at (0, d2)
  double d3 = 30.0;  // m, Eve at (d3, 0)
  double Rc = 30.0;  // m, radius of the CN disk around Bob
  int n1 = 7;
  int n2 = 7;
  int M = 64;
  int J = 15;
  int tau_p = 64;
  int tau_d = 1;
  double P_b_dbm = 20.0;
  double P_j_dbm = 20.0;
  double noise_dbm = -80.0;
  double snr_b_target_db = 0.0;
  double r_p = 1.0;
  double r_d = 1.0;
  Onset nu = 1;
  std::uint64_t seed = 1;

  // Direct links have power gain d^-path_loss_exponent; IRS-side links have
  // amplitude d^-irs_link_exponent.
  double path_loss_exponent = 4.0;
  double irs_link_exponent = 1.0;
  // Draw fresh random phases for the RPT reflection matrix every block.
  bool phi_p_random = false;

  void validate() const {
    auto require = [](bool ok, const char *what) {
      if (!ok) {
        throw config_error(std::string("scenario: ") + what);
      }
    };
    require(d1 > 0 && d2 > 0 && d3 > 0, "distances d1, d2, d3 must be positive");
    require(Rc >= 0, "Rc must be nonnegative");
    require(n1 >= 1 && n2 >= 1, "n1 and n2 must be at least 1");
    require(M >= 1, "M must be at least 1");
    require(J >= 1, "J must be at least 1");
    require(tau_p > J, "tau_p must exceed J so that orthogonal CN pilots exist");
    require(tau_d >= 1, "tau_d must be at least 1");
    require(r_p >= 0 && r_p <= 1, "r_p must lie in [0, 1]");
    require(r_d >= 0 && r_d <= 1, "r_d must lie in [0, 1]");
    require(nu >= 1, "nu must be a positive block index or inf");
    require(path_loss_exponent > 0 && irs_link_exponent > 0, "exponents must be positive");
    require(std::isfinite(P_b_dbm) && std::isfinite(P_j_dbm) && std::isfinite(noise_dbm) &&
                std::isfinite(snr_b_target_db),
            "powers must be finite");
  }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Diagonals of the RPT and DT reflection matrices.
struct ReflectionPair {
  CVec phi_p;
  CVec phi_d;
};

struct AttackAmplitudes {
  cplx a_hat;   // reflected pilot amplitude relative to Bob's, a_I / a_b
  cplx a_tilde; // reflected DT amplitude toward Eve
  double mu = 0.0;
};

/// Deterministic system: geometry, gains, steering vectors, reflection design,
/// powers and the derived scalars used by every other module.
struct Scenario {
  ScenarioConfig cfg;

  Point alice, bob, eve, irs;
  std::vector<Point> cn;

  double d_ba = 0, d_ea = 0, d_Ia = 0, d_bI = 0, d_eI = 0;
  std::vector<double> d_ja, d_jI;

  double g_b = 0, g_e = 0, g_I = 0;
  std::vector<double> g_j;
  double h_bI = 0, h_eI = 0;
  std::vector<double> h_jI;

  CVec omega_a, omega_b, omega_e;
  std::vector<CVec> omega_j;
  ReflectionPair phi;

  double P_a = 0, P_b = 0, P_j = 0;                 // mW
  double sigma_a_sq = 0, sigma_b_sq = 0, sigma_e_sq = 0; // mW

  double a_b = 0;
  double a_e = 0;
  double sigma0_sq = 1;
  cplx a_hat, a_tilde;
  double mu = 0;
  cplx c_bI; // coefficient of h_I^H w in Bob's DT gain

  std::vector<cplx> a_cn;        // per-CN reflected amplitude a_j
  std::vector<double> sigma_cn_sq; // per-CN sigma_j^2

  CVec pilot_u;
  std::vector<CVec> pilot_v;

  int M() const { return cfg.M; }
  int J() const { return cfg.J; }
  double rpt_noise_variance() const { return sigma0_sq - 1.0; }
  double cn_noise_variance(std::size_t j) const { return sigma_cn_sq[j] - 1.0; }
  double a_cn_norm_sq() const {
    double s = 0;
    for (std::size_t j = 0; j < a_cn.size(); ++j) {
      s += std::norm(a_cn[j]) / sigma_cn_sq[j];
    }
    return s;
  }
};

/// Angles at which a node at `node` is seen from the IRS.
///
/// The IRS is a vertical planar array: its first axis runs along global x, its
/// second axis is vertical and its normal points to -y. Nodes share the z = 0
/// plane, so the projection on the second axis is always zero.
struct ViewAngles {
  double azimuth = 0.0;
  double elevation = 0.0;
};

inline ViewAngles irs_view_angles(Point irs, Point node) {
  const double d = distance(irs, node);
  const double ux = (node.x - irs.x) / d;
  return {ux >= 0.0 ? 0.0 : std::numbers::pi, std::asin(std::min(1.0, std::abs(ux)))};
}

inline ReflectionPair reflection_matrices(const CVec &omega_a, const CVec &omega_b, const CVec &omega_e,
                                          double r_p, double r_d) {
  if (!(r_p >= 0 && r_p <= 1) || !(r_d >= 0 && r_d <= 1)) {
    throw contract_error("reflection_matrices: amplitudes must lie in [0, 1]");
  }
  if (omega_a.size() != omega_b.size() || omega_a.size() != omega_e.size()) {
    throw contract_error("reflection_matrices: steering vectors must share a length");
  }
  ReflectionPair out;
  out.phi_p = r_p * omega_a.cwiseProduct(omega_b.conjugate());
  out.phi_d = r_d * omega_e.cwiseProduct(omega_a.conjugate());
  return out;
}

/// x^H diag(phi) z
inline cplx reflect_gain(const CVec &x, const CVec &phi, const CVec &z) {
  return x.conjugate().cwiseProduct(phi).cwiseProduct(z).sum();
}

inline AttackAmplitudes attack_amplitudes(const Scenario &s) {
  AttackAmplitudes out;
  out.a_hat = std::sqrt(s.P_b * s.g_I) * reflect_gain(s.omega_a, s.phi.phi_p, s.omega_b) * s.h_bI / s.a_b;
  out.a_tilde = std::sqrt(s.P_a * s.g_I) * s.h_eI * reflect_gain(s.omega_e, s.phi.phi_d, s.omega_a);
  out.mu = std::norm(out.a_hat) / s.sigma0_sq;
  return out;
}

namespace detail {

inline constexpr std::uint64_t cn_placement_stream = 0xC0FFEE0000000001ull;

inline CVec dft_column(int length, int column) {
  CVec v(length);
  for (int k = 0; k < length; ++k) {
    v[k] = std::polar(1.0, -2.0 * std::numbers::pi * column * k / length);
  }
  return v;
}

// a_j for every CN given the RPT reflection diagonal.
inline std::vector<cplx> cn_amplitudes(const Scenario &s, const CVec &phi_p) {
  std::vector<cplx> a(s.cn.size());
  for (std::size_t j = 0; j < s.cn.size(); ++j) {
    a[j] = std::sqrt(s.P_j * s.g_I) * reflect_gain(s.omega_a, phi_p, s.omega_j[j]) * s.h_jI[j] /
           std::sqrt(s.P_j * s.g_j[j]);
  }
  return a;
}

} // namespace detail

inline Scenario build_scenario(const ScenarioConfig &cfg) {
  cfg.validate();
  Scenario s;
  s.cfg = cfg;
  s.alice = {-cfg.d1, 0.0};
  s.bob = {0.0, -cfg.d2};
  s.eve = {cfg.d3, 0.0};
  s.irs = {0.0, cfg.d2};

  RngStream placement(cfg.seed, detail::cn_placement_stream);
  s.cn.reserve(cfg.J);
  for (int j = 0; j < cfg.J; ++j) {
    const double r = cfg.Rc * std::sqrt(placement.uniform());
    const double theta = 2.0 * std::numbers::pi * placement.uniform();
    s.cn.push_back({s.bob.x + r * std::cos(theta), s.bob.y + r * std::sin(theta)});
  }

  constexpr double min_separation = 1e-9;
  const Point fixed[] = {s.alice, s.bob, s.eve, s.irs};
  for (int i = 0; i < 4; ++i) {
    for (int k = i + 1; k < 4; ++k) {
      if (distance(fixed[i], fixed[k]) < min_separation) {
        throw config_error("scenario: coincident nodes in the geometry");
      }
    }
  }
  for (const Point &p : s.cn) {
    if (distance(p, s.alice) < min_separation || distance(p, s.irs) < min_separation) {
      throw config_error("scenario: a cooperative node coincides with Alice or the IRS");
    }
  }

  const double ple = cfg.path_loss_exponent;
  const double ile = cfg.irs_link_exponent;
  s.d_ba = distance(s.bob, s.alice);
  s.d_ea = distance(s.eve, s.alice);
  s.d_Ia = distance(s.irs, s.alice);
  s.d_bI = distance(s.bob, s.irs);
  s.d_eI = distance(s.eve, s.irs);
  s.g_b = std::pow(s.d_ba, -ple);
  s.g_e = std::pow(s.d_ea, -ple);
  s.g_I = std::pow(s.d_Ia, -ple);
  s.h_bI = std::pow(s.d_bI, -ile);
  s.h_eI = std::pow(s.d_eI, -ile);
  for (const Point &p : s.cn) {
    s.d_ja.push_back(distance(p, s.alice));
    s.d_jI.push_back(distance(p, s.irs));
    s.g_j.push_back(std::pow(s.d_ja.back(), -ple));
    s.h_jI.push_back(std::pow(s.d_jI.back(), -ile));
  }

  const auto n1 = static_cast<std::size_t>(cfg.n1);
  const auto n2 = static_cast<std::size_t>(cfg.n2);
  auto steer_to = [&](Point p) {
    const ViewAngles va = irs_view_angles(s.irs, p);
    return steering_vector(n1, n2, va.azimuth, va.elevation);
  };
  s.omega_a = steer_to(s.alice);
  s.omega_b = steer_to(s.bob);
  s.omega_e = steer_to(s.eve);
  for (const Point &p : s.cn) {
    s.omega_j.push_back(steer_to(p));
  }
  s.phi = reflection_matrices(s.omega_a, s.omega_b, s.omega_e, cfg.r_p, cfg.r_d);

  s.P_b = dbm_to_mw(cfg.P_b_dbm);
  s.P_j = dbm_to_mw(cfg.P_j_dbm);
  s.sigma_a_sq = s.sigma_b_sq = s.sigma_e_sq = dbm_to_mw(cfg.noise_dbm);
  s.P_a = db_to_linear(cfg.snr_b_target_db) * s.sigma_b_sq / s.g_b;

  s.a_b = std::sqrt(s.P_b * s.g_b);
  s.a_e = std::sqrt(s.P_a * s.g_e);
  s.sigma0_sq = 1.0 + s.sigma_a_sq / (s.a_b * s.a_b * cfg.tau_p);

  const AttackAmplitudes amp = attack_amplitudes(s);
  s.a_hat = amp.a_hat;
  s.a_tilde = amp.a_tilde;
  s.mu = amp.mu;
  s.c_bI = std::sqrt(s.P_a * s.g_I) * s.h_bI * reflect_gain(s.omega_b, s.phi.phi_d, s.omega_a);

  s.a_cn = detail::cn_amplitudes(s, s.phi.phi_p);
  for (int j = 0; j < cfg.J; ++j) {
    s.sigma_cn_sq.push_back(1.0 + s.sigma_a_sq / (cfg.tau_p * s.P_j * s.g_j[j]));
  }

  s.pilot_u = detail::dft_column(cfg.tau_p, 0);
  for (int j = 1; j <= cfg.J; ++j) {
    s.pilot_v.push_back(detail::dft_column(cfg.tau_p, j));
  }
  return s;
}

/// One coherence block of random draws. CN-related vectors are empty unless requested.
struct BlockChannels {
  CVec h_b, h_I, h_e;
  CVec z;     // effective RPT noise, variance sigma_a^2 / (a_b^2 tau_p)
  CVec z_alt; // independent noise for the hypothetical attack-free pilot
  std::vector<CVec> f;
  cplx a_hat;              // per-block attack amplitude
  std::vector<cplx> a_cn;  // per-block CN amplitudes
};

inline BlockChannels sample_block(const Scenario &s, RngStream &rng, bool with_cn = true) {
  const auto m = static_cast<std::size_t>(s.cfg.M);
  BlockChannels ch;
  ch.h_b = sample_complex_gaussian(m, 1.0, rng);
  ch.h_I = sample_complex_gaussian(m, 1.0, rng);
  ch.h_e = sample_complex_gaussian(m, 1.0, rng);
  ch.z = sample_complex_gaussian(m, s.rpt_noise_variance(), rng);
  ch.z_alt = sample_complex_gaussian(m, s.rpt_noise_variance(), rng);
  ch.a_hat = s.a_hat;
  ch.a_cn = s.a_cn;
  if (s.cfg.phi_p_random) {
    CVec phi_p(s.omega_a.size());
    for (Eigen::Index i = 0; i < phi_p.size(); ++i) {
      phi_p[i] = std::polar(s.cfg.r_p, 2.0 * std::numbers::pi * rng.uniform());
    }
    ch.a_hat = std::sqrt(s.P_b * s.g_I) * reflect_gain(s.omega_a, phi_p, s.omega_b) * s.h_bI / s.a_b;
    if (with_cn) {
      ch.a_cn = detail::cn_amplitudes(s, phi_p);
    }
  }
  if (with_cn) {
    ch.f.reserve(s.cfg.J);
    for (int j = 0; j < s.cfg.J; ++j) {
      ch.f.push_back(sample_complex_gaussian(m, 1.0, rng));
    }
  }
  return ch;
}

/// Least-squares pilot observation y_k at Alice.
inline CVec rpt_observation(const Scenario &, const BlockChannels &ch, bool attack_active) {
  if (attack_active) {
    return ch.h_b + ch.a_hat * ch.h_I + ch.z;
  }
  return ch.h_b + ch.z;
}

} // namespace irspca
