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
#include <vector>

#include "irspca/error.hpp"
#include "irspca/linalg.hpp"
#include "irspca/rng.hpp"
#include "irspca/scenario.hpp"
#include "irspca/transmission.hpp"

namespace irspca {

/// Alice's estimate of one cooperative node's channel after matching the
/// received pilot matrix with that node's sequence.
struct CnObservation {
  CVec t;
  double sigma_sq = 1.0;
  cplx a;
};

/// t_j = f_j + a_j h_I + noise, with noise variance sigma_j^2 - 1 per entry.
/// Needs a block sampled with the cooperative-node channels.
inline std::vector<CnObservation> cn_observations(const Scenario &s, const BlockChannels &ch, RngStream &rng) {
  const auto J = static_cast<std::size_t>(s.cfg.J);
  if (J < 1 || ch.f.size() != J || ch.a_cn.size() != J) {
    throw contract_error("cn_observations: block was sampled without cooperative-node channels");
  }
  std::vector<CnObservation> obs(J);
  const auto m = static_cast<std::size_t>(s.cfg.M);
  for (std::size_t j = 0; j < J; ++j) {
    obs[j].sigma_sq = s.sigma_cn_sq[j];
    obs[j].a = ch.a_cn[j];
    obs[j].t = ch.f[j] + ch.a_cn[j] * ch.h_I + sample_complex_gaussian(m, s.cn_noise_variance(j), rng);
  }
  return obs;
}

struct EstimationResult {
  CVec h_bar_hat; // unit-norm estimate of h_I / ||h_I||
  double a_cn_norm_sq = 0;
  double top_eigenvalue = 0;
  bool degenerate = false;
};

/// Maximum-likelihood IRS direction: dominant eigenvector of T T^H with
/// T = [t_1/sigma_1, ..., t_J/sigma_J]. Solved through the J x J matrix T^H T,
/// which shares the nonzero spectrum.
inline EstimationResult estimate_irs_direction(const std::vector<CnObservation> &obs) {
  if (obs.empty()) {
    throw contract_error("estimate_irs_direction: needs at least one observation");
  }
  const Eigen::Index M = obs.front().t.size();
  CMat T(M, static_cast<Eigen::Index>(obs.size()));
  EstimationResult out;
  for (std::size_t j = 0; j < obs.size(); ++j) {
    if (obs[j].t.size() != M || !(obs[j].sigma_sq > 0)) {
      throw contract_error("estimate_irs_direction: observations differ in length or have invalid variance");
    }
    T.col(static_cast<Eigen::Index>(j)) = obs[j].t / std::sqrt(obs[j].sigma_sq);
    out.a_cn_norm_sq += std::norm(obs[j].a) / obs[j].sigma_sq;
  }
  if (!(T.squaredNorm() > 0.0)) {
    throw numeric_error("estimate_irs_direction: all observations are zero");
  }
  CMat gram = T.adjoint() * T;
  gram = (0.5 * (gram + gram.adjoint())).eval();
  const Eigenpair top = dominant_eigenpair(gram);
  CVec h = T * top.vector;
  const double norm = h.norm();
  if (!(norm > 0.0)) {
    throw numeric_error("estimate_irs_direction: dominant direction vanished");
  }
  h /= norm;
  detail::fix_phase(h);
  out.h_bar_hat = std::move(h);
  out.top_eigenvalue = top.value;
  out.degenerate = top.degenerate;
  return out;
}

struct ZfBeam {
  CVec w;
  bool fallback = false; // y was parallel to the estimate; MRT used instead
};

/// Projects y off the estimated IRS direction and normalizes.
inline ZfBeam zf_beam(const CVec &y, const CVec &h_bar_hat) {
  if (y.size() != h_bar_hat.size()) {
    throw contract_error("zf_beam: length mismatch");
  }
  const double y_norm = y.norm();
  if (!(y_norm > 0.0)) {
    throw numeric_error("zf_beam: zero observation");
  }
  CVec r = y - h_bar_hat * h_bar_hat.dot(y);
  const double r_norm = r.norm();
  if (!(r_norm > 1e-12 * y_norm)) {
    return {y / y_norm, true};
  }
  return {r / r_norm, false};
}

/// Large-M wiretap SNR under ZF beamforming with cooperative estimation.
inline double theorem4_snr(double a_tilde_sq, double a_hat_sq, double a_e_sq, double sigma0_sq, double sigma_e_sq,
                           double a_cn_norm_sq, int M) {
  if (!(a_tilde_sq >= 0) || !(a_hat_sq >= 0) || !(a_e_sq >= 0) || !(a_cn_norm_sq >= 0) || !(sigma0_sq > 0) ||
      !(sigma_e_sq > 0) || M < 1) {
    throw contract_error("theorem4_snr: inputs must be nonnegative with positive variances");
  }
  const double mu = a_hat_sq / sigma0_sq;
  const double one_plus_a = 1.0 + a_cn_norm_sq;
  return a_tilde_sq / sigma_e_sq * (mu * M) / (one_plus_a * (one_plus_a + mu)) + a_e_sq / sigma_e_sq;
}

/// Finite-M alignment E|h_bar_hat^H h_I/||h_I|||^2 implied by an estimation
/// error of covariance I/||a_CN||^2.
inline double alignment_target(double a_cn_norm_sq) {
  if (!(a_cn_norm_sq > 0)) {
    throw domain_error("alignment_target: requires a positive ||a_CN||^2");
  }
  return 1.0 / (1.0 + 1.0 / a_cn_norm_sq);
}

} // namespace irspca
