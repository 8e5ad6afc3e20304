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

#include "irspca/error.hpp"
#include "irspca/linalg.hpp"
#include "irspca/scenario.hpp"
#include "irspca/special.hpp"

namespace irspca {

inline CVec mrt_beam(const CVec &y) {
  const double n = y.norm();
  if (!(n > 0.0)) {
    throw numeric_error("mrt_beam: zero observation has no direction");
  }
  return y / n;
}

/// Effective DT gains, SNRs and capacities (nats) of Bob and Eve for one block.
struct DtOutcome {
  cplx G_b, G_e;
  double snr_b = 0, snr_e = 0;
  double c_b = 0, c_e = 0;
};

/// DT-phase outcome for beam `w`. With `irs_reflecting` false the reflected
/// terms vanish, which models both r_d = 0 and a system without an IRS.
inline DtOutcome dt_outcome(const Scenario &s, const BlockChannels &ch, const CVec &w, bool irs_reflecting) {
  if (std::abs(w.norm() - 1.0) > 1e-9) {
    throw contract_error("dt_outcome: beamforming vector must have unit norm");
  }
  DtOutcome out;
  out.G_b = std::sqrt(s.P_a * s.g_b) * ch.h_b.dot(w);
  out.G_e = s.a_e * ch.h_e.dot(w);
  if (irs_reflecting) {
    const cplx reflected = ch.h_I.dot(w);
    out.G_b += s.c_bI * reflected;
    out.G_e += s.a_tilde * reflected;
  }
  out.snr_b = std::norm(out.G_b) / s.sigma_b_sq;
  out.snr_e = std::norm(out.G_e) / s.sigma_e_sq;
  out.c_b = std::log1p(out.snr_b);
  out.c_e = std::log1p(out.snr_e);
  return out;
}

/// Eve's capacity in the same block had there been no IRS and no attack: Alice
/// would beam along h_b + z' with an independent pilot noise z'.
inline double no_irs_capacity(const Scenario &s, const BlockChannels &ch) {
  const CVec clean = ch.h_b + ch.z_alt;
  const double proj = std::norm(ch.h_e.dot(clean)) / clean.squaredNorm();
  return std::log1p(s.a_e * s.a_e / s.sigma_e_sq * proj);
}

/// Per-block wiretapping throughput gain (nats over the tau_d DT symbols).
inline double wtg_increment(const Scenario &s, const BlockChannels &ch, const CVec &w_used) {
  const DtOutcome attacked = dt_outcome(s, ch, w_used, true);
  return s.cfg.tau_d * (attacked.c_e - no_irs_capacity(s, ch));
}

/// Upper bound on Eve's mean capacity under MRT with the attack active, in the
/// exact finite-M form.
inline double theorem2_bound(double a_hat_sq, double a_tilde_sq, double a_e_sq, double sigma0_sq,
                             double sigma_e_sq, int M) {
  if (M < 2) {
    throw domain_error("theorem2_bound: requires M >= 2");
  }
  const double m = M;
  const double pi_bound =
      m * (a_hat_sq * (m + 1.0) + sigma0_sq) / (a_hat_sq * (m + 1.0) + sigma0_sq * (m - 1.0));
  return std::log(1.0 + a_e_sq / sigma_e_sq + a_tilde_sq / sigma_e_sq * pi_bound);
}

/// E{ln(1 + rho X)} for X ~ Exp(1), rho = a_e^2 / sigma_e^2.
inline double no_irs_expected_capacity(double rho) {
  if (!(rho > 0.0)) {
    throw domain_error("no_irs_expected_capacity: rho must be positive");
  }
  return scaled_exp_integral(1.0 / rho);
}

} // namespace irspca
