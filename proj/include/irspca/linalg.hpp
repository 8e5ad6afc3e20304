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
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "irspca/error.hpp"
#include "irspca/rng.hpp"

namespace irspca {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Draws `dim` i.i.d. CN(0, variance) entries: real and imaginary parts each
/// carry variance/2.
inline CVec sample_complex_gaussian(std::size_t dim, double variance, RngStream &rng) {
  if (dim == 0) {
    throw contract_error("sample_complex_gaussian: dimension must be positive");
  }
  if (!(variance >= 0.0)) {
    throw contract_error("sample_complex_gaussian: variance must be nonnegative");
  }
  CVec out(static_cast<Eigen::Index>(dim));
  if (variance == 0.0) {
    out.setZero();
    return out;
  }
  std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    out[i] = cplx(re, im);
  }
  return out;
}

/// Response of a half-wavelength n1 x n2 planar array. Element (p, q) sits at
/// flat index p * n2 + q and has phase pi * (p sin(el) cos(az) + q sin(el) sin(az)).
inline CVec steering_vector(std::size_t n1, std::size_t n2, double azimuth, double elevation) {
  if (n1 == 0 || n2 == 0) {
    throw contract_error("steering_vector: array dimensions must be positive");
  }
  const double u = std::sin(elevation) * std::cos(azimuth);
  const double v = std::sin(elevation) * std::sin(azimuth);
  CVec out(static_cast<Eigen::Index>(n1 * n2));
  for (std::size_t p = 0; p < n1; ++p) {
    for (std::size_t q = 0; q < n2; ++q) {
      const double phase = std::numbers::pi * (static_cast<double>(p) * u + static_cast<double>(q) * v);
      out[static_cast<Eigen::Index>(p * n2 + q)] = std::polar(1.0, phase);
    }
  }
  return out;
}

struct Eigenpair {
  double value = 0.0;
  CVec vector;
  // Set when the top two eigenvalues could not be separated (relative gap < 1e-12).
  bool degenerate = false;
  int iterations = 0;
};

namespace detail {

// Rotates v so its largest-magnitude entry is real and nonnegative.
inline void fix_phase(CVec &v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  const double mag = std::abs(v[arg]);
  if (mag > 0.0) {
    v *= std::conj(v[arg]) / mag;
  }
}

} // namespace detail

/// Largest eigenvalue and its unit eigenvector of a Hermitian PSD matrix, by
/// power iteration with a Rayleigh-quotient residual stop. The eigenvector phase
/// is fixed so its largest-magnitude entry is real and nonnegative.
inline Eigenpair dominant_eigenpair(const CMat &h, int max_iterations = 10000) {
  if (h.rows() == 0 || h.rows() != h.cols()) {
    throw contract_error("dominant_eigenpair: matrix must be square and non-empty");
  }
  const double scale = h.norm();
  Eigenpair result;
  if (scale == 0.0) {
    result.vector = CVec::Unit(h.rows(), 0);
    result.degenerate = h.rows() > 1;
    return result;
  }
  if ((h - h.adjoint()).norm() > 1e-10 * scale) {
    throw contract_error("dominant_eigenpair: matrix is not Hermitian");
  }

  // Start from the column with the largest diagonal entry.
  Eigen::Index start = 0;
  h.diagonal().real().maxCoeff(&start);
  CVec v = h.col(start);
  if (v.norm() == 0.0) {
    v = CVec::Ones(h.rows());
  }
  v.normalize();

  double lambda = 0.0;
  double residual = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    CVec hv = h * v;
    lambda = v.dot(hv).real();
    residual = (hv - lambda * v).norm();
    result.iterations = it;
    if (residual <= 1e-11 * scale) {
      break;
    }
    v = hv / hv.norm();
  }
  if (residual > 1e-8 * lambda) {
    throw numeric_error("dominant_eigenpair: power iteration did not converge in " +
                        std::to_string(max_iterations) + " iterations");
  }

  // Probe the deflated matrix: a Rayleigh quotient reaching lambda means the top
  // of the spectrum is degenerate. Rayleigh quotients never exceed lambda_2 there.
  if (h.rows() > 1) {
    const CMat deflated = h - lambda * v * v.adjoint();
    CVec u = CVec::Ones(h.rows());
    u -= v * v.dot(u);
    if (u.norm() < 1e-8) {
      u = CVec::Unit(h.rows(), (start + 1) % h.rows());
      u -= v * v.dot(u);
    }
    u.normalize();
    for (int it = 0; it < 100; ++it) {
      CVec hu = deflated * u;
      if (u.dot(hu).real() >= lambda * (1.0 - 1e-12)) {
        result.degenerate = true;
        break;
      }
      const double n = hu.norm();
      if (n == 0.0) {
        break;
      }
      u = hu / n;
    }
  }

  detail::fix_phase(v);
  result.value = std::max(lambda, 0.0);
  result.vector = std::move(v);
  return result;
}

} // namespace irspca
