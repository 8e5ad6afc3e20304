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
#include <limits>
#include <numbers>

#include "irspca/error.hpp"

namespace irspca {

namespace detail {

// Lower regularized gamma P(a, x) by its power series; accurate for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) {
      break;
    }
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma Q(a, x) by Lentz's continued fraction; accurate for x >= a + 1.
inline double gamma_q_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) {
      d = tiny;
    }
    c = b + an / c;
    if (std::abs(c) < tiny) {
      c = tiny;
    }
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

} // namespace detail

/// Regularized upper incomplete gamma function Q(a, x) = P{G(a,1) > x}.
inline double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw domain_error("regularized_gamma_q: requires a > 0 and x >= 0");
  }
  if (x == 0.0) {
    return 1.0;
  }
  if (x < a + 1.0) {
    return 1.0 - detail::gamma_p_series(a, x);
  }
  return detail::gamma_q_fraction(a, x);
}

/// Threshold eta with P{G(shape_m, 1) > eta} = tail_prob.
///
/// Bisection on a bracket around the mean, then Newton polishing with the
/// gamma density as derivative.
inline double gamma_tail_quantile(int shape_m, double tail_prob) {
  if (shape_m < 1) {
    throw contract_error("gamma_tail_quantile: shape must be a positive integer");
  }
  if (!(tail_prob > 0.0 && tail_prob < 1.0)) {
    throw contract_error("gamma_tail_quantile: tail probability must lie in (0, 1)");
  }
  const double a = shape_m;
  const auto f = [&](double x) { return regularized_gamma_q(a, x) - tail_prob; };

  double lo = 0.0;
  double hi = a + 1.0;
  while (f(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 80 && hi - lo > 1e-6 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }

  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    const double density = std::exp(-x + (a - 1.0) * std::log(x) - std::lgamma(a));
    if (density <= 0.0) {
      break;
    }
    const double step = f(x) / density; // dQ/dx = -density
    double next = x + step;
    if (next <= lo || next >= hi) {
      next = 0.5 * (x + (step > 0.0 ? hi : lo));
    }
    if (f(next) > 0.0) {
      lo = std::max(lo, next);
    } else {
      hi = std::min(hi, next);
    }
    if (std::abs(next - x) <= 1e-15 * x) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

/// e^x * E1(x), where E1(x) = integral over t in [1, inf) of e^{-tx}/t.
inline double scaled_exp_integral(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw domain_error("scaled_exp_integral: argument must be positive and finite");
  }
  if (x <= 1.0) {
    // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) {
        break;
      }
    }
    const double e1 = -std::numbers::egamma - std::log(x) - sum;
    return std::exp(x) * e1;
  }
  // Continued fraction 1/(x+1- 1/(x+3- 4/(x+5- ...))) evaluated with Lentz's method.
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  return h;
}

} // namespace irspca
