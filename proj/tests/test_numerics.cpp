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

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "irspca/error.hpp"
#include "irspca/linalg.hpp"
#include "irspca/parallel.hpp"
#include "irspca/rng.hpp"
#include "irspca/special.hpp"
#include "oracles.hpp"

using namespace irspca;

namespace {

CMat random_psd(int n, RngStream &rng) {
  CMat a(n, n);
  for (int j = 0; j < n; ++j) {
    a.col(j) = sample_complex_gaussian(static_cast<std::size_t>(n), 1.0, rng);
  }
  return a * a.adjoint();
}

} // namespace

TEST(Rng, PhiloxKnownAnswer) {
  RngStream rng(0, 0);
  EXPECT_EQ(rng(), 0x9b00dbd8bc57ac4cull);
  EXPECT_EQ(rng(), 0xe169c58d6627e8d5ull);
}

TEST(Rng, SameSeedAndStreamReproduce) {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(a(), b());
  }
  EXPECT_EQ(a.seed(), 42u);
  EXPECT_EQ(a.stream_id(), 7u);
}

TEST(Rng, DistinctStreamsDiffer) {
  RngStream a(42, 7), b(42, 8), c(43, 7);
  int equal_ab = 0, equal_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    equal_ab += x == b() ? 1 : 0;
    equal_ac += x == c() ? 1 : 0;
  }
  EXPECT_EQ(equal_ab, 0);
  EXPECT_EQ(equal_ac, 0);
}

TEST(Rng, UniformMoments) {
  RngStream rng(3, 0);
  const int n = 200000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum_sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sum_sq / n, 1.0 / 3.0, 0.005);
}

TEST(ComplexGaussian, EntryVariance) {
  RngStream rng(1, 1);
  const int draws = 20000;
  double power = 0;
  cplx mean = 0;
  for (int i = 0; i < draws; ++i) {
    const CVec v = sample_complex_gaussian(5, 2.5, rng);
    power += v.squaredNorm() / 5.0;
    mean += v.sum() / 5.0;
  }
  EXPECT_NEAR(power / draws, 2.5, 0.05);
  EXPECT_LT(std::abs(mean / static_cast<double>(draws)), 0.02);
}

TEST(ComplexGaussian, ZeroVarianceAndBadInput) {
  RngStream rng(1, 1);
  EXPECT_EQ(sample_complex_gaussian(4, 0.0, rng).squaredNorm(), 0.0);
  EXPECT_THROW(sample_complex_gaussian(0, 1.0, rng), contract_error);
  EXPECT_THROW(sample_complex_gaussian(3, -1.0, rng), contract_error);
}

TEST(Steering, UnitModulusAndBroadside) {
  const CVec w = steering_vector(3, 4, 0.7, 0.4);
  ASSERT_EQ(w.size(), 12);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    EXPECT_NEAR(std::abs(w[i]), 1.0, 1e-15);
  }
  const CVec b = steering_vector(3, 3, 0.0, 0.0);
  EXPECT_NEAR((b - CVec::Ones(9)).norm(), 0.0, 1e-15);
}

TEST(Steering, PhaseProgression) {
  const double az = 0.3, el = 0.9;
  const CVec w = steering_vector(2, 3, az, el);
  const cplx step_p = w[3] / w[0];
  const cplx step_q = w[1] / w[0];
  EXPECT_NEAR(std::arg(step_p), std::numbers::pi * std::sin(el) * std::cos(az), 1e-12);
  EXPECT_NEAR(std::arg(step_q), std::numbers::pi * std::sin(el) * std::sin(az), 1e-12);
}

TEST(DominantEigenpair, MatchesDenseOracle) {
  RngStream rng(5, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat h = random_psd(8, rng);
    const Eigenpair p = dominant_eigenpair(h);
    const double ref = oracle::top_eigenvalue(h);
    EXPECT_NEAR(p.value, ref, 1e-8 * ref);
    EXPECT_NEAR(p.vector.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(p.vector.dot(oracle::top_eigenvector(h))), 1.0, 1e-8);
    EXPECT_FALSE(p.degenerate);
  }
}

TEST(DominantEigenpair, NoProbeExceedsIt) {
  RngStream rng(6, 0);
  const CMat h = random_psd(10, rng);
  const Eigenpair p = dominant_eigenpair(h);
  double best = 0;
  for (int i = 0; i < 100; ++i) {
    CVec x = sample_complex_gaussian(10, 1.0, rng);
    x.normalize();
    const double q = x.dot(h * x).real();
    EXPECT_LE(q, p.value * (1 + 1e-8));
    best = std::max(best, q);
  }
  const double at_vector = p.vector.dot(h * p.vector).real();
  EXPECT_NEAR(at_vector, p.value, 1e-8 * p.value);
  EXPECT_GE(at_vector, best - 1e-8 * p.value);
}

TEST(DominantEigenpair, RankOne) {
  RngStream rng(7, 0);
  const CVec v = sample_complex_gaussian(6, 1.0, rng);
  const Eigenpair p = dominant_eigenpair(v * v.adjoint());
  EXPECT_NEAR(p.value, v.squaredNorm(), 1e-10 * v.squaredNorm());
  EXPECT_NEAR(std::abs(p.vector.dot(v)) / v.norm(), 1.0, 1e-12);
}

TEST(DominantEigenpair, DegenerateTopEigenvalueIsFlagged) {
  CMat h = CMat::Zero(4, 4);
  h.diagonal() << 3.0, 3.0, 1.0, 0.5;
  const Eigenpair p = dominant_eigenpair(h);
  EXPECT_NEAR(p.value, 3.0, 1e-12);
  EXPECT_TRUE(p.degenerate);
  EXPECT_NEAR((h * p.vector - 3.0 * p.vector).norm(), 0.0, 1e-10);
}

TEST(DominantEigenpair, PhaseConvention) {
  RngStream rng(8, 0);
  const CMat h = random_psd(5, rng);
  const CVec v = dominant_eigenpair(h).vector;
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  EXPECT_NEAR(v[arg].imag(), 0.0, 1e-14);
  EXPECT_GT(v[arg].real(), 0.0);
}

TEST(DominantEigenpair, RejectsNonHermitian) {
  CMat h = CMat::Identity(3, 3);
  h(0, 1) = cplx(1.0, 0.0);
  EXPECT_THROW(dominant_eigenpair(h), contract_error);
  EXPECT_THROW(dominant_eigenpair(CMat(2, 3)), contract_error);
}

TEST(DominantEigenpair, ZeroMatrix) {
  const Eigenpair p = dominant_eigenpair(CMat::Zero(3, 3));
  EXPECT_EQ(p.value, 0.0);
  EXPECT_NEAR(p.vector.norm(), 1.0, 1e-15);
}

TEST(GammaTailQuantile, MatchesBoost) {
  for (int m : {1, 2, 4, 16, 64, 128, 1024}) {
    for (double p : {0.5, 0.1, 1e-2, 1e-3, 1.0 / 3000.0, 1e-6}) {
      const double ref = oracle::gamma_upper_quantile(m, p);
      EXPECT_NEAR(gamma_tail_quantile(m, p), ref, 1e-9 * ref) << "m=" << m << " p=" << p;
    }
  }
}

TEST(GammaTailQuantile, ExponentialCase) {
  EXPECT_NEAR(gamma_tail_quantile(1, 0.01), std::log(100.0), 1e-10);
}

TEST(GammaTailQuantile, RejectsBadInput) {
  EXPECT_THROW(gamma_tail_quantile(0, 0.1), contract_error);
  EXPECT_THROW(gamma_tail_quantile(4, 0.0), contract_error);
  EXPECT_THROW(gamma_tail_quantile(4, 1.0), contract_error);
}

TEST(ScaledExpIntegral, MatchesQuadrature) {
  for (double x = 1e-3; x <= 50.0; x *= 1.37) {
    const double ref = oracle::scaled_e1(x);
    EXPECT_NEAR(scaled_exp_integral(x), ref, 1e-8 * ref) << "x=" << x;
  }
  EXPECT_NEAR(scaled_exp_integral(50.0), oracle::scaled_e1(50.0), 1e-8 * oracle::scaled_e1(50.0));
}

TEST(ScaledExpIntegral, KnownValueAndDomain) {
  EXPECT_NEAR(scaled_exp_integral(1.0), 0.596347362323194, 1e-12);
  EXPECT_THROW(scaled_exp_integral(0.0), domain_error);
  EXPECT_THROW(scaled_exp_integral(-1.0), domain_error);
}

TEST(ParallelFor, EveryIndexOnceForAnyWorkerCount) {
  for (unsigned workers : {1u, 2u, 3u, 8u}) {
    std::vector<int> hits(37, 0);
    parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) {
      EXPECT_EQ(h, 1);
    }
  }
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 4) {
                                throw numeric_error("boom");
                              }
                            }),
               numeric_error);
}
