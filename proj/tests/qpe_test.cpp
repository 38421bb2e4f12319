// Copyright 2026 The omegaphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <complex>
#include <numeric>
#include <random>

#include "omegaphase/qpe.hpp"

using namespace omegaphase;

namespace {

// 256 phases (j + u_j)/256 with 40-bit pseudo-random offsets, plus a few
// that sit just below 1 so that rounding wraps.
std::vector<Dyadic> phase_grid() {
  std::mt19937_64 rng(2024);
  std::vector<Dyadic> grid;
  for (std::uint64_t j = 0; j < 256; ++j) {
    const std::uint64_t u = rng() & ((std::uint64_t{1} << 40) - 1);
    grid.emplace_back(BigInt((j << 40) | u), 48);
  }
  for (int k = 3; k <= 30; k += 3) {
    grid.push_back(Dyadic(1) - Dyadic::pow2(-k) - Dyadic(BigInt(1), 50));
  }
  return grid;
}

// Direct amplitude sum: a(z) = 2^-n sum_k exp(2 pi i k (phi - z/2^n)).
std::vector<long double> amplitude_oracle(long double phi, int n) {
  const std::uint64_t N = std::uint64_t{1} << n;
  std::vector<long double> p(N);
  for (std::uint64_t z = 0; z < N; ++z) {
    std::complex<long double> a = 0;
    const long double delta = phi - static_cast<long double>(z) / N;
    for (std::uint64_t k = 0; k < N; ++k) {
      a += std::polar(1.0L, 2 * std::numbers::pi_v<long double> * k * delta);
    }
    p[z] = std::norm(a) / (static_cast<long double>(N) * N);
  }
  return p;
}

// Round-then-truncate success evaluated through the bit-string primitives.
double rounded_success_oracle(const PhaseDistribution& d, const Dyadic& phi, int m) {
  const auto im = interval_im(phi, static_cast<std::uint64_t>(m));
  double ok = 0;
  for (std::uint64_t z = 0; z < d.probabilities.size(); ++z) {
    const BitString bits = BitString::from_fraction(Dyadic(BigInt(z), d.n), d.n);
    const BitString rounded = m < d.n ? round_up_mth(bits, m) : bits;
    const Dyadic est = truncate(rounded.to_fraction(), m);
    if (std::find(im.begin(), im.end(), est) != im.end()) ok += d.probabilities[z];
  }
  return ok;
}

}  // namespace

TEST(QpeDistribution, Examples) {
  auto half = qpe_distribution(Dyadic::parse("1/2"), 1);
  EXPECT_EQ(half.probabilities, (std::vector<double>{0.0, 1.0}));
  auto quarter = qpe_distribution(Dyadic::parse("1/4"), 2);
  EXPECT_EQ(quarter.probabilities[1], 1.0);

  const Phase64 third = Phase64::from_real(1.0L / 3);
  EXPECT_FALSE(third.exact);
  auto d = qpe_distribution(third, 3);
  ASSERT_EQ(d.probabilities.size(), 8u);
  const auto it = std::max_element(d.probabilities.begin(), d.probabilities.end());
  EXPECT_EQ(it - d.probabilities.begin(), 3);
  EXPECT_THROW(qpe_distribution(third, 0), ConstraintError);
  EXPECT_THROW(qpe_distribution(third, 21), ConstraintError);
  EXPECT_THROW(Phase64::from_real(1.0L), ConstraintError);
}

TEST(QpeDistribution, MatchesAmplitudeSum) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 12; ++trial) {
      const long double phi = std::ldexp(static_cast<long double>(rng() >> 11), -53);
      const auto d = qpe_distribution(Phase64::from_real(phi), n);
      const auto oracle = amplitude_oracle(phi, n);
      for (std::size_t z = 0; z < oracle.size(); ++z) {
        EXPECT_NEAR(d.probabilities[z], static_cast<double>(oracle[z]), 1e-12);
      }
    }
  }
}

TEST(QpeDistribution, NormalisedAndNonNegative) {
  for (const auto& phi : phase_grid()) {
    for (int n : {1, 5, 10, 16}) {
      const auto d = qpe_distribution(phi, n);
      long double sum = 0;
      for (double p : d.probabilities) {
        EXPECT_GE(p, 0.0);
        sum += p;
      }
      EXPECT_NEAR(static_cast<double>(sum), 1.0, 1e-12);
    }
  }
}

TEST(QpeTail, Examples) {
  EXPECT_EQ(tail_probability(Phase64::from_dyadic(Dyadic::parse("3/8")), 6, 3), 0.0);
  const Phase64 third = Phase64::from_real(1.0L / 3);
  const double t8 = tail_probability(third, 8, 4);
  const double t12 = tail_probability(third, 12, 4);
  EXPECT_LE(t8, 0.0625);
  EXPECT_LE(t12, std::ldexp(1.0, -8));
  EXPECT_LT(t12, t8);
  EXPECT_THROW(tail_probability(third, 8, 8), ConstraintError);
  EXPECT_THROW(tail_probability(third, 8, 0), ConstraintError);
}

TEST(QpeTail, BoundHoldsOnGrid) {
  for (const auto& phi : phase_grid()) {
    for (int n = 2; n <= 14; ++n) {
      const auto d = qpe_distribution(phi, n);
      for (int m = 1; m < n; ++m) {
        EXPECT_LE(tail_probability(d, m), std::ldexp(1.0, m - n) + 1e-12)
            << phi << " n=" << n << " m=" << m;
      }
    }
  }
}

TEST(QpeRounding, Examples) {
  EXPECT_EQ(rounded_success_probability(Phase64::from_dyadic(Dyadic::parse("5/8")), 3, 3), 1.0);
  const Phase64 third = Phase64::from_real(1.0L / 3);
  EXPECT_GE(rounded_success_probability(third, 10, 3), 1.0 - std::ldexp(1.0, -7));
  const Phase64 near_one = Phase64::from_dyadic(Dyadic::parse("15/16") + Dyadic(BigInt(1), 30));
  EXPECT_EQ(interval_members(near_one, 2), (std::vector<std::uint64_t>{3, 0}));
  EXPECT_GE(rounded_success_probability(near_one, 10, 2), 1.0 - std::ldexp(1.0, -8));
}

TEST(QpeRounding, FastPathMatchesBitStringPath) {
  for (const auto& phi : phase_grid()) {
    for (int n = 1; n <= 9; ++n) {
      const auto d = qpe_distribution(phi, n);
      for (int m = 1; m <= n; ++m) {
        // Same outcomes selected, so sums differ only by accumulation order.
        EXPECT_NEAR(rounded_success_probability(d, m), rounded_success_oracle(d, phi, m), 1e-13);
        const auto members = interval_members(Phase64::from_dyadic(phi), m);
        const auto im = interval_im(phi, static_cast<std::uint64_t>(m));
        for (std::uint64_t z = 0; z < (std::uint64_t{1} << n); ++z) {
          const BitString bits = BitString::from_fraction(Dyadic(BigInt(z), n), n);
          const Dyadic est = truncate((m < n ? round_up_mth(bits, m) : bits).to_fraction(), m);
          const bool slow = std::find(im.begin(), im.end(), est) != im.end();
          const std::uint64_t t = rounded_estimate(z, n, m);
          const bool fast = std::find(members.begin(), members.end(), t) != members.end();
          ASSERT_EQ(fast, slow) << phi << " n=" << n << " m=" << m << " z=" << z;
          EXPECT_EQ(Dyadic(BigInt(t), m), est);
        }
      }
    }
  }
}

TEST(QpeRounding, BoundHoldsOnGrid) {
  for (const auto& phi : phase_grid()) {
    for (int n = 2; n <= 14; ++n) {
      const auto d = qpe_distribution(phi, n);
      for (int m = 1; m < n; ++m) {
        EXPECT_GE(rounded_success_probability(d, m), 1.0 - std::ldexp(1.0, m - n) - 1e-12)
            << phi << " n=" << n << " m=" << m;
      }
    }
  }
}

TEST(QpeBestApproximation, TwoNearestCarryEightOverPiSquared) {
  const double bound = 8.0 / (std::numbers::pi * std::numbers::pi) - 1e-9;
  for (const auto& phi : phase_grid()) {
    for (int n = 1; n <= 14; ++n) {
      const auto d = qpe_distribution(phi, n);
      EXPECT_GE(best_approximation_mass(d), bound) << phi << " n=" << n;
    }
  }
}

TEST(SkErrorBound, Examples) {
  const double expected = 128.0 * std::exp2(-std::pow(16.0, 2.0 / 7.0));
  EXPECT_NEAR(sk_error_bound(16, 3.5, 1.0), expected, 1e-15 * expected);
  const ErrorBudget b = make_error_budget(16, 8, 3.5, 1.0);
  EXPECT_DOUBLE_EQ(b.delta_n, sk_error_bound(b));
  EXPECT_THROW(sk_error_bound(16, 5.0, 1.0), ConstraintError);
  EXPECT_THROW(sk_error_bound(16, 3.0, 1.0), ConstraintError);
  EXPECT_THROW(sk_error_bound(16, 3.5, 0.5), ConstraintError);
  EXPECT_LT(sk_log2_error(1e30, 3.5, 1.0), -1e8);
}

TEST(SkErrorBound, DecreasingPastThreshold) {
  for (double c1 : {3.1, 3.5, 3.9}) {
    for (double c2 : {1.0, 2.0, 4.0}) {
      const double n0 = sk_monotone_threshold(c1, c2);
      double prev = sk_log2_error(n0, c1, c2);
      for (double n = n0 + 1; n < n0 + 5000; n += 1) {
        const double cur = sk_log2_error(n, c1, c2);
        EXPECT_LT(cur, prev) << c1 << " " << c2 << " " << n;
        prev = cur;
      }
      // Before the threshold the bound still grows somewhere.
      if (n0 > 3) EXPECT_GT(sk_log2_error(n0 - 1, c1, c2), sk_log2_error(2, c1, c2));
    }
  }
}
