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

#include <Eigen/Dense>

#include <algorithm>
#include <numbers>

#include "omegaphase/xy_chain.hpp"

using namespace omegaphase;

namespace {

// -1/2 sum (XX + YY) in the computational basis: it swaps 01 <-> 10 on
// each bond with amplitude -1.
std::vector<double> dense_xy(int L) {
  const int dim = 1 << L;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    for (int i = 0; i + 1 < L; ++i) {
      const int a = (s >> i) & 1, b = (s >> (i + 1)) & 1;
      if (a != b) h((s ^ (1 << i)) ^ (1 << (i + 1)), s) += -1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

TEST(XyChain, TwoSites) {
  const XySpectrum x = xy_chain_spectrum(2);
  ASSERT_TRUE(x.complete);
  const std::vector<double> expect{-1, 0, 0, 1};
  ASSERT_EQ(x.energies.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(x.energies[i], expect[i], 1e-12);
  EXPECT_NEAR(x.gap, 1.0, 1e-12);
  EXPECT_THROW(xy_chain_spectrum(1), ConstraintError);
}

TEST(XyChain, MatchesDenseDiagonalisation) {
  for (int L = 2; L <= 8; ++L) {
    const XySpectrum x = xy_chain_spectrum(L);
    const auto dense = dense_xy(L);
    ASSERT_TRUE(x.complete);
    ASSERT_EQ(x.energies.size(), dense.size());
    for (std::size_t i = 0; i < dense.size(); ++i) EXPECT_NEAR(x.energies[i], dense[i], 1e-9) << L << " " << i;
    EXPECT_NEAR(x.ground_energy, dense.front(), 1e-9);
  }
}

TEST(XyChain, ExcerptMatchesSubsetSums) {
  const int L = 12;
  const XySpectrum full = xy_chain_spectrum(L, 1 << L);
  const XySpectrum part = xy_chain_spectrum(L, 300);
  EXPECT_FALSE(part.complete);
  std::vector<double> brute;
  for (int mask = 0; mask < (1 << L); ++mask) {
    double e = 0;
    for (int k = 0; k < L; ++k) {
      if (mask >> k & 1) e += -2.0 * std::cos((k + 1) * std::numbers::pi / (L + 1));
    }
    brute.push_back(e);
  }
  std::sort(brute.begin(), brute.end());
  ASSERT_EQ(full.energies.size(), brute.size());
  for (std::size_t i = 0; i < brute.size(); ++i) EXPECT_NEAR(full.energies[i], brute[i], 1e-9);
  for (std::size_t i = 0; i < part.energies.size(); ++i) EXPECT_NEAR(part.energies[i], brute[i], 1e-9);
}

TEST(XyChain, GapClosesLikeOneOverL) {
  double prev = 1e9;
  for (int L : {4, 8, 16, 32, 64}) {
    const XySpectrum x = xy_chain_spectrum(L, 16);
    EXPECT_LT(x.gap, prev);
    EXPECT_NEAR(x.gap, 2 * std::sin(std::numbers::pi / (2 * (L + 1))), 1e-12);
    EXPECT_NEAR(x.energies[1] - x.energies[0], x.gap, 1e-9);
    prev = x.gap;
  }
  EXPECT_LT(prev, 0.05);
  EXPECT_NEAR(prev * 65, std::numbers::pi, 1e-3);
  EXPECT_EQ(xy_chain_spectrum(9).gap < 1e-12, true);  // odd chains carry a zero mode
}
