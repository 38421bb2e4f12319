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

/// \file xy_chain.hpp
/// Open isotropic XY chain H = -1/2 sum_i (X_i X_{i+1} + Y_i Y_{i+1}),
/// solved as free fermions: modes eps_k = -2 cos(k pi / (L + 1)).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <queue>
#include <vector>

#include "omegaphase/errors.hpp"

namespace omegaphase {

struct XySpectrum {
  int L = 0;
  std::vector<double> modes;     ///< single-particle energies, ascending
  double ground_energy = 0;
  double gap = 0;                ///< lowest |eps_k|; zero for odd L
  std::vector<double> energies;  ///< lowest many-body levels, ascending, with multiplicity
  bool complete = false;         ///< energies holds all 2^L levels
};

/// `max_levels` caps how many many-body levels are listed.
inline XySpectrum xy_chain_spectrum(int L, std::size_t max_levels = 4096) {
  if (L < 2) throw ConstraintError("xy_chain_spectrum: L must be >= 2");
  if (max_levels == 0) throw ConstraintError("xy_chain_spectrum: max_levels must be positive");
  XySpectrum out;
  out.L = L;
  const double pi = std::numbers::pi;
  long double ground = 0;
  std::vector<double> cost;  // |eps_k|: price of flipping mode k away from the Fermi sea
  for (int k = 1; k <= L; ++k) {
    const double e = -2.0 * std::cos(k * pi / (L + 1));
    out.modes.push_back(e);
    if (e < 0) ground += e;
    cost.push_back(std::fabs(e));
  }
  std::sort(out.modes.begin(), out.modes.end());
  std::sort(cost.begin(), cost.end());
  out.ground_energy = static_cast<double>(ground);
  out.gap = cost.front();

  // k smallest subset sums of `cost`: each state (sum, i) has i as its
  // largest member; children add cost[i+1] or swap cost[i] for it.
  struct Node {
    long double sum;
    std::size_t last;
    bool operator>(const Node& o) const { return sum > o.sum; }
  };
  const std::size_t total = L < 63 ? std::size_t{1} << L : SIZE_MAX;
  const std::size_t want = std::min(max_levels, total);
  out.complete = want == total;
  out.energies.reserve(want);
  out.energies.push_back(out.ground_energy);
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  heap.push({cost[0], 0});
  while (out.energies.size() < want && !heap.empty()) {
    const Node n = heap.top();
    heap.pop();
    out.energies.push_back(static_cast<double>(ground + n.sum));
    if (n.last + 1 < cost.size()) {
      heap.push({n.sum + cost[n.last + 1], n.last + 1});
      heap.push({n.sum - cost[n.last] + cost[n.last + 1], n.last + 1});
    }
  }
  return out;
}

}  // namespace omegaphase
