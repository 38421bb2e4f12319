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

// Prints the envelope of lambda0 T^2 / (1 - eps) and k0 T / sqrt(mu) for the
// canonical single-pair clock over T in [2, 1024] and mu across (0, 1).
// The frozen constants in gap_law.hpp were taken from this output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "omegaphase/clock.hpp"

int main() {
  using namespace omegaphase;
  std::vector<double> mus;
  for (double e = -8; e <= -0.3; e += 0.1) mus.push_back(std::pow(10.0, e));
  for (double e = -8; e <= -0.3; e += 0.1) mus.push_back(1.0 - std::pow(10.0, e));
  double lo = 1e300, hi = 0, klo = 1e300, khi = 0;
  for (int T = 2; T <= 1024; T = T < 64 ? T + 1 : T * 2) {
    for (double mu : mus) {
      const double k0 = root_solve_case5(T, mu).k0;
      const double lam = 2 - 2 * std::cos(k0);
      const double r = lam * T * T / mu;  // 1 - eps = mu for the canonical pair
      const double kr = k0 * T / std::sqrt(mu);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      klo = std::min(klo, kr);
      khi = std::max(khi, kr);
    }
  }
  std::printf("lambda0 T^2/(1-eps): [%.6f, %.6f]\n", lo, hi);
  std::printf("k0 T/sqrt(mu):       [%.6f, %.6f]\n", klo, khi);
  return 0;
}
