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

/// \file qpe.hpp
/// Output distribution of textbook phase estimation, its tails, the success
/// probability of the round-then-truncate post-processing, and the gate
/// synthesis error model.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "omegaphase/dyadic.hpp"
#include "omegaphase/errors.hpp"

namespace omegaphase {

/// A phase in [0, 1) held as a 64-bit binary fraction.
struct Phase64 {
  std::uint64_t bits = 0;  ///< phase * 2^64
  bool exact = true;       ///< false when the source had to be rounded

  /// Rounds to the nearest multiple of 2^-64 (ties up); 1 - 2^-65 and above wrap to 0.
  static Phase64 from_dyadic(const Dyadic& phi) {
    if (phi.sign() < 0 || phi >= Dyadic(1)) throw ConstraintError("phase must lie in [0, 1)");
    if (phi.exponent() <= 64) {
      BigInt v = phi.numerator() << (64 - phi.exponent());
      return {static_cast<std::uint64_t>(v), true};
    }
    const std::uint64_t drop = phi.exponent() - 64;
    BigInt v = (phi.numerator() + (BigInt(1) << (drop - 1))) >> drop;
    return {static_cast<std::uint64_t>(v & BigInt(~std::uint64_t{0})), false};
  }

  static Phase64 from_real(long double phi) {
    if (!(phi >= 0.0L) || !(phi < 1.0L)) throw ConstraintError("phase must lie in [0, 1)");
    const long double scaled = std::ldexp(phi, 64);
    const long double r = std::nearbyint(scaled);
    const bool exact = r == scaled;
    if (r >= std::ldexp(1.0L, 64)) return {0, false};
    return {static_cast<std::uint64_t>(r), exact};
  }

  Dyadic to_dyadic() const { return Dyadic(BigInt(bits), 64); }
  long double to_real() const { return std::ldexp(static_cast<long double>(bits), -64); }
};

struct PhaseDistribution {
  int n = 0;
  Phase64 phi;
  std::vector<double> probabilities;  ///< indexed by outcome z in [0, 2^n)
};

namespace detail {

inline void check_precision(int n) {
  if (n < 1 || n > 20) throw ConstraintError("precision n must lie in [1, 20]");
}

/// phi - z/2^n reduced to [-1/2, 1/2), in units of 2^-64.
inline std::int64_t phase_offset(const Phase64& phi, std::uint64_t z, int n) {
  return static_cast<std::int64_t>(phi.bits - (z << (64 - n)));
}

inline std::uint64_t abs_offset(std::int64_t d) {
  return d < 0 ? ~static_cast<std::uint64_t>(d) + 1 : static_cast<std::uint64_t>(d);
}

}  // namespace detail

/// Pr[z] = sin^2(pi 2^n delta) / (2^{2n} sin^2(pi delta)), delta = phi - z/2^n.
inline PhaseDistribution qpe_distribution(const Phase64& phi, int n) {
  detail::check_precision(n);
  const std::uint64_t N = std::uint64_t{1} << n;
  PhaseDistribution d{n, phi, std::vector<double>(N, 0.0)};
  const std::uint64_t low_mask = ~std::uint64_t{0} >> n;
  const std::uint64_t low = phi.bits & low_mask;
  if (low == 0) {
    d.probabilities[phi.bits >> (64 - n)] = 1.0;
    return d;
  }
  constexpr long double pi = std::numbers::pi_v<long double>;
  // 2^n delta differs from the fractional part f only by an integer.
  const long double f = std::ldexp(static_cast<long double>(low), n - 64);
  const long double num = std::sin(pi * f) * std::sin(pi * f);
  const long double scale = std::ldexp(1.0L, -2 * n);
  long double total = 0;
  std::vector<long double> p(N);
  for (std::uint64_t z = 0; z < N; ++z) {
    const long double delta = std::ldexp(static_cast<long double>(detail::phase_offset(phi, z, n)), -64);
    const long double s = std::sin(pi * delta);
    p[z] = num * scale / (s * s);
    total += p[z];
  }
  for (std::uint64_t z = 0; z < N; ++z) d.probabilities[z] = static_cast<double>(p[z] / total);
  return d;
}

inline PhaseDistribution qpe_distribution(const Dyadic& phi, int n) {
  return qpe_distribution(Phase64::from_dyadic(phi), n);
}

/// Mass on outcomes with |delta(z)| >= 2^-(m+1).
inline double tail_probability(const PhaseDistribution& d, int m) {
  if (m <= 0 || m >= d.n) throw ConstraintError("tail_probability: need 0 < m < n");
  const std::uint64_t threshold = std::uint64_t{1} << (63 - m);
  long double tail = 0;
  for (std::uint64_t z = 0; z < d.probabilities.size(); ++z) {
    if (detail::abs_offset(detail::phase_offset(d.phi, z, d.n)) >= threshold) tail += d.probabilities[z];
  }
  return static_cast<double>(tail);
}

inline double tail_probability(const Phase64& phi, int n, int m) {
  if (m <= 0 || m >= n) throw ConstraintError("tail_probability: need 0 < m < n");
  return tail_probability(qpe_distribution(phi, n), m);
}

/// m-bit members of I_m(phi), as integers in [0, 2^m).
inline std::vector<std::uint64_t> interval_members(const Phase64& phi, int m) {
  const std::uint64_t lo = phi.bits >> (64 - m);
  if ((phi.bits << m) == 0) return {lo};
  return {lo, (lo + 1) & ((std::uint64_t{1} << m) - 1)};
}

/// The m-bit estimate after rounding the n-bit outcome z at bit m+1 and
/// truncating. With m = n there is nothing to round.
inline std::uint64_t rounded_estimate(std::uint64_t z, int n, int m) {
  if (m == n) return z;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  if ((z >> (n - m - 1)) & 1U) z = (z + (std::uint64_t{1} << (n - m))) & mask;
  return z >> (n - m);
}

/// Mass on outcomes whose rounded m-bit estimate lies in I_m(phi).
inline double rounded_success_probability(const PhaseDistribution& d, int m) {
  if (m <= 0 || m > d.n) throw ConstraintError("rounded_success_probability: need 0 < m <= n");
  const auto members = interval_members(d.phi, m);
  long double ok = 0;
  for (std::uint64_t z = 0; z < d.probabilities.size(); ++z) {
    const std::uint64_t t = rounded_estimate(z, d.n, m);
    for (auto member : members) {
      if (t == member) {
        ok += d.probabilities[z];
        break;
      }
    }
  }
  return static_cast<double>(ok);
}

inline double rounded_success_probability(const Phase64& phi, int n, int m) {
  detail::check_precision(n);
  if (m <= 0 || m > n) throw ConstraintError("rounded_success_probability: need 0 < m <= n");
  return rounded_success_probability(qpe_distribution(phi, n), m);
}

/// Mass on the two n-bit outcomes that bracket phi.
inline double best_approximation_mass(const PhaseDistribution& d) {
  const std::uint64_t N = d.probabilities.size();
  const std::uint64_t lo = d.phi.bits >> (64 - d.n);
  if ((d.phi.bits << d.n) == 0) return d.probabilities[lo];
  return d.probabilities[lo] + d.probabilities[(lo + 1) % N];
}

// ---------------------------------------------------------------------------
// Synthesis error model.

struct ErrorBudget {
  double n = 0;
  double m = 0;
  double c1 = 3.5;
  double c2 = 1.0;
  double delta_n = 0;
};

inline void check_sk_constants(double c1, double c2) {
  if (!(c1 > 3.0 && c1 < 4.0)) throw ConstraintError("c1 must lie strictly between 3 and 4");
  if (!(c2 >= 1.0)) throw ConstraintError("c2 must be at least 1");
}

/// log2 of delta(n) = (n^2 / 2) 2^{-c2 n^{1/c1}}; usable far beyond double range.
inline double sk_log2_error(double n, double c1, double c2) {
  check_sk_constants(c1, c2);
  if (!(n >= 2.0)) throw ConstraintError("sk error bound needs n >= 2");
  return 2.0 * std::log2(n) - 1.0 - c2 * std::pow(n, 1.0 / c1);
}

inline double sk_error_bound(double n, double c1, double c2) {
  return std::exp2(sk_log2_error(n, c1, c2));
}

inline double sk_error_bound(const ErrorBudget& b) { return sk_error_bound(b.n, b.c1, b.c2); }

inline ErrorBudget make_error_budget(double n, double m, double c1, double c2) {
  return {n, m, c1, c2, sk_error_bound(n, c1, c2)};
}

/// Smallest integer n past which delta is strictly decreasing:
/// n > (2 c1 / (c2 ln 2))^{c1}.
inline double sk_monotone_threshold(double c1, double c2) {
  check_sk_constants(c1, c2);
  return std::floor(std::pow(2.0 * c1 / (c2 * std::numbers::ln2), c1)) + 1.0;
}

}  // namespace omegaphase
