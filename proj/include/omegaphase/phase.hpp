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

/// \file phase.hpp
/// Per-square energy model and the phi sweep.
///
/// A square of side s runs phase estimation with n = s - 5 bits, rounds to
/// m = choose_m(n) bits and then runs the second witness procedure. Its
/// computational ground energy is bracketed by the clock law, with
/// T = s^p xi^s, and a marker bonus of size 4^{-C(s + ceil(s^{1/8}))} is
/// added once s reaches s'.

#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "omegaphase/chaitin.hpp"
#include "omegaphase/dyadic.hpp"
#include "omegaphase/errors.hpp"
#include "omegaphase/ext_real.hpp"
#include "omegaphase/gap_law.hpp"
#include "omegaphase/qpe.hpp"
#include "omegaphase/tm.hpp"

namespace omegaphase {

// ---------------------------------------------------------------------------
// Integer roots and the precision schedule.

namespace detail {

/// x^k, saturating at 2^64 - 1.
inline std::uint64_t ipow_sat(std::uint64_t x, unsigned k) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < k; ++i) {
    acc *= x;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace detail

/// Smallest r with r^k >= x.
inline std::uint64_t iroot_ceil(std::uint64_t x, unsigned k) {
  if (k == 0) throw ConstraintError("iroot_ceil: k must be positive");
  if (x <= 1) return x;
  auto r = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<long double>(x), 1.0L / k)));
  while (r > 1 && detail::ipow_sat(r - 1, k) >= x) --r;
  while (detail::ipow_sat(r, k) < x) ++r;
  return r;
}

/// max(1, floor(n - n^{1/4})) = max(1, n - ceil(n^{1/4})).
inline std::uint64_t choose_m(std::uint64_t n) {
  if (n < 2) throw ConstraintError("choose_m: n must be >= 2");
  const std::uint64_t q = iroot_ceil(n, 4);
  // n - ceil(n^{1/4}) never decreases: the root steps by one exactly when n does.
  return n > q ? std::max<std::uint64_t>(1, n - q) : 1;
}

/// m < n - (n^{1/4} - 2 log2 n).
inline bool schedule_constraint_holds(std::uint64_t n, std::uint64_t m) {
  const long double nn = static_cast<long double>(n);
  return static_cast<long double>(m) < nn - (std::pow(nn, 0.25L) - 2 * std::log2(nn));
}

// ---------------------------------------------------------------------------
// Energy model.

enum class Regime { Halting, Nonhalting, Mixed };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Halting: return "halting";
    case Regime::Nonhalting: return "nonhalting";
    case Regime::Mixed: return "mixed";
  }
  return "?";
}

struct EnergyInterval {
  ExtReal lower;
  ExtReal upper;
};

inline EnergyInterval operator+(const EnergyInterval& a, const EnergyInterval& b) {
  return {a.lower + b.lower, a.upper + b.upper};
}

struct SquareEnergyModel {
  std::uint64_t xi = 2;              ///< power of two, at least 2
  double c1 = 3.5;
  double c2 = 1.0;
  int poly_degree = 2;               ///< T = s^poly_degree * xi^s
  double c_lo = gap_law::kCLo;       ///< lower clock constant
  double k_hi = gap_law::kCHi;       ///< K, upper clock constant
  double marker_scale = 1.0;         ///< marker interval is scale * [-3, -1] * 4^{-C(s+r)}
  std::uint64_t s_max_checked = 0;   ///< 0 picks the largest side the exponents allow
  std::optional<std::uint64_t> s_prime;

  static constexpr std::uint64_t kMinSide = 3;
  static constexpr std::uint64_t kExponentRoom = std::uint64_t{1} << 60;

  void validate() const {
    if (xi < 2 || (xi & (xi - 1)) != 0) throw ConstraintError("xi must be a power of two >= 2");
    check_sk_constants(c1, c2);
    if (poly_degree < 0 || poly_degree > 8) throw ConstraintError("poly_degree must lie in [0, 8]");
    if (!(c_lo > 0) || !(k_hi >= c_lo)) throw ConstraintError("need 0 < c_lo <= K");
    if (!(marker_scale > 0) || !std::isfinite(marker_scale)) throw ConstraintError("marker_scale must be positive");
    if (s_max_checked != 0 && (s_max_checked < kMinSide || s_max_checked > kExponentRoom / C())) {
      throw ConstraintError("s_max_checked must lie in [3, 2^60 / C]");
    }
  }

  std::uint64_t C() const { return static_cast<std::uint64_t>(std::countr_zero(xi)); }

  std::uint64_t s_max() const { return s_max_checked != 0 ? s_max_checked : kExponentRoom / C(); }

  static std::uint64_t n_of(std::uint64_t s) { return s >= 5 ? s - 5 : 0; }

  /// m(s); zero while n < 2, where no rounding happens.
  static std::uint64_t m_of(std::uint64_t s) {
    const std::uint64_t n = n_of(s);
    return n >= 2 ? choose_m(n) : 0;
  }

  static std::uint64_t marker_r(std::uint64_t s) { return iroot_ceil(s, 8); }

  long double log2_T(std::uint64_t s) const {
    return poly_degree * std::log2(static_cast<long double>(s)) + static_cast<long double>(C() * s);
  }

  ExtReal T_squared(std::uint64_t s) const {
    const double poly = std::pow(static_cast<double>(s), 2.0 * poly_degree);
    return ExtReal::scaled(poly, static_cast<std::int64_t>(2 * C() * s));
  }

  /// 4^{-C(s + ceil(s^{1/8}))}, times marker_scale.
  ExtReal marker_magnitude(std::uint64_t s) const {
    return ExtReal::scaled(marker_scale, -static_cast<std::int64_t>(2 * C() * (s + marker_r(s))));
  }

  EnergyInterval marker_interval(std::uint64_t s) const {
    const ExtReal mag = marker_magnitude(s);
    return {-(ExtReal(3.0) * mag), -mag};
  }

  /// min(1, 2^{-(n-m)} + delta(n)); 1 while n < 2.
  ExtReal slack(std::uint64_t s) const {
    const std::uint64_t n = n_of(s);
    if (n < 2) return 1.0;
    const ExtReal tail = ExtReal::pow2(-static_cast<std::int64_t>(n - choose_m(n)));
    const ExtReal delta = ExtReal::exp2(sk_log2_error(static_cast<double>(n), c1, c2));
    return ext_min(ExtReal(1.0), tail + delta);
  }

  /// Ground energy of the computational block, by the witness regime.
  EnergyInterval comp_interval(std::uint64_t s, Regime regime) const {
    const ExtReal t2 = T_squared(s);
    const ExtReal top = ExtReal(k_hi) / t2;
    switch (regime) {
      case Regime::Halting: return {0.0, ExtReal(k_hi) * slack(s) / t2};
      case Regime::Nonhalting: return {ExtReal(c_lo) * (ExtReal(1.0) - slack(s)) / t2, top};
      case Regime::Mixed: return {0.0, top};
    }
    return {};
  }

  /// Whether the marker interval splits the halting and nonhalting regimes at s.
  bool separated_at(std::uint64_t s) const {
    const ExtReal mag = marker_magnitude(s);
    return comp_interval(s, Regime::Halting).upper < mag &&
           ExtReal(3.0) * mag < comp_interval(s, Regime::Nonhalting).lower;
  }
};

struct SquareEnergy {
  EnergyInterval energy;
  bool marker_on = false;  ///< s >= s'
  bool separated = false;  ///< the marker-on sum would have a definite sign in this regime
};

namespace detail {

/// Largest delta(n) over n in [lo, hi]; delta rises then falls.
inline long double max_log2_delta(std::uint64_t lo, std::uint64_t hi, double c1, double c2) {
  long double best = std::max(sk_log2_error(static_cast<double>(lo), c1, c2),
                              sk_log2_error(static_cast<double>(hi), c1, c2));
  const long double peak = std::pow(2.0L * c1 / (c2 * std::numbers::ln2_v<long double>), c1);
  if (peak > lo && peak < hi) {
    for (long double p : {std::floor(peak), std::ceil(peak)}) {
      best = std::max<long double>(best, sk_log2_error(static_cast<double>(p), c1, c2));
    }
  }
  return best;
}

inline long double log2_sum(long double a, long double b) {
  const long double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log2(1.0L + std::exp2(lo - hi));
}

/// Separation on every side in [a, b], where ceil(s^{1/8}) and n - m are
/// constant. The 2^{2Cs} factor cancels, leaving
///   log2(3 scale) - 2Cr < log2 c_lo + log2(1 - slack) - 2p log2 s
///   log2 K + log2 slack - 2p log2 s < log2 scale - 2Cr
/// checked at the worst slack and worst s. Conservative by kMargin.
inline bool separated_on(const SquareEnergyModel& model, std::uint64_t a, std::uint64_t b) {
  constexpr long double kMargin = 1e-9L;
  const std::uint64_t na = SquareEnergyModel::n_of(a), nb = SquareEnergyModel::n_of(b);
  if (na < 2) return false;
  const long double log2_tail = -static_cast<long double>(na - choose_m(na));
  const long double log2_slack =
      std::min(0.0L, log2_sum(log2_tail, max_log2_delta(na, nb, model.c1, model.c2)));
  if (log2_slack >= 0) return false;
  const long double two_c_r = 2.0L * model.C() * SquareEnergyModel::marker_r(a);
  const long double p2 = 2.0L * model.poly_degree;
  const long double scale = std::log2(static_cast<long double>(model.marker_scale));
  const long double one_minus = std::log2(1.0L - std::exp2(log2_slack));
  const bool nonhalting = std::log2(3.0L) + scale - two_c_r + kMargin <
                          std::log2(static_cast<long double>(model.c_lo)) + one_minus -
                              p2 * std::log2(static_cast<long double>(b));
  const bool halting = std::log2(static_cast<long double>(model.k_hi)) + log2_slack -
                           p2 * std::log2(static_cast<long double>(a)) + kMargin <
                       scale - two_c_r;
  return nonhalting && halting;
}

/// Largest s in [a, b] that fails the exact separation test, if any.
inline std::optional<std::uint64_t> last_failure(const SquareEnergyModel& model, std::uint64_t a,
                                                 std::uint64_t b) {
  if (separated_on(model, a, b)) return std::nullopt;
  if (a == b) return model.separated_at(a) ? std::nullopt : std::optional<std::uint64_t>(a);
  const std::uint64_t mid = a + (b - a) / 2;
  if (auto hi = last_failure(model, mid + 1, b)) return hi;
  return last_failure(model, a, mid);
}

/// Last side of the stretch starting at s on which ceil(s^{1/8}) and
/// n - m stay fixed.
inline std::uint64_t piece_end(std::uint64_t s, std::uint64_t cap) {
  const std::uint64_t r = SquareEnergyModel::marker_r(s);
  std::uint64_t end = std::min(cap, detail::ipow_sat(r, 8));
  const std::uint64_t n = SquareEnergyModel::n_of(s);
  if (n < 4) return std::min(end, s);
  const std::uint64_t q = iroot_ceil(n, 4);
  return std::min(end, detail::ipow_sat(q, 4) + 5);
}

}  // namespace detail

/// Smallest s such that the marker interval separates the two comp-energy
/// regimes for every side in [s, s_max_checked].
inline std::uint64_t find_s_prime(const SquareEnergyModel& model) {
  model.validate();
  const std::uint64_t cap = model.s_max();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pieces;
  for (std::uint64_t s = SquareEnergyModel::kMinSide; s <= cap;) {
    const std::uint64_t e = detail::piece_end(s, cap);
    pieces.emplace_back(s, e);
    if (e == cap) break;
    s = e + 1;
  }
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    if (auto bad = detail::last_failure(model, it->first, it->second)) {
      if (*bad == cap) {
        throw ConstraintError("no separation up to s_max_checked = " + std::to_string(cap) +
                              "; model constants too loose");
      }
      return *bad + 1;
    }
  }
  return SquareEnergyModel::kMinSide;
}

/// Fills in s' when absent.
inline SquareEnergyModel calibrated(SquareEnergyModel model) {
  if (!model.s_prime) model.s_prime = find_s_prime(model);
  return model;
}

inline SquareEnergy square_energy(std::uint64_t s, Regime regime, const SquareEnergyModel& model) {
  model.validate();
  if (s < SquareEnergyModel::kMinSide) throw ConstraintError("square_energy: s must be >= 3");
  if (s > model.s_max()) throw ConstraintError("square_energy: s exceeds s_max_checked");
  const std::uint64_t s_prime = model.s_prime ? *model.s_prime : find_s_prime(model);
  const EnergyInterval comp = model.comp_interval(s, regime);
  const EnergyInterval with_marker = comp + model.marker_interval(s);
  SquareEnergy out;
  out.marker_on = s >= s_prime;
  out.energy = out.marker_on ? with_marker : comp;
  switch (regime) {
    case Regime::Halting: out.separated = with_marker.upper.sign() < 0; break;
    case Regime::Nonhalting: out.separated = with_marker.lower.sign() > 0; break;
    case Regime::Mixed: out.separated = true; break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweep.

enum class Classification { GaplessEvidence, NoEvidence };

inline const char* to_string(Classification c) {
  return c == Classification::GaplessEvidence ? "gapless_evidence" : "no_evidence";
}

struct SweepProbe {
  std::uint64_t s = 0;
  std::uint64_t m = 0;
  Regime regime = Regime::Nonhalting;
  EnergyInterval energy;
};

struct SweepResult {
  Dyadic phi;
  Classification classification = Classification::NoEvidence;
  std::uint64_t scale = 0;                       ///< s of the evidence, or the budget
  std::optional<std::uint64_t> witness_scale;    ///< m at which both estimates halt
  std::optional<std::uint64_t> first_negative_s;
  EnergyInterval energy;                         ///< at `scale`
  std::vector<SweepProbe> energy_trace;          ///< every side probed, in probe order
};

/// The estimates the rounding step may produce, and what W' does on them.
inline Regime witness_regime(const OmegaTrace& trace, const Dyadic& phi, std::uint64_t m) {
  int halts = 0;
  const auto members = interval_im(phi, m);
  for (const auto& t : members) halts += witness_wprime(trace, t, m) == WPrimeOutcome::Halts;
  if (halts == static_cast<int>(members.size())) return Regime::Halting;
  return halts == 0 ? Regime::Nonhalting : Regime::Mixed;
}

namespace detail {

inline SweepResult sweep_one(const Dyadic& phi, const OmegaTrace& trace, std::uint64_t s_budget,
                             const SquareEnergyModel& model) {
  SweepResult out;
  out.phi = phi;
  const std::uint64_t s_prime = *model.s_prime;
  auto probe = [&](std::uint64_t s) {
    const std::uint64_t m = SquareEnergyModel::m_of(s);
    const Regime regime = witness_regime(trace, phi, m);
    out.energy_trace.push_back({s, m, regime, square_energy(s, regime, model).energy});
    return regime == Regime::Halting;
  };

  // Gallop up from s', then bisect back to the first halting side.
  const std::uint64_t first = std::max<std::uint64_t>(s_prime, 7);
  std::optional<std::uint64_t> hit;
  std::uint64_t miss = first - 1;
  for (std::uint64_t s = first, step = 1;; step = std::min(2 * step, std::uint64_t{1} << 62)) {
    if (probe(s)) {
      hit = s;
      break;
    }
    miss = s;
    if (s == s_budget) break;
    s = s_budget - s > step ? s + step : s_budget;
  }
  if (hit) {
    std::uint64_t lo = miss, hi = *hit;
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (probe(mid)) hi = mid;
      else lo = mid;
    }
    out.classification = Classification::GaplessEvidence;
    out.scale = hi;
    out.witness_scale = SquareEnergyModel::m_of(hi);
    out.first_negative_s = hi;
  } else {
    out.scale = s_budget;
  }
  for (auto it = out.energy_trace.rbegin(); it != out.energy_trace.rend(); ++it) {
    if (it->s == out.scale) {
      out.energy = it->energy;
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Classifies each phi in (0, 1] by the least side s in [s', s_budget]
/// whose estimates all make W' halt. Grid points run in parallel.
inline std::vector<SweepResult> sweep(const std::vector<Dyadic>& phi_grid, const MachineSpec& machine,
                                      std::uint64_t s_budget, const SquareEnergyModel& model_in,
                                      unsigned threads = 0) {
  const SquareEnergyModel model = calibrated(model_in);
  if (s_budget < *model.s_prime) {
    throw ConstraintError("sweep: s_budget " + std::to_string(s_budget) + " is below s' = " +
                          std::to_string(*model.s_prime));
  }
  if (s_budget > model.s_max()) throw ConstraintError("sweep: s_budget exceeds s_max_checked");
  for (const auto& phi : phi_grid) {
    if (phi.sign() <= 0 || phi > Dyadic(1)) throw ConstraintError("sweep: grid values must lie in (0, 1]");
  }
  std::vector<SweepResult> results(phi_grid.size());
  if (phi_grid.empty()) return results;
  const OmegaTrace trace(machine, SquareEnergyModel::m_of(s_budget));

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(phi_grid.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < phi_grid.size();) {
      try {
        results[i] = detail::sweep_one(phi_grid[i], trace, s_budget, model);
      } catch (...) {
        std::lock_guard<std::mutex> g(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace omegaphase
