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

/// \file composition.hpp
/// Spectrum of the total Hamiltonian on ((uu x dense) + trivial)^{sites}:
///     beta (spec uu + spec dense)  u  spec trivial  u  G,
/// with G the energies of configurations mixing the two sectors.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omegaphase/errors.hpp"

namespace omegaphase {

enum class Origin { UuDense, Trivial, Mixed };

inline const char* to_string(Origin o) {
  switch (o) {
    case Origin::UuDense: return "uu_dense";
    case Origin::Trivial: return "trivial";
    case Origin::Mixed: return "mixed";
  }
  return "?";
}

struct ComposedLevel {
  double energy = 0;
  Origin origin = Origin::Trivial;
  std::size_t first = 0;   ///< index into the uu list, the trivial list or G
  std::size_t second = 0;  ///< index into the dense list (UuDense only)
};

struct ComposedSpectrum {
  std::vector<ComposedLevel> levels;  ///< ascending energy
  double ground_energy = 0;
  Origin ground_origin = Origin::Trivial;
  double gap = 0;  ///< distance to the next distinct level; 0 when there is none
};

inline constexpr std::size_t kMaxComposedLevels = 50'000'000;

/// beta > 0. Levels closer than `tol` to the ground count as degenerate.
inline ComposedSpectrum compose_total_spectrum(const std::vector<double>& uu, const std::vector<double>& dense,
                                               const std::vector<double>& trivial, double beta,
                                               const std::vector<double>& mixed = {}, double tol = 1e-12) {
  if (!(beta > 0) || !std::isfinite(beta)) throw ConstraintError("compose_total_spectrum: beta must be positive");
  if (uu.empty() != dense.empty()) throw ConstraintError("compose_total_spectrum: uu and dense must both be given");
  if (uu.empty() && trivial.empty()) throw ConstraintError("compose_total_spectrum: nothing to compose");
  if (uu.size() > 0 && dense.size() > kMaxComposedLevels / uu.size()) {
    throw ConstraintError("compose_total_spectrum: too many pairwise sums");
  }
  ComposedSpectrum out;
  out.levels.reserve(uu.size() * dense.size() + trivial.size() + mixed.size());
  for (std::size_t i = 0; i < uu.size(); ++i) {
    for (std::size_t j = 0; j < dense.size(); ++j) {
      out.levels.push_back({beta * (uu[i] + dense[j]), Origin::UuDense, i, j});
    }
  }
  for (std::size_t i = 0; i < trivial.size(); ++i) out.levels.push_back({trivial[i], Origin::Trivial, i, 0});
  for (std::size_t i = 0; i < mixed.size(); ++i) out.levels.push_back({mixed[i], Origin::Mixed, i, 0});
  std::stable_sort(out.levels.begin(), out.levels.end(),
                   [](const ComposedLevel& a, const ComposedLevel& b) { return a.energy < b.energy; });

  out.ground_energy = out.levels.front().energy;
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto min_of = [](const std::vector<double>& v) { return v.empty() ? inf : *std::min_element(v.begin(), v.end()); };
  const double pair_min = uu.empty() ? inf : beta * (min_of(uu) + min_of(dense));
  const double trivial_min = min_of(trivial);
  out.ground_origin = pair_min < trivial_min ? Origin::UuDense : Origin::Trivial;
  if (min_of(mixed) < std::min(pair_min, trivial_min)) out.ground_origin = Origin::Mixed;
  const double threshold = tol * std::max(1.0, std::fabs(out.ground_energy));
  for (const auto& l : out.levels) {
    if (l.energy - out.ground_energy > threshold) {
      out.gap = l.energy - out.ground_energy;
      break;
    }
  }
  return out;
}

/// beta at which beta (min_uu + min_dense) meets min_trivial; empty when
/// the uu x dense minimum is not negative.
inline std::optional<double> crossover_beta(double min_uu, double min_dense, double min_trivial) {
  const double pair = min_uu + min_dense;
  if (!(pair < 0)) return std::nullopt;
  return min_trivial / pair;
}

// ---------------------------------------------------------------------------
// Reference trivial Hamiltonian.

/// Energies ground, ground + gap, ... (`count` of them).
inline std::vector<double> trivial_levels(double ground, double gap, std::size_t count) {
  if (!(gap > 0)) throw ConstraintError("trivial_levels: gap must be positive");
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = ground + gap * static_cast<double>(k);
  return out;
}

/// Bonds of an L x L lattice, open or periodic.
inline std::uint64_t lattice_bonds(std::uint64_t L, bool periodic) {
  if (L < 1) throw ConstraintError("lattice_bonds: L must be positive");
  if (periodic && L > 2) return 2 * L * L;
  return 2 * L * (L - 1);
}

/// Diagonal energy of -sum_i |0><0|_i + 1/2 sum_<ij> 1 for a configuration
/// with `zeros` sites in state 0.
inline double trivial_example_energy(std::uint64_t L, std::uint64_t zeros, bool periodic = false) {
  if (zeros > L * L) throw ConstraintError("trivial_example_energy: more zeros than sites");
  return -static_cast<double>(zeros) + 0.5 * static_cast<double>(lattice_bonds(L, periodic));
}

// ---------------------------------------------------------------------------
// Order parameter.

enum class SectorLabel { Gapless, Trivial };

inline SectorLabel parse_sector_label(std::string_view s) {
  if (s == "gapless_sector") return SectorLabel::Gapless;
  if (s == "trivial_sector") return SectorLabel::Trivial;
  throw ConstraintError("unknown sector label '" + std::string(s) + "'");
}

inline int order_parameter(SectorLabel label) { return label == SectorLabel::Trivial ? 1 : 0; }

inline int order_parameter(std::string_view label) { return order_parameter(parse_sector_label(label)); }

}  // namespace omegaphase
