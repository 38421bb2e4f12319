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

/// \file chaitin.hpp
/// Stage-wise lower approximations of the halting probability and the two
/// witness procedures whose halting behaviour flips exactly at Omega.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "omegaphase/dyadic.hpp"
#include "omegaphase/errors.hpp"
#include "omegaphase/tm.hpp"

namespace omegaphase {

/// Omega_s for every stage s <= budget, from a single exploration of the
/// input tree with step budget `budget`. An input x_i counts at stage s iff
/// i <= s and M(x_i) halts within s steps.
class OmegaTrace {
 public:
  OmegaTrace(const MachineSpec& m, std::uint64_t budget, std::uint64_t effort_cap = 200'000'000)
      : name_(m.name()), budget_(budget) {
    if (budget > (std::uint64_t{1} << 62)) {
      throw ConstraintError("omega stage must not exceed 2^62");
    }
    ExploreOptions opts;
    opts.step_budget = budget;
    opts.effort_cap = effort_cap;
    opts.admit_prefix = [budget](const BitString& p) { return p.size() <= 62 && input_index(p) <= budget; };
    opts.admit_word = opts.admit_prefix;
    InputTreeExplorer ex(m, std::move(opts));
    for (auto& leaf : ex.explore()) {
      if (leaf.outcome != LeafOutcome::Halted) continue;
      if (leaf.exact) {
        words_.push_back({std::move(leaf.prefix), leaf.steps});
      } else {
        families_.push_back({std::move(leaf.prefix), leaf.steps});
      }
    }
  }

  const std::string& machine() const noexcept { return name_; }
  std::uint64_t budget() const noexcept { return budget_; }

  Dyadic value_at(std::uint64_t s) const {
    check_stage(s);
    Dyadic total;
    for (const auto& w : words_) {
      if (std::max(input_index(w.word), w.steps) <= s) total += Dyadic::pow2(-static_cast<std::int64_t>(w.word.size()));
    }
    for (const auto& f : families_) {
      if (f.steps > s) continue;
      const unsigned __int128 base = input_index(f.word);
      const std::size_t plen = f.word.size();
      for (std::size_t k = 0; plen + k <= 62; ++k) {
        const unsigned __int128 first = base << k;
        if (first > s) break;
        const unsigned __int128 width = static_cast<unsigned __int128>(1) << k;
        const unsigned __int128 count = std::min<unsigned __int128>(width, s - first + 1);
        total += Dyadic(BigInt(static_cast<std::uint64_t>(count)), plen + k);
      }
    }
    return total;
  }

  /// Inputs counted at stage s, in length-lex order; at most `limit`.
  std::vector<BitString> halting_inputs_at(std::uint64_t s, std::size_t limit,
                                           bool* truncated = nullptr) const {
    check_stage(s);
    std::vector<BitString> out;
    bool cut = false;
    for (const auto& w : words_) {
      if (std::max(input_index(w.word), w.steps) <= s) out.push_back(w.word);
    }
    for (const auto& f : families_) {
      if (f.steps > s) continue;
      std::vector<BitString> frontier{f.word};
      while (!frontier.empty() && !cut) {
        BitString w = std::move(frontier.back());
        frontier.pop_back();
        if (w.size() > 62 || input_index(w) > s) continue;
        if (out.size() >= limit) {
          cut = true;
          break;
        }
        out.push_back(w);
        frontier.push_back(w.with(1));
        frontier.push_back(w.with(0));
      }
    }
    std::sort(out.begin(), out.end());
    if (out.size() > limit) {
      out.resize(limit);
      cut = true;
    }
    if (truncated) *truncated = cut;
    return out;
  }

 private:
  struct Halt {
    BitString word;
    std::uint64_t steps;
  };

  void check_stage(std::uint64_t s) const {
    if (s > budget_) {
      throw ConstraintError("stage " + std::to_string(s) + " exceeds the trace budget " +
                            std::to_string(budget_));
    }
  }

  std::string name_;
  std::uint64_t budget_;
  std::vector<Halt> words_;
  std::vector<Halt> families_;  // every extension of `word` halts after `steps`
};

struct OmegaApproximation {
  std::string machine;
  std::uint64_t stage = 0;
  Dyadic value;
  std::vector<BitString> halting_inputs;
  bool halting_inputs_truncated = false;
};

inline OmegaApproximation omega_approx(const MachineSpec& m, std::uint64_t s,
                                       std::size_t list_limit = 4096) {
  OmegaTrace trace(m, s);
  OmegaApproximation r{m.name(), s, trace.value_at(s), {}, false};
  r.halting_inputs = trace.halting_inputs_at(s, list_limit, &r.halting_inputs_truncated);
  return r;
}

/// Outcome of the first witness procedure.
struct WitnessResult {
  std::optional<std::uint64_t> halted_at;  ///< empty means the budget ran out
  bool budget_exceeded() const noexcept { return !halted_at; }
};

/// Least s <= max_stage with phi < Omega_s.
inline WitnessResult witness_w(const OmegaTrace& trace, const Dyadic& phi, std::uint64_t max_stage) {
  if (phi.sign() < 0 || phi >= Dyadic(1)) throw ConstraintError("witness_w: phi must lie in [0, 1)");
  if (max_stage > trace.budget()) throw ConstraintError("witness_w: max_stage exceeds the trace budget");
  if (!(phi < trace.value_at(max_stage))) return {};
  std::uint64_t lo = 0, hi = max_stage;  // phi < Omega_hi, and Omega_0 = 0 <= phi
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (phi < trace.value_at(mid)) hi = mid;
    else lo = mid;
  }
  return {hi};
}

inline WitnessResult witness_w(const MachineSpec& m, const Dyadic& phi, std::uint64_t max_stage) {
  return witness_w(OmegaTrace(m, max_stage), phi, max_stage);
}

enum class WPrimeOutcome { Halts, Loops };

inline const char* to_string(WPrimeOutcome o) { return o == WPrimeOutcome::Halts ? "halts" : "loops"; }

/// The second witness procedure on an m-bit estimate: halts iff
/// 0 < estimate|m < Omega_m|m. An all-zero estimate loops.
inline WPrimeOutcome witness_wprime(const OmegaTrace& trace, const Dyadic& estimate, std::uint64_t m) {
  if (m < 1) throw ConstraintError("witness_wprime: m must be >= 1");
  if (estimate.sign() < 0 || estimate >= Dyadic(1)) {
    throw ConstraintError("witness_wprime: estimate must lie in [0, 1)");
  }
  const Dyadic t = truncate(estimate, m);
  if (t.is_zero()) return WPrimeOutcome::Loops;
  return t < truncate(trace.value_at(m), m) ? WPrimeOutcome::Halts : WPrimeOutcome::Loops;
}

inline WPrimeOutcome witness_wprime(const OmegaTrace& trace, const BitString& phibar, std::uint64_t m) {
  if (m < 1 || m > phibar.size()) throw ConstraintError("witness_wprime: need 1 <= m <= |phibar|");
  return witness_wprime(trace, phibar.to_fraction(), m);
}

inline WPrimeOutcome witness_wprime(const MachineSpec& m, const BitString& phibar, std::uint64_t bits) {
  if (bits < 1 || bits > phibar.size()) throw ConstraintError("witness_wprime: need 1 <= m <= |phibar|");
  return witness_wprime(OmegaTrace(m, bits), phibar, bits);
}

/// [Omega_1|1, ..., Omega_smax|smax].
inline std::vector<Dyadic> omega_truncated_sequence(const MachineSpec& m, std::uint64_t s_max) {
  if (s_max < 1) throw ConstraintError("omega_truncated_sequence: s_max must be >= 1");
  OmegaTrace trace(m, s_max);
  std::vector<Dyadic> out;
  out.reserve(s_max);
  for (std::uint64_t s = 1; s <= s_max; ++s) out.push_back(truncate(trace.value_at(s), s));
  return out;
}

}  // namespace omegaphase
