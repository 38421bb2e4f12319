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

/// \file zoo.hpp
/// Hand-verified ground truth for the bundled toy machines in machines/.

#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "omegaphase/dyadic.hpp"
#include "omegaphase/errors.hpp"
#include "omegaphase/tm.hpp"

#ifndef OMEGAPHASE_MACHINE_DIR
#define OMEGAPHASE_MACHINE_DIR "machines"
#endif

namespace omegaphase::zoo {

struct Entry {
  std::string name;
  std::vector<std::string> halting_set;     ///< complete, length-lex order
  std::vector<std::uint64_t> halting_time;  ///< matches halting_set
  std::string omega;                        ///< exact value as "p/2^q"
};

inline const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = {
      {"halt01", {"0"}, {2}, "1/2^1"},
      {"two_words", {"0", "11"}, {2, 3}, "3/2^2"},
      {"never", {}, {}, "0/2^0"},
      {"unary3", {"1", "01", "001"}, {2, 3, 4}, "7/2^3"},
      {"slow1", {"1"}, {19}, "1/2^1"},
      {"drift", {"0"}, {2}, "1/2^1"},
  };
  return all;
}

inline const Entry& entry(const std::string& name) {
  for (const auto& e : entries()) {
    if (e.name == name) return e;
  }
  throw ConstraintError("no zoo machine named '" + name + "'");
}

inline std::string path(const std::string& name) {
  return std::string(OMEGAPHASE_MACHINE_DIR) + "/" + name + ".tm";
}

inline MachineSpec load(const std::string& name) { return MachineSpec::load(path(name)); }

inline Dyadic omega(const std::string& name) { return Dyadic::parse(entry(name).omega); }

/// First stage from which Omega_s equals the exact value: every halting
/// word has been enumerated and has finished.
inline std::uint64_t settle_stage(const std::string& name) {
  const Entry& e = entry(name);
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < e.halting_set.size(); ++i) {
    s = std::max({s, input_index(BitString(e.halting_set[i])), e.halting_time[i]});
  }
  return s;
}

}  // namespace omegaphase::zoo
