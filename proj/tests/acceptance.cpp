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


// One line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <exception>

#include "omegaphase/experiments.hpp"

int main() {
  using clock = std::chrono::steady_clock;
  int failed = 0;
  for (const auto& run : omegaphase::experiments::all()) {
    const auto t0 = clock::now();
    omegaphase::experiments::Report r;
    std::string error;
    try {
      r = run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const bool ok = error.empty() && r.pass();
    failed += !ok;
    if (!error.empty()) {
      std::printf("FAIL criterion %2d: %s (exception: %s)\n", r.criterion, r.title.c_str(), error.c_str());
      continue;
    }
    char worst[96] = "";
    if (!r.worst_label.empty()) std::snprintf(worst, sizeof worst, " %s=%.3g", r.worst_label.c_str(), r.worst);
    std::printf("%s criterion %2d: %s | checks=%llu violations=%llu%s | %s | %.1f s\n", ok ? "PASS" : "FAIL",
                r.criterion, r.title.c_str(), static_cast<unsigned long long>(r.checks),
                static_cast<unsigned long long>(r.violations), worst, r.note.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(omegaphase::experiments::all().size()) - failed,
              omegaphase::experiments::all().size());
  return failed == 0 ? 0 : 1;
}
