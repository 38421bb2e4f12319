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

/// \file gap_law.hpp
/// Frozen constants of the clock ground-energy law
///     c_lo (1 - eps) / T^2 <= lambda0 <= c_hi (1 - eps) / T^2,   T >= 2,
/// taken from tools/calibrate_gap_law (envelope [0.3333, 2.4599] over
/// T in [2, 1024]); the large-T limits are 1 and pi^2/4.

#pragma once

namespace omegaphase::gap_law {

inline constexpr int kMinT = 2;
inline constexpr double kCLo = 0.3;
inline constexpr double kCHi = 2.5;

/// Envelope of k0 T / sqrt(mu); measured [0.5774, 1.5684], limit pi/2.
inline constexpr double kK0RatioLo = 0.55;
inline constexpr double kK0RatioHi = 1.6;

}  // namespace omegaphase::gap_law
