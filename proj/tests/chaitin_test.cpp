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

#include "omegaphase/chaitin.hpp"
#include "omegaphase/zoo.hpp"

using namespace omegaphase;

namespace {

// Literal stage-s approximation: for i = 1..s run x_i for s steps.
Dyadic literal_omega(const MachineSpec& m, std::uint64_t s) {
  Dyadic total;
  for (std::uint64_t i = 1; i <= s; ++i) {
    const BitString x = enumerate_input(i);
    if (run_bounded(m, x, s).halted) total += Dyadic::pow2(-static_cast<std::int64_t>(x.size()));
  }
  return total;
}

// Every input halts after exactly three steps: not prefix-free, so its
// approximations grow without bound. Exercises the open-family counting.
const char* kAllHalt = R"(
start: a
halt: h
a _ -> b _ S
a 0 -> b 0 S
a 1 -> b 1 S
b _ -> c _ S
b 0 -> c 0 S
b 1 -> c 1 S
c _ -> h _ S
c 0 -> h 0 S
c 1 -> h 1 S
)";

Dyadic D(const char* s) { return Dyadic::parse(s); }

}  // namespace

TEST(OmegaApprox, MatchesLiteralEnumeration) {
  for (const auto& e : zoo::entries()) {
    const MachineSpec m = zoo::load(e.name);
    const OmegaTrace trace(m, 300);
    for (std::uint64_t s = 0; s <= 300; ++s) {
      ASSERT_EQ(trace.value_at(s), literal_omega(m, s)) << e.name << " s=" << s;
    }
  }
  const MachineSpec all = MachineSpec::parse(kAllHalt);
  const OmegaTrace trace(all, 200);
  for (std::uint64_t s = 0; s <= 200; ++s) ASSERT_EQ(trace.value_at(s), literal_omega(all, s)) << s;
}

TEST(OmegaApprox, Examples) {
  const MachineSpec two = zoo::load("two_words");
  EXPECT_EQ(omega_approx(two, 0).value, Dyadic(0));
  // "11" is x_7, so the full 3/4 appears from stage 7.
  EXPECT_EQ(omega_approx(two, 6).value, D("1/2"));
  for (std::uint64_t s = 7; s <= 40; ++s) EXPECT_EQ(omega_approx(two, s).value, D("3/4"));
  const MachineSpec h = zoo::load("halt01");
  EXPECT_EQ(omega_approx(h, 2).value, D("1/2"));
  EXPECT_EQ(omega_approx(h, 1).value, Dyadic(0));
  const auto r = omega_approx(two, 10);
  EXPECT_EQ(r.halting_inputs, (std::vector<BitString>{BitString("0"), BitString("11")}));
}

TEST(OmegaApprox, MonotoneBelowOneAndExhausts) {
  for (const auto& e : zoo::entries()) {
    const MachineSpec m = zoo::load(e.name);
    const Dyadic omega = zoo::omega(e.name);
    const OmegaTrace trace(m, 1u << 20);
    Dyadic prev;
    bool reached = false;
    for (std::uint64_t s = 0; s <= 64; ++s) {
      const Dyadic v = trace.value_at(s);
      EXPECT_GE(v, prev);
      EXPECT_LT(v, Dyadic(1));
      EXPECT_LE(v, omega);
      if (reached) EXPECT_EQ(v, omega);
      reached = reached || v == omega;
      prev = v;
    }
    EXPECT_TRUE(reached) << e.name;
    EXPECT_EQ(trace.value_at(1u << 20), omega);
  }
}

TEST(OmegaApprox, HugeStagesAreCheap) {
  const std::uint64_t s = std::uint64_t{1} << 60;
  for (const auto& e : zoo::entries()) {
    EXPECT_EQ(OmegaTrace(zoo::load(e.name), s).value_at(s), zoo::omega(e.name)) << e.name;
  }
}

TEST(WitnessW, Examples) {
  const MachineSpec two = zoo::load("two_words");
  const OmegaTrace trace(two, 1000);
  auto w = witness_w(trace, D("1/2"), 1000);
  ASSERT_FALSE(w.budget_exceeded());
  // Omega_s: 0 for s < 2, 1/2 for 2 <= s < 7, then 3/4.
  EXPECT_EQ(*w.halted_at, 7u);
  EXPECT_TRUE(witness_w(trace, D("3/4"), 1000).budget_exceeded());
  auto z = witness_w(trace, Dyadic(0), 1000);
  ASSERT_FALSE(z.budget_exceeded());
  EXPECT_EQ(*z.halted_at, 2u);
  EXPECT_THROW(witness_w(trace, Dyadic(1), 10), ConstraintError);
}

TEST(WitnessW, LeastStageAgreesWithScan) {
  for (const auto& e : zoo::entries()) {
    const MachineSpec m = zoo::load(e.name);
    const OmegaTrace trace(m, 200);
    for (std::uint64_t p = 0; p < 64; ++p) {
      const Dyadic phi(BigInt(p), 6);
      std::optional<std::uint64_t> scan;
      for (std::uint64_t s = 1; s <= 200 && !scan; ++s) {
        if (phi < literal_omega(m, s)) scan = s;
      }
      EXPECT_EQ(witness_w(trace, phi, 200).halted_at, scan) << e.name << " " << phi;
      EXPECT_EQ(scan.has_value(), phi < zoo::omega(e.name));
    }
  }
}

TEST(WitnessWPrime, Examples) {
  const MachineSpec two = zoo::load("two_words");
  // Omega_m|m reaches 3/4 only from m = 7 on.
  EXPECT_EQ(witness_wprime(two, BitString("0000"), 3), WPrimeOutcome::Loops);
  EXPECT_EQ(witness_wprime(two, BitString("10000000"), 7), WPrimeOutcome::Halts);
  EXPECT_EQ(witness_wprime(two, BitString("11000000"), 7), WPrimeOutcome::Loops);
  EXPECT_EQ(witness_wprime(two, BitString("10"), 2), WPrimeOutcome::Loops);  // Omega_2|2 = 1/2
  EXPECT_THROW(witness_wprime(two, BitString("10"), 3), ConstraintError);
  EXPECT_THROW(witness_wprime(two, BitString("10"), 0), ConstraintError);
}

TEST(OmegaSequence, Examples) {
  const auto seq = omega_truncated_sequence(zoo::load("two_words"), 50);
  ASSERT_EQ(seq.size(), 50u);
  for (std::size_t s = 7; s <= 50; ++s) EXPECT_EQ(seq[s - 1], D("3/4"));
  for (const auto& v : omega_truncated_sequence(zoo::load("never"), 30)) EXPECT_TRUE(v.is_zero());
  const auto h = omega_truncated_sequence(zoo::load("halt01"), 3);
  EXPECT_EQ(h, (std::vector<Dyadic>{Dyadic(0), D("1/2"), D("1/2")}));
}

// For phi below Omega some m makes W' halt on both members of I_m(phi);
// at or above Omega it loops for every m and member.
TEST(WitnessWPrime, FlipsExactlyAtOmega) {
  constexpr std::uint64_t kM0 = 40;
  for (const auto& e : zoo::entries()) {
    const MachineSpec m = zoo::load(e.name);
    const Dyadic omega = zoo::omega(e.name);
    const OmegaTrace trace(m, kM0);
    for (std::uint64_t p = 0; p < 256; ++p) {
      const Dyadic phi(BigInt(p), 8);
      bool some_m_halts = false;
      bool any_halt = false;
      for (std::uint64_t bits = 1; bits <= kM0; ++bits) {
        bool all = true;
        for (const auto& member : interval_im(phi, bits)) {
          const bool h = witness_wprime(trace, member, bits) == WPrimeOutcome::Halts;
          all = all && h;
          any_halt = any_halt || h;
        }
        some_m_halts = some_m_halts || all;
      }
      if (phi < omega && !phi.is_zero()) EXPECT_TRUE(some_m_halts) << e.name << " " << phi;
      if (phi >= omega) EXPECT_FALSE(any_halt) << e.name << " " << phi;
    }
  }
}

// phi + 2^-m < Omega_m|m for all m past a findable m0.
TEST(OmegaSequence, PreservesStrictGap) {
  for (const auto& e : zoo::entries()) {
    const MachineSpec m = zoo::load(e.name);
    const Dyadic omega = zoo::omega(e.name);
    const auto seq = omega_truncated_sequence(m, 80);
    for (std::uint64_t p = 0; p < 64; ++p) {
      const Dyadic phi(BigInt(p), 6);
      if (!(phi < omega)) continue;
      std::optional<std::uint64_t> m0;
      for (std::uint64_t k = 80; k >= 1; --k) {
        if (!(phi + Dyadic::pow2(-static_cast<std::int64_t>(k)) < seq[k - 1])) {
          m0 = k + 1;
          break;
        }
      }
      const std::uint64_t first = m0.value_or(1);
      EXPECT_LE(first, 30u) << e.name << " " << phi;
    }
  }
}
