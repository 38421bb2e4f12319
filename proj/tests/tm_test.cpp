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

#include <set>

#include "omegaphase/tm.hpp"
#include "omegaphase/zoo.hpp"

using namespace omegaphase;

namespace {

// Halts on "" and on "0"; not prefix-free.
const char* kEmptyAndZero = R"(
start: s
halt: h
s _ -> h _ S
s 0 -> z 0 R
s 1 -> s 1 S
z _ -> h _ S
z 0 -> z 0 S
z 1 -> z 1 S
)";

// Halts on every input in one step.
const char* kInstant = R"(
start: s
halt: h
s _ -> h _ S
s 0 -> h 0 S
s 1 -> h 1 S
)";

}  // namespace

TEST(Enumeration, Examples) {
  EXPECT_EQ(enumerate_input(1), BitString(""));
  EXPECT_EQ(enumerate_input(2), BitString("0"));
  EXPECT_EQ(enumerate_input(3), BitString("1"));
  EXPECT_EQ(enumerate_input(4), BitString("00"));
  EXPECT_EQ(enumerate_input(7), BitString("11"));
  EXPECT_EQ(enumerate_input(8), BitString("000"));
  EXPECT_EQ(enumerate_input(9), BitString("001"));
  EXPECT_THROW(enumerate_input(0), ConstraintError);
}

TEST(Enumeration, BijectiveOnLengthBlocks) {
  for (std::size_t k = 0; k <= 12; ++k) {
    std::set<BitString> seen;
    const std::uint64_t last = (std::uint64_t{1} << (k + 1)) - 1;
    for (std::uint64_t i = 1; i <= last; ++i) {
      const BitString w = enumerate_input(i);
      EXPECT_LE(w.size(), k);
      EXPECT_EQ(input_index(w), i);
      if (i > 1) EXPECT_LT(enumerate_input(i - 1), w);
      seen.insert(w);
    }
    EXPECT_EQ(seen.size(), last);  // every word of length <= k, each once
  }
}

TEST(MachineParser, RejectsDuplicateRuleWithLine) {
  const std::string text = "start: a\nhalt: h\na 0 -> h 0 S\na 1 -> h 1 S\na _ -> h _ S\n\na 0 -> a 1 R\n";
  try {
    MachineSpec::parse(text);
    FAIL() << "duplicate accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7);
  }
}

TEST(MachineParser, RejectsMalformedTables) {
  EXPECT_THROW(MachineSpec::parse("start: a\nhalt: h\na 0 -> h 0 S\n"), ParseError);  // not total
  EXPECT_THROW(MachineSpec::parse("halt: h\n"), ParseError);
  EXPECT_THROW(MachineSpec::parse("start: a\nhalt: h\na 0 -> h 2 S\n"), ParseError);
  EXPECT_THROW(MachineSpec::parse("start: a\nhalt: h\na 0 -> h 0 X\n"), ParseError);
  EXPECT_THROW(MachineSpec::parse(std::string(kInstant) + "h 0 -> h 0 S\n"), ParseError);
  EXPECT_THROW(MachineSpec::parse("start: a\nhalt: a\n"), ParseError);
}

TEST(MachineParser, TotalOnNonHaltStates) {
  for (const auto& e : zoo::entries()) {
    const MachineSpec m = zoo::load(e.name);
    EXPECT_EQ(m.name(), e.name);
    for (std::size_t q = 0; q < m.num_states(); ++q) {
      if (static_cast<int>(q) == m.halt()) continue;
      for (std::uint8_t sym = 0; sym < 3; ++sym) {
        const Transition& t = m.rule(static_cast<int>(q), sym);
        EXPECT_LT(static_cast<std::size_t>(t.next), m.num_states());
      }
    }
  }
}

TEST(RunBounded, Examples) {
  const MachineSpec instant = MachineSpec::parse(kInstant);
  auto r0 = run_bounded(instant, BitString("0"), 0);
  EXPECT_FALSE(r0.halted);
  EXPECT_EQ(r0.steps_used, 0u);
  EXPECT_TRUE(run_bounded(instant, BitString("0"), 1).halted);

  const MachineSpec halt01 = zoo::load("halt01");
  auto r = run_bounded(halt01, BitString("0"), 2);
  EXPECT_TRUE(r.halted);
  EXPECT_EQ(r.steps_used, 2u);
  EXPECT_FALSE(run_bounded(halt01, BitString("0"), 1).halted);

  auto r1 = run_bounded(halt01, BitString("1"), 1'000'000);
  EXPECT_FALSE(r1.halted);
  EXPECT_EQ(r1.steps_used, 1'000'000u);
  EXPECT_TRUE(certify_nonhalting(halt01, BitString("1")).has_value());
}

TEST(RunBounded, ResourceInvariantsAndMonotonicity) {
  for (const auto& e : zoo::entries()) {
    const MachineSpec m = zoo::load(e.name);
    for (std::uint64_t i = 1; i <= 63; ++i) {
      const BitString x = enumerate_input(i);
      bool halted_before = false;
      for (std::uint64_t s = 0; s <= 25; ++s) {
        const auto r = run_bounded(m, x, s);
        EXPECT_LE(r.steps_used, s);
        EXPECT_LE(r.cells_used, r.steps_used + x.size() + 1);
        if (halted_before) EXPECT_TRUE(r.halted);
        halted_before = r.halted;
        EXPECT_EQ(r.steps_used, run_bounded(m, x, s).steps_used);
      }
    }
  }
}

TEST(Zoo, HaltingSetsMatchGroundTruth) {
  for (const auto& e : zoo::entries()) {
    const MachineSpec m = zoo::load(e.name);
    std::vector<std::string> found;
    std::vector<std::uint64_t> times;
    for (std::uint64_t i = 1; i < (1u << 9); ++i) {
      const BitString x = enumerate_input(i);
      const auto r = run_bounded(m, x, 10'000);
      if (r.halted) {
        found.push_back(x.to_string());
        times.push_back(r.steps_used);
      }
    }
    EXPECT_EQ(found, e.halting_set) << e.name;
    EXPECT_EQ(times, e.halting_time) << e.name;
    Dyadic omega;
    for (const auto& w : e.halting_set) omega += Dyadic::pow2(-static_cast<std::int64_t>(w.size()));
    EXPECT_EQ(omega, zoo::omega(e.name));
  }
}

// The symbolic explorer must agree with literal execution on every word.
TEST(Explorer, AgreesWithLiteralExecution) {
  for (const auto& e : zoo::entries()) {
    const MachineSpec m = zoo::load(e.name);
    for (std::uint64_t budget : {0u, 1u, 2u, 3u, 5u, 19u, 40u}) {
      ExploreOptions opts;
      opts.step_budget = budget;
      opts.admit_prefix = [](const BitString& p) { return p.size() <= 7; };
      opts.admit_word = opts.admit_prefix;
      InputTreeExplorer ex(m, opts);
      const auto leaves = ex.explore();
      for (std::uint64_t i = 1; i < (1u << 8); ++i) {
        const BitString x = enumerate_input(i);
        const auto lit = run_bounded(m, x, budget);
        int covering = 0;
        for (const auto& leaf : leaves) {
          if (leaf.exact ? leaf.prefix == x : leaf.prefix.is_prefix_of(x)) {
            ++covering;
            EXPECT_EQ(leaf.outcome == LeafOutcome::Halted, lit.halted) << e.name << " " << x;
            if (lit.halted) EXPECT_EQ(leaf.steps, lit.steps_used);
            if (leaf.outcome == LeafOutcome::Loops) {
              EXPECT_FALSE(run_bounded(m, x, 5000).halted) << e.name << " " << x;
            }
          }
        }
        EXPECT_EQ(covering, 1) << e.name << " " << x;
      }
    }
  }
}

TEST(Explorer, CertifiesDriftingRun) {
  const MachineSpec drift = zoo::load("drift");
  EXPECT_TRUE(certify_nonhalting(drift, BitString("1")).has_value());
  EXPECT_FALSE(certify_nonhalting(drift, BitString("0")).has_value());
  const MachineSpec slow = zoo::load("slow1");
  EXPECT_FALSE(certify_nonhalting(slow, BitString("1")).has_value());
  EXPECT_TRUE(certify_nonhalting(slow, BitString("10")).has_value());
}

TEST(PrefixFree, Examples) {
  EXPECT_TRUE(check_prefix_free_up_to(zoo::load("halt01"), 100).empty());
  EXPECT_TRUE(check_prefix_free_up_to(zoo::load("two_words"), 100).empty());
  const auto v = check_prefix_free_up_to(MachineSpec::parse(kEmptyAndZero), 100);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].first, BitString(""));
  EXPECT_EQ(v[0].second, BitString("0"));
  for (const auto& e : zoo::entries()) {
    EXPECT_TRUE(check_prefix_free_up_to(zoo::load(e.name), 64).empty()) << e.name;
  }
  EXPECT_THROW(check_prefix_free_up_to(zoo::load("halt01"), 0), ConstraintError);
}

TEST(PrefixFree, InstantMachineViolatesEverywhere) {
  const auto v = check_prefix_free_up_to(MachineSpec::parse(kInstant), 3);
  // Words of length <= 3: 15 of them; pairs (x, y) with x a proper prefix.
  std::size_t expected = 0;
  for (std::size_t ly = 1; ly <= 3; ++ly) expected += (std::size_t{1} << ly) * ly;
  EXPECT_EQ(v.size(), expected);
}
