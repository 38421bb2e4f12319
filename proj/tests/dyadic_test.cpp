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

#include <random>

#include "omegaphase/dyadic.hpp"

using namespace omegaphase;

namespace {

Dyadic D(const char* s) { return Dyadic::parse(s); }

// Rational oracle: (num, den) with den a power of two, compared by
// cross-multiplication in 128-bit integers.
struct Frac {
  __int128 num;
  int exp;
};

Frac random_frac(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(0, 20);
  std::uniform_int_distribution<long long> n(-(1LL << 24), 1LL << 24);
  return {n(rng), e(rng)};
}

Dyadic to_dyadic(const Frac& f) {
  return Dyadic(BigInt(static_cast<long long>(f.num)), static_cast<std::uint64_t>(f.exp));
}

}  // namespace

TEST(Dyadic, CanonicalForm) {
  Dyadic d(BigInt(12), 4);
  EXPECT_EQ(d.numerator(), 3);
  EXPECT_EQ(d.exponent(), 2u);
  EXPECT_EQ(Dyadic(BigInt(0), 9).exponent(), 0u);
  EXPECT_EQ(D("6/8"), D("3/2^2"));
}

TEST(Dyadic, ParseAndPrintRoundTrip) {
  EXPECT_EQ(D("0.101"), D("5/2^3"));
  EXPECT_EQ(D("3/4").to_fraction_string(), "3/2^2");
  EXPECT_EQ(D("5/2^3").to_binary_string(), "0.101");
  EXPECT_EQ(D("1/2").to_binary_string(4), "0.1000");
  EXPECT_EQ(D("-0.11"), -D("3/4"));
  EXPECT_EQ(D("7"), Dyadic(7));
  for (const char* bad : {"", "1/3", "0.12", "x", "1/0", "."}) {
    EXPECT_THROW(D(bad), ParseError) << bad;
  }
}

TEST(Dyadic, OrderAgreesWithCrossMultiplication) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Frac a = random_frac(rng), b = random_frac(rng);
    const __int128 lhs = a.num << b.exp;
    const __int128 rhs = b.num << a.exp;
    const Dyadic da = to_dyadic(a), db = to_dyadic(b);
    EXPECT_EQ(da < db, lhs < rhs);
    EXPECT_EQ(da == db, lhs == rhs);
    // Closure: sum and product agree with the oracle.
    const Frac sum{(a.num << b.exp) + (b.num << a.exp), a.exp + b.exp};
    EXPECT_EQ(da + db, to_dyadic(sum));
    const Frac prod{a.num * b.num, a.exp + b.exp};
    EXPECT_EQ(da * db, to_dyadic(prod));
    EXPECT_EQ(da - db + db, da);
  }
}

TEST(Dyadic, TruncateExamples) {
  EXPECT_EQ(truncate(D("0.101"), 2), D("1/2"));
  EXPECT_EQ(truncate(D("3/4"), 2), D("3/4"));
  EXPECT_EQ(truncate(D("3/4"), 1), D("1/2"));
  EXPECT_EQ(truncate(D("-1/8"), 1), D("-1/2"));
}

TEST(Dyadic, TruncateProperties) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Dyadic x = to_dyadic(random_frac(rng));
    const std::uint64_t s = rng() % 24, t = rng() % 24;
    const Dyadic xs = truncate(x, s);
    EXPECT_EQ(truncate(xs, t), truncate(x, std::min(s, t)));
    EXPECT_LE(xs, x);
    EXPECT_LT(x - xs, Dyadic::pow2(-static_cast<std::int64_t>(s)));
    EXPECT_LE(xs.exponent(), s);
  }
}

TEST(Dyadic, RoundUpExamples) {
  EXPECT_EQ(round_up_mth(BitString("0111"), 2), BitString("1011"));
  EXPECT_EQ(round_up_mth(BitString("0100"), 2), BitString("0100"));
  EXPECT_EQ(round_up_mth(BitString("1110"), 1), BitString("0110"));
  EXPECT_EQ(round_up_mth(D("0.0111"), 2, 4), D("0.1011"));
  EXPECT_THROW(round_up_mth(BitString("0111"), 4), ConstraintError);
  EXPECT_THROW(round_up_mth(BitString("0111"), 0), ConstraintError);
}

TEST(Dyadic, RoundUpMovesByZeroOrOneStep) {
  for (std::size_t n = 2; n <= 10; ++n) {
    for (std::uint64_t v = 0; v < (1u << n); ++v) {
      const Dyadic x(BigInt(v), n);
      for (std::size_t m = 1; m < n; ++m) {
        const Dyadic r = round_up_mth(x, m, n);
        const Dyadic diff = mod1(r - x);
        EXPECT_TRUE(diff.is_zero() || diff == Dyadic::pow2(-static_cast<std::int64_t>(m)));
        EXPECT_LE(r.exponent(), n);
      }
    }
  }
}

TEST(Dyadic, IntervalExamples) {
  EXPECT_EQ(interval_im(D("1/2"), 1), std::vector<Dyadic>{D("1/2")});
  // 1/3 is not dyadic; its 8-bit truncation has the same 2-bit brackets.
  EXPECT_EQ(interval_im(D("0.01010101"), 2), (std::vector<Dyadic>{D("1/4"), D("1/2")}));
  EXPECT_EQ(interval_im(D("15/16"), 2), (std::vector<Dyadic>{D("3/4"), Dyadic(0)}));
  EXPECT_THROW(interval_im(D("1/2"), 0), ConstraintError);
}

// Rounding then truncating any phi' within 2^-(m+1) of phi lands in I_m(phi).
TEST(Dyadic, RoundingLemmaExhaustive) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const std::uint64_t N = 1ULL << n;
    for (std::size_t m = 1; m < n; ++m) {
      const std::uint64_t radius = N >> (m + 1);  // 2^-(m+1) in grid units
      for (std::uint64_t p = 0; p < N; ++p) {
        const Dyadic phi(BigInt(p), n);
        const auto im = interval_im(phi, m);
        for (std::uint64_t off = 0; off < 2 * radius - 1; ++off) {
          const std::uint64_t q = (p + N - radius + 1 + off) % N;  // |q - p| < radius
          const Dyadic r = truncate(round_up_mth(Dyadic(BigInt(q), n), m, n), m);
          EXPECT_NE(std::find(im.begin(), im.end(), r), im.end())
              << "n=" << n << " m=" << m << " p=" << p << " q=" << q;
        }
      }
    }
  }
}

TEST(BitString, FractionRoundTrip) {
  for (std::size_t n = 0; n <= 8; ++n) {
    for (std::uint64_t v = 0; v < (1u << n); ++v) {
      const Dyadic x(BigInt(v), n);
      const BitString b = BitString::from_fraction(x, n);
      EXPECT_EQ(b.size(), n);
      EXPECT_EQ(b.to_fraction(), x);
    }
  }
  EXPECT_EQ(BitString("").size(), 0u);
  EXPECT_THROW(BitString("012"), ParseError);
}

TEST(BitString, Prefixes) {
  EXPECT_TRUE(BitString("").is_proper_prefix_of(BitString("0")));
  EXPECT_TRUE(BitString("01").is_prefix_of(BitString("01")));
  EXPECT_FALSE(BitString("01").is_proper_prefix_of(BitString("01")));
  EXPECT_FALSE(BitString("1").is_prefix_of(BitString("01")));
  EXPECT_LT(BitString("1"), BitString("00"));
}
