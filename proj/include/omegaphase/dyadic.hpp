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

/// \file dyadic.hpp
/// Exact arithmetic on dyadic rationals p / 2^q and finite binary words.
///
/// Every value is kept in canonical form (q == 0 or p odd), so two dyadics
/// are equal iff their representations are equal. Reductions modulo 1 are
/// never applied implicitly; use mod1() where wrap-around is intended.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "omegaphase/errors.hpp"

namespace omegaphase {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

/// floor(value / 2^shift) for signed big integers.
inline BigInt floor_shift(const BigInt& value, std::uint64_t shift) {
  if (shift == 0) return value;
  if (value >= 0) return value >> shift;
  BigInt magnitude = -value;
  BigInt q = magnitude >> shift;
  if ((q << shift) != magnitude) q += 1;
  return -q;
}

inline std::uint64_t checked_shift(std::uint64_t shift) {
  // cpp_int shifts take an unsigned long long, but a shift this large would
  // need an exabyte of numerator storage anyway.
  if (shift > (std::uint64_t{1} << 40)) {
    throw ConstraintError("dyadic: exponent difference too large to materialise");
  }
  return shift;
}

}  // namespace detail

class Dyadic {
 public:
  Dyadic() = default;

  Dyadic(BigInt numerator, std::uint64_t exponent)
      : numerator_(std::move(numerator)), exponent_(exponent) {
    normalize();
  }

  /*implicit*/ Dyadic(long long integer) : numerator_(integer), exponent_(0) {}

  /// 2^k for any signed k.
  static Dyadic pow2(std::int64_t k) {
    if (k >= 0) return Dyadic(BigInt(1) << detail::checked_shift(static_cast<std::uint64_t>(k)), 0);
    return Dyadic(BigInt(1), static_cast<std::uint64_t>(-k));
  }

  /// Parses "p/2^q", "p/d" (d a power of two), binary "b.bbb" or an integer.
  static Dyadic parse(std::string_view text);

  const BigInt& numerator() const noexcept { return numerator_; }
  std::uint64_t exponent() const noexcept { return exponent_; }

  bool is_zero() const noexcept { return numerator_ == 0; }
  int sign() const noexcept { return numerator_ == 0 ? 0 : (numerator_ > 0 ? 1 : -1); }
  bool is_integer() const noexcept { return exponent_ == 0; }

  /// Largest integer not exceeding the value.
  BigInt floor() const { return detail::floor_shift(numerator_, exponent_); }

  long double to_long_double() const {
    // Scale down before converting so huge exponents do not overflow.
    const std::uint64_t bits = static_cast<std::uint64_t>(boost::multiprecision::msb(
        numerator_ < 0 ? BigInt(-numerator_) : (numerator_ == 0 ? BigInt(1) : numerator_)));
    std::uint64_t drop = bits > 70 ? bits - 70 : 0;
    BigInt head = detail::floor_shift(numerator_, drop);
    long double mant = head.convert_to<long double>();
    long double scale = static_cast<long double>(static_cast<std::int64_t>(drop)) -
                        static_cast<long double>(exponent_);
    return std::ldexp(mant, static_cast<int>(std::max<long double>(
                                std::min<long double>(scale, 1e6L), -1e6L)));
  }
  double to_double() const { return static_cast<double>(to_long_double()); }

  /// "p/2^q" with q the canonical exponent.
  std::string to_fraction_string() const {
    return numerator_.str() + "/2^" + std::to_string(exponent_);
  }

  /// Binary positional notation; at least `min_fraction_bits` digits after
  /// the point (no point at all for integers when min_fraction_bits == 0).
  std::string to_binary_string(std::uint64_t min_fraction_bits = 0) const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.exponent_ >= b.exponent_) {
      return Dyadic(a.numerator_ + (b.numerator_ << detail::checked_shift(a.exponent_ - b.exponent_)),
                    a.exponent_);
    }
    return b + a;
  }
  friend Dyadic operator-(const Dyadic& a) {
    Dyadic r = a;
    r.numerator_ = -r.numerator_;
    return r;
  }
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    return Dyadic(a.numerator_ * b.numerator_, a.exponent_ + b.exponent_);
  }
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
    BigInt lhs = a.numerator_;
    BigInt rhs = b.numerator_;
    if (a.exponent_ > b.exponent_) rhs <<= detail::checked_shift(a.exponent_ - b.exponent_);
    if (b.exponent_ > a.exponent_) lhs <<= detail::checked_shift(b.exponent_ - a.exponent_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Dyadic& d) {
    return os << d.to_fraction_string();
  }

 private:
  void normalize() {
    if (numerator_ == 0) {
      exponent_ = 0;
      return;
    }
    if (exponent_ == 0) return;
    const BigInt magnitude = numerator_ < 0 ? BigInt(-numerator_) : numerator_;
    const std::uint64_t tz = boost::multiprecision::lsb(magnitude);
    const std::uint64_t drop = std::min<std::uint64_t>(tz, exponent_);
    if (drop > 0) {
      numerator_ >>= drop;  // exact: the low `drop` bits are zero
      exponent_ -= drop;
    }
  }

  BigInt numerator_ = 0;
  std::uint64_t exponent_ = 0;
};

/// A finite word over {0,1}; the empty word is allowed.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::string_view bits) {
    bits_.reserve(bits.size());
    for (char c : bits) {
      if (c != '0' && c != '1') throw ParseError("bit string contains '" + std::string(1, c) + "'");
      bits_.push_back(static_cast<std::uint8_t>(c - '0'));
    }
  }
  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  /// The word b1..bk with 0.b1..bk == x. Requires 0 <= x < 1 and at most
  /// `width` fractional bits.
  static BitString from_fraction(const Dyadic& x, std::size_t width) {
    if (x.sign() < 0 || x >= Dyadic(1)) throw ConstraintError("from_fraction: value outside [0,1)");
    if (x.exponent() > width) throw ConstraintError("from_fraction: value needs more bits than width");
    BigInt scaled = x.numerator() << (width - x.exponent());
    std::vector<std::uint8_t> bits(width, 0);
    for (std::size_t i = 0; i < width; ++i) {
      bits[width - 1 - i] = static_cast<std::uint8_t>(bit_test(scaled, static_cast<unsigned>(i)));
    }
    return BitString(std::move(bits));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  void push_back(std::uint8_t b) { bits_.push_back(b ? 1 : 0); }
  BitString with(std::uint8_t b) const {
    BitString r = *this;
    r.push_back(b);
    return r;
  }

  /// 0.b1..bk as an exact dyadic.
  Dyadic to_fraction() const {
    BigInt v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return Dyadic(v, bits_.size());
  }

  /// The word read as an unsigned binary integer (empty word -> 0).
  BigInt to_integer() const {
    BigInt v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
  }

  bool is_prefix_of(const BitString& other) const {
    return bits_.size() <= other.bits_.size() &&
           std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
  }
  bool is_proper_prefix_of(const BitString& other) const {
    return bits_.size() < other.bits_.size() && is_prefix_of(other);
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

  friend bool operator==(const BitString&, const BitString&) = default;
  /// Length-lexicographic order (the enumeration order of inputs).
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.bits_ <=> b.bits_;
  }

  friend std::ostream& operator<<(std::ostream& os, const BitString& w) {
    return os << '"' << w.to_string() << '"';
  }

 private:
  std::vector<std::uint8_t> bits_;
};

inline std::string Dyadic::to_binary_string(std::uint64_t min_fraction_bits) const {
  std::string out;
  BigInt magnitude = numerator_ < 0 ? BigInt(-numerator_) : numerator_;
  const std::uint64_t frac_bits = std::max(exponent_, min_fraction_bits);
  magnitude <<= (frac_bits - exponent_);
  BigInt int_part = magnitude >> frac_bits;
  std::string int_digits;
  if (int_part == 0) {
    int_digits = "0";
  } else {
    while (int_part > 0) {
      int_digits.push_back(static_cast<char>('0' + static_cast<int>(int_part & 1)));
      int_part >>= 1;
    }
    std::reverse(int_digits.begin(), int_digits.end());
  }
  if (numerator_ < 0) out.push_back('-');
  out += int_digits;
  if (frac_bits > 0) {
    out.push_back('.');
    for (std::uint64_t i = frac_bits; i-- > 0;) {
      out.push_back(bit_test(magnitude, static_cast<unsigned>(i)) ? '1' : '0');
    }
  }
  return out;
}

inline Dyadic Dyadic::parse(std::string_view text) {
  auto fail = [&](const std::string& why) {
    throw ParseError("invalid dyadic '" + std::string(text) + "': " + why);
  };
  if (text.empty()) fail("empty");
  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) fail("no digits");

  auto parse_decimal = [&](std::string_view digits) {
    if (digits.empty()) fail("missing digits");
    BigInt v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') fail("unexpected character");
      v = v * 10 + (c - '0');
    }
    return v;
  };

  Dyadic result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    BigInt p = parse_decimal(body.substr(0, slash));
    std::string_view den = body.substr(slash + 1);
    std::uint64_t q = 0;
    if (den.starts_with("2^")) {
      BigInt qq = parse_decimal(den.substr(2));
      if (qq > BigInt(std::numeric_limits<std::uint32_t>::max())) fail("exponent too large");
      q = static_cast<std::uint64_t>(qq);
    } else {
      BigInt d = parse_decimal(den);
      if (d <= 0 || (d & (d - 1)) != 0) fail("denominator is not a power of two");
      q = boost::multiprecision::msb(d);
    }
    result = Dyadic(p, q);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot);
    std::string_view fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) fail("no digits");
    BigInt v = 0;
    for (char c : ip) {
      if (c != '0' && c != '1') fail("binary digit expected");
      v = (v << 1) | (c - '0');
    }
    for (char c : fp) {
      if (c != '0' && c != '1') fail("binary digit expected");
      v = (v << 1) | (c - '0');
    }
    result = Dyadic(v, fp.size());
  } else {
    result = Dyadic(parse_decimal(body), 0);
  }
  return negative ? -result : result;
}

// ---------------------------------------------------------------------------
// Truncation, rounding and the best-approximation set.

/// x|s = floor(2^s x) / 2^s.
inline Dyadic truncate(const Dyadic& x, std::uint64_t s) {
  if (x.exponent() <= s) return x;
  return Dyadic(detail::floor_shift(x.numerator(), x.exponent() - s), s);
}

/// ceil(2^s x) / 2^s.
inline Dyadic ceil_to(const Dyadic& x, std::uint64_t s) {
  Dyadic t = truncate(x, s);
  return t == x ? t : t + Dyadic::pow2(-static_cast<std::int64_t>(s));
}

/// The representative of x modulo 1 in [0, 1).
inline Dyadic mod1(const Dyadic& x) { return x - Dyadic(x.floor(), 0); }

/// Adds 2^-m (mod 1) when bit m+1 of the n-bit word is set; n = x.size().
inline BitString round_up_mth(const BitString& x, std::size_t m) {
  if (m < 1 || m >= x.size()) {
    throw ConstraintError("round_up_mth: need 1 <= m < word length (m=" + std::to_string(m) +
                          ", length=" + std::to_string(x.size()) + ")");
  }
  std::vector<std::uint8_t> bits = x.bits();
  if (bits[m] == 0) return x;
  // Add one at bit position m (1-based), carrying towards the point and
  // dropping the final carry.
  for (std::size_t i = m; i-- > 0;) {
    if (bits[i] == 0) {
      bits[i] = 1;
      break;
    }
    bits[i] = 0;
  }
  return BitString(std::move(bits));
}

/// Dyadic form of round_up_mth for a value read as a `width`-bit word.
inline Dyadic round_up_mth(const Dyadic& x, std::size_t m, std::size_t width) {
  return round_up_mth(BitString::from_fraction(x, width), m).to_fraction();
}

/// {floor(2^m phi)/2^m, ceil(2^m phi)/2^m} reduced modulo 1; one element
/// when 2^m phi is an integer.
inline std::vector<Dyadic> interval_im(const Dyadic& phi, std::uint64_t m) {
  if (m < 1) throw ConstraintError("interval_im: m must be positive");
  Dyadic lo = truncate(phi, m);
  if (lo == phi) return {mod1(phi)};
  return {mod1(lo), mod1(lo + Dyadic::pow2(-static_cast<std::int64_t>(m)))};
}

}  // namespace omegaphase
