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

/// \file ext_real.hpp
/// A double mantissa with a 64-bit binary exponent. Square energies near
/// 4^{-10^16} live here.

#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "omegaphase/errors.hpp"

namespace omegaphase {

class ExtReal {
 public:
  ExtReal() = default;
  /*implicit*/ ExtReal(double x) { assign(x, 0); }

  /// x * 2^e.
  static ExtReal scaled(double x, std::int64_t e) {
    ExtReal r;
    r.assign(x, e);
    return r;
  }
  static ExtReal pow2(std::int64_t e) { return scaled(1.0, e); }
  /// 2^l for a real l of moderate size.
  static ExtReal exp2(long double l) {
    if (!std::isfinite(l)) throw NumericalError("ExtReal::exp2 of a non-finite value");
    const long double whole = std::floor(l);
    if (std::fabs(whole) > 4e18L) throw NumericalError("ExtReal::exp2 exponent out of range");
    return scaled(static_cast<double>(std::exp2(l - whole)), static_cast<std::int64_t>(whole));
  }

  /// Accepts plain decimals and the "m*2^e" form written by to_string.
  static ExtReal parse(std::string_view text) {
    const std::string s(text);
    const auto star = s.find("*2^");
    std::size_t used = 0;
    try {
      if (star == std::string::npos) {
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ParseError("bad real '" + s + "'");
        return ExtReal(v);
      }
      const double m = std::stod(s.substr(0, star), &used);
      if (used != star) throw ParseError("bad real '" + s + "'");
      const std::string tail = s.substr(star + 3);
      const long long e = std::stoll(tail, &used);
      if (used != tail.size()) throw ParseError("bad real '" + s + "'");
      return scaled(m, e);
    } catch (const std::logic_error&) {
      throw ParseError("bad real '" + s + "'");
    }
  }

  double mantissa() const noexcept { return mant_; }  ///< in [0.5, 1) in magnitude, or 0
  std::int64_t exponent() const noexcept { return exp_; }
  bool is_zero() const noexcept { return mant_ == 0; }
  int sign() const noexcept { return mant_ > 0 ? 1 : (mant_ < 0 ? -1 : 0); }

  /// log2 |x|; -inf for zero.
  long double log2_abs() const {
    if (is_zero()) return -std::numeric_limits<long double>::infinity();
    return std::log2(std::fabs(static_cast<long double>(mant_))) + static_cast<long double>(exp_);
  }

  /// Nearest double; saturates to 0 or +-inf.
  double to_double() const {
    if (is_zero()) return 0;
    if (exp_ > 1100) return std::copysign(std::numeric_limits<double>::infinity(), mant_);
    if (exp_ < -1100) return std::copysign(0.0, mant_);
    return std::ldexp(mant_, static_cast<int>(exp_));
  }

  /// 17 significant digits; "m*2^e" with m in [1, 2) once a double would not do.
  std::string to_string() const {
    char buf[64];
    if (is_zero()) return "0";
    if (exp_ > -1000 && exp_ < 1000) {
      std::snprintf(buf, sizeof buf, "%.17g", to_double());
      return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g*2^%lld", 2 * mant_, static_cast<long long>(exp_ - 1));
    return buf;
  }

  friend ExtReal operator-(const ExtReal& a) { return scaled(-a.mant_, a.exp_); }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ExtReal& big = a.exp_ >= b.exp_ ? a : b;
    const ExtReal& small = a.exp_ >= b.exp_ ? b : a;
    const std::int64_t gap = big.exp_ - small.exp_;
    if (gap > 120) return big;
    return scaled(big.mant_ + std::ldexp(small.mant_, -static_cast<int>(gap)), big.exp_);
  }
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

  friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return scaled(a.mant_ * b.mant_, add_exp(a.exp_, b.exp_));
  }
  friend ExtReal operator/(const ExtReal& a, const ExtReal& b) {
    if (b.is_zero()) throw NumericalError("ExtReal division by zero");
    if (a.is_zero()) return {};
    return scaled(a.mant_ / b.mant_, add_exp(a.exp_, -b.exp_));
  }
  ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }
  ExtReal& operator*=(const ExtReal& o) { return *this = *this * o; }

  friend bool operator==(const ExtReal& a, const ExtReal& b) noexcept {
    return a.mant_ == b.mant_ && a.exp_ == b.exp_;
  }
  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) noexcept {
    if (a.sign() != b.sign()) return a.sign() <=> b.sign();
    if (a.is_zero()) return std::partial_ordering::equivalent;
    // Same sign, both normalised: the exponent decides unless equal.
    if (a.exp_ != b.exp_) {
      const bool a_bigger = a.exp_ > b.exp_;
      return (a_bigger == (a.sign() > 0)) ? std::partial_ordering::greater : std::partial_ordering::less;
    }
    return a.mant_ <=> b.mant_;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtReal& x) { return os << x.to_string(); }

 private:
  static std::int64_t add_exp(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) throw NumericalError("ExtReal exponent overflow");
    return out;
  }

  void assign(double x, std::int64_t e) {
    if (!std::isfinite(x)) throw NumericalError("ExtReal from a non-finite double");
    if (x == 0) {
      mant_ = 0;
      exp_ = 0;
      return;
    }
    int k = 0;
    mant_ = std::frexp(x, &k);
    exp_ = add_exp(e, k);
  }

  double mant_ = 0;
  std::int64_t exp_ = 0;
};

inline ExtReal ext_max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }
inline ExtReal ext_min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }

}  // namespace omegaphase
