//
// Copyright 2026 The smoothed-dp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SDP_RATIONAL_HPP_
#define SDP_RATIONAL_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "sdp/bigint.hpp"

namespace sdp {

// Exact rational with reduced representation, denominator > 0.
class BigRational {
 public:
  BigRational() : num_(0), den_(1) {}
  BigRational(long long v) : num_(v), den_(1) {}  // NOLINT
  BigRational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("BigRational: zero denominator");
    reduce();
  }

  static BigRational from_int_ratio(long long num, long long den) {
    return BigRational(BigInt(num), BigInt(den));
  }

  // Exact conversion: every finite double is a dyadic rational.
  static BigRational from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("BigRational: non-finite double");
    if (v == 0.0) return BigRational();
    int exp = 0;
    const double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
    const double scaled = std::ldexp(mant, 53);
    const long long imant = static_cast<long long>(scaled);
    exp -= 53;
    BigInt num(imant);
    BigInt den(1);
    if (exp >= 0) {
      num = num.shl(static_cast<size_t>(exp));
    } else {
      den = den.shl(static_cast<size_t>(-exp));
    }
    return BigRational(std::move(num), std::move(den));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  friend BigRational operator+(const BigRational& a, const BigRational& b) {
    return BigRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend BigRational operator-(const BigRational& a, const BigRational& b) {
    return BigRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend BigRational operator*(const BigRational& a, const BigRational& b) {
    return BigRational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend BigRational operator/(const BigRational& a, const BigRational& b) {
    if (b.is_zero()) throw std::domain_error("BigRational: division by zero");
    return BigRational(a.num_ * b.den_, a.den_ * b.num_);
  }
  BigRational negate() const {
    BigRational r = *this;
    r.num_ = r.num_.negate();
    return r;
  }

  static int compare(const BigRational& a, const BigRational& b) {
    return BigInt::compare(a.num_ * b.den_, b.num_ * a.den_);
  }
  friend bool operator==(const BigRational& a, const BigRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const BigRational& a, const BigRational& b) { return !(a == b); }
  friend bool operator<(const BigRational& a, const BigRational& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigRational& a, const BigRational& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigRational& a, const BigRational& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigRational& a, const BigRational& b) { return compare(a, b) >= 0; }

  double to_double() const {
    if (num_.is_zero()) return 0.0;
    // Shift so the integer quotient carries ~62 significant bits.
    const long long nb = static_cast<long long>(num_.bit_length());
    const long long db = static_cast<long long>(den_.bit_length());
    const long long shift = 62 - (nb - db);
    BigInt n = num_.abs();
    BigInt d = den_;
    if (shift > 0) {
      n = n.shl(static_cast<size_t>(shift));
    } else if (shift < 0) {
      d = d.shl(static_cast<size_t>(-shift));
    }
    const BigInt q = n / d;
    double v = std::ldexp(q.to_double(), static_cast<int>(-shift));
    return num_.is_negative() ? -v : v;
  }

  // Natural log of a positive rational; handles magnitudes far outside
  // double range.
  double log() const {
    if (sign() <= 0) {
      if (is_zero()) return -std::numeric_limits<double>::infinity();
      throw std::domain_error("BigRational::log of negative value");
    }
    return num_.log_abs() - den_.log_abs();
  }

  std::string to_string() const { return num_.to_string() + "/" + den_.to_string(); }

 private:
  void reduce() {
    if (den_.is_negative()) {
      den_ = den_.negate();
      num_ = num_.negate();
    }
    if (num_.is_zero()) {
      den_ = BigInt(1);
      return;
    }
    const BigInt g = BigInt::gcd(num_, den_);
    if (g != BigInt(1)) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
  }

  BigInt num_;
  BigInt den_;
};

}  // namespace sdp

#endif  // SDP_RATIONAL_HPP_
