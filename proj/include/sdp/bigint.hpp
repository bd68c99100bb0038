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

#ifndef SDP_BIGINT_HPP_
#define SDP_BIGINT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdp {

// Arbitrary-precision signed integer with 32-bit limbs (little endian).
// Covers the sizes this library needs (a few thousand bits); not a general
// purpose bignum.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v) {  // NOLINT: implicit by design, mirrors int literals
    if (v < 0) {
      negative_ = true;
      // Avoid overflow on LLONG_MIN.
      const uint64_t mag = static_cast<uint64_t>(-(v + 1)) + 1;
      assign_u64(mag);
    } else {
      assign_u64(static_cast<uint64_t>(v));
    }
  }

  static BigInt from_u64(uint64_t v) {
    BigInt r;
    r.assign_u64(v);
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }
  int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

  BigInt abs() const {
    BigInt r = *this;
    r.negative_ = false;
    return r;
  }

  BigInt negate() const {
    BigInt r = *this;
    if (!r.is_zero()) r.negative_ = !r.negative_;
    return r;
  }

  size_t bit_length() const {
    if (limbs_.empty()) return 0;
    size_t bits = (limbs_.size() - 1) * 32;
    uint32_t top = limbs_.back();
    while (top) {
      ++bits;
      top >>= 1;
    }
    return bits;
  }

  bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.negative_ == b.negative_) {
      BigInt r;
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.negative_ = a.negative_;
      r.normalize();
      return r;
    }
    const int c = cmp_mag(a.limbs_, b.limbs_);
    BigInt r;
    if (c == 0) return r;
    if (c > 0) {
      r.limbs_ = sub_mag(a.limbs_, b.limbs_);
      r.negative_ = a.negative_;
    } else {
      r.limbs_ = sub_mag(b.limbs_, a.limbs_);
      r.negative_ = b.negative_;
    }
    r.normalize();
    return r;
  }

  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.negate(); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.is_zero() || b.is_zero()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      const uint64_t ai = a.limbs_[i];
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        const uint64_t cur = static_cast<uint64_t>(r.limbs_[i + j]) + ai * b.limbs_[j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      size_t k = i + b.limbs_.size();
      while (carry) {
        const uint64_t cur = static_cast<uint64_t>(r.limbs_[k]) + carry;
        r.limbs_[k] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    r.negative_ = a.negative_ != b.negative_;
    r.normalize();
    return r;
  }

  // Truncated division: q = trunc(a / b), r = a - q * b (r has a's sign).
  static void divmod(const BigInt& a, const BigInt& b, BigInt* q, BigInt* r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    std::vector<uint32_t> qm, rm;
    divmod_mag(a.limbs_, b.limbs_, &qm, &rm);
    if (q) {
      q->limbs_ = std::move(qm);
      q->negative_ = a.negative_ != b.negative_;
      q->normalize();
    }
    if (r) {
      r->limbs_ = std::move(rm);
      r->negative_ = a.negative_;
      r->normalize();
    }
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q;
    divmod(a, b, &q, nullptr);
    return q;
  }

  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt r;
    divmod(a, b, nullptr, &r);
    return r;
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

  static int compare(const BigInt& a, const BigInt& b) {
    if (a.negative_ != b.negative_) {
      if (a.is_zero() && b.is_zero()) return 0;
      return a.negative_ ? -1 : 1;
    }
    const int c = cmp_mag(a.limbs_, b.limbs_);
    return a.negative_ ? -c : c;
  }

  BigInt shl(size_t bits) const {
    if (is_zero() || bits == 0) return *this;
    BigInt r;
    const size_t limb_shift = bits / 32;
    const unsigned bit_shift = static_cast<unsigned>(bits % 32);
    r.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < limbs_.size(); ++i) {
      const uint64_t cur = static_cast<uint64_t>(limbs_[i]) << bit_shift;
      r.limbs_[i + limb_shift] |= static_cast<uint32_t>(cur);
      r.limbs_[i + limb_shift + 1] |= static_cast<uint32_t>(cur >> 32);
    }
    r.negative_ = negative_;
    r.normalize();
    return r;
  }

  BigInt shr(size_t bits) const {
    if (is_zero()) return *this;
    const size_t limb_shift = bits / 32;
    if (limb_shift >= limbs_.size()) return BigInt();
    const unsigned bit_shift = static_cast<unsigned>(bits % 32);
    BigInt r;
    r.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (size_t i = 0; i < r.limbs_.size(); ++i) {
      uint64_t cur = static_cast<uint64_t>(limbs_[i + limb_shift]) >> bit_shift;
      if (bit_shift && i + limb_shift + 1 < limbs_.size()) {
        cur |= static_cast<uint64_t>(limbs_[i + limb_shift + 1]) << (32 - bit_shift);
      }
      r.limbs_[i] = static_cast<uint32_t>(cur);
    }
    r.negative_ = negative_;
    r.normalize();
    return r;
  }

  // Binary GCD of magnitudes; gcd(0, b) = |b|.
  static BigInt gcd(BigInt a, BigInt b) {
    a.negative_ = false;
    b.negative_ = false;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    size_t shift = 0;
    while (a.is_even() && b.is_even()) {
      a = a.shr(1);
      b = b.shr(1);
      ++shift;
    }
    while (a.is_even()) a = a.shr(1);
    while (!b.is_zero()) {
      while (b.is_even()) b = b.shr(1);
      if (cmp_mag(a.limbs_, b.limbs_) > 0) std::swap(a, b);
      b = b - a;
      b.negative_ = false;
    }
    return a.shl(shift);
  }

  static BigInt pow_u32(const BigInt& base, uint32_t e) {
    BigInt result(1);
    BigInt b = base;
    while (e) {
      if (e & 1u) result = result * b;
      b = b * b;
      e >>= 1;
    }
    return result;
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    const size_t bits = bit_length();
    double v;
    if (bits <= 64) {
      v = static_cast<double>(to_u64_unchecked());
    } else {
      const BigInt top = shr(bits - 64);
      v = std::ldexp(static_cast<double>(top.to_u64_unchecked()), static_cast<int>(bits - 64));
    }
    return negative_ ? -v : v;
  }

  // log(|x|); -inf for zero.
  double log_abs() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    const size_t bits = bit_length();
    if (bits <= 64) return std::log(static_cast<double>(to_u64_unchecked()));
    const BigInt top = shr(bits - 64);
    return std::log(static_cast<double>(top.to_u64_unchecked())) +
           static_cast<double>(bits - 64) * 0.6931471805599453;
  }

  uint64_t to_u64_unchecked() const {
    uint64_t v = 0;
    if (!limbs_.empty()) v = limbs_[0];
    if (limbs_.size() > 1) v |= static_cast<uint64_t>(limbs_[1]) << 32;
    return v;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<uint32_t> mag = limbs_;
    std::string digits;
    while (!mag.empty()) {
      uint64_t rem = 0;
      for (size_t i = mag.size(); i-- > 0;) {
        const uint64_t cur = (rem << 32) | mag[i];
        mag[i] = static_cast<uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!mag.empty() && mag.back() == 0) mag.pop_back();
      for (int d = 0; d < 9; ++d) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (negative_) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
  }

  size_t hash() const {
    uint64_t h = 1469598103934665603ull;
    for (uint32_t limb : limbs_) {
      h ^= limb;
      h *= 1099511628211ull;
    }
    if (negative_) h = ~h;
    return static_cast<size_t>(h);
  }

 private:
  void assign_u64(uint64_t v) {
    limbs_.clear();
    if (v) limbs_.push_back(static_cast<uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<uint32_t>(v >> 32));
  }

  void normalize() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) negative_ = false;
  }

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
  }

  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>& lo = a.size() < b.size() ? a : b;
    const std::vector<uint32_t>& hi = a.size() < b.size() ? b : a;
    std::vector<uint32_t> r(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (size_t i = 0; i < hi.size(); ++i) {
      uint64_t cur = carry + hi[i];
      if (i < lo.size()) cur += lo[i];
      r[i] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    r[hi.size()] = static_cast<uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // Requires |a| >= |b|.
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r(a.size(), 0);
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      int64_t cur = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
      if (cur < 0) {
        cur += (1ll << 32);
        borrow = 1;
      } else {
        borrow = 0;
      }
      r[i] = static_cast<uint32_t>(cur);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // Knuth algorithm D on magnitudes.
  static void divmod_mag(const std::vector<uint32_t>& u_in, const std::vector<uint32_t>& v_in,
                         std::vector<uint32_t>* q_out, std::vector<uint32_t>* r_out) {
    if (cmp_mag(u_in, v_in) < 0) {
      q_out->clear();
      *r_out = u_in;
      return;
    }
    if (v_in.size() == 1) {
      const uint64_t d = v_in[0];
      std::vector<uint32_t> q(u_in.size(), 0);
      uint64_t rem = 0;
      for (size_t i = u_in.size(); i-- > 0;) {
        const uint64_t cur = (rem << 32) | u_in[i];
        q[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
      }
      while (!q.empty() && q.back() == 0) q.pop_back();
      q_out->swap(q);
      r_out->clear();
      if (rem) r_out->push_back(static_cast<uint32_t>(rem));
      return;
    }

    const size_t n = v_in.size();
    const size_t m = u_in.size() - n;
    unsigned s = 0;
    {
      uint32_t top = v_in.back();
      while (!(top & 0x80000000u)) {
        top <<= 1;
        ++s;
      }
    }
    std::vector<uint32_t> vn(n), un(u_in.size() + 1, 0);
    for (size_t i = n; i-- > 1;) {
      vn[i] = (v_in[i] << s) | (s ? static_cast<uint32_t>(static_cast<uint64_t>(v_in[i - 1]) >> (32 - s)) : 0);
    }
    vn[0] = v_in[0] << s;
    un[u_in.size()] = s ? static_cast<uint32_t>(static_cast<uint64_t>(u_in.back()) >> (32 - s)) : 0;
    for (size_t i = u_in.size(); i-- > 1;) {
      un[i] = (u_in[i] << s) | (s ? static_cast<uint32_t>(static_cast<uint64_t>(u_in[i - 1]) >> (32 - s)) : 0);
    }
    un[0] = u_in[0] << s;

    std::vector<uint32_t> q(m + 1, 0);
    const uint64_t b = 1ull << 32;
    for (size_t j = m + 1; j-- > 0;) {
      uint64_t qhat = ((static_cast<uint64_t>(un[j + n]) << 32) | un[j + n - 1]) / vn[n - 1];
      uint64_t rhat = ((static_cast<uint64_t>(un[j + n]) << 32) | un[j + n - 1]) % vn[n - 1];
      while (qhat >= b || qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
        --qhat;
        rhat += vn[n - 1];
        if (rhat >= b) break;
      }
      int64_t borrow = 0;
      uint64_t carry = 0;
      for (size_t i = 0; i < n; ++i) {
        const uint64_t p = qhat * vn[i] + carry;
        carry = p >> 32;
        const int64_t t = static_cast<int64_t>(un[i + j]) - borrow - static_cast<int64_t>(p & 0xffffffffu);
        un[i + j] = static_cast<uint32_t>(t);
        borrow = t < 0 ? 1 : 0;
      }
      const int64_t t = static_cast<int64_t>(un[j + n]) - borrow - static_cast<int64_t>(carry);
      un[j + n] = static_cast<uint32_t>(t);
      if (t < 0) {
        --qhat;
        uint64_t carry2 = 0;
        for (size_t i = 0; i < n; ++i) {
          const uint64_t cur = static_cast<uint64_t>(un[i + j]) + vn[i] + carry2;
          un[i + j] = static_cast<uint32_t>(cur);
          carry2 = cur >> 32;
        }
        un[j + n] = static_cast<uint32_t>(un[j + n] + carry2);
      }
      q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    std::vector<uint32_t> r(n, 0);
    for (size_t i = 0; i < n; ++i) {
      r[i] = (un[i] >> s) | (s && i + 1 < un.size() ? static_cast<uint32_t>(static_cast<uint64_t>(un[i + 1]) << (32 - s)) : 0);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    q_out->swap(q);
    r_out->swap(r);
  }

  std::vector<uint32_t> limbs_;
  bool negative_ = false;
};

}  // namespace sdp

#endif  // SDP_BIGINT_HPP_
