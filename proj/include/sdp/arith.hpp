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

#ifndef SDP_ARITH_HPP_
#define SDP_ARITH_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdp/logsum.hpp"
#include "sdp/rational.hpp"

namespace sdp {

// The library computes every probability in one of two arithmetic modes:
// log-domain floating point (default; holds deltas far below double range
// when kept in log form) or exact big rationals (oracle-grade, for small
// instances and tests that demand exact equality).
enum class NumericMode { kFloat, kRational };

inline const char* to_string(NumericMode m) {
  return m == NumericMode::kFloat ? "float" : "rational";
}

inline NumericMode numeric_mode_from_string(const std::string& s) {
  if (s == "float") return NumericMode::kFloat;
  if (s == "rational" || s == "exact-rational") return NumericMode::kRational;
  throw std::invalid_argument("unknown numeric mode: " + s);
}

// Non-negative quantity stored as its natural log.
struct LogProb {
  double lg = kNegInf;
};

// Log-domain arithmetic policy. Probabilities are logs; sums go through a
// streaming log-sum-exp; binomial coefficients come from a log-factorial
// table sized at construction.
class FloatArith {
 public:
  using Prob = LogProb;

  class Acc {
   public:
    void add(const Prob& p) { acc_.add(p.lg); }
    Prob value() const { return Prob{acc_.log_value()}; }

   private:
    LogSumAcc acc_;
  };

  explicit FloatArith(long long max_n = 0) { ensure_table(max_n); }

  static Prob zero() { return Prob{kNegInf}; }
  static Prob one() { return Prob{0.0}; }

  static Prob from_double(double v) {
    if (v < 0.0) throw std::domain_error("FloatArith: negative probability");
    return Prob{std::log(v)};
  }
  static Prob from_log(double lg) { return Prob{lg}; }
  static Prob from_ratio(long long num, long long den) {
    if (num == 0) return zero();
    return Prob{std::log(static_cast<double>(num)) - std::log(static_cast<double>(den))};
  }

  static Prob mul(const Prob& a, const Prob& b) { return Prob{a.lg + b.lg}; }
  static Prob div(const Prob& a, const Prob& b) { return Prob{a.lg - b.lg}; }
  static Prob add(const Prob& a, const Prob& b) { return Prob{log_add(a.lg, b.lg)}; }
  // a - b for a >= b.
  static Prob sub_pos(const Prob& a, const Prob& b) { return Prob{log_sub(a.lg, b.lg)}; }
  // 1 - a for a <= 1.
  static Prob one_minus(const Prob& a) { return Prob{log1mexp(a.lg)}; }

  static bool is_zero(const Prob& a) { return a.lg == kNegInf; }
  static bool less(const Prob& a, const Prob& b) { return a.lg < b.lg; }
  static bool less_eq(const Prob& a, const Prob& b) { return a.lg <= b.lg; }

  static Prob exp_eps(double eps) { return Prob{eps}; }

  static double to_double(const Prob& a) { return std::exp(a.lg); }
  static double log_value(const Prob& a) { return a.lg; }

  double lchoose(long long n, long long k) const {
    if (k < 0 || k > n) return kNegInf;
    return lfact_[static_cast<size_t>(n)] - lfact_[static_cast<size_t>(k)] -
           lfact_[static_cast<size_t>(n - k)];
  }

  Prob choose(long long n, long long k) const { return Prob{lchoose(n, k)}; }

  // C(c1,a) * C(c2,b) * C(n-c1-c2, T-a-b) / C(n,T): joint law of the counts
  // of two designated types in a without-replacement sample of size T.
  Prob hyper3(long long n, long long T, long long c1, long long c2, long long a,
              long long b) const {
    const long long rest = n - c1 - c2;
    const long long r = T - a - b;
    if (a < 0 || b < 0 || r < 0 || a > c1 || b > c2 || r > rest) return zero();
    return Prob{lchoose(c1, a) + lchoose(c2, b) + lchoose(rest, r) - lchoose(n, T)};
  }

  // C(T,k) (M/n)^k ((n-M)/n)^(T-k).
  Prob binom_pmf_ratio(long long T, long long k, long long M, long long n) const {
    if (k < 0 || k > T) return zero();
    if (M == 0) return k == 0 ? one() : zero();
    if (M == n) return k == T ? one() : zero();
    const double lp = std::log(static_cast<double>(M)) - std::log(static_cast<double>(n));
    const double lq = std::log(static_cast<double>(n - M)) - std::log(static_cast<double>(n));
    return Prob{lchoose(T, k) + k * lp + (T - k) * lq};
  }

  Prob binom_pmf(long long T, long long k, double p) const {
    if (k < 0 || k > T) return zero();
    if (p <= 0.0) return k == 0 ? one() : zero();
    if (p >= 1.0) return k == T ? one() : zero();
    return Prob{lchoose(T, k) + k * std::log(p) + (T - k) * std::log1p(-p)};
  }

  void ensure_table(long long max_n) {
    const size_t need = static_cast<size_t>(max_n) + 2;
    if (lfact_.size() >= need) return;
    const size_t old = lfact_.size();
    lfact_.resize(need);
    if (old == 0) lfact_[0] = 0.0;
    for (size_t i = std::max<size_t>(old, 1); i < need; ++i) {
      lfact_[i] = lfact_[i - 1] + std::log(static_cast<double>(i));
    }
  }

 private:
  std::vector<double> lfact_;
};

// Exact rational arithmetic policy. Used for oracle-grade small instances
// where tests assert exact equality. e^eps is taken as the exact dyadic
// rational of the double exp(eps), so independent computation routes agree
// bit for bit.
class RationalArith {
 public:
  using Prob = BigRational;

  class Acc {
   public:
    void add(const Prob& p) { s_ = s_ + p; }
    Prob value() const { return s_; }

   private:
    Prob s_;
  };

  explicit RationalArith(long long max_n = 0) { ensure_table(max_n); }

  static Prob zero() { return BigRational(0); }
  static Prob one() { return BigRational(1); }

  static Prob from_double(double v) { return BigRational::from_double(v); }
  static Prob from_ratio(long long num, long long den) {
    return BigRational::from_int_ratio(num, den);
  }

  static Prob mul(const Prob& a, const Prob& b) { return a * b; }
  static Prob div(const Prob& a, const Prob& b) { return a / b; }
  static Prob add(const Prob& a, const Prob& b) { return a + b; }
  static Prob sub_pos(const Prob& a, const Prob& b) { return a - b; }
  static Prob one_minus(const Prob& a) { return BigRational(1) - a; }

  static bool is_zero(const Prob& a) { return a.is_zero(); }
  static bool less(const Prob& a, const Prob& b) { return a < b; }
  static bool less_eq(const Prob& a, const Prob& b) { return a <= b; }

  static Prob exp_eps(double eps) { return BigRational::from_double(std::exp(eps)); }

  static double to_double(const Prob& a) { return a.to_double(); }
  static double log_value(const Prob& a) { return a.log(); }

  Prob choose(long long n, long long k) const {
    if (k < 0 || k > n) return zero();
    ensure_table(n);
    const BigInt c = fact_[static_cast<size_t>(n)] /
                     (fact_[static_cast<size_t>(k)] * fact_[static_cast<size_t>(n - k)]);
    return BigRational(c, BigInt(1));
  }

  Prob hyper3(long long n, long long T, long long c1, long long c2, long long a,
              long long b) const {
    const long long rest = n - c1 - c2;
    const long long r = T - a - b;
    if (a < 0 || b < 0 || r < 0 || a > c1 || b > c2 || r > rest) return zero();
    return choose(c1, a) * choose(c2, b) * choose(rest, r) / choose(n, T);
  }

  Prob binom_pmf_ratio(long long T, long long k, long long M, long long n) const {
    if (k < 0 || k > T) return zero();
    const BigInt num = BigInt::pow_u32(BigInt(M), static_cast<uint32_t>(k)) *
                       BigInt::pow_u32(BigInt(n - M), static_cast<uint32_t>(T - k));
    const BigInt den = BigInt::pow_u32(BigInt(n), static_cast<uint32_t>(T));
    return choose(T, k) * BigRational(num, den);
  }

  Prob binom_pmf(long long T, long long k, double p) const {
    if (k < 0 || k > T) return zero();
    const BigRational pr = BigRational::from_double(p);
    const BigRational qr = BigRational(1) - pr;
    BigRational v = choose(T, k);
    for (long long i = 0; i < k; ++i) v = v * pr;
    for (long long i = 0; i < T - k; ++i) v = v * qr;
    return v;
  }

  void ensure_table(long long max_n) const {
    const size_t need = static_cast<size_t>(max_n) + 2;
    if (fact_.size() >= need) return;
    if (fact_.empty()) fact_.push_back(BigInt(1));
    for (size_t i = fact_.size(); i < need; ++i) {
      fact_.push_back(fact_[i - 1] * BigInt(static_cast<long long>(i)));
    }
  }

 private:
  mutable std::vector<BigInt> fact_;
};

}  // namespace sdp

#endif  // SDP_ARITH_HPP_
