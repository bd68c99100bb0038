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

#ifndef SDP_BOUNDS_HPP_
#define SDP_BOUNDS_HPP_

#include <cmath>
#include <stdexcept>
#include <string>

#include "sdp/logsum.hpp"
#include "sdp/pmf.hpp"

namespace sdp {

// Parameters of the closed-form smoothed-DP bound for the sampling-histogram
// mechanism. `f` is the strict-positivity constant of the distribution set;
// `c2` is the free Chernoff split constant (the analysis picks 1/2).
struct BoundParams {
  long long n = 0;
  long long T = 0;
  long long m = 2;
  double eps = 0.0;
  double c2 = 0.5;
  double f = 0.0;

  // c = eps - ln(n / (n - T)); the bound needs c > 0.
  double slack_c() const {
    return eps - std::log(static_cast<double>(n) / static_cast<double>(n - T));
  }

  void validate() const {
    if (n < 2 || T < 1 || T >= n) throw std::invalid_argument("BoundParams: need 1 <= T < n");
    if (m < 2) throw std::invalid_argument("BoundParams: need m >= 2");
    if (!(c2 > 0.0 && c2 < 1.0)) throw std::invalid_argument("BoundParams: c2 out of (0,1)");
    if (!(f > 0.0)) throw std::invalid_argument("BoundParams: need strict positivity f > 0");
    if (!(slack_c() > 0.0)) {
      throw std::invalid_argument(
          "BoundParams: bound not applicable, need eps > ln(n/(n-T)) (headline form asks "
          "eps >= ln(2n/(n-T)))");
    }
  }
};

struct AnalyticBound {
  double log_value = kNegInf;
  double value = 0.0;
  std::string detail;
};

// Smoothed-DP upper bound for sampling-histogram:
//   exp(-(1-e^-c)^2/3 * ((n-T)/T)^2 * (1-c2) * f * n)
//     + exp(-c2^2/2 * f * n + ln m),
// assembled in log domain.
inline AnalyticBound shm_upper_bound(const BoundParams& p) {
  p.validate();
  const double c = p.slack_c();
  const double one_minus_exp = -std::expm1(-c);  // 1 - e^-c
  const double ratio = static_cast<double>(p.n - p.T) / static_cast<double>(p.T);
  const double t1 = -(one_minus_exp * one_minus_exp / 3.0) * ratio * ratio * (1.0 - p.c2) *
                    p.f * static_cast<double>(p.n);
  const double t2 = -(p.c2 * p.c2 / 2.0) * p.f * static_cast<double>(p.n) +
                    std::log(static_cast<double>(p.m));
  AnalyticBound b;
  b.log_value = log_add(t1, t2);
  b.value = std::exp(b.log_value);
  b.detail = "exp(" + std::to_string(t1) + ") + exp(" + std::to_string(t2) + "), c=" +
             std::to_string(c) + ", c2=" + std::to_string(p.c2) + ", f=" + std::to_string(p.f);
  return b;
}

// Standard-DP floor for sampling-histogram: no delta below T/n works at any
// eps.
inline double shm_dp_lower_bound(long long n, long long T) {
  if (n < 1 || T < 1 || T > n) throw std::invalid_argument("shm_dp_lower_bound: need 1 <= T <= n");
  return static_cast<double>(T) / static_cast<double>(n);
}

// Smoothed-DP witness floor (T/n) * c^n: the all-same-type database occurs
// with probability at least c^n and carries pointwise delta at least T/n, so
// no exp(-omega(n)) guarantee exists.
inline AnalyticBound shm_tightness_floor(long long n, long long T,
                                         const StrictPositivityCertificate& cert) {
  if (n < 1 || T < 1 || T > n) throw std::invalid_argument("shm_tightness_floor: need 1 <= T <= n");
  if (!cert.holds) {
    throw std::invalid_argument("shm_tightness_floor: needs a strictly positive distribution set");
  }
  AnalyticBound b;
  b.log_value = std::log(static_cast<double>(T) / static_cast<double>(n)) +
                static_cast<double>(n) * std::log(cert.c);
  b.value = std::exp(b.log_value);
  b.detail = "(T/n) * c^n with c=" + std::to_string(cert.c);
  return b;
}

// Assembled smoothed-DP bound for the with-replacement counting mechanism at
// eps = 1 + 2T/n: a Chernoff term for the marked count leaving (cn/2,
// n - cn/2) plus the geometric tail bound (eT/n)^M / (1 - eT/n) at
// M = max(2, ceil(cn/2)).
struct WithReplacementBound {
  double eps = 0.0;
  double log_value = kNegInf;
  double value = 0.0;
  std::string detail;
};

inline WithReplacementBound with_replacement_bound(long long n, long long T,
                                                   const StrictPositivityCertificate& cert,
                                                   double max_ratio = 0.25) {
  if (n < 2 || T < 1) throw std::invalid_argument("with_replacement_bound: need n >= 2, T >= 1");
  if (!cert.holds) {
    throw std::invalid_argument("with_replacement_bound: needs strict positivity");
  }
  const double ratio = static_cast<double>(T) / static_cast<double>(n);
  if (ratio > max_ratio) {
    throw std::invalid_argument("with_replacement_bound: T/n above the small-sampling regime cap");
  }
  const double e_ratio = M_E * ratio;
  if (!(e_ratio < 1.0)) {
    throw std::invalid_argument("with_replacement_bound: regime needs e*T/n < 1");
  }
  WithReplacementBound b;
  b.eps = 1.0 + 2.0 * ratio;
  const double chernoff = std::log(2.0) - cert.c * static_cast<double>(n) / 8.0;
  const long long m_star =
      std::max<long long>(2, static_cast<long long>(std::ceil(cert.c * static_cast<double>(n) / 2.0)));
  const double tail = static_cast<double>(m_star) * std::log(e_ratio) - std::log1p(-e_ratio);
  b.log_value = log_add(chernoff, tail);
  b.value = std::exp(b.log_value);
  b.detail = "2 exp(-cn/8) + (eT/n)^M/(1-eT/n) at M=" + std::to_string(m_star) +
             ", c=" + std::to_string(cert.c) +
             "; analytic_bound, constants per the with-replacement proof assembly";
  return b;
}

}  // namespace sdp

#endif  // SDP_BOUNDS_HPP_
