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

// Test-only oracles: independent brute-force routes used to pin expected
// values. They enumerate the sampling processes from first principles and
// never call the closed-form code paths they are checking.

#ifndef SDP_TESTS_TEST_ORACLES_HPP_
#define SDP_TESTS_TEST_ORACLES_HPP_

#include <algorithm>
#include <map>
#include <vector>

#include <doctest.h>

#include "sdp/mechanisms.hpp"
#include "sdp/pointwise.hpp"
#include "sdp/random.hpp"
#include "sdp/rational.hpp"

namespace sdp_test {

using sdp::BigRational;

// Output PMF of sampling T records without replacement from the labeled
// database described by `counts`, built by enumerating all C(n, T) subsets.
// Outputs are indexed by the shared enumeration order of `outputs`.
inline std::vector<BigRational> shm_pmf_by_subsets(
    const std::vector<long long>& counts, long long T,
    const std::vector<std::vector<long long>>& outputs) {
  std::vector<int> record_type;
  for (size_t t = 0; t < counts.size(); ++t) {
    for (long long i = 0; i < counts[t]; ++i) record_type.push_back(static_cast<int>(t));
  }
  const long long n = static_cast<long long>(record_type.size());
  std::map<std::vector<long long>, size_t> index;
  for (size_t i = 0; i < outputs.size(); ++i) index[outputs[i]] = i;
  std::vector<long long> hits(outputs.size(), 0);
  std::vector<bool> pick(static_cast<size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + static_cast<size_t>(T), true);
  long long total = 0;
  // std::prev_permutation walks every subset selector exactly once.
  do {
    std::vector<long long> h(counts.size(), 0);
    for (size_t i = 0; i < pick.size(); ++i) {
      if (pick[i]) ++h[static_cast<size_t>(record_type[i])];
    }
    const auto it = index.find(h);
    REQUIRE(it != index.end());
    ++hits[it->second];
    ++total;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::vector<BigRational> pmf;
  pmf.reserve(outputs.size());
  for (long long c : hits) pmf.push_back(BigRational::from_int_ratio(c, total));
  return pmf;
}

// max over all output subsets of p(S) - e^eps q(S), by exhausting all 2^k
// subsets. Only usable for small output spaces.
inline BigRational exhaustive_directed_divergence(const std::vector<BigRational>& p,
                                                  const std::vector<BigRational>& q,
                                                  const BigRational& e_eps) {
  REQUIRE(p.size() == q.size());
  REQUIRE(p.size() <= 20);
  BigRational best(0);
  for (size_t mask = 1; mask < (1u << p.size()); ++mask) {
    BigRational ps(0), qs(0);
    for (size_t i = 0; i < p.size(); ++i) {
      if (mask & (1u << i)) {
        ps = ps + p[i];
        qs = qs + q[i];
      }
    }
    const BigRational v = ps - e_eps * qs;
    if (best < v) best = v;
  }
  return best;
}

// Hybrid oracle divergence: exhaustive subset scan where that is feasible
// (self-checked against the positive-part sum), positive-part sum beyond.
inline BigRational oracle_directed_divergence(const std::vector<BigRational>& p,
                                              const std::vector<BigRational>& q,
                                              const BigRational& e_eps) {
  BigRational positive(0);
  for (size_t i = 0; i < p.size(); ++i) {
    const BigRational term = p[i] - e_eps * q[i];
    if (term.sign() > 0) positive = positive + term;
  }
  if (p.size() <= 12) {
    REQUIRE(exhaustive_directed_divergence(p, q, e_eps) == positive);
  }
  return positive;
}

// Database-wise delta of the sampling-histogram mechanism, entirely by
// brute force: subset-enumerated output PMFs for the histogram and each
// replacement neighbor, divergences by exhaustive subset scan.
inline BigRational brute_force_shm_pointwise(const std::vector<long long>& counts, long long T,
                                             double eps) {
  const size_t m = counts.size();
  sdp::HistogramDb H{counts};
  // Common output space: everything feasible for H or a neighbor.
  sdp::HistogramDb bound{counts};
  for (auto& c : bound.counts) ++c;
  const auto outputs = sdp::enumerate_outputs(bound, T);
  const auto p_h = shm_pmf_by_subsets(counts, T, outputs);
  const BigRational e_eps = BigRational::from_double(std::exp(eps));
  BigRational best(0);
  for (size_t i = 0; i < m; ++i) {
    if (counts[i] < 1) continue;
    for (size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      std::vector<long long> nb = counts;
      --nb[i];
      ++nb[j];
      const auto p_nb = shm_pmf_by_subsets(nb, T, outputs);
      const BigRational fwd = oracle_directed_divergence(p_h, p_nb, e_eps);
      const BigRational rev = oracle_directed_divergence(p_nb, p_h, e_eps);
      if (best < fwd) best = fwd;
      if (best < rev) best = rev;
    }
  }
  return best;
}

// Binomial output PMF of the with-replacement counting mechanism, built by
// enumerating all n^T ordered draws.
inline std::vector<BigRational> counting_pmf_by_ordered_draws(long long M, long long n,
                                                              long long T) {
  std::vector<long long> hits(static_cast<size_t>(T) + 1, 0);
  std::vector<long long> draw(static_cast<size_t>(T), 0);
  long long total = 0;
  for (;;) {
    long long k = 0;
    for (long long d : draw) {
      if (d < M) ++k;
    }
    ++hits[static_cast<size_t>(k)];
    ++total;
    long long pos = T - 1;
    while (pos >= 0) {
      if (++draw[static_cast<size_t>(pos)] < n) break;
      draw[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::vector<BigRational> pmf;
  pmf.reserve(hits.size());
  for (long long c : hits) pmf.push_back(BigRational::from_int_ratio(c, total));
  return pmf;
}

inline BigRational brute_force_counting_pointwise(long long M, long long n, long long T,
                                                  double eps) {
  const auto pm = counting_pmf_by_ordered_draws(M, n, T);
  const BigRational e_eps = BigRational::from_double(std::exp(eps));
  BigRational best(0);
  for (long long Mp : {M - 1, M + 1}) {
    if (Mp < 0 || Mp > n) continue;
    const auto pn = counting_pmf_by_ordered_draws(Mp, n, T);
    const BigRational fwd = oracle_directed_divergence(pm, pn, e_eps);
    const BigRational rev = oracle_directed_divergence(pn, pm, e_eps);
    if (best < fwd) best = fwd;
    if (best < rev) best = rev;
  }
  return best;
}

// Deterministic pseudo-random PMF over m types for property tests.
inline std::vector<double> random_pmf(sdp::SubstreamRng& rng, size_t m) {
  std::vector<double> v(m);
  double s = 0.0;
  for (auto& x : v) {
    x = 0.05 + rng.next_unit();
    s += x;
  }
  for (auto& x : v) x /= s;
  return v;
}

}  // namespace sdp_test

#endif  // SDP_TESTS_TEST_ORACLES_HPP_
