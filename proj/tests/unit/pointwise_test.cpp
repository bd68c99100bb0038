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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "sdp/pmf.hpp"
#include "sdp/pointwise.hpp"

#include "test_oracles.hpp"

using namespace sdp;

namespace {

std::vector<BigRational> to_rat(const std::vector<double>& v) {
  std::vector<BigRational> out;
  for (double x : v) out.push_back(BigRational::from_double(x));
  return out;
}

}  // namespace

TEST_CASE("directed divergence basics") {
  RationalArith ar(4);
  const auto p = to_rat({2.0 / 3.0, 1.0 / 3.0});
  const auto q = to_rat({0.5, 0.5});

  CHECK(directed_divergence(ar, p, p, Epsilon(0.7)).is_zero());
  CHECK(directed_divergence(ar, to_rat({1, 0}), to_rat({0, 1}), Epsilon(0.0)) == BigRational(1));

  // (2/3, 1/3) vs (1/2, 1/2) at eps=0: enumerate all 4 output subsets
  const auto expect = sdp_test::exhaustive_directed_divergence(p, q, BigRational(1));
  CHECK(directed_divergence(ar, p, q, Epsilon(0.0)) == expect);
  CHECK(expect == BigRational::from_double(2.0 / 3.0) - BigRational::from_double(0.5));
}

TEST_CASE("directed divergence equals the exhaustive subset maximum") {
  RationalArith ar(4);
  SubstreamRng rng(31, 0);
  for (int iter = 0; iter < 25; ++iter) {
    const size_t m = 2 + rng.next_below(8);  // up to 9 outputs
    const auto p = to_rat(sdp_test::random_pmf(rng, m));
    const auto q = to_rat(sdp_test::random_pmf(rng, m));
    for (double eps : {0.0, 0.3, 1.0}) {
      const auto direct = directed_divergence(ar, p, q, Epsilon(eps));
      const auto oracle = sdp_test::exhaustive_directed_divergence(
          p, q, BigRational::from_double(std::exp(eps)));
      CHECK(direct == oracle);
    }
  }
}

TEST_CASE("directed divergence is in [0,1], non-increasing in eps, TV at eps 0") {
  FloatArith ar(4);
  SubstreamRng rng(77, 0);
  for (int iter = 0; iter < 20; ++iter) {
    const auto pd = sdp_test::random_pmf(rng, 4);
    const auto qd = sdp_test::random_pmf(rng, 4);
    const auto p = probs_from_doubles(ar, pd);
    const auto q = probs_from_doubles(ar, qd);
    double prev = 2.0;
    for (double eps : {0.0, 0.2, 0.5, 1.0, 3.0}) {
      const double d = FloatArith::to_double(directed_divergence(ar, p, q, Epsilon(eps)));
      CHECK(d >= 0.0);
      CHECK(d <= 1.0 + 1e-12);
      CHECK(d <= prev + 1e-12);
      prev = d;
    }
    // symmetrized value at eps=0 equals total variation
    double tv = 0;
    for (size_t i = 0; i < pd.size(); ++i) tv += std::fabs(pd[i] - qd[i]);
    tv /= 2;
    const double d0 = std::max(FloatArith::to_double(directed_divergence(ar, p, q, Epsilon(0))),
                               FloatArith::to_double(directed_divergence(ar, q, p, Epsilon(0))));
    CHECK(d0 == doctest::Approx(tv).epsilon(1e-10));
  }
}

TEST_CASE("shm pointwise delta: worked examples") {
  RationalArith ar(8);
  // H=(2,2), T=2, eps=0 -> 1/3
  CHECK(pointwise_delta_shm(ar, HistogramDb{{2, 2}}, 2, Epsilon(0)).delta ==
        BigRational::from_int_ratio(1, 3));
  // full census is deterministic and distinct across neighbors -> 1
  CHECK(pointwise_delta_shm(ar, HistogramDb{{3, 2}}, 5, Epsilon(2.5)).delta == BigRational(1));
  // H=(2,1), n=3, T=1, eps=ln 2 -> 1/3
  CHECK(RationalArith::to_double(
            pointwise_delta_shm(ar, HistogramDb{{2, 1}}, 1, Epsilon(std::log(2.0))).delta) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("shm pointwise delta equals full brute force on small databases") {
  RationalArith ar(16);
  for (long long n = 2; n <= 7; ++n) {
    for (long long j = 0; j <= n; ++j) {
      for (long long T : {1ll, n / 2, n}) {
        if (T < 1) continue;
        for (double eps : {0.0, std::log(2.0)}) {
          const auto fast = pointwise_delta_shm(ar, HistogramDb{{j, n - j}}, T, Epsilon(eps));
          const auto brute = sdp_test::brute_force_shm_pointwise({j, n - j}, T, eps);
          CHECK(fast.delta == brute);
        }
      }
    }
  }
  // a three-type database as well
  const auto fast = pointwise_delta_shm(ar, HistogramDb{{3, 2, 1}}, 3, Epsilon(0.4));
  CHECK(fast.delta == sdp_test::brute_force_shm_pointwise({3, 2, 1}, 3, 0.4));
}

TEST_CASE("shm pointwise delta: randomized multi-type rational oracle") {
  RationalArith ar(16);
  SubstreamRng rng(808, 0);
  for (int iter = 0; iter < 10; ++iter) {
    const size_t m = 3 + rng.next_below(2);  // 3 or 4 types
    std::vector<long long> counts;
    long long n = 0;
    for (size_t i = 0; i < m; ++i) {
      counts.push_back(static_cast<long long>(rng.next_below(3)));
      n += counts.back();
    }
    if (n < 2) continue;
    const long long T = 1 + static_cast<long long>(rng.next_below(n));
    const double eps = 0.7 * rng.next_unit();
    const auto fast = pointwise_delta_shm(ar, HistogramDb{counts}, T, Epsilon(eps));
    CHECK(fast.delta == sdp_test::brute_force_shm_pointwise(counts, T, eps));
  }
}

TEST_CASE("count-pair pruning matches a naive full scan on wide histograms") {
  // Draw a histogram over the 256-cell grid and compare the pruned
  // donor-major search against an exhaustive scan of every ordered type
  // pair. Both routes read the same divergence cache, so values must agree
  // exactly.
  FloatArith ar(64);
  const auto g = quantized_gaussian(0.0, 0.12);
  AliasTable alias(g.mass);
  for (int iter = 0; iter < 3; ++iter) {
    const long long n = 40, T = 6;
    std::vector<long long> counts(g.mass.size(), 0);
    SubstreamRng rng(7, static_cast<uint64_t>(iter));
    for (long long i = 0; i < n; ++i) ++counts[alias.sample(rng)];
    ShmDivergenceCache<FloatArith> cache(ar, n, T, Epsilon(0.7));
    const auto fast = pointwise_delta_counts(cache, counts);
    double naive = kNegInf;
    for (size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] < 1) continue;
      for (size_t j = 0; j < counts.size(); ++j) {
        if (i == j) continue;
        naive = std::max(naive,
                         FloatArith::log_value(cache.pair_divergence(counts[i], counts[j])));
        naive = std::max(
            naive, FloatArith::log_value(cache.pair_divergence(counts[j] + 1, counts[i] - 1)));
      }
    }
    CHECK(FloatArith::log_value(fast.delta) == naive);
  }
}

TEST_CASE("pointwise delta is non-increasing in eps") {
  FloatArith ar(30);
  double prev = 2.0;
  for (double eps : {0.0, 0.3, 0.7, 1.2, 2.0}) {
    const double d = FloatArith::to_double(
        pointwise_delta_shm(ar, HistogramDb{{18, 12}}, 10, Epsilon(eps)).delta);
    CHECK(d <= prev + 1e-12);
    prev = d;
  }
}

TEST_CASE("worst-case DP delta") {
  RationalArith ar(12);
  MechanismDescriptor shm;
  shm.kind = MechanismKind::kHistogramWithoutReplacement;

  // sampling floor: n=10, T=5 at any eps stays >= T/n
  shm.T = 5;
  const auto w = worst_case_dp_delta(ar, shm, 10, 2, Epsilon(3.0));
  CHECK(w.delta >= BigRational::from_int_ratio(5, 10));

  // n=4, T=2, eps=0: maximum over all five histograms by brute force
  shm.T = 2;
  const auto w2 = worst_case_dp_delta(ar, shm, 4, 2, Epsilon(0.0));
  BigRational brute(0);
  for (long long j = 0; j <= 4; ++j) {
    const auto d = sdp_test::brute_force_shm_pointwise({j, 4 - j}, 2, 0.0);
    if (brute < d) brute = d;
  }
  CHECK(w2.delta == brute);

  // coin flip at p=1/2 leaks nothing at any eps
  MechanismDescriptor coin;
  coin.kind = MechanismKind::kCoinFlip;
  coin.coin_p = 0.5;
  CHECK(worst_case_dp_delta(ar, coin, 1, 2, Epsilon(0.0)).delta.is_zero());
  CHECK(worst_case_dp_delta(ar, coin, 1, 2, Epsilon(2.0)).delta.is_zero());

  // space cap
  CHECK_THROWS_AS(worst_case_dp_delta(ar, shm, 100, 6, Epsilon(1.0), /*space_cap=*/1000),
                  InfeasibleError);
}

TEST_CASE("coin flip pointwise delta") {
  RationalArith ar(4);
  CHECK(pointwise_delta_coin(ar, 1.0, Epsilon(0.0)).delta == BigRational(1));
  CHECK(pointwise_delta_coin(ar, 0.5, Epsilon(0.0)).delta.is_zero());
  // p=0.9, eps=0: d = p - (1-p), on the dyadic doubles the mechanism uses
  CHECK(pointwise_delta_coin(ar, 0.9, Epsilon(0.0)).delta ==
        BigRational::from_double(0.9) - BigRational::from_double(1.0 - 0.9));
}

TEST_CASE("approximate max divergence") {
  RationalArith ar(4);
  // single-ratio maximum
  CHECK(approx_max_divergence(ar, {0.5, 0.5}, {0.25, 0.75}, 0.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(approx_max_divergence(ar, {0.5, 0.5}, {0.5, 0.5}, 0.0) == doctest::Approx(0.0));

  // delta=0.1 against an exhaustive subset scan
  {
    const std::vector<double> p = {0.6, 0.4};
    const std::vector<double> q = {0.3, 0.7};
    const double delta = 0.1;
    double best = -std::numeric_limits<double>::infinity();
    for (int mask = 1; mask < 4; ++mask) {
      double ps = 0, qs = 0;
      for (int i = 0; i < 2; ++i) {
        if (mask & (1 << i)) {
          ps += p[i];
          qs += q[i];
        }
      }
      if (ps < delta) continue;
      best = std::max(best, std::log((ps - delta) / qs));
    }
    CHECK(approx_max_divergence(ar, p, q, delta) == doctest::Approx(best).epsilon(1e-12));
  }

  // q(S) = 0 on an admissible S gives +infinity
  CHECK(std::isinf(approx_max_divergence(ar, {0.5, 0.5}, {0.0, 1.0}, 0.2)));
  CHECK(approx_max_divergence(ar, {0.5, 0.5}, {0.0, 1.0}, 0.2) > 0);

  // prefix scan equals exhaustive scan on random instances (float route)
  FloatArith fa(4);
  SubstreamRng rng(13, 0);
  for (int iter = 0; iter < 20; ++iter) {
    const size_t m = 2 + rng.next_below(6);
    const auto p = sdp_test::random_pmf(rng, m);
    const auto q = sdp_test::random_pmf(rng, m);
    for (double delta : {0.0, 0.05, 0.3}) {
      double best = -std::numeric_limits<double>::infinity();
      for (size_t mask = 1; mask < (1u << m); ++mask) {
        double ps = 0, qs = 0;
        for (size_t i = 0; i < m; ++i) {
          if (mask & (1u << i)) {
            ps += p[i];
            qs += q[i];
          }
        }
        if (ps < delta) continue;
        best = std::max(best, std::log(std::max(0.0, ps - delta) / qs));
      }
      CHECK(approx_max_divergence(fa, p, q, delta) == doctest::Approx(best).epsilon(1e-9));
    }
  }
}
