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

#include "sdp/adversary.hpp"
#include "sdp/random.hpp"

#include "test_oracles.hpp"

using namespace sdp;

TEST_CASE("error pairs") {
  const std::vector<double> p = {2.0 / 3.0, 1.0 / 3.0};
  const std::vector<double> q = {1.0 / 3.0, 2.0 / 3.0};

  const auto none = error_pair(p, q, {});
  CHECK(none.type1 == 0.0);
  CHECK(none.type2 == 1.0);

  const auto all = error_pair(p, q, {0, 1});
  CHECK(all.type1 == doctest::Approx(1.0));
  CHECK(all.type2 == doctest::Approx(0.0));

  const auto first = error_pair(p, q, {0});
  CHECK(first.type1 == doctest::Approx(2.0 / 3.0));
  CHECK(first.type2 == doctest::Approx(1.0 - 1.0 / 3.0));

  CHECK_THROWS_AS(error_pair(p, q, {5}), std::invalid_argument);
}

TEST_CASE("dp error trade-off check") {
  RationalArith ar(4);
  CHECK(dp_error_tradeoff_check(ar, {0.5, 0.5}, {0.5, 0.5}, Epsilon(0.0), 0.0));
  CHECK_FALSE(dp_error_tradeoff_check(ar, {1.0, 0.0}, {0.0, 1.0}, Epsilon(1.0), 0.5));
  CHECK(dp_error_tradeoff_check(ar, {1.0, 0.0}, {0.0, 1.0}, Epsilon(1.0), 1.0));

  // minimal passing delta equals the directed divergence
  const std::vector<double> p = {2.0 / 3.0, 1.0 / 3.0};
  const std::vector<double> q = {0.5, 0.5};
  const double d_needed = 1.0 / 6.0;
  for (double delta : {0.0, 0.1, d_needed - 1e-9}) {
    CHECK_FALSE(dp_error_tradeoff_check(ar, p, q, Epsilon(0.0), delta));
  }
  CHECK(dp_error_tradeoff_check(ar, p, q, Epsilon(0.0), d_needed + 1e-12));
}

TEST_CASE("trade-off inequality holds with the pointwise delta") {
  // for every region: e^eps type1 + type2 >= 1 - delta_eps(x)
  RationalArith ar(8);
  const HistogramDb H{{3, 2}};
  const double eps = 0.5;
  const auto pw = pointwise_delta_shm(ar, H, 2, Epsilon(eps));
  const double delta = RationalArith::to_double(pw.delta);

  HistogramDb Hp{{2, 3}};
  const auto outputs = enumerate_outputs(HistogramDb{{4, 4}}, 2);
  std::vector<double> p, q;
  for (const auto& h : outputs) {
    p.push_back(RationalArith::to_double(shm_output_prob(ar, H, SampleHistogram{h})));
    q.push_back(RationalArith::to_double(shm_output_prob(ar, Hp, SampleHistogram{h})));
  }
  for (size_t mask = 0; mask < (1u << outputs.size()); ++mask) {
    std::vector<size_t> region;
    for (size_t i = 0; i < outputs.size(); ++i) {
      if (mask & (1u << i)) region.push_back(i);
    }
    const auto e = error_pair(p, q, region);
    CHECK(std::exp(eps) * e.type1 + e.type2 >= 1.0 - delta - 1e-12);
    CHECK(std::exp(eps) * e.type2 + e.type1 >= 1.0 - delta - 1e-12);
  }
}

TEST_CASE("coin flip adjusted utility") {
  RationalArith ar(4);
  // a revealing mechanism has utility exactly 1 at any threshold
  for (double t : {0.3, 0.51, 0.7}) {
    const auto u = adjusted_utility_coin_flip(ar, 1.0, t);
    CHECK(adjusted_utility_from_matrix(ar, coin_flip_outputs(ar, 1.0), t) == BigRational(1));
    CHECK(u.value == 1.0);
  }
  // a uniform mechanism carries no utility above threshold 1/2
  CHECK(adjusted_utility_from_matrix(ar, coin_flip_outputs(ar, 0.5), 0.6).is_zero());
  CHECK(adjusted_utility_coin_flip(ar, 0.5, 0.6).value == 0.0);

  CHECK_THROWS_AS(adjusted_utility_coin_flip(ar, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(adjusted_utility_coin_flip(ar, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("adjusted utility is non-increasing in the threshold") {
  RationalArith ar(8);
  const HistogramDb x_minus{{2, 1}};
  BigRational prev(2);
  for (double t : {0.2, 0.4, 0.6, 0.8}) {
    const auto rows = shm_completion_outputs(ar, x_minus, 2);
    const auto u = adjusted_utility_from_matrix(ar, rows, t);
    CHECK(u <= prev);
    prev = u;
  }
}

TEST_CASE("utility is bounded by the divergence sum (worked instance)") {
  RationalArith ar(6);
  const HistogramDb x_minus{{1, 1}};  // n = 3 with the missing record
  for (size_t a = 0; a < 2; ++a) {
    const auto chk = utility_bound_check_shm(ar, x_minus, 1, a, 1 - a, Epsilon(0.5));
    CHECK(chk.u < chk.d_sum);
    CHECK(chk.ok);
  }
  // at eps = ln 2 this instance has likelihood ratio exactly e^eps on every
  // output, so the divergence vanishes and the strict bound is vacuous (the
  // utility keeps only rounding dust from the double threshold t)
  const auto edge = utility_bound_check_shm(ar, x_minus, 1, 0, 1, Epsilon(std::log(2.0)));
  CHECK(edge.d_sum.is_zero());
  CHECK(RationalArith::to_double(edge.u) < 1e-15);
}

TEST_CASE("utility bound check on random small instances") {
  // The strict inequality needs finite likelihood ratios, so instances are
  // drawn with T <= min count: both completions then share one output
  // support (no perfectly revealing output).
  RationalArith ar(12);
  SubstreamRng rng(404, 0);
  int positive_instances = 0;
  for (int iter = 0; iter < 120; ++iter) {
    const long long c0 = 1 + static_cast<long long>(rng.next_below(3));
    const long long c1 = 1 + static_cast<long long>(rng.next_below(3));
    if (c0 + c1 + 1 > 8) continue;
    const HistogramDb x_minus{{c0, c1}};
    const long long T = 1 + static_cast<long long>(rng.next_below(std::min(c0, c1)));
    const double eps = 0.05 + 0.5 * rng.next_unit();
    const auto chk = utility_bound_check_shm(ar, x_minus, T, 0, 1, Epsilon(eps));
    if (chk.d_sum.is_zero()) continue;
    ++positive_instances;
    CHECK(chk.ok);  // u < d_sum <= 3u on binary typespaces
    // corollary: u < 2 * pointwise delta of the completed database
    HistogramDb x{{c0 + 1, c1}};
    const auto pw = pointwise_delta_shm(ar, x, T, Epsilon(eps));
    CHECK(chk.u < BigRational(2) * pw.delta);
  }
  CHECK(positive_instances > 10);
}

TEST_CASE("utility meets the divergence sum exactly on revealing instances") {
  // When a sample can exhaust one type, the completions have different
  // output supports; every surviving atom has an infinite likelihood ratio
  // and u = d(x,x') + d(x',x) with equality, so the strict bound is a
  // boundary case there.
  RationalArith ar(8);
  const HistogramDb x_minus{{2, 0}};
  const auto chk = utility_bound_check_shm(ar, x_minus, 1, 0, 1, Epsilon(1.0));
  CHECK(chk.u == chk.d_sum);
  CHECK_FALSE(chk.ok);
  CHECK(chk.u == BigRational::from_int_ratio(1, 3));
}

TEST_CASE("close-election driver configuration") {
  // Accuracy threshold 51% with eps = ln(0.51/0.49): then e^eps/(e^eps+1)
  // is exactly 51/100, so the threshold and the divergence bound share one
  // epsilon.
  const double eps = std::log(0.51 / 0.49);
  const double t = std::exp(eps) / (std::exp(eps) + 1.0);
  CHECK(t == doctest::Approx(0.51).epsilon(1e-12));

  RationalArith ar(12);
  const HistogramDb x_minus{{4, 3}};  // top-2 vote counts among known records
  const auto u = adjusted_utility_shm(ar, x_minus, 3, t);
  CHECK(u.value >= 0.0);
  CHECK(u.value <= 1.0);
  const auto chk = utility_bound_check_shm(ar, x_minus, 3, 0, 1, Epsilon(eps));
  if (!chk.d_sum.is_zero()) {
    HistogramDb x{{5, 3}};
    const auto pw = pointwise_delta_shm(ar, x, 3, Epsilon(eps));
    CHECK(chk.u < BigRational(2) * pw.delta);
  }
}

TEST_CASE("strictness fails only at zero divergence") {
  RationalArith ar(4);
  // coin flip p = 1/2 at eps 0: both u and d are zero and u < d fails
  const auto rows = coin_flip_outputs(ar, 0.5);
  const auto u = adjusted_utility_from_matrix(ar, rows, 0.5 / (0.5 + 0.5));
  const auto d = directed_divergence(ar, rows[0], rows[1], Epsilon(0.0));
  CHECK(u.is_zero());
  CHECK(d.is_zero());
  CHECK_FALSE(u < d + d);

  // coin flip p = 1 at eps 0: u = 1 < d + d = 2
  const auto rows1 = coin_flip_outputs(ar, 1.0);
  const auto u1 = adjusted_utility_from_matrix(ar, rows1, 0.5);
  const auto d1 = directed_divergence(ar, rows1[0], rows1[1], Epsilon(0.0));
  CHECK(u1 == BigRational(1));
  CHECK(d1 + d1 == BigRational(2));
  CHECK(u1 < d1 + d1);
}
