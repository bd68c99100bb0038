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
#include <cstdint>
#include <vector>

#include "sdp/arith.hpp"
#include "sdp/bigint.hpp"
#include "sdp/logsum.hpp"
#include "sdp/random.hpp"
#include "sdp/rational.hpp"

using namespace sdp;

TEST_CASE("bigint arithmetic agrees with 128-bit integers") {
  SubstreamRng rng(7, 1);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto a64 = static_cast<int64_t>(rng.next_u64() >> 2) - (1ll << 61);
    const auto b64 = static_cast<int64_t>(rng.next_u64() >> 2) - (1ll << 61);
    const BigInt a(a64), b(b64);
    CHECK((a + b).to_string() == std::to_string(a64 + b64));
    CHECK((a - b).to_string() == std::to_string(a64 - b64));
    const __int128 prod = static_cast<__int128>(a64) * b64;
    // render the 128-bit product
    __int128 p = prod;
    const bool neg = p < 0;
    if (neg) p = -p;
    std::string digits;
    if (p == 0) digits = "0";
    while (p > 0) {
      digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(p % 10)));
      p /= 10;
    }
    CHECK((a * b).to_string() == (neg ? "-" : "") + digits);
    if (b64 != 0) {
      BigInt q, r;
      BigInt::divmod(a, b, &q, &r);
      CHECK(q.to_string() == std::to_string(a64 / b64));
      CHECK(r.to_string() == std::to_string(a64 % b64));
    }
  }
}

TEST_CASE("bigint division handles multi-limb operands") {
  // (2^200 + 12345) / (2^100 + 7), checked by reconstruction.
  const BigInt two_200 = BigInt(1).shl(200) + BigInt(12345);
  const BigInt div = BigInt(1).shl(100) + BigInt(7);
  BigInt q, r;
  BigInt::divmod(two_200, div, &q, &r);
  CHECK(q * div + r == two_200);
  CHECK(r >= BigInt(0));
  CHECK(r < div);
}

namespace {

BigInt random_big(SubstreamRng& rng, int limbs) {
  BigInt x(0);
  for (int i = 0; i < limbs; ++i) {
    x = x.shl(32) + BigInt::from_u64(rng.next_u64() & 0xffffffffull);
  }
  return x;
}

}  // namespace

TEST_CASE("bigint divmod and gcd fuzz on wide operands") {
  // Reconstruction a = q b + r with 0 <= r < b, using only add/mul/compare;
  // exercises the trial-quotient correction paths of the long division.
  SubstreamRng rng(515, 0);
  for (int iter = 0; iter < 400; ++iter) {
    const int la = 1 + static_cast<int>(rng.next_below(8));
    const int lb = 1 + static_cast<int>(rng.next_below(4));
    BigInt a = random_big(rng, la);
    BigInt b = random_big(rng, lb);
    if (b.is_zero()) b = BigInt(1);
    BigInt q, r;
    BigInt::divmod(a, b, &q, &r);
    CHECK(q * b + r == a);
    CHECK(r >= BigInt(0));
    CHECK(r < b);

    const BigInt g = BigInt::gcd(a, b);
    if (!a.is_zero()) {
      CHECK((a % g).is_zero());
      CHECK((b % g).is_zero());
      // scaling property on a small factor
      const BigInt k(97);
      CHECK(BigInt::gcd(a * k, b * k) == g * k);
    }
  }
}

TEST_CASE("bigint gcd and factorial identities") {
  CHECK(BigInt::gcd(BigInt(48), BigInt(180)).to_string() == "12");
  RationalArith ar(60);
  // Pascal identity on exact binomials.
  for (long long n = 1; n <= 52; ++n) {
    for (long long k : {1ll, 2ll, n / 2, n - 1}) {
      if (k < 1 || k > n - 1) continue;
      CHECK(ar.choose(n, k) == ar.choose(n - 1, k - 1) + ar.choose(n - 1, k));
    }
  }
  CHECK(ar.choose(52, 5).to_string() == "2598960/1");
}

TEST_CASE("rational arithmetic and exact double conversion") {
  const BigRational third = BigRational::from_int_ratio(1, 3);
  const BigRational sixth = BigRational::from_int_ratio(1, 6);
  CHECK(third + sixth == BigRational::from_int_ratio(1, 2));
  CHECK(BigRational::from_double(0.5) == BigRational::from_int_ratio(1, 2));
  CHECK(BigRational::from_double(0.375) == BigRational::from_int_ratio(3, 8));
  // 0.3 is not 3/10 as a double; conversion must keep the dyadic value.
  CHECK(BigRational::from_double(0.3) != BigRational::from_int_ratio(3, 10));
  CHECK(BigRational::from_double(0.3).to_double() == 0.3);
  CHECK(third.to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const BigRational tiny(BigInt(1), BigInt::pow_u32(BigInt(10), 200));
  CHECK(tiny.log() == doctest::Approx(-200.0 * std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("log-sum-exp accumulator matches direct summation") {
  LogSumAcc acc;
  const std::vector<double> vals = {0.5, 1e-3, 0.25, 1e-9, 0.125};
  double direct = 0;
  for (double v : vals) {
    acc.add(std::log(v));
    direct += v;
  }
  CHECK(std::exp(acc.log_value()) == doctest::Approx(direct).epsilon(1e-14));

  LogSumAcc deep;
  deep.add(-800.0);
  deep.add(-801.0);
  CHECK(deep.log_value() == doctest::Approx(log_add(-800.0, -801.0)).epsilon(1e-14));
}

TEST_CASE("log helpers") {
  CHECK(log1mexp(std::log(0.25)) == doctest::Approx(std::log(0.75)).epsilon(1e-14));
  CHECK(log_sub(std::log(0.75), std::log(0.5)) == doctest::Approx(std::log(0.25)).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.995) == doctest::Approx(2.5758293).epsilon(1e-5));
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.9599640).epsilon(1e-5));
}

TEST_CASE("arith policies agree on hypergeometric terms") {
  FloatArith fa(30);
  RationalArith ra(30);
  for (long long a = 0; a <= 3; ++a) {
    for (long long b = 0; b <= 2; ++b) {
      const double f = FloatArith::to_double(fa.hyper3(10, 5, 3, 2, a, b));
      const double r = RationalArith::to_double(ra.hyper3(10, 5, 3, 2, a, b));
      CHECK(f == doctest::Approx(r).epsilon(1e-12));
    }
  }
  CHECK(RationalArith::to_double(ra.binom_pmf_ratio(3, 1, 1, 4)) ==
        doctest::Approx(27.0 / 64.0).epsilon(1e-15));
}

TEST_CASE("substream rng is deterministic and stream-separated") {
  SubstreamRng a(42, 1, 2, 3);
  SubstreamRng b(42, 1, 2, 3);
  SubstreamRng c(42, 1, 2, 4);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.next_u64();
    all_equal = all_equal && (x == b.next_u64());
    any_diff = any_diff || (x != c.next_u64());
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("alias table reproduces its weights") {
  const std::vector<double> w = {0.5, 0.3, 0.15, 0.05};
  AliasTable table(w);
  SubstreamRng rng(11, 0);
  std::vector<long long> counts(w.size(), 0);
  const int trials = 200000;
  for (int i = 0; i < trials; ++i) ++counts[table.sample(rng)];
  for (size_t i = 0; i < w.size(); ++i) {
    const double freq = static_cast<double>(counts[i]) / trials;
    // 5 sigma binomial band
    const double sigma = std::sqrt(w[i] * (1 - w[i]) / trials);
    CHECK(std::fabs(freq - w[i]) < 5 * sigma);
  }
}
