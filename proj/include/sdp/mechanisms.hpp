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

#ifndef SDP_MECHANISMS_HPP_
#define SDP_MECHANISMS_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdp/arith.hpp"
#include "sdp/random.hpp"

namespace sdp {

// Raised when an exact computation would exceed its configured budget; the
// caller is expected to fall back to the Monte-Carlo path. Surfaces as CLI
// exit code 2.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Integer histogram of an n-record database over m record types.
struct HistogramDb {
  std::vector<long long> counts;

  long long n() const { return std::accumulate(counts.begin(), counts.end(), 0ll); }
  size_t m() const { return counts.size(); }

  void validate() const {
    if (counts.size() < 2) throw std::invalid_argument("HistogramDb: need m >= 2 types");
    for (long long c : counts) {
      if (c < 0) throw std::invalid_argument("HistogramDb: negative count");
    }
  }
};

// Histogram of the T sampled records.
struct SampleHistogram {
  std::vector<long long> counts;

  long long total() const { return std::accumulate(counts.begin(), counts.end(), 0ll); }
};

enum class MechanismKind {
  kHistogramWithoutReplacement,
  kCountingWithReplacement,
  kContinuousAverage,
  kCoinFlip,
};

inline const char* to_string(MechanismKind k) {
  switch (k) {
    case MechanismKind::kHistogramWithoutReplacement: return "shm";
    case MechanismKind::kCountingWithReplacement: return "counting";
    case MechanismKind::kContinuousAverage: return "average";
    case MechanismKind::kCoinFlip: return "coin_flip";
  }
  return "?";
}

inline MechanismKind mechanism_kind_from_string(const std::string& s) {
  if (s == "shm" || s == "histogram") return MechanismKind::kHistogramWithoutReplacement;
  if (s == "counting") return MechanismKind::kCountingWithReplacement;
  if (s == "average") return MechanismKind::kContinuousAverage;
  if (s == "coin_flip" || s == "coinflip") return MechanismKind::kCoinFlip;
  throw std::invalid_argument("unknown mechanism kind: " + s);
}

struct MechanismDescriptor {
  MechanismKind kind = MechanismKind::kHistogramWithoutReplacement;
  long long T = 1;
  double coin_p = 0.5;  // coin_flip only

  void validate(long long n) const {
    switch (kind) {
      case MechanismKind::kHistogramWithoutReplacement:
      case MechanismKind::kContinuousAverage:
        if (T < 1 || T > n) {
          throw std::invalid_argument("mechanism: need 1 <= T <= n for sampling without replacement");
        }
        break;
      case MechanismKind::kCountingWithReplacement:
        if (T < 1) throw std::invalid_argument("mechanism: need T >= 1");
        break;
      case MechanismKind::kCoinFlip:
        if (!(coin_p >= 0.0 && coin_p <= 1.0)) {
          throw std::invalid_argument("mechanism: coin flip needs p in [0,1]");
        }
        break;
    }
  }
};

// Pr[sample histogram h | database histogram H] for sampling T records
// without replacement: prod_i C(H_i, h_i) / C(n, T). Infeasible h has
// probability zero.
template <typename Arith>
typename Arith::Prob shm_output_prob(const Arith& ar, const HistogramDb& H,
                                     const SampleHistogram& h) {
  H.validate();
  if (h.counts.size() != H.counts.size()) {
    throw std::invalid_argument("shm_output_prob: dimension mismatch");
  }
  const long long n = H.n();
  const long long T = h.total();
  if (T > n) throw std::invalid_argument("shm_output_prob: T > n");
  typename Arith::Prob p = ar.one();
  for (size_t i = 0; i < H.counts.size(); ++i) {
    if (h.counts[i] < 0) throw std::invalid_argument("shm_output_prob: negative sample count");
    if (h.counts[i] > H.counts[i]) return ar.zero();
    p = Arith::mul(p, ar.choose(H.counts[i], h.counts[i]));
  }
  return Arith::div(p, ar.choose(n, T));
}

// Binomial law of the number of marked records seen in T draws with
// replacement from a database of n records containing M marked ones.
template <typename Arith>
typename Arith::Prob with_replacement_count_prob(const Arith& ar, long long M, long long n,
                                                 long long T, long long k) {
  if (M < 0 || M > n) throw std::invalid_argument("with_replacement_count_prob: M out of [0,n]");
  if (k < 0 || k > T) throw std::invalid_argument("with_replacement_count_prob: k out of [0,T]");
  return ar.binom_pmf_ratio(T, k, M, n);
}

inline constexpr long long kDefaultEnumerationCap = 2000000;

namespace detail {

inline void enumerate_outputs_rec(const std::vector<long long>& H, size_t i, long long left,
                                  long long cap, std::vector<long long>* cur,
                                  std::vector<std::vector<long long>>* out) {
  if (i + 1 == H.size()) {
    if (left <= H[i]) {
      cur->push_back(left);
      out->push_back(*cur);
      cur->pop_back();
      if (static_cast<long long>(out->size()) > cap) {
        throw InfeasibleError(
            "enumerate_outputs: feasible output count exceeds cap; use Monte-Carlo mode");
      }
    }
    return;
  }
  // Suffix capacity prunes dead branches.
  long long suffix = 0;
  for (size_t j = i + 1; j < H.size(); ++j) suffix += H[j];
  const long long lo = std::max<long long>(0, left - suffix);
  const long long hi = std::min<long long>(H[i], left);
  for (long long v = lo; v <= hi; ++v) {
    cur->push_back(v);
    enumerate_outputs_rec(H, i + 1, left - v, cap, cur, out);
    cur->pop_back();
  }
}

}  // namespace detail

// All feasible sample histograms (compositions of T bounded by H).
inline std::vector<std::vector<long long>> enumerate_outputs(
    const HistogramDb& H, long long T, long long cap = kDefaultEnumerationCap) {
  H.validate();
  if (T < 0 || T > H.n()) throw std::invalid_argument("enumerate_outputs: T out of [0,n]");
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur;
  detail::enumerate_outputs_rec(H.counts, 0, T, cap, &cur, &out);
  return out;
}

// Analytic non-privacy witness for the continuous sampling average: with a
// distinguishing record value whose presence is identifiable from the
// average, the output set of averages containing it has probability exactly
// T/n under the modified database and probability 0 otherwise.
struct ContinuousWitness {
  long long n = 0;
  long long T = 0;
  double lower_bound = 0.0;
  std::string description;
};

inline ContinuousWitness continuous_average_witness(long long n, long long T) {
  if (T < 1 || T > n) throw std::invalid_argument("continuous_average_witness: need 1 <= T <= n");
  ContinuousWitness w;
  w.n = n;
  w.T = T;
  w.lower_bound = static_cast<double>(T) / static_cast<double>(n);
  w.description =
      "replace record n with a value X'_n whose inclusion changes every "
      "subset average; S = set of averages over subsets containing X'_n has "
      "Pr[S | x'] = T/n and Pr[S | x] = 0, so delta >= T/n at every eps";
  return w;
}

// Monte-Carlo estimate of the witness-set mass: the fraction of
// without-replacement samples that contain the distinguished record.
inline double witness_mc_estimate(long long n, long long T, long long trials, uint64_t seed) {
  if (T < 1 || T > n) throw std::invalid_argument("witness_mc_estimate: need 1 <= T <= n");
  if (trials < 1) throw std::invalid_argument("witness_mc_estimate: need trials >= 1");
  long long hits = 0;
  for (long long t = 0; t < trials; ++t) {
    SubstreamRng rng(seed, 0x77697447u, static_cast<uint64_t>(t));
    if (sample_without_replacement_contains(n, T, n - 1, rng)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

// Coin-flipping mechanism over a single bit: outputs the input with
// probability p, the flipped bit otherwise.
inline double coin_flip_output_prob(int X, double p, int a) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("coin_flip_output_prob: p out of [0,1]");
  if ((X != 0 && X != 1) || (a != 0 && a != 1)) {
    throw std::invalid_argument("coin_flip_output_prob: bits must be 0/1");
  }
  return a == X ? p : 1.0 - p;
}

}  // namespace sdp

#endif  // SDP_MECHANISMS_HPP_
