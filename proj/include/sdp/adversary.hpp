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

#ifndef SDP_ADVERSARY_HPP_
#define SDP_ADVERSARY_HPP_

#include <string>
#include <vector>

#include "sdp/arith.hpp"
#include "sdp/mechanisms.hpp"
#include "sdp/pointwise.hpp"

namespace sdp {

// Type I / Type II error rates of the rejection-region test between the two
// hypotheses "the database is x" (output law p) and "the database is x'"
// (output law q).
struct ErrorPair {
  double type1 = 0.0;
  double type2 = 0.0;
  std::vector<size_t> rejection_region;
};

inline ErrorPair error_pair(const std::vector<double>& p, const std::vector<double>& q,
                            const std::vector<size_t>& region) {
  if (p.size() != q.size()) throw std::invalid_argument("error_pair: support mismatch");
  ErrorPair e;
  e.rejection_region = region;
  double ps = 0.0, qs = 0.0;
  for (size_t i : region) {
    if (i >= p.size()) throw std::invalid_argument("error_pair: region outside support");
    ps += p[i];
    qs += q[i];
  }
  e.type1 = ps;
  e.type2 = 1.0 - qs;
  return e;
}

// True iff e^eps E_I + E_II >= 1 - delta and e^eps E_II + E_I >= 1 - delta
// hold for every rejection region, which is equivalent to delta dominating
// the directed divergence in both directions.
template <typename Arith>
bool dp_error_tradeoff_check(const Arith& ar, const std::vector<double>& p,
                             const std::vector<double>& q, Epsilon eps, double delta) {
  const auto pp = probs_from_doubles(ar, p);
  const auto qq = probs_from_doubles(ar, q);
  const typename Arith::Prob d = Arith::from_double(delta);
  return !Arith::less(d, directed_divergence(ar, pp, qq, eps)) &&
         !Arith::less(d, directed_divergence(ar, qq, pp, eps));
}

// Adjusted utility of the Bayesian adversary reconstructing one missing
// record under a uniform prior. `outputs` holds one output PMF per candidate
// missing record, all over a shared output space. With threshold t, the MAP
// 0-1 loss at output a is 1 - max posterior, and
//   u = 1/(1-t) * max_X E_{a ~ P_X}[ max(0, 1 - t - loss(a)) ].
template <typename Arith>
typename Arith::Prob adjusted_utility_from_matrix(
    const Arith& ar, const std::vector<std::vector<typename Arith::Prob>>& outputs, double t) {
  using Prob = typename Arith::Prob;
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("adjusted_utility: t out of (0,1)");
  if (outputs.empty() || outputs.front().empty()) {
    throw std::invalid_argument("adjusted_utility: empty output matrix");
  }
  const size_t num_outputs = outputs.front().size();
  const Prob tp = Arith::from_double(t);
  // max posterior per output: max_X P_X(a) / sum_X P_X(a)
  std::vector<Prob> mx(num_outputs, Arith::zero());
  std::vector<Prob> denom(num_outputs, Arith::zero());
  for (const auto& row : outputs) {
    if (row.size() != num_outputs) throw std::invalid_argument("adjusted_utility: ragged matrix");
    for (size_t a = 0; a < num_outputs; ++a) {
      denom[a] = Arith::add(denom[a], row[a]);
      if (Arith::less(mx[a], row[a])) mx[a] = row[a];
    }
  }
  Prob best = Arith::zero();
  for (const auto& row : outputs) {
    typename Arith::Acc acc;
    for (size_t a = 0; a < num_outputs; ++a) {
      if (Arith::is_zero(row[a]) || Arith::is_zero(denom[a])) continue;
      // gain(a) = max(0, posterior_max - t)
      const Prob td = Arith::mul(tp, denom[a]);
      if (!Arith::less(td, mx[a])) continue;
      acc.add(Arith::div(Arith::mul(row[a], Arith::sub_pos(mx[a], td)), denom[a]));
    }
    const Prob v = acc.value();
    if (Arith::less(best, v)) best = v;
  }
  return Arith::div(best, Arith::one_minus(Arith::from_double(t)));
}

// Output PMFs of the sampling-histogram mechanism for every completion of a
// database missing one record. Row X is the law of the sample histogram when
// the missing record has type X; all rows share one enumerated output space.
template <typename Arith>
std::vector<std::vector<typename Arith::Prob>> shm_completion_outputs(
    const Arith& ar, const HistogramDb& x_minus_i, long long T,
    long long cap = kDefaultEnumerationCap) {
  x_minus_i.validate();
  const size_t m = x_minus_i.m();
  // Output space: histograms feasible for *some* completion.
  HistogramDb bound;
  bound.counts = x_minus_i.counts;
  for (auto& c : bound.counts) ++c;
  const auto space = enumerate_outputs(bound, T, cap);
  std::vector<std::vector<typename Arith::Prob>> rows;
  rows.reserve(m);
  for (size_t X = 0; X < m; ++X) {
    HistogramDb full;
    full.counts = x_minus_i.counts;
    ++full.counts[X];
    std::vector<typename Arith::Prob> row;
    row.reserve(space.size());
    for (const auto& h : space) {
      row.push_back(shm_output_prob(ar, full, SampleHistogram{h}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Arith>
std::vector<std::vector<typename Arith::Prob>> coin_flip_outputs(const Arith&, double p) {
  using Prob = typename Arith::Prob;
  std::vector<std::vector<Prob>> rows(2, std::vector<Prob>(2));
  for (int X = 0; X < 2; ++X) {
    for (int a = 0; a < 2; ++a) {
      rows[X][a] = Arith::from_double(coin_flip_output_prob(X, p, a));
    }
  }
  return rows;
}

struct AdjustedUtility {
  double value = 0.0;
  double threshold_t = 0.0;
};

template <typename Arith>
AdjustedUtility adjusted_utility_shm(const Arith& ar, const HistogramDb& x_minus_i, long long T,
                                     double t) {
  const auto rows = shm_completion_outputs(ar, x_minus_i, T);
  return AdjustedUtility{Arith::to_double(adjusted_utility_from_matrix(ar, rows, t)), t};
}

template <typename Arith>
AdjustedUtility adjusted_utility_coin_flip(const Arith& ar, double p, double t) {
  return AdjustedUtility{Arith::to_double(adjusted_utility_from_matrix(ar, coin_flip_outputs(ar, p), t)), t};
}

// Checks u(e^eps/(e^eps+1), x cap x') < d(x,x') + d(x',x) for a neighboring
// pair of SHM databases given by the shared histogram and the two completion
// types; for binary typespaces the two-sided bound d <= 3u is checked too.
// The strict inequality is vacuous at d = 0 (both sides zero), so callers
// filter to instances with positive divergence.
template <typename Arith>
struct UtilityBoundOutcome {
  bool ok = false;
  typename Arith::Prob u;
  typename Arith::Prob d_sum;
};

template <typename Arith>
UtilityBoundOutcome<Arith> utility_bound_check_shm(const Arith& ar, const HistogramDb& x_minus_i,
                                                   long long T, size_t type_x, size_t type_xp,
                                                   Epsilon eps) {
  if (type_x == type_xp || type_x >= x_minus_i.m() || type_xp >= x_minus_i.m()) {
    throw std::invalid_argument("utility_bound_check: completion types must differ");
  }
  const auto rows = shm_completion_outputs(ar, x_minus_i, T);
  const double e = std::exp(eps.value);
  const double t = e / (e + 1.0);
  UtilityBoundOutcome<Arith> out;
  out.u = adjusted_utility_from_matrix(ar, rows, t);
  const auto d1 = directed_divergence(ar, rows[type_x], rows[type_xp], eps);
  const auto d2 = directed_divergence(ar, rows[type_xp], rows[type_x], eps);
  out.d_sum = Arith::add(d1, d2);
  out.ok = Arith::less(out.u, out.d_sum);
  if (x_minus_i.m() == 2 && out.ok) {
    const auto three_u = Arith::mul(Arith::from_ratio(3, 1), out.u);
    out.ok = Arith::less_eq(out.d_sum, three_u);
  }
  return out;
}

}  // namespace sdp

#endif  // SDP_ADVERSARY_HPP_
