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

#ifndef SDP_POINTWISE_HPP_
#define SDP_POINTWISE_HPP_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdp/arith.hpp"
#include "sdp/mechanisms.hpp"

namespace sdp {

struct Epsilon {
  double value = 0.0;

  explicit Epsilon(double v = 0.0) : value(v) {
    if (!(v >= 0.0)) throw std::invalid_argument("Epsilon: value must be >= 0");
  }
};

// Directed divergence between two output PMFs on a shared support:
// sum_a max(0, p(a) - e^eps q(a)), which equals the maximum over output sets
// of Pr[p in S] - e^eps Pr[q in S]. Only strictly positive terms enter.
template <typename Arith>
typename Arith::Prob directed_divergence(const Arith& ar,
                                         const std::vector<typename Arith::Prob>& p,
                                         const std::vector<typename Arith::Prob>& q,
                                         Epsilon eps) {
  if (p.size() != q.size()) throw std::invalid_argument("directed_divergence: support mismatch");
  const typename Arith::Prob e = Arith::exp_eps(eps.value);
  typename Arith::Acc acc;
  for (size_t i = 0; i < p.size(); ++i) {
    const typename Arith::Prob eq = Arith::mul(e, q[i]);
    if (Arith::less(eq, p[i])) acc.add(Arith::sub_pos(p[i], eq));
  }
  return acc.value();
}

template <typename Arith>
std::vector<typename Arith::Prob> probs_from_doubles(const Arith&, const std::vector<double>& v) {
  std::vector<typename Arith::Prob> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(Arith::from_double(x));
  return out;
}

inline constexpr long long kDefaultTermBudget = 500000000;

// Divergence engine for the sampling-histogram mechanism at fixed (n, T,
// eps). For a neighbor move that takes one record from a type with count c1
// and gives it to a type with count c2, the likelihood ratio
// Pr[h|H']/Pr[h|H] = (1 - a/c1) (1 + b/(c2+1-b)) depends only on the sampled
// counts (a, b) of those two types, whose joint law is hypergeometric in
// (n, T, c1, c2). The directed divergence is therefore a function of the
// scalar pair (c1, c2), which this cache memoizes; the tail bound
// Pr[a > (1 - e^-eps) c1] prunes donor candidates.
template <typename Arith>
class ShmDivergenceCache {
 public:
  using Prob = typename Arith::Prob;

  ShmDivergenceCache(const Arith& ar, long long n, long long T, Epsilon eps,
                     long long term_budget = kDefaultTermBudget)
      : ar_(ar), n_(n), T_(T), eps_(eps), e_eps_(Arith::exp_eps(eps.value)),
        term_budget_(term_budget) {
    if (n < 1 || T < 1 || T > n) throw std::invalid_argument("ShmDivergenceCache: need 1 <= T <= n");
  }

  long long n() const { return n_; }
  long long T() const { return T_; }
  Epsilon eps() const { return eps_; }

  // Directed divergence d(H, H - e_donor + e_recip) as a function of the
  // donor and recipient counts in H.
  Prob pair_divergence(long long c_donor, long long c_recip) const {
    const uint64_t key = (static_cast<uint64_t>(c_donor) << 32) | static_cast<uint64_t>(c_recip);
    {
      std::shared_lock lock(mu_);
      const auto it = pairs_.find(key);
      if (it != pairs_.end()) return it->second;
    }
    Prob v = compute_pair(c_donor, c_recip);
    std::unique_lock lock(mu_);
    return pairs_.try_emplace(key, std::move(v)).first->second;
  }

  // Upper bound on pair_divergence(c_donor, *), independent of the recipient.
  Prob donor_tail(long long c_donor) const {
    {
      std::shared_lock lock(mu_);
      const auto it = tails_.find(c_donor);
      if (it != tails_.end()) return it->second;
    }
    Prob v = compute_tail(c_donor);
    std::unique_lock lock(mu_);
    return tails_.try_emplace(c_donor, std::move(v)).first->second;
  }

 private:
  Prob compute_pair(long long c1, long long c2) const {
    if (c1 < 1 || c2 < 0 || c1 + c2 > n_) {
      throw std::invalid_argument("pair_divergence: bad counts");
    }
    charge_terms(T_ + 1);
    const long long rest = n_ - c1 - c2;
    typename Arith::Acc acc;
    const long long a_lo = std::max<long long>(0, T_ - (n_ - c1));
    const long long a_hi = std::min(T_, c1);
    for (long long a = a_lo; a <= a_hi; ++a) {
      // Positive terms need (1 - a/c1) e^eps < 1 before the recipient factor.
      const Prob t1 = Arith::mul(e_eps_, Arith::from_ratio(c1 - a, c1));
      if (!Arith::less(t1, Arith::one())) continue;
      const long long b_lo = std::max<long long>(0, T_ - a - rest);
      const long long b_hi = std::min(T_ - a, c2);
      charge_terms(b_hi - b_lo + 1);
      for (long long b = b_lo; b <= b_hi; ++b) {
        // Ratio grows with b, so the first non-positive term ends the row.
        const Prob t = Arith::mul(t1, Arith::from_ratio(c2 + 1, c2 + 1 - b));
        if (!Arith::less(t, Arith::one())) break;
        acc.add(Arith::mul(ar_.hyper3(n_, T_, c1, c2, a, b), Arith::one_minus(t)));
      }
    }
    return acc.value();
  }

  Prob compute_tail(long long c1) const {
    charge_terms(T_ + 1);
    typename Arith::Acc acc;
    const long long a_lo = std::max<long long>(0, T_ - (n_ - c1));
    const long long a_hi = std::min(T_, c1);
    for (long long a = a_lo; a <= a_hi; ++a) {
      const Prob t1 = Arith::mul(e_eps_, Arith::from_ratio(c1 - a, c1));
      if (!Arith::less(t1, Arith::one())) continue;
      acc.add(ar_.hyper3(n_, T_, c1, n_ - c1, a, T_ - a));
    }
    return acc.value();
  }

  void charge_terms(long long t) const {
    if ((terms_ += t) > term_budget_) {
      throw InfeasibleError("pointwise: exact divergence work exceeds budget; use Monte-Carlo mode");
    }
  }

  const Arith& ar_;
  long long n_;
  long long T_;
  Epsilon eps_;
  Prob e_eps_;
  long long term_budget_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<uint64_t, Prob> pairs_;
  mutable std::unordered_map<long long, Prob> tails_;
  mutable std::atomic<long long> terms_{0};
};

// The database-wise privacy parameter: the smallest delta making the
// (eps, delta) inequality hold at this database against all neighbors, in
// both directions. `worst_neighbor` describes the maximizing move.
template <typename Arith>
struct PointwiseDelta {
  typename Arith::Prob delta;
  std::string worst_neighbor;
};

// Pointwise delta of the sampling-histogram mechanism on an arbitrary
// histogram, maximizing over all feasible one-record replacement moves in
// both directions. Moves are grouped by (donor count, recipient count);
// donor groups are visited in decreasing tail-bound order so the scan can
// stop once no remaining group can beat the current maximum.
template <typename Arith>
PointwiseDelta<Arith> pointwise_delta_counts(const ShmDivergenceCache<Arith>& cache,
                                             const std::vector<long long>& counts) {
  using Prob = typename Arith::Prob;
  if (counts.size() < 2) throw std::invalid_argument("pointwise_delta: need m >= 2 types");
  long long total = 0;
  for (long long c : counts) {
    if (c < 0) throw std::invalid_argument("pointwise_delta: negative count");
    total += c;
  }
  if (total != cache.n()) throw std::invalid_argument("pointwise_delta: histogram size != n");

  // Distinct count values with multiplicities; moves depend on values only.
  std::map<long long, long long> mult;
  for (long long c : counts) ++mult[c];
  std::vector<long long> values;
  values.reserve(mult.size());
  for (const auto& [v, _] : mult) values.push_back(v);
  const auto pair_feasible = [&mult](long long v1, long long v2) {
    return v1 != v2 || mult.at(v1) >= 2;  // a move needs two distinct types
  };

  // Donor groups: the forward direction evaluates D(v1, v2) on the queried
  // database; the reverse direction evaluates D(v2+1, v1-1) on the neighbor.
  struct DonorGroup {
    long long donor;
    bool reverse;
  };
  std::vector<DonorGroup> donors;
  donors.reserve(2 * values.size());
  for (long long v : values) {
    if (v >= 1) donors.push_back({v, false});
  }
  for (long long v : values) donors.push_back({v + 1, true});
  std::vector<std::pair<Prob, size_t>> order;
  order.reserve(donors.size());
  for (size_t i = 0; i < donors.size(); ++i) {
    order.emplace_back(cache.donor_tail(donors[i].donor), i);
  }
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return Arith::less(b.first, a.first);  // descending tail bound
  });

  Prob best = Arith::zero();
  bool have = false;
  long long best_move_donor = -1, best_move_recip = -1;
  bool best_reverse = false;
  for (const auto& [tail, idx] : order) {
    if (have && !Arith::less(best, tail)) break;
    const DonorGroup& g = donors[idx];
    if (!g.reverse) {
      const long long v1 = g.donor;
      for (long long v2 : values) {
        if (!pair_feasible(v1, v2)) continue;
        const Prob d = cache.pair_divergence(v1, v2);
        if (!have || Arith::less(best, d)) {
          best = d;
          have = true;
          best_move_donor = v1;
          best_move_recip = v2;
          best_reverse = false;
        }
      }
    } else {
      const long long v2 = g.donor - 1;
      for (long long v1 : values) {
        if (v1 < 1 || !pair_feasible(v1, v2)) continue;
        const Prob d = cache.pair_divergence(v2 + 1, v1 - 1);
        if (!have || Arith::less(best, d)) {
          best = d;
          have = true;
          best_move_donor = v1;
          best_move_recip = v2;
          best_reverse = true;
        }
      }
    }
  }

  PointwiseDelta<Arith> out{best, ""};
  if (have && !Arith::is_zero(best)) {
    out.worst_neighbor = "move one record from a type with count " +
                         std::to_string(best_move_donor) + " to a type with count " +
                         std::to_string(best_move_recip) +
                         (best_reverse ? " (divergence from neighbor toward H)"
                                       : " (divergence from H toward neighbor)");
  } else {
    out.delta = Arith::zero();
    out.worst_neighbor = "no positive direction";
  }
  return out;
}

template <typename Arith>
PointwiseDelta<Arith> pointwise_delta_shm(const Arith& ar, const HistogramDb& H, long long T,
                                          Epsilon eps,
                                          long long term_budget = kDefaultTermBudget) {
  H.validate();
  ShmDivergenceCache<Arith> cache(ar, H.n(), T, eps, term_budget);
  return pointwise_delta_counts(cache, H.counts);
}

// Pointwise delta of the with-replacement counting mechanism at a database
// with M marked records out of n; neighbors change M by one.
template <typename Arith>
PointwiseDelta<Arith> pointwise_delta_counting(const Arith& ar, long long M, long long n,
                                               long long T, Epsilon eps) {
  if (M < 0 || M > n) throw std::invalid_argument("pointwise_delta_counting: M out of [0,n]");
  using Prob = typename Arith::Prob;
  const auto pmf_for = [&](long long marked) {
    std::vector<Prob> p;
    p.reserve(static_cast<size_t>(T) + 1);
    for (long long k = 0; k <= T; ++k) p.push_back(ar.binom_pmf_ratio(T, k, marked, n));
    return p;
  };
  const std::vector<Prob> pm = pmf_for(M);
  Prob best = Arith::zero();
  std::string desc = "no positive direction";
  for (long long Mp : {M - 1, M + 1}) {
    if (Mp < 0 || Mp > n) continue;
    const std::vector<Prob> pn = pmf_for(Mp);
    const Prob fwd = directed_divergence(ar, pm, pn, eps);
    if (Arith::less(best, fwd)) {
      best = fwd;
      desc = "M' = " + std::to_string(Mp) + " (divergence from M)";
    }
    const Prob rev = directed_divergence(ar, pn, pm, eps);
    if (Arith::less(best, rev)) {
      best = rev;
      desc = "M' = " + std::to_string(Mp) + " (divergence toward M)";
    }
  }
  return PointwiseDelta<Arith>{best, desc};
}

// Pointwise delta of the coin-flipping mechanism on a single bit.
template <typename Arith>
PointwiseDelta<Arith> pointwise_delta_coin(const Arith& ar, double p, Epsilon eps) {
  using Prob = typename Arith::Prob;
  const std::vector<Prob> p0 = {Arith::from_double(p), Arith::from_double(1.0 - p)};
  const std::vector<Prob> p1 = {Arith::from_double(1.0 - p), Arith::from_double(p)};
  const Prob a = directed_divergence(ar, p0, p1, eps);
  const Prob b = directed_divergence(ar, p1, p0, eps);
  return PointwiseDelta<Arith>{Arith::less(a, b) ? b : a, "flip the single bit"};
}

namespace detail {

template <typename Fn>
void for_each_composition(long long n, size_t m, std::vector<long long>* cur, Fn&& fn) {
  if (cur->size() + 1 == m) {
    cur->push_back(n);
    fn(*cur);
    cur->pop_back();
    return;
  }
  for (long long v = 0; v <= n; ++v) {
    cur->push_back(v);
    for_each_composition(n - v, m, cur, fn);
    cur->pop_back();
  }
}

inline double composition_count(long long n, size_t m) {
  double c = 1.0;
  for (size_t i = 1; i < m; ++i) c = c * static_cast<double>(n + i) / static_cast<double>(i);
  return c;
}

}  // namespace detail

// Exact standard-DP delta at a given eps: the maximum pointwise delta over
// every histogram of n records (worst-case analysis).
template <typename Arith>
PointwiseDelta<Arith> worst_case_dp_delta(const Arith& ar, const MechanismDescriptor& mech,
                                          long long n, size_t m, Epsilon eps,
                                          long long space_cap = kDefaultEnumerationCap) {
  using Prob = typename Arith::Prob;
  mech.validate(n);
  switch (mech.kind) {
    case MechanismKind::kHistogramWithoutReplacement: {
      if (m < 2) throw std::invalid_argument("worst_case_dp_delta: need m >= 2");
      if (detail::composition_count(n, m) > static_cast<double>(space_cap)) {
        throw InfeasibleError("worst_case_dp_delta: histogram space exceeds cap");
      }
      ShmDivergenceCache<Arith> cache(ar, n, mech.T, eps);
      Prob best = Arith::zero();
      std::string desc = "no positive direction";
      std::vector<long long> cur;
      detail::for_each_composition(n, m, &cur, [&](const std::vector<long long>& counts) {
        PointwiseDelta<Arith> d = pointwise_delta_counts(cache, counts);
        if (Arith::less(best, d.delta)) {
          best = d.delta;
          std::string hs;
          for (size_t i = 0; i < counts.size(); ++i) {
            hs += (i ? "," : "") + std::to_string(counts[i]);
          }
          desc = "H = (" + hs + "); " + d.worst_neighbor;
        }
      });
      return PointwiseDelta<Arith>{best, desc};
    }
    case MechanismKind::kCountingWithReplacement: {
      Prob best = Arith::zero();
      std::string desc = "no positive direction";
      for (long long M = 0; M <= n; ++M) {
        PointwiseDelta<Arith> d = pointwise_delta_counting(ar, M, n, mech.T, eps);
        if (Arith::less(best, d.delta)) {
          best = d.delta;
          desc = "M = " + std::to_string(M) + "; " + d.worst_neighbor;
        }
      }
      return PointwiseDelta<Arith>{best, desc};
    }
    case MechanismKind::kCoinFlip:
      return pointwise_delta_coin(ar, mech.coin_p, eps);
    case MechanismKind::kContinuousAverage:
      throw std::invalid_argument(
          "worst_case_dp_delta: continuous average has no finite output PMF; "
          "use the analytic witness");
  }
  throw std::logic_error("unreachable");
}

// Delta-approximate max divergence: max over output sets S with p(S) >= delta
// of ln((p(S) - delta) / q(S)). Outputs are sorted by likelihood ratio and
// prefix sets scanned; an admissible prefix with q(S) = 0 yields +infinity.
template <typename Arith>
double approx_max_divergence(const Arith& ar, const std::vector<double>& p_mass,
                             const std::vector<double>& q_mass, double delta) {
  using Prob = typename Arith::Prob;
  if (p_mass.size() != q_mass.size()) {
    throw std::invalid_argument("approx_max_divergence: support mismatch");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("approx_max_divergence: delta out of [0,1]");
  }
  const std::vector<Prob> p = probs_from_doubles(ar, p_mass);
  const std::vector<Prob> q = probs_from_doubles(ar, q_mass);
  const Prob d = Arith::from_double(delta);

  std::vector<size_t> idx(p.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    // ratio p/q descending; q = 0 sorts first
    const bool za = Arith::is_zero(q[a]), zb = Arith::is_zero(q[b]);
    if (za != zb) return za;
    if (za && zb) return false;
    return Arith::less(Arith::mul(p[b], q[a]), Arith::mul(p[a], q[b]));
  });

  Prob ps = Arith::zero();
  Prob qs = Arith::zero();
  bool have = false;
  Prob best_num = Arith::zero();
  Prob best_den = Arith::one();
  for (size_t i : idx) {
    ps = Arith::add(ps, p[i]);
    qs = Arith::add(qs, q[i]);
    if (Arith::less(ps, d)) continue;  // inadmissible prefix
    if (Arith::is_zero(qs)) return std::numeric_limits<double>::infinity();
    const Prob num = Arith::less(d, ps) ? Arith::sub_pos(ps, d) : Arith::zero();
    if (!have || Arith::less(Arith::mul(best_num, qs), Arith::mul(num, best_den))) {
      best_num = num;
      best_den = qs;
      have = true;
    }
  }
  if (!have) return kNegInf;
  if (Arith::is_zero(best_num)) return kNegInf;
  return Arith::log_value(best_num) - Arith::log_value(best_den);
}

}  // namespace sdp

#endif  // SDP_POINTWISE_HPP_
