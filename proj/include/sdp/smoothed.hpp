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

#ifndef SDP_SMOOTHED_HPP_
#define SDP_SMOOTHED_HPP_

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "sdp/arith.hpp"
#include "sdp/convex_hull.hpp"
#include "sdp/logsum.hpp"
#include "sdp/mechanisms.hpp"
#include "sdp/pmf.hpp"
#include "sdp/pointwise.hpp"
#include "sdp/random.hpp"

namespace sdp {

enum class ComputeMode { kExact, kMonteCarlo };

inline ComputeMode compute_mode_from_string(const std::string& s) {
  if (s == "exact") return ComputeMode::kExact;
  if (s == "mc" || s == "monte_carlo" || s == "monte-carlo") return ComputeMode::kMonteCarlo;
  throw std::invalid_argument("unknown compute mode: " + s);
}

enum class ReportKind { kExact, kEstimate, kAnalyticBound };

inline const char* to_string(ReportKind k) {
  switch (k) {
    case ReportKind::kExact: return "exact";
    case ReportKind::kEstimate: return "estimate";
    case ReportKind::kAnalyticBound: return "analytic_bound";
  }
  return "?";
}

// A privacy guarantee with its provenance. `delta` is the linear-domain
// value and underflows to 0 below ~1e-308; `log_delta` stays meaningful.
struct PrivacyReport {
  double eps = 0.0;
  double delta = 0.0;
  double log_delta = kNegInf;
  ReportKind kind = ReportKind::kExact;
  bool has_ci = false;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double hoeffding_low = 0.0;
  double hoeffding_high = 0.0;
  long long n = 0;
  long long T = 0;
  long long trials = 0;
  uint64_t seed = 0;
  double confidence = 0.0;
  std::string provenance;
  uint64_t pi_fingerprint = 0;
  std::vector<PrivacyReport> history;
};

struct PrivacyQuery {
  MechanismDescriptor mech;
  Epsilon eps{0.0};
  long long n = 0;
  DistributionSet pi;
  ComputeMode mode = ComputeMode::kExact;
  NumericMode numeric = NumericMode::kFloat;
  long long trials = 1000000;
  uint64_t seed = 1;
  double confidence = 0.99;
  int threads = 1;
  long long exact_cap_float = 5000;
  long long exact_cap_rational = 200;
  long long term_budget = kDefaultTermBudget;
  // Optional extra Monte-Carlo candidates: counts per hull vertex, each row
  // summing to n (the homogeneous classes are always searched).
  std::vector<std::vector<long long>> mc_mixtures;

  void validate() const {
    pi.validate();
    mech.validate(n);
    if (n < 1) throw std::invalid_argument("PrivacyQuery: need n >= 1");
    if (mode == ComputeMode::kMonteCarlo) {
      if (trials < 1) throw std::invalid_argument("PrivacyQuery: need trials >= 1");
      if (!(confidence > 0.0 && confidence < 1.0)) {
        throw std::invalid_argument("PrivacyQuery: confidence must lie in (0,1)");
      }
    }
  }
};

// Homogeneous assignment classes: one candidate per hull vertex, assigning
// that vertex's distribution to every agent. For two-vertex sets in exact
// mode the full count sweep supersedes this; for three or more vertices the
// Monte-Carlo search is restricted to these classes and reports a lower
// bound on the maximum.
inline std::vector<size_t> homogeneous_candidates(const DistributionSet& pi) {
  return convex_hull_vertex_indices(pi);
}

namespace detail {

// delta table indexed by the count of type-1 records, for the two mechanisms
// whose pointwise delta depends on the histogram only through that count.
template <typename Arith>
std::vector<typename Arith::Prob> two_type_delta_table(const Arith& ar,
                                                       const MechanismDescriptor& mech,
                                                       long long n, Epsilon eps,
                                                       long long term_budget) {
  using Prob = typename Arith::Prob;
  std::vector<Prob> table(static_cast<size_t>(n) + 1);
  if (mech.kind == MechanismKind::kHistogramWithoutReplacement) {
    ShmDivergenceCache<Arith> cache(ar, n, mech.T, eps, term_budget);
    for (long long j = 0; j <= n; ++j) {
      table[static_cast<size_t>(j)] =
          pointwise_delta_counts(cache, std::vector<long long>{j, n - j}).delta;
    }
  } else if (mech.kind == MechanismKind::kCountingWithReplacement) {
    for (long long j = 0; j <= n; ++j) {
      table[static_cast<size_t>(j)] = pointwise_delta_counting(ar, j, n, mech.T, eps).delta;
    }
  } else {
    throw std::invalid_argument("two_type_delta_table: unsupported mechanism");
  }
  return table;
}

template <typename Arith>
struct TwoTypeSweep {
  typename Arith::Prob delta;
  long long best_k = 0;
};

// Exact max over vertex assignments for a two-type support. With k agents
// on vertex A and n-k on vertex B, the count of type-1 records is the
// convolution of two binomials; E[delta] follows from the delta table. The
// B-group expectation W_m(a) = E[delta_{a+Binom(m,pB)}] obeys
// W_m(a) = (1-pB) W_{m-1}(a) + pB W_{m-1}(a+1), so one in-place row serves
// every k in O(n^2) total.
template <typename Arith>
TwoTypeSweep<Arith> exact_two_type_sweep(const Arith& ar,
                                         const std::vector<typename Arith::Prob>& delta_table,
                                         long long n, double p_a, double p_b) {
  using Prob = typename Arith::Prob;
  const Prob pb = Arith::from_double(p_b);
  const Prob qb = Arith::from_double(1.0 - p_b);
  std::vector<Prob> w = delta_table;  // row m = 0
  TwoTypeSweep<Arith> out;
  out.delta = Arith::zero();
  out.best_k = n;
  for (long long m = 0; m <= n; ++m) {
    const long long k = n - m;
    if (m > 0) {
      for (long long a = 0; a <= n - m; ++a) {
        w[static_cast<size_t>(a)] =
            Arith::add(Arith::mul(qb, w[static_cast<size_t>(a)]),
                       Arith::mul(pb, w[static_cast<size_t>(a) + 1]));
      }
    }
    typename Arith::Acc acc;
    for (long long a = 0; a <= k; ++a) {
      acc.add(Arith::mul(ar.binom_pmf(k, a, p_a), w[static_cast<size_t>(a)]));
    }
    const Prob ek = acc.value();
    if (m == 0 || Arith::less(out.delta, ek)) {
      out.delta = ek;
      out.best_k = k;
    }
  }
  return out;
}

// Oracle-grade full sweep over every assignment class (composition of n over
// all members, vertices or not). Exponentially many classes in the member
// count; intended for small n in tests and for the distribution-reduction
// checks.
template <typename Arith>
typename Arith::Prob exact_assignment_sweep(const Arith& ar,
                                            const std::vector<typename Arith::Prob>& delta_table,
                                            long long n, const std::vector<double>& member_p) {
  using Prob = typename Arith::Prob;
  Prob best = Arith::zero();
  bool first = true;
  std::vector<long long> ks;
  const size_t groups = member_p.size();
  const std::function<void(size_t, long long)> rec = [&](size_t i, long long left) {
    if (i + 1 == groups) {
      ks.push_back(left);
      // law of the type-1 count: convolution of one binomial per group
      std::vector<Prob> law = {Arith::one()};
      for (size_t g = 0; g < groups; ++g) {
        const long long kg = ks[g];
        if (kg == 0) continue;
        std::vector<Prob> next(law.size() + static_cast<size_t>(kg), Arith::zero());
        for (size_t j = 0; j < law.size(); ++j) {
          if (Arith::is_zero(law[j])) continue;
          for (long long b = 0; b <= kg; ++b) {
            next[j + static_cast<size_t>(b)] =
                Arith::add(next[j + static_cast<size_t>(b)],
                           Arith::mul(law[j], ar.binom_pmf(kg, b, member_p[g])));
          }
        }
        law.swap(next);
      }
      typename Arith::Acc acc;
      for (size_t j = 0; j < law.size(); ++j) acc.add(Arith::mul(law[j], delta_table[j]));
      const Prob e = acc.value();
      if (first || Arith::less(best, e)) {
        best = e;
        first = false;
      }
      ks.pop_back();
      return;
    }
    for (long long v = 0; v <= left; ++v) {
      ks.push_back(v);
      rec(i + 1, left - v);
      ks.pop_back();
    }
  };
  rec(0, n);
  return best;
}

}  // namespace detail

template <typename Arith>
struct ExactSmoothedResult {
  typename Arith::Prob delta;
  long long best_k = 0;
  std::vector<size_t> vertex_indices;  // into the query's pi
};

// Exact smoothed delta for two-type supports: reduce to hull vertices, then
// sweep the agent count assigned to each vertex.
template <typename Arith>
ExactSmoothedResult<Arith> smoothed_delta_exact_engine(const Arith& ar, const PrivacyQuery& q,
                                                       long long exact_cap) {
  q.validate();
  if (q.pi.support_size() != 2) {
    throw InfeasibleError(
        "smoothed_delta_exact: exact engine needs a two-type support after "
        "vertex reduction; use Monte-Carlo mode");
  }
  if (q.n > exact_cap) {
    throw InfeasibleError("smoothed_delta_exact: n exceeds the exact-mode cap");
  }
  const std::vector<size_t> verts = convex_hull_vertex_indices(q.pi);
  const double p_a = q.pi.members[verts.front()][0];
  const double p_b = q.pi.members[verts.back()][0];
  const auto table = detail::two_type_delta_table(ar, q.mech, q.n, q.eps, q.term_budget);
  const auto sweep = detail::exact_two_type_sweep(ar, table, q.n, p_a, p_b);
  return ExactSmoothedResult<Arith>{sweep.delta, sweep.best_k, verts};
}

namespace detail {

inline void fill_report_common(const PrivacyQuery& q, PrivacyReport* r) {
  r->eps = q.eps.value;
  r->n = q.n;
  r->T = q.mech.T;
  r->seed = q.seed;
  r->pi_fingerprint = pi_fingerprint(q.pi);
}

}  // namespace detail

inline PrivacyReport smoothed_delta_exact(const PrivacyQuery& q) {
  PrivacyReport r;
  detail::fill_report_common(q, &r);
  r.kind = ReportKind::kExact;
  std::vector<size_t> verts;
  long long best_k = 0;
  if (q.numeric == NumericMode::kRational) {
    RationalArith ar(std::max(q.n, q.mech.T));
    const auto res = smoothed_delta_exact_engine(ar, q, q.exact_cap_rational);
    r.delta = RationalArith::to_double(res.delta);
    r.log_delta = RationalArith::log_value(res.delta);
    verts = res.vertex_indices;
    best_k = res.best_k;
  } else {
    FloatArith ar(std::max(q.n, q.mech.T));
    const auto res = smoothed_delta_exact_engine(ar, q, q.exact_cap_float);
    r.delta = FloatArith::to_double(res.delta);
    r.log_delta = FloatArith::log_value(res.delta);
    verts = res.vertex_indices;
    best_k = res.best_k;
  }
  r.provenance = "exact vertex-count sweep (" + std::string(to_string(q.numeric)) +
                 "): maximum at k=" + std::to_string(best_k) + " of " + std::to_string(q.n) +
                 " agents on vertex " + std::to_string(verts.front()) + ", rest on vertex " +
                 std::to_string(verts.back());
  return r;
}

// Seeded Monte-Carlo estimate of the smoothed delta. Searches the
// homogeneous vertex assignments (plus any user-supplied mixtures), drawing
// `trials` databases per candidate via counter-based per-trial substreams;
// the estimate is the maximum candidate mean with a normal-approximation CI
// and a distribution-free Hoeffding interval alongside. Bit-identical for a
// fixed (query, seed, trials) regardless of the worker count.
inline PrivacyReport smoothed_delta_mc(const PrivacyQuery& q) {
  q.validate();
  if (q.mech.kind != MechanismKind::kHistogramWithoutReplacement &&
      q.mech.kind != MechanismKind::kCountingWithReplacement) {
    throw std::invalid_argument("smoothed_delta_mc: unsupported mechanism kind");
  }
  const size_t m = q.pi.support_size();
  if (q.mech.kind == MechanismKind::kCountingWithReplacement && m != 2) {
    throw std::invalid_argument("smoothed_delta_mc: counting mechanism needs a two-type support");
  }
  FloatArith ar(std::max(q.n, q.mech.T));

  const std::vector<size_t> verts = homogeneous_candidates(q.pi);
  struct Candidate {
    std::vector<std::pair<size_t, long long>> parts;  // (member index, record count)
    std::string name;
  };
  std::vector<Candidate> candidates;
  for (size_t v : verts) {
    candidates.push_back({{{v, q.n}}, "homogeneous vertex " + std::to_string(v)});
  }
  for (const auto& mix : q.mc_mixtures) {
    if (mix.size() != verts.size()) {
      throw std::invalid_argument("smoothed_delta_mc: mixture row must have one count per vertex");
    }
    long long tot = 0;
    Candidate c;
    for (size_t i = 0; i < mix.size(); ++i) {
      if (mix[i] < 0) throw std::invalid_argument("smoothed_delta_mc: negative mixture count");
      tot += mix[i];
      if (mix[i] > 0) c.parts.emplace_back(verts[i], mix[i]);
      c.name += (i ? "," : "mixture ") + std::to_string(mix[i]);
    }
    if (tot != q.n) throw std::invalid_argument("smoothed_delta_mc: mixture counts must sum to n");
    candidates.push_back(std::move(c));
  }

  // delta evaluator per drawn histogram
  ShmDivergenceCache<FloatArith> cache(ar, q.n, q.mech.T, q.eps, q.term_budget);
  std::vector<double> two_type_table;
  const bool tabulate = m == 2 || q.mech.kind == MechanismKind::kCountingWithReplacement;
  if (tabulate) {
    const auto table = detail::two_type_delta_table(ar, q.mech, q.n, q.eps, q.term_budget);
    two_type_table.reserve(table.size());
    for (const auto& p : table) two_type_table.push_back(FloatArith::to_double(p));
  }

  std::vector<AliasTable> samplers;
  samplers.reserve(q.pi.size());
  for (const auto& masses : q.pi.members) samplers.emplace_back(masses);

  const int threads = std::max(1, q.threads);
  double best_mean = -1.0;
  size_t best_idx = 0;
  double best_sd = 0.0;
  for (size_t ci = 0; ci < candidates.size(); ++ci) {
    const Candidate& cand = candidates[ci];
    std::vector<double> values(static_cast<size_t>(q.trials));
    const auto run_range = [&](long long lo, long long hi) {
      std::vector<long long> counts(m);
      for (long long t = lo; t < hi; ++t) {
        SubstreamRng rng(q.seed, 0x736d6f6fu, ci, static_cast<uint64_t>(t));
        std::fill(counts.begin(), counts.end(), 0ll);
        for (const auto& [member, cnt] : cand.parts) {
          for (long long i = 0; i < cnt; ++i) ++counts[samplers[member].sample(rng)];
        }
        double d;
        if (tabulate) {
          d = two_type_table[static_cast<size_t>(counts[0])];
        } else {
          d = FloatArith::to_double(pointwise_delta_counts(cache, counts).delta);
        }
        values[static_cast<size_t>(t)] = d;
      }
    };
    if (threads == 1 || q.trials < 4096) {
      run_range(0, q.trials);
    } else {
      std::vector<std::thread> pool;
      const long long chunk = (q.trials + threads - 1) / threads;
      for (int w = 0; w < threads; ++w) {
        const long long lo = w * chunk;
        const long long hi = std::min<long long>(q.trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(run_range, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    KahanSum sum;
    for (double v : values) sum.add(v);
    const double mean = sum.value() / static_cast<double>(q.trials);
    KahanSum sq;
    for (double v : values) sq.add((v - mean) * (v - mean));
    const double sd = q.trials > 1
                          ? std::sqrt(sq.value() / static_cast<double>(q.trials - 1))
                          : 0.0;
    if (mean > best_mean) {
      best_mean = mean;
      best_idx = ci;
      best_sd = sd;
    }
  }

  PrivacyReport r;
  detail::fill_report_common(q, &r);
  r.kind = ReportKind::kEstimate;
  r.trials = q.trials;
  r.confidence = q.confidence;
  r.delta = best_mean;
  r.log_delta = std::log(best_mean);
  const double z = inverse_normal_cdf(0.5 + q.confidence / 2.0);
  const double half = z * best_sd / std::sqrt(static_cast<double>(q.trials));
  r.has_ci = true;
  r.ci_low = std::max(0.0, best_mean - half);
  r.ci_high = std::min(1.0, best_mean + half);
  const double hh = std::sqrt(std::log(2.0 / (1.0 - q.confidence)) /
                              (2.0 * static_cast<double>(q.trials)));
  r.hoeffding_low = std::max(0.0, best_mean - hh);
  r.hoeffding_high = std::min(1.0, best_mean + hh);
  r.provenance = "MC estimate: max over " + std::to_string(candidates.size()) +
                 " assignment classes (" + candidates[best_idx].name +
                 " maximal); homogeneous search is a lower bound on the max over pi vectors";
  return r;
}

// Mode dispatch per the query.
inline PrivacyReport run_query(const PrivacyQuery& q) {
  if (q.mode == ComputeMode::kExact) return smoothed_delta_exact(q);
  return smoothed_delta_mc(q);
}

}  // namespace sdp

#endif  // SDP_SMOOTHED_HPP_
