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

#ifndef SDP_CONVEX_HULL_HPP_
#define SDP_CONVEX_HULL_HPP_

#include <cstddef>
#include <vector>

#include "sdp/pmf.hpp"
#include "sdp/rational.hpp"

namespace sdp {
namespace detail {

// Phase-I simplex feasibility for A x = b, x >= 0, in exact rationals with
// Bland's rule. Rows of `a` must have equal length; `b` must be
// componentwise >= 0 (mass vectors are). Returns true iff feasible.
inline bool lp_feasible_eq(const std::vector<std::vector<BigRational>>& a,
                           const std::vector<BigRational>& b) {
  const size_t rows = a.size();
  const size_t xs = rows == 0 ? 0 : a[0].size();
  const size_t cols = xs + rows;  // structural vars + one artificial per row
  // Tableau: rows x (cols + 1), last column is the RHS. Artificials form the
  // initial basis; the objective minimizes their sum.
  std::vector<std::vector<BigRational>> t(rows, std::vector<BigRational>(cols + 1));
  std::vector<size_t> basis(rows);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < xs; ++c) t[r][c] = a[r][c];
    t[r][xs + r] = BigRational(1);
    t[r][cols] = b[r];
    basis[r] = xs + r;
  }
  // Reduced-cost row for min sum(artificials): z_j - c_j = sum of rows for
  // structural columns, -0 for artificial columns.
  std::vector<BigRational> cost(cols + 1);
  for (size_t c = 0; c <= cols; ++c) {
    BigRational s;
    for (size_t r = 0; r < rows; ++r) s = s + t[r][c];
    cost[c] = s;
  }
  for (size_t r = 0; r < rows; ++r) cost[xs + r] = BigRational(0);

  for (;;) {
    // Bland: smallest-index column with positive reduced cost improves the
    // minimization (cost row holds z_j - c_j).
    size_t enter = cols;
    for (size_t c = 0; c < cols; ++c) {
      if (cost[c].sign() > 0) {
        enter = c;
        break;
      }
    }
    if (enter == cols) break;
    size_t leave = rows;
    BigRational best;
    for (size_t r = 0; r < rows; ++r) {
      if (t[r][enter].sign() <= 0) continue;
      const BigRational ratio = t[r][cols] / t[r][enter];
      if (leave == rows || ratio < best ||
          (ratio == best && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == rows) break;  // unbounded cannot happen in phase I; be safe
    // Pivot on (leave, enter).
    const BigRational piv = t[leave][enter];
    for (size_t c = 0; c <= cols; ++c) t[leave][c] = t[leave][c] / piv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == leave || t[r][enter].is_zero()) continue;
      const BigRational f = t[r][enter];
      for (size_t c = 0; c <= cols; ++c) t[r][c] = t[r][c] - f * t[leave][c];
    }
    if (!cost[enter].is_zero()) {
      const BigRational f = cost[enter];
      for (size_t c = 0; c <= cols; ++c) cost[c] = cost[c] - f * t[leave][c];
    }
    basis[leave] = enter;
  }
  return cost[cols].is_zero();  // objective value z = sum of artificials
}

// Is point `p` a convex combination of `others`? Exact test.
inline bool in_convex_hull(const std::vector<std::vector<BigRational>>& others,
                           const std::vector<BigRational>& p) {
  if (others.empty()) return false;
  const size_t dim = p.size();
  std::vector<std::vector<BigRational>> a(dim + 1, std::vector<BigRational>(others.size()));
  std::vector<BigRational> b(dim + 1);
  for (size_t r = 0; r < dim; ++r) {
    for (size_t j = 0; j < others.size(); ++j) a[r][j] = others[j][r];
    b[r] = p[r];
  }
  for (size_t j = 0; j < others.size(); ++j) a[dim][j] = BigRational(1);
  b[dim] = BigRational(1);
  return lp_feasible_eq(a, b);
}

}  // namespace detail

// Indices of the members that are vertices of the convex hull of the member
// mass vectors. Duplicates keep their first occurrence; a member is dropped
// iff it is a convex combination of the remaining distinct members, decided
// by an exact rational feasibility test. Stored masses carry float rounding
// that pushes points off the probability simplex, so each point is first
// renormalized by its exact coordinate sum; this matches how the samplers
// and engines interpret a member.
inline std::vector<size_t> convex_hull_vertex_indices(const DistributionSet& set) {
  set.validate();
  const size_t k = set.size();
  std::vector<std::vector<BigRational>> pts(k);
  for (size_t i = 0; i < k; ++i) {
    pts[i].reserve(set.support_size());
    BigRational sum;
    for (double v : set.members[i]) sum = sum + BigRational::from_double(v);
    for (double v : set.members[i]) pts[i].push_back(BigRational::from_double(v) / sum);
  }
  std::vector<size_t> distinct;
  for (size_t i = 0; i < k; ++i) {
    bool dup = false;
    for (size_t j : distinct) {
      if (pts[i] == pts[j]) {
        dup = true;
        break;
      }
    }
    if (!dup) distinct.push_back(i);
  }
  std::vector<size_t> vertices;
  for (size_t i : distinct) {
    std::vector<std::vector<BigRational>> others;
    others.reserve(distinct.size() - 1);
    for (size_t j : distinct) {
      if (j != i) others.push_back(pts[j]);
    }
    if (!detail::in_convex_hull(others, pts[i])) vertices.push_back(i);
  }
  // A single distinct point is trivially the hull.
  if (vertices.empty() && !distinct.empty()) vertices.push_back(distinct.front());
  return vertices;
}

inline DistributionSet reduce_to_vertices(const DistributionSet& set) {
  DistributionSet out;
  out.support = set.support;
  for (size_t i : convex_hull_vertex_indices(set)) out.members.push_back(set.members[i]);
  return out;
}

}  // namespace sdp

#endif  // SDP_CONVEX_HULL_HPP_
