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

#ifndef SDP_SWEEP_HPP_
#define SDP_SWEEP_HPP_

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "sdp/fit.hpp"
#include "sdp/ingest.hpp"
#include "sdp/json_io.hpp"
#include "sdp/smoothed.hpp"

namespace sdp {

struct SweepRow {
  long long n = 0;
  double eps = 0.0;
  bool ok = false;
  PrivacyReport report;
  std::string error;
};

struct EpsFit {
  double eps = 0.0;
  LinearFit fit;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<SweepRow> rows;   // sorted by (eps, n)
  std::vector<EpsFit> fits;     // ln delta vs n, one per eps with >= 3 rows
};

// Runs the (eps, n) grid. Exact mode falls back to Monte-Carlo when the
// exact engine declares the instance infeasible; any remaining failure is
// recorded on the row and the sweep continues.
inline SweepResult run_sweep(const ExperimentConfig& cfg, const DistributionSet& pi) {
  cfg.validate();
  pi.validate();
  SweepResult res;
  res.config = cfg;
  for (double eps : cfg.eps_grid) {
    for (long long n : cfg.n_grid) {
      SweepRow row;
      row.n = n;
      row.eps = eps;
      PrivacyQuery q;
      q.mech.kind = MechanismKind::kHistogramWithoutReplacement;
      q.mech.T = cfg.batch_for(n);
      q.eps = Epsilon(eps);
      q.n = n;
      q.pi = pi;
      q.numeric = cfg.numeric;
      q.trials = cfg.trials;
      q.seed = cfg.seed;
      q.confidence = cfg.confidence;
      q.threads = cfg.threads;
      try {
        if (cfg.mode == ComputeMode::kExact) {
          try {
            q.mode = ComputeMode::kExact;
            row.report = smoothed_delta_exact(q);
          } catch (const InfeasibleError&) {
            q.mode = ComputeMode::kMonteCarlo;
            row.report = smoothed_delta_mc(q);
          }
        } else {
          q.mode = ComputeMode::kMonteCarlo;
          row.report = smoothed_delta_mc(q);
        }
        row.ok = true;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      res.rows.push_back(std::move(row));
    }
  }
  std::stable_sort(res.rows.begin(), res.rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.eps != b.eps) return a.eps < b.eps;
    return a.n < b.n;
  });
  for (double eps : cfg.eps_grid) {
    std::vector<double> xs, ys;
    for (const auto& row : res.rows) {
      if (row.eps != eps || !row.ok) continue;
      if (!std::isfinite(row.report.log_delta)) continue;
      xs.push_back(static_cast<double>(row.n));
      ys.push_back(row.report.log_delta);
    }
    const LinearFit fit = linear_fit(xs, ys);
    if (fit.valid) res.fits.push_back({eps, fit});
  }
  return res;
}

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// CSV schema (stable): n,eps,delta,ci_low,ci_high,kind. Confidence columns
// are empty for non-estimates; failed rows carry kind=infeasible.
inline std::string sweep_to_csv(const SweepResult& res) {
  std::string out = "n,eps,delta,ci_low,ci_high,kind\n";
  for (const auto& row : res.rows) {
    out += std::to_string(row.n) + "," + detail::fmt_double(row.eps) + ",";
    if (!row.ok) {
      out += ",,,infeasible\n";
      continue;
    }
    out += detail::fmt_double(row.report.delta) + ",";
    if (row.report.has_ci) {
      out += detail::fmt_double(row.report.ci_low) + "," + detail::fmt_double(row.report.ci_high);
    } else {
      out += ",";
    }
    out += std::string(",") + to_string(row.report.kind) + "\n";
  }
  return out;
}

inline Json sweep_to_json(const SweepResult& res) {
  Json j;
  j["scenario"] = res.config.scenario == Scenario::kElection ? "election" : "sgd";
  j["seed"] = res.config.seed;
  j["trials"] = res.config.trials;
  j["confidence"] = res.config.confidence;
  j["mode"] = res.config.mode == ComputeMode::kExact ? "exact" : "mc";
  Json rows = Json::array();
  for (const auto& row : res.rows) {
    Json r;
    r["n"] = row.n;
    r["eps"] = row.eps;
    if (row.ok) {
      r["report"] = report_to_json(row.report);
    } else {
      r["error"] = row.error;
    }
    rows.push_back(r);
  }
  j["rows"] = rows;
  Json fits = Json::array();
  for (const auto& f : res.fits) {
    Json e;
    e["eps"] = f.eps;
    e["log_slope"] = f.fit.slope;
    e["intercept"] = f.fit.intercept;
    e["r2"] = f.fit.r2;
    e["points"] = f.fit.points;
    fits.push_back(e);
  }
  j["fits"] = fits;
  return j;
}

}  // namespace sdp

#endif  // SDP_SWEEP_HPP_
