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

#ifndef SDP_REPORTS_HPP_
#define SDP_REPORTS_HPP_

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "sdp/pmf.hpp"
#include "sdp/smoothed.hpp"

namespace sdp {

// Additive composition of guarantees proved under one distribution set.
struct ComposedReport {
  double eps_total = 0.0;
  double delta_total = 0.0;
  std::vector<PrivacyReport> parts;
};

inline ComposedReport compose(const std::vector<PrivacyReport>& parts) {
  if (parts.empty()) throw std::invalid_argument("compose: no parts");
  for (const auto& p : parts) {
    if (p.pi_fingerprint != parts.front().pi_fingerprint) {
      throw std::invalid_argument("compose: parts were proved under different distribution sets");
    }
  }
  ComposedReport out;
  out.parts = parts;
  double eps = 0.0, delta = 0.0;
  for (const auto& p : parts) {
    eps += p.eps;
    delta += p.delta;
  }
  out.eps_total = eps;
  out.delta_total = std::min(1.0, delta);
  return out;
}

inline PrivacyReport composed_to_report(const ComposedReport& c) {
  PrivacyReport r;
  r.eps = c.eps_total;
  r.delta = c.delta_total;
  r.log_delta = std::log(c.delta_total);
  r.kind = ReportKind::kAnalyticBound;
  r.pi_fingerprint = c.parts.front().pi_fingerprint;
  r.provenance = "composition of " + std::to_string(c.parts.size()) + " parts";
  r.history = c.parts;
  bool all_ci = true;
  double lo = 0.0, hi = 0.0;
  for (const auto& p : c.parts) {
    all_ci = all_ci && p.has_ci;
    lo += p.ci_low;
    hi += p.ci_high;
  }
  if (all_ci) {
    r.has_ci = true;
    r.ci_low = std::min(1.0, lo);
    r.ci_high = std::min(1.0, hi);
  }
  return r;
}

// Post-processing leaves the guarantee untouched.
inline PrivacyReport post_process(const PrivacyReport& r, const std::string& f_description) {
  PrivacyReport out = r;
  out.provenance = r.provenance + "; post-processed by " + f_description;
  return out;
}

// Pre-processing transfer: a guarantee proved for the pushforward set f(Pi)
// holds for the composite mechanism over Pi. The report must have been
// computed under f(Pi); that is checked by fingerprint.
inline PrivacyReport pre_process(const PrivacyReport& r, const DistributionSet& pi,
                                 const std::map<std::string, std::string>& f,
                                 const std::string& f_description = "f") {
  const DistributionSet image = pushforward_set(pi, f);
  if (pi_fingerprint(image) != r.pi_fingerprint) {
    throw std::invalid_argument("pre_process: report was not computed under f(Pi)");
  }
  PrivacyReport out = r;
  out.pi_fingerprint = pi_fingerprint(pi);
  out.provenance = r.provenance + "; transferred through deterministic pre-processing " +
                   f_description;
  return out;
}

}  // namespace sdp

#endif  // SDP_REPORTS_HPP_
