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

#ifndef SDP_JSON_IO_HPP_
#define SDP_JSON_IO_HPP_

#include <fstream>
#include <string>

#include <json.hpp>

#include "sdp/ingest.hpp"
#include "sdp/pmf.hpp"
#include "sdp/smoothed.hpp"

namespace sdp {

using Json = nlohmann::json;

// { "support": [labels...], "members": [[mass,...], ...] }
inline Json distribution_set_to_json(const DistributionSet& set) {
  Json j;
  j["support"] = set.support;
  j["members"] = set.members;
  return j;
}

inline DistributionSet distribution_set_from_json(const Json& j) {
  DistributionSet set;
  if (!j.contains("support") || !j.contains("members")) {
    throw std::invalid_argument("distribution set json: need support and members");
  }
  for (const auto& l : j.at("support")) {
    set.support.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  for (const auto& m : j.at("members")) {
    set.members.push_back(m.get<std::vector<double>>());
  }
  set.validate();
  return set;
}

inline DistributionSet load_distribution_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open distribution set file: " + path);
  Json j;
  in >> j;
  return distribution_set_from_json(j);
}

inline Json report_to_json(const PrivacyReport& r) {
  Json j;
  j["eps"] = r.eps;
  j["delta"] = r.delta;
  j["log_delta"] = std::isfinite(r.log_delta) ? Json(r.log_delta) : Json();
  j["kind"] = to_string(r.kind);
  if (r.has_ci) {
    j["ci"] = {r.ci_low, r.ci_high};
    j["ci_hoeffding"] = {r.hoeffding_low, r.hoeffding_high};
  } else {
    j["ci"] = nullptr;
  }
  j["n"] = r.n;
  j["T"] = r.T;
  j["seed"] = r.seed;
  if (r.trials > 0) j["trials"] = r.trials;
  if (r.confidence > 0) j["confidence"] = r.confidence;
  j["provenance"] = r.provenance;
  j["pi_fingerprint"] = r.pi_fingerprint;
  if (!r.history.empty()) {
    Json h = Json::array();
    for (const auto& part : r.history) h.push_back(report_to_json(part));
    j["history"] = h;
  }
  return j;
}

inline PrivacyReport report_from_json(const Json& j) {
  PrivacyReport r;
  r.eps = j.at("eps").get<double>();
  r.delta = j.at("delta").get<double>();
  r.log_delta = j.contains("log_delta") && !j.at("log_delta").is_null()
                    ? j.at("log_delta").get<double>()
                    : std::log(r.delta);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exact") {
    r.kind = ReportKind::kExact;
  } else if (kind == "estimate") {
    r.kind = ReportKind::kEstimate;
  } else if (kind == "analytic_bound") {
    r.kind = ReportKind::kAnalyticBound;
  } else {
    throw std::invalid_argument("report json: unknown kind " + kind);
  }
  if (j.contains("ci") && !j.at("ci").is_null()) {
    r.has_ci = true;
    r.ci_low = j.at("ci").at(0).get<double>();
    r.ci_high = j.at("ci").at(1).get<double>();
    if (j.contains("ci_hoeffding")) {
      r.hoeffding_low = j.at("ci_hoeffding").at(0).get<double>();
      r.hoeffding_high = j.at("ci_hoeffding").at(1).get<double>();
    }
  }
  r.n = j.value("n", 0ll);
  r.T = j.value("T", 0ll);
  r.seed = j.value("seed", 0ull);
  r.trials = j.value("trials", 0ll);
  r.confidence = j.value("confidence", 0.0);
  r.provenance = j.value("provenance", std::string());
  r.pi_fingerprint = j.value("pi_fingerprint", 0ull);
  if (j.contains("history")) {
    for (const auto& part : j.at("history")) r.history.push_back(report_from_json(part));
  }
  return r;
}

inline ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig cfg;
  cfg.scenario = scenario_from_string(j.at("scenario").get<std::string>());
  if (j.contains("loss_ratio")) cfg.loss_ratio = j.at("loss_ratio").get<double>();
  if (j.contains("batch")) {
    const auto& b = j.at("batch");
    if (b.is_string() && b.get<std::string>() == "sqrt") {
      cfg.sqrt_batch = true;
    } else {
      cfg.sqrt_batch = false;
      cfg.batch_ratio = b.get<double>();
    }
  }
  cfg.eps_grid = j.at("eps").get<std::vector<double>>();
  cfg.n_grid = j.at("n").get<std::vector<long long>>();
  if (j.contains("mode")) cfg.mode = compute_mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("numeric")) {
    cfg.numeric = numeric_mode_from_string(j.at("numeric").get<std::string>());
  }
  cfg.trials = j.value("trials", cfg.trials);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.confidence = j.value("confidence", cfg.confidence);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.validate();
  return cfg;
}

}  // namespace sdp

#endif  // SDP_JSON_IO_HPP_
