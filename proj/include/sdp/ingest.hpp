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

#ifndef SDP_INGEST_HPP_
#define SDP_INGEST_HPP_

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sdp/pmf.hpp"
#include "sdp/smoothed.hpp"

namespace sdp {

struct ElectionRecord {
  int year = 0;
  std::string unit;
  std::map<std::string, long long> candidate_votes;

  long long total_votes() const {
    long long t = 0;
    for (const auto& [_, v] : candidate_votes) t += v;
    return t;
  }
};

struct RowIssue {
  int line = 0;
  std::string reason;
};

struct ElectionLoadResult {
  std::vector<ElectionRecord> records;
  std::vector<RowIssue> issues;
};

namespace detail {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

}  // namespace detail

// CSV schema: header "year,unit,candidate,votes". Rows with non-numeric or
// negative vote counts are rejected with their line number; duplicate
// (year, unit, candidate) rows are an error.
inline ElectionLoadResult load_election_csv(std::istream& in) {
  ElectionLoadResult out;
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw std::invalid_argument("election csv: empty file");
  ++line_no;
  {
    const auto header = detail::split_csv_line(line);
    if (header != std::vector<std::string>{"year", "unit", "candidate", "votes"}) {
      throw std::invalid_argument("election csv: header must be year,unit,candidate,votes");
    }
  }
  std::map<std::pair<int, std::string>, ElectionRecord> grouped;
  std::set<std::string> seen_rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 4) {
      out.issues.push_back({line_no, "expected 4 fields, got " + std::to_string(fields.size())});
      continue;
    }
    int year = 0;
    long long votes = 0;
    try {
      size_t pos = 0;
      year = std::stoi(fields[0], &pos);
      if (pos != fields[0].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      out.issues.push_back({line_no, "non-numeric year: " + fields[0]});
      continue;
    }
    try {
      size_t pos = 0;
      votes = std::stoll(fields[3], &pos);
      if (pos != fields[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      out.issues.push_back({line_no, "non-numeric votes: " + fields[3]});
      continue;
    }
    if (votes < 0) {
      out.issues.push_back({line_no, "negative votes: " + fields[3]});
      continue;
    }
    if (fields[1].empty() || fields[2].empty()) {
      out.issues.push_back({line_no, "empty unit or candidate"});
      continue;
    }
    const std::string row_key = fields[0] + "|" + fields[1] + "|" + fields[2];
    if (!seen_rows.insert(row_key).second) {
      throw std::invalid_argument("election csv: duplicate (year,unit,candidate) at line " +
                                  std::to_string(line_no));
    }
    ElectionRecord& rec = grouped[{year, fields[1]}];
    rec.year = year;
    rec.unit = fields[1];
    rec.candidate_votes[fields[2]] += votes;
  }
  out.records.reserve(grouped.size());
  for (auto& [_, rec] : grouped) out.records.push_back(std::move(rec));
  return out;
}

inline ElectionLoadResult load_election_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("election csv: cannot open " + path);
  return load_election_csv(in);
}

// Restrict to the top-2 candidates by votes (ties cut by candidate-name
// order) and renormalize their shares. The support lists the two candidate
// names in name order so every record of one election maps onto a shared
// support.
inline FinitePmf to_top2_distribution(const ElectionRecord& rec) {
  if (rec.candidate_votes.size() < 2) {
    throw std::invalid_argument("to_top2_distribution: need at least 2 candidates");
  }
  std::vector<std::pair<std::string, long long>> cands(rec.candidate_votes.begin(),
                                                       rec.candidate_votes.end());
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const auto& c0 = cands[0];
  const auto& c1 = cands[1];
  const long long total = c0.second + c1.second;
  if (total <= 0) throw std::invalid_argument("to_top2_distribution: zero top-2 total");
  FinitePmf pmf;
  if (c0.first < c1.first) {
    pmf.support = {c0.first, c1.first};
    pmf.mass = {static_cast<double>(c0.second) / total, static_cast<double>(c1.second) / total};
  } else {
    pmf.support = {c1.first, c0.first};
    pmf.mass = {static_cast<double>(c1.second) / total, static_cast<double>(c0.second) / total};
  }
  return pmf;
}

inline long long top2_total(const ElectionRecord& rec) {
  std::vector<long long> votes;
  votes.reserve(rec.candidate_votes.size());
  for (const auto& [_, v] : rec.candidate_votes) votes.push_back(v);
  std::sort(votes.rbegin(), votes.rend());
  if (votes.size() < 2) throw std::invalid_argument("top2_total: need at least 2 candidates");
  return votes[0] + votes[1];
}

inline DistributionSet election_distribution_set(const std::vector<ElectionRecord>& records) {
  std::vector<FinitePmf> pmfs;
  pmfs.reserve(records.size());
  for (const auto& r : records) pmfs.push_back(to_top2_distribution(r));
  return DistributionSet::of(pmfs);
}

// Query for the lost-votes election setting: sample T = round((1-loss) n) of
// the n top-2 votes without replacement and publish the histogram.
inline PrivacyQuery lost_votes_query(long long n, double loss_ratio, Epsilon eps,
                                     DistributionSet pi) {
  if (!(loss_ratio > 0.0 && loss_ratio <= 1.0)) {
    throw std::invalid_argument("lost_votes_query: loss ratio out of (0,1]");
  }
  if (n < 2) throw std::invalid_argument("lost_votes_query: need n >= 2");
  long long T = std::llround((1.0 - loss_ratio) * static_cast<double>(n));
  if (T < 1) throw std::invalid_argument("lost_votes_query: T < 1 after rounding");
  T = std::min(T, n - 1);
  PrivacyQuery q;
  q.mech.kind = MechanismKind::kHistogramWithoutReplacement;
  q.mech.T = T;
  q.eps = eps;
  q.n = n;
  q.pi = std::move(pi);
  return q;
}

enum class Scenario { kElection, kSgd };

inline Scenario scenario_from_string(const std::string& s) {
  if (s == "election") return Scenario::kElection;
  if (s == "sgd") return Scenario::kSgd;
  throw std::invalid_argument("unknown scenario: " + s);
}

// Sweep configuration; mirrors the JSON config accepted by the CLI.
struct ExperimentConfig {
  Scenario scenario = Scenario::kElection;
  double loss_ratio = 0.002;        // election: T = round((1-loss) n)
  double batch_ratio = 0.0;         // sgd: T = round(ratio n), or sqrt rule when 0
  bool sqrt_batch = true;           // sgd default T = round(sqrt(n))
  std::vector<double> eps_grid;
  std::vector<long long> n_grid;
  ComputeMode mode = ComputeMode::kMonteCarlo;
  NumericMode numeric = NumericMode::kFloat;
  long long trials = 1000000;
  uint64_t seed = 1;
  double confidence = 0.99;
  int threads = 1;

  void validate() const {
    if (eps_grid.empty() || n_grid.empty()) {
      throw std::invalid_argument("ExperimentConfig: eps and n grids must be non-empty");
    }
    for (size_t i = 1; i < n_grid.size(); ++i) {
      if (n_grid[i] <= n_grid[i - 1]) {
        throw std::invalid_argument("ExperimentConfig: n grid must be increasing");
      }
    }
    if (scenario == Scenario::kElection) {
      if (!(loss_ratio > 0.0 && loss_ratio <= 1.0)) {
        throw std::invalid_argument("ExperimentConfig: loss ratio out of (0,1]");
      }
    } else if (!sqrt_batch && !(batch_ratio > 0.0 && batch_ratio <= 1.0)) {
      throw std::invalid_argument("ExperimentConfig: batch ratio out of (0,1]");
    }
  }

  long long batch_for(long long n) const {
    long long T;
    if (scenario == Scenario::kElection) {
      T = std::llround((1.0 - loss_ratio) * static_cast<double>(n));
    } else if (sqrt_batch) {
      T = std::llround(std::sqrt(static_cast<double>(n)));
    } else {
      T = std::llround(batch_ratio * static_cast<double>(n));
    }
    return std::clamp<long long>(T, 1, n - 1);
  }
};

}  // namespace sdp

#endif  // SDP_INGEST_HPP_
