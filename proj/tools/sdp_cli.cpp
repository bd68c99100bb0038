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

// Command-line driver over the privacy engines: pointwise and worst-case
// deltas, exact/Monte-Carlo smoothed deltas, analytic bounds, adversary
// utilities, convex-hull reduction, election-data checking, and experiment
// sweeps emitting CSV/JSON plot data.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdp/adversary.hpp"
#include "sdp/bounds.hpp"
#include "sdp/convex_hull.hpp"
#include "sdp/ingest.hpp"
#include "sdp/json_io.hpp"
#include "sdp/pointwise.hpp"
#include "sdp/reports.hpp"
#include "sdp/smoothed.hpp"
#include "sdp/sweep.hpp"

namespace {

using sdp::Json;

std::vector<long long> parse_counts(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stoll(item));
  }
  if (out.empty()) throw std::invalid_argument("empty count list");
  return out;
}

sdp::NumericMode default_numeric_mode() {
  const char* env = std::getenv("SDP_NUMERIC_MODE");
  if (env == nullptr || *env == '\0') return sdp::NumericMode::kFloat;
  return sdp::numeric_mode_from_string(env);
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

template <typename Arith>
Json pointwise_json(const Arith& ar, const sdp::MechanismDescriptor& mech,
                    const std::vector<long long>& hist, long long counting_m, long long counting_n,
                    sdp::Epsilon eps) {
  Json j;
  if (mech.kind == sdp::MechanismKind::kHistogramWithoutReplacement) {
    sdp::HistogramDb H{hist};
    const auto r = sdp::pointwise_delta_shm(ar, H, mech.T, eps);
    j["delta"] = Arith::to_double(r.delta);
    j["log_delta"] = Arith::log_value(r.delta);
    j["worst_neighbor"] = r.worst_neighbor;
  } else if (mech.kind == sdp::MechanismKind::kCountingWithReplacement) {
    const auto r = sdp::pointwise_delta_counting(ar, counting_m, counting_n, mech.T, eps);
    j["delta"] = Arith::to_double(r.delta);
    j["log_delta"] = Arith::log_value(r.delta);
    j["worst_neighbor"] = r.worst_neighbor;
  } else if (mech.kind == sdp::MechanismKind::kCoinFlip) {
    const auto r = sdp::pointwise_delta_coin(ar, mech.coin_p, eps);
    j["delta"] = Arith::to_double(r.delta);
    j["log_delta"] = Arith::log_value(r.delta);
    j["worst_neighbor"] = r.worst_neighbor;
  } else {
    throw std::invalid_argument("pointwise: continuous average has no finite PMF; see bounds --which witness");
  }
  j["eps"] = eps.value;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"smoothed differential privacy accounting for noiseless sampling mechanisms"};
  app.require_subcommand(1);

  std::string mech_name = "shm";
  std::string hist_str;
  std::string numeric_name;
  long long T = 1, n = 0, m_types = 2, counting_M = 0;
  double eps = 0.0, coin_p = 0.5;

  auto add_numeric_flag = [&](CLI::App* cmd) {
    cmd->add_option("--mode,--numeric", numeric_name, "numeric mode: float | rational");
  };
  auto numeric_mode = [&]() {
    return numeric_name.empty() ? default_numeric_mode()
                                : sdp::numeric_mode_from_string(numeric_name);
  };

  // pointwise
  auto* cmd_pointwise = app.add_subcommand("pointwise", "database-wise privacy parameter");
  cmd_pointwise->add_option("--mech", mech_name, "shm | counting | coin_flip");
  cmd_pointwise->add_option("--hist", hist_str, "histogram counts, e.g. 2,2 (shm)");
  cmd_pointwise->add_option("--T", T, "sample count");
  cmd_pointwise->add_option("--eps", eps, "epsilon")->required();
  cmd_pointwise->add_option("--M", counting_M, "marked records (counting)");
  cmd_pointwise->add_option("--n", n, "database size (counting)");
  cmd_pointwise->add_option("--p", coin_p, "coin flip bias");
  add_numeric_flag(cmd_pointwise);

  // worstcase
  auto* cmd_worst = app.add_subcommand("worstcase", "standard-DP delta via the histogram sweep");
  cmd_worst->add_option("--mech", mech_name, "shm | counting | coin_flip");
  cmd_worst->add_option("--n", n, "database size")->required();
  cmd_worst->add_option("--m", m_types, "record types");
  cmd_worst->add_option("--T", T, "sample count");
  cmd_worst->add_option("--eps", eps, "epsilon")->required();
  cmd_worst->add_option("--p", coin_p, "coin flip bias");
  add_numeric_flag(cmd_worst);

  // smoothed
  std::string pi_path, compute_name = "exact";
  long long trials = 100000;
  uint64_t seed = 1;
  double confidence = 0.99;
  int threads = 1;
  std::vector<std::string> mixtures;
  auto* cmd_smoothed = app.add_subcommand("smoothed", "smoothed-DP delta (exact or Monte-Carlo)");
  cmd_smoothed->add_option("--mech", mech_name, "shm | counting");
  cmd_smoothed->add_option("--pi", pi_path, "distribution set JSON")->required();
  cmd_smoothed->add_option("--n", n, "number of agents")->required();
  cmd_smoothed->add_option("--T", T, "sample count")->required();
  cmd_smoothed->add_option("--eps", eps, "epsilon")->required();
  cmd_smoothed->add_option("--compute", compute_name, "exact | mc");
  cmd_smoothed->add_option("--trials", trials, "MC trials");
  cmd_smoothed->add_option("--seed", seed, "MC seed");
  cmd_smoothed->add_option("--confidence", confidence, "CI confidence");
  cmd_smoothed->add_option("--threads", threads, "worker cap (does not affect results)");
  cmd_smoothed->add_option("--mixture", mixtures, "extra MC candidate: counts per vertex, e.g. 30,70");
  add_numeric_flag(cmd_smoothed);

  // sweep
  std::string config_path, out_prefix;
  int sweep_threads = 0;
  auto* cmd_sweep = app.add_subcommand("sweep", "experiment sweep emitting CSV/JSON plot data");
  cmd_sweep->add_option("--config", config_path, "experiment config JSON")->required();
  cmd_sweep->add_option("--pi", pi_path, "distribution set JSON")->required();
  cmd_sweep->add_option("--out", out_prefix, "output prefix (.csv/.json appended)")->required();
  cmd_sweep->add_option("--threads", sweep_threads,
                        "worker cap override (does not affect results)");

  // bounds
  std::string which = "upper";
  double c2 = 0.5, f_const = 0.0;
  long long mc_trials = 100000;
  auto* cmd_bounds = app.add_subcommand("bounds", "closed-form bounds and the continuous witness");
  cmd_bounds->add_option("--which", which, "upper | dplower | floor | with-replacement | witness");
  cmd_bounds->add_option("--n", n, "number of agents")->required();
  cmd_bounds->add_option("--T", T, "sample count")->required();
  cmd_bounds->add_option("--m", m_types, "record types");
  cmd_bounds->add_option("--eps", eps, "epsilon");
  cmd_bounds->add_option("--c2", c2, "Chernoff split constant");
  cmd_bounds->add_option("--f", f_const, "strict positivity constant");
  cmd_bounds->add_option("--pi", pi_path, "distribution set JSON (certificate source)");
  cmd_bounds->add_option("--trials", mc_trials, "witness simulation trials");
  cmd_bounds->add_option("--seed", seed, "witness simulation seed");

  // adversary
  double threshold_t = 0.51;
  std::string hist_minus_str;
  std::vector<long long> check_pair;
  auto* cmd_adv = app.add_subcommand("adversary", "Bayesian adversary utilities");
  cmd_adv->add_option("--mech", mech_name, "shm | coin_flip");
  cmd_adv->add_option("--p", coin_p, "coin flip bias");
  cmd_adv->add_option("--t", threshold_t, "utility threshold");
  cmd_adv->add_option("--hist-minus", hist_minus_str, "histogram of the n-1 known records (shm)");
  cmd_adv->add_option("--T", T, "sample count (shm)");
  cmd_adv->add_option("--eps", eps, "epsilon for the bound check");
  cmd_adv->add_option("--check-pair", check_pair, "two completion types for utility_bound_check")
      ->expected(2);
  add_numeric_flag(cmd_adv);

  // reduce
  std::string reduce_out;
  auto* cmd_reduce = app.add_subcommand("reduce", "convex-hull distribution reduction");
  cmd_reduce->add_option("--pi", pi_path, "distribution set JSON")->required();
  cmd_reduce->add_option("--out", reduce_out, "write the reduced set here");

  // ingest-check
  std::string csv_path;
  auto* cmd_ingest = app.add_subcommand("ingest-check", "validate an election CSV");
  cmd_ingest->add_option("--csv", csv_path, "election CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  if (cmd_pointwise->parsed()) {
    sdp::MechanismDescriptor mech;
    mech.kind = sdp::mechanism_kind_from_string(mech_name);
    mech.T = T;
    mech.coin_p = coin_p;
    std::vector<long long> hist;
    if (mech.kind == sdp::MechanismKind::kHistogramWithoutReplacement) {
      if (hist_str.empty()) throw std::invalid_argument("pointwise: --hist required for shm");
      hist = parse_counts(hist_str);
    }
    const sdp::Epsilon e(eps);
    Json j;
    if (numeric_mode() == sdp::NumericMode::kRational) {
      long long size = 0;
      for (long long c : hist) size += c;
      sdp::RationalArith ar(std::max({size, counting_M, n, T}));
      j = pointwise_json(ar, mech, hist, counting_M, n, e);
    } else {
      long long size = 0;
      for (long long c : hist) size += c;
      sdp::FloatArith ar(std::max({size, counting_M, n, T}));
      j = pointwise_json(ar, mech, hist, counting_M, n, e);
    }
    j["mode"] = sdp::to_string(numeric_mode());
    print_json(j);
    return 0;
  }

  if (cmd_worst->parsed()) {
    sdp::MechanismDescriptor mech;
    mech.kind = sdp::mechanism_kind_from_string(mech_name);
    mech.T = T;
    mech.coin_p = coin_p;
    Json j;
    if (numeric_mode() == sdp::NumericMode::kRational) {
      sdp::RationalArith ar(std::max(n, T));
      const auto r = sdp::worst_case_dp_delta(ar, mech, n, static_cast<size_t>(m_types),
                                              sdp::Epsilon(eps));
      j["delta"] = sdp::RationalArith::to_double(r.delta);
      j["log_delta"] = sdp::RationalArith::log_value(r.delta);
      j["worst_case"] = r.worst_neighbor;
    } else {
      sdp::FloatArith ar(std::max(n, T));
      const auto r = sdp::worst_case_dp_delta(ar, mech, n, static_cast<size_t>(m_types),
                                              sdp::Epsilon(eps));
      j["delta"] = sdp::FloatArith::to_double(r.delta);
      j["log_delta"] = sdp::FloatArith::log_value(r.delta);
      j["worst_case"] = r.worst_neighbor;
    }
    j["eps"] = eps;
    j["n"] = n;
    print_json(j);
    return 0;
  }

  if (cmd_smoothed->parsed()) {
    sdp::PrivacyQuery q;
    q.mech.kind = sdp::mechanism_kind_from_string(mech_name);
    q.mech.T = T;
    q.eps = sdp::Epsilon(eps);
    q.n = n;
    q.pi = sdp::load_distribution_set(pi_path);
    q.mode = sdp::compute_mode_from_string(compute_name);
    q.numeric = numeric_mode();
    q.trials = trials;
    q.seed = seed;
    q.confidence = confidence;
    q.threads = threads;
    for (const auto& mix : mixtures) q.mc_mixtures.push_back(parse_counts(mix));
    print_json(sdp::report_to_json(sdp::run_query(q)));
    return 0;
  }

  if (cmd_sweep->parsed()) {
    std::ifstream cf(config_path);
    if (!cf) throw std::invalid_argument("cannot open config: " + config_path);
    Json cj;
    cf >> cj;
    sdp::ExperimentConfig cfg = sdp::config_from_json(cj);
    if (!cj.contains("numeric")) cfg.numeric = default_numeric_mode();
    if (sweep_threads > 0) cfg.threads = sweep_threads;
    const sdp::DistributionSet pi = sdp::load_distribution_set(pi_path);
    const sdp::SweepResult res = sdp::run_sweep(cfg, pi);
    {
      std::ofstream csv(out_prefix + ".csv", std::ios::binary);
      if (!csv) throw std::invalid_argument("cannot write " + out_prefix + ".csv");
      csv << sdp::sweep_to_csv(res);
    }
    {
      std::ofstream js(out_prefix + ".json", std::ios::binary);
      if (!js) throw std::invalid_argument("cannot write " + out_prefix + ".json");
      js << sdp::sweep_to_json(res).dump(2) << "\n";
    }
    Json summary;
    summary["rows"] = res.rows.size();
    summary["csv"] = out_prefix + ".csv";
    summary["json"] = out_prefix + ".json";
    Json fits = Json::array();
    for (const auto& f : res.fits) {
      fits.push_back({{"eps", f.eps}, {"log_slope", f.fit.slope}, {"r2", f.fit.r2}});
    }
    summary["fits"] = fits;
    print_json(summary);
    return 0;
  }

  if (cmd_bounds->parsed()) {
    Json j;
    if (which == "upper") {
      sdp::BoundParams p;
      p.n = n;
      p.T = T;
      p.m = m_types;
      p.eps = eps;
      p.c2 = c2;
      p.f = f_const > 0.0 ? f_const
                          : sdp::strict_positivity(sdp::load_distribution_set(pi_path)).c;
      const auto b = sdp::shm_upper_bound(p);
      j = {{"which", "upper"}, {"delta", b.value}, {"log_delta", b.log_value}, {"detail", b.detail}};
    } else if (which == "dplower") {
      j = {{"which", "dplower"}, {"delta", sdp::shm_dp_lower_bound(n, T)}};
    } else if (which == "floor") {
      sdp::StrictPositivityCertificate cert;
      if (f_const > 0.0) {
        cert = {f_const, true};
      } else {
        cert = sdp::strict_positivity(sdp::load_distribution_set(pi_path));
      }
      const auto b = sdp::shm_tightness_floor(n, T, cert);
      j = {{"which", "floor"}, {"delta", b.value}, {"log_delta", b.log_value}, {"detail", b.detail}};
    } else if (which == "with-replacement") {
      sdp::StrictPositivityCertificate cert;
      if (f_const > 0.0) {
        cert = {f_const, true};
      } else {
        cert = sdp::strict_positivity(sdp::load_distribution_set(pi_path));
      }
      const auto b = sdp::with_replacement_bound(n, T, cert);
      j = {{"which", "with-replacement"}, {"eps", b.eps},     {"delta", b.value},
           {"log_delta", b.log_value},    {"detail", b.detail}};
    } else if (which == "witness") {
      const auto w = sdp::continuous_average_witness(n, T);
      j = {{"which", "witness"},
           {"lower_bound", w.lower_bound},
           {"description", w.description},
           {"mc_estimate", sdp::witness_mc_estimate(n, T, mc_trials, seed)},
           {"trials", mc_trials},
           {"seed", seed}};
    } else {
      throw std::invalid_argument("bounds: unknown --which " + which);
    }
    print_json(j);
    return 0;
  }

  if (cmd_adv->parsed()) {
    Json j;
    const auto kind = sdp::mechanism_kind_from_string(mech_name);
    if (kind == sdp::MechanismKind::kCoinFlip) {
      sdp::RationalArith ar(4);
      const auto u = sdp::adjusted_utility_coin_flip(ar, coin_p, threshold_t);
      j = {{"mechanism", "coin_flip"}, {"p", coin_p}, {"t", u.threshold_t}, {"utility", u.value}};
    } else if (kind == sdp::MechanismKind::kHistogramWithoutReplacement) {
      if (hist_minus_str.empty()) {
        throw std::invalid_argument("adversary: --hist-minus required for shm");
      }
      sdp::HistogramDb hm{parse_counts(hist_minus_str)};
      if (numeric_mode() == sdp::NumericMode::kRational) {
        sdp::RationalArith ar(hm.n() + 2);
        const auto u = sdp::adjusted_utility_shm(ar, hm, T, threshold_t);
        j = {{"mechanism", "shm"}, {"t", u.threshold_t}, {"utility", u.value}};
        if (check_pair.size() == 2) {
          const auto chk = sdp::utility_bound_check_shm(ar, hm, T,
                                                        static_cast<size_t>(check_pair[0]),
                                                        static_cast<size_t>(check_pair[1]),
                                                        sdp::Epsilon(eps));
          j["bound_check"] = {{"ok", chk.ok},
                              {"u", sdp::RationalArith::to_double(chk.u)},
                              {"d_sum", sdp::RationalArith::to_double(chk.d_sum)}};
        }
      } else {
        sdp::FloatArith ar(hm.n() + 2);
        const auto u = sdp::adjusted_utility_shm(ar, hm, T, threshold_t);
        j = {{"mechanism", "shm"}, {"t", u.threshold_t}, {"utility", u.value}};
        if (check_pair.size() == 2) {
          const auto chk = sdp::utility_bound_check_shm(ar, hm, T,
                                                        static_cast<size_t>(check_pair[0]),
                                                        static_cast<size_t>(check_pair[1]),
                                                        sdp::Epsilon(eps));
          j["bound_check"] = {{"ok", chk.ok},
                              {"u", sdp::FloatArith::to_double(chk.u)},
                              {"d_sum", sdp::FloatArith::to_double(chk.d_sum)}};
        }
      }
    } else {
      throw std::invalid_argument("adversary: supported mechanisms are shm and coin_flip");
    }
    print_json(j);
    return 0;
  }

  if (cmd_reduce->parsed()) {
    const sdp::DistributionSet set = sdp::load_distribution_set(pi_path);
    const auto verts = sdp::convex_hull_vertex_indices(set);
    Json j;
    j["vertices"] = verts;
    j["members"] = set.size();
    if (!reduce_out.empty()) {
      sdp::DistributionSet reduced;
      reduced.support = set.support;
      for (size_t i : verts) reduced.members.push_back(set.members[i]);
      std::ofstream out(reduce_out, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot write " + reduce_out);
      out << sdp::distribution_set_to_json(reduced).dump(2) << "\n";
      j["out"] = reduce_out;
    }
    print_json(j);
    return 0;
  }

  if (cmd_ingest->parsed()) {
    const auto res = sdp::load_election_csv_file(csv_path);
    Json j;
    j["records"] = res.records.size();
    Json recs = Json::array();
    for (const auto& r : res.records) {
      const auto pmf = sdp::to_top2_distribution(r);
      recs.push_back({{"year", r.year},
                      {"unit", r.unit},
                      {"top2", pmf.support},
                      {"shares", pmf.mass},
                      {"total_top2", sdp::top2_total(r)}});
    }
    j["parsed"] = recs;
    Json issues = Json::array();
    for (const auto& issue : res.issues) {
      issues.push_back({{"line", issue.line}, {"reason", issue.reason}});
    }
    j["issues"] = issues;
    print_json(j);
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sdp::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
