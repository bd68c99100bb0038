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

#ifndef SDP_PMF_HPP_
#define SDP_PMF_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sdp {

inline constexpr int kQuantGridSize = 256;

// Finite probability mass function over an ordered list of record-type
// labels. Masses are stored as doubles; exact-rational consumers convert
// entries with BigRational::from_double, which is lossless.
struct FinitePmf {
  std::vector<std::string> support;
  std::vector<double> mass;

  void validate(double tol = 1e-9) const {
    if (support.size() != mass.size()) {
      throw std::invalid_argument("FinitePmf: support/mass size mismatch");
    }
    if (support.empty()) throw std::invalid_argument("FinitePmf: empty support");
    std::set<std::string> seen;
    double total = 0.0;
    for (size_t i = 0; i < support.size(); ++i) {
      if (!seen.insert(support[i]).second) {
        throw std::invalid_argument("FinitePmf: duplicate support label " + support[i]);
      }
      if (mass[i] < 0.0) throw std::invalid_argument("FinitePmf: negative mass");
      total += mass[i];
    }
    if (std::fabs(total - 1.0) > tol) {
      throw std::invalid_argument("FinitePmf: masses sum to " + std::to_string(total));
    }
  }
};

// A set of distributions sharing one support, playing the role of the
// adversary's candidate set of ground-truth distributions.
struct DistributionSet {
  std::vector<std::string> support;
  std::vector<std::vector<double>> members;

  size_t support_size() const { return support.size(); }
  size_t size() const { return members.size(); }

  FinitePmf member(size_t i) const { return FinitePmf{support, members.at(i)}; }

  void validate(double tol = 1e-9) const {
    if (members.empty()) throw std::invalid_argument("DistributionSet: no members");
    for (const auto& m : members) {
      FinitePmf{support, m}.validate(tol);
    }
  }

  static DistributionSet of(const std::vector<FinitePmf>& pmfs) {
    if (pmfs.empty()) throw std::invalid_argument("DistributionSet: no members");
    DistributionSet set;
    set.support = pmfs.front().support;
    for (const auto& p : pmfs) {
      if (p.support != set.support) {
        throw std::invalid_argument("DistributionSet: members must share one support");
      }
      set.members.push_back(p.mass);
    }
    return set;
  }
};

struct StrictPositivityCertificate {
  double c = 0.0;
  bool holds = false;
};

// Largest c such that every member's every mass entry is >= c.
inline StrictPositivityCertificate strict_positivity(const DistributionSet& set) {
  set.validate();
  double c = 1.0;
  for (const auto& m : set.members) {
    for (double v : m) c = std::min(c, v);
  }
  return StrictPositivityCertificate{c, c > 0.0};
}

inline FinitePmf bernoulli_pmf(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli_pmf: p out of [0,1]");
  }
  return FinitePmf{{"0", "1"}, {p, 1.0 - p}};
}

namespace detail {

inline std::string grid_label(int i) {
  // Grid points (i-128)/256 are exact 8-digit decimals.
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8f", (i - 128) / 256.0);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

inline double gaussian_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double gaussian_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// P[(lo, hi]] under N(mu, sigma^2), arranged to avoid cancellation in far
// tails (both CDF values close to 0 or to 1).
inline double gaussian_interval(double lo, double hi, double mu, double sigma) {
  const double zlo = (lo - mu) / sigma;
  const double zhi = (hi - mu) / sigma;
  if (zlo >= 0.0) return gaussian_upper_tail(zlo) - gaussian_upper_tail(zhi);
  if (zhi <= 0.0) return gaussian_upper_tail(-zhi) - gaussian_upper_tail(-zlo);
  return gaussian_cdf(zhi) - gaussian_cdf(zlo);
}

// P[(lo, hi]] under the Laplace distribution with mean mu and variance
// sigma^2 (scale sigma / sqrt(2)).
inline double laplace_interval(double lo, double hi, double mu, double sigma) {
  const double b = sigma / std::sqrt(2.0);
  const double zlo = (lo - mu) / b;
  const double zhi = (hi - mu) / b;
  if (zlo >= 0.0) return 0.5 * (std::exp(-zlo) - std::exp(-zhi));
  if (zhi <= 0.0) return 0.5 * (std::exp(zhi) - std::exp(zlo));
  const double flo = 0.5 * std::exp(zlo);
  const double fhi = 1.0 - 0.5 * std::exp(-zhi);
  return fhi - flo;
}

template <typename IntervalFn>
FinitePmf quantize_8bit(double mu, double sigma, IntervalFn interval) {
  if (!(sigma > 0.0)) throw std::invalid_argument("quantized pmf: sigma must be positive");
  FinitePmf pmf;
  pmf.support.reserve(kQuantGridSize);
  pmf.mass.reserve(kQuantGridSize);
  // Mass of grid point i covers ((i-128)/256, (i-127)/256]; the normalizer
  // is the distribution's mass on (-0.5, 0.5], so tails are truncated before
  // normalization.
  const double z = interval(-0.5, 0.5, mu, sigma);
  if (!(z > 0.0)) throw std::invalid_argument("quantized pmf: zero mass on (-0.5, 0.5]");
  for (int i = 0; i < kQuantGridSize; ++i) {
    const double lo = (i - 128) / 256.0;
    const double hi = (i - 127) / 256.0;
    pmf.support.push_back(grid_label(i));
    pmf.mass.push_back(interval(lo, hi, mu, sigma) / z);
  }
  return pmf;
}

}  // namespace detail

// 8-bit quantized Gaussian over the grid {(i-128)/256 : i = 0..255}.
inline FinitePmf quantized_gaussian(double mu, double sigma) {
  return detail::quantize_8bit(mu, sigma, detail::gaussian_interval);
}

// 8-bit quantized Laplacian with the same (mean, variance) parameterization
// as the Gaussian constructor.
inline FinitePmf quantized_laplacian(double mu, double sigma) {
  return detail::quantize_8bit(mu, sigma, detail::laplace_interval);
}

// Pushforward of a PMF through a deterministic per-record map: masses of
// labels merged by f are added.
inline FinitePmf pushforward(const FinitePmf& pmf,
                             const std::map<std::string, std::string>& f) {
  std::vector<std::string> out_support;
  std::map<std::string, size_t> index;
  std::vector<double> out_mass;
  for (size_t i = 0; i < pmf.support.size(); ++i) {
    const auto it = f.find(pmf.support[i]);
    if (it == f.end()) {
      throw std::invalid_argument("pushforward: map undefined on label " + pmf.support[i]);
    }
    auto [pos, inserted] = index.try_emplace(it->second, out_support.size());
    if (inserted) {
      out_support.push_back(it->second);
      out_mass.push_back(0.0);
    }
    out_mass[pos->second] += pmf.mass[i];
  }
  return FinitePmf{std::move(out_support), std::move(out_mass)};
}

inline DistributionSet pushforward_set(const DistributionSet& set,
                                       const std::map<std::string, std::string>& f) {
  std::vector<FinitePmf> out;
  out.reserve(set.size());
  for (size_t i = 0; i < set.size(); ++i) out.push_back(pushforward(set.member(i), f));
  return DistributionSet::of(out);
}

// Order-insensitive fingerprint of a distribution set (FNV-1a over the
// canonical serialization: support labels plus sorted member mass vectors).
// Guards against composing guarantees proved under different sets.
inline uint64_t pi_fingerprint(const DistributionSet& set) {
  std::vector<std::vector<double>> members = set.members;
  std::sort(members.begin(), members.end());
  uint64_t h = 1469598103934665603ull;
  const auto mix = [&h](const void* data, size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  for (const auto& label : set.support) mix(label.data(), label.size() + 1);
  for (const auto& m : members) {
    for (double v : m) mix(&v, sizeof(v));
  }
  return h;
}

}  // namespace sdp

#endif  // SDP_PMF_HPP_
