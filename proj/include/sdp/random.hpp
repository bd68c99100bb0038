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

#ifndef SDP_RANDOM_HPP_
#define SDP_RANDOM_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sdp {

inline uint64_t splitmix64_mix(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based substream PRNG: the stream key is derived from
// (seed, id0, id1, id2), so per-trial streams are independent of scheduling.
// Draws advance a SplitMix64 state.
class SubstreamRng {
 public:
  explicit SubstreamRng(uint64_t seed, uint64_t id0 = 0, uint64_t id1 = 0, uint64_t id2 = 0) {
    uint64_t k = splitmix64_mix(seed);
    k = splitmix64_mix(k ^ (id0 + 0x9E3779B97F4A7C15ull));
    k = splitmix64_mix(k ^ (id1 + 0xD1B54A32D192ED03ull));
    k = splitmix64_mix(k ^ (id2 + 0x8CB92BA72F3D8DD7ull));
    state_ = k;
  }

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) without modulo bias.
  uint64_t next_below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: zero bound");
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  uint64_t state_;
};

// Walker/Vose alias table for O(1) sampling from a fixed discrete law.
// Construction is deterministic for a fixed weight vector.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& weights) {
    const size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("AliasTable: empty weights");
    double total = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("AliasTable: negative weight");
      total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("AliasTable: zero total weight");
    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    for (size_t i = 0; i < n; ++i) scaled[i] = weights[i] * static_cast<double>(n) / total;
    std::vector<uint32_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (size_t i = n; i-- > 0;) {
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      const uint32_t s = small.back();
      small.pop_back();
      const uint32_t l = large.back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (uint32_t i : large) prob_[i] = 1.0;
    for (uint32_t i : small) prob_[i] = 1.0;
  }

  uint32_t sample(SubstreamRng& rng) const {
    const uint64_t idx = rng.next_below(prob_.size());
    return rng.next_unit() < prob_[idx] ? static_cast<uint32_t>(idx) : alias_[idx];
  }

  size_t size() const { return prob_.size(); }

 private:
  std::vector<double> prob_;
  std::vector<uint32_t> alias_;
};

// Draws a size-T subset of {0..n-1} by partial Fisher-Yates and reports
// whether `marked` landed in the sample.
inline bool sample_without_replacement_contains(long long n, long long T, long long marked,
                                                SubstreamRng& rng) {
  std::vector<uint32_t> idx(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = static_cast<uint32_t>(i);
  for (long long i = 0; i < T; ++i) {
    const uint64_t j = i + rng.next_below(static_cast<uint64_t>(n - i));
    std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    if (idx[static_cast<size_t>(i)] == static_cast<uint32_t>(marked)) return true;
  }
  return false;
}

}  // namespace sdp

#endif  // SDP_RANDOM_HPP_
