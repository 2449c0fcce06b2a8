//
// Copyright 2026 The LinkTrust Authors
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
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace linktrust {

// Deterministic PRNG with hand-rolled distributions. The standard library's
// distribution objects are implementation-defined, which would break the
// byte-identical-output contract across toolchains; everything random in this
// project flows through this engine.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound), unbiased via rejection. bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Exact Poisson sampling: Knuth's product method, with the mean halved
  // (and draws doubled) until exp(-mean) is comfortably representable.
  std::uint64_t next_poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::uint64_t draws = 1;
    while (mean > 30.0) {
      mean *= 0.5;
      draws *= 2;
    }
    const double limit = std::exp(-mean);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < draws; ++i) {
      std::uint64_t k = 0;
      double p = 1.0;
      do {
        ++k;
        p *= next_double();
      } while (p > limit);
      total += k - 1;
    }
    return total;
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream seed from a master seed and a stream index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
  g.next();
  return g.next();
}

template <typename T>
void fisher_yates_shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// First k entries of a seeded shuffle: a uniform sample without replacement.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                           std::size_t k,
                                                           SplitMix64& rng) {
  std::vector<std::size_t> indices(n);
  for (std::size_t i = 0; i < n; ++i) indices[i] = i;
  if (k > n) k = n;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(indices[i], indices[j]);
  }
  indices.resize(k);
  return indices;
}

}  // namespace linktrust
