// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "seqdiv/oracle.hpp"

#include <cmath>

#include "seqdiv/rng.hpp"

namespace seqdiv {

namespace {

double eval_objective(ObjectiveKind kind, const Instance& inst, std::span<const int> seq) {
  switch (kind) {
    case ObjectiveKind::osd:
      return osd(inst, seq);
    case ObjectiveKind::ocd:
      return ocd(inst, seq);
    case ObjectiveKind::ohp:
      return ohp(inst, seq);
  }
  throw Error("unknown objective kind");
}

constexpr std::uint64_t kMcBlock = 4096;

// One simulated session: returns div_sum of the accepted prefix.
double simulate_session(const Instance& inst, std::span<const int> order, Rng& rng,
                        std::vector<int>& accepted) {
  accepted.clear();
  double value = 0.0;
  for (int item : order) {
    if (rng.next_double() >= inst.probs[item]) break;
    for (int prev : accepted) value += inst.dist(item, prev);
    accepted.push_back(item);
  }
  return value;
}

struct BlockStats {
  double sum = 0.0;
  double sumsq = 0.0;
  double min = 0.0;
  double max = 0.0;
};

McEstimate reduce_blocks(const std::vector<BlockStats>& blocks, std::uint64_t samples,
                         std::uint64_t seed) {
  double sum = 0.0;
  double sumsq = 0.0;
  double lo = blocks.front().min;
  double hi = blocks.front().max;
  for (const BlockStats& b : blocks) {
    sum += b.sum;
    sumsq += b.sumsq;
    lo = std::min(lo, b.min);
    hi = std::max(hi, b.max);
  }
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  if (lo == hi) {
    // A degenerate sample has no spread; report it without accumulated
    // rounding noise.
    est.mean = lo;
    est.stderr_ = 0.0;
    return est;
  }
  est.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    const double var =
        std::max(0.0, (sumsq - static_cast<double>(samples) * est.mean * est.mean) /
                          static_cast<double>(samples - 1));
    est.stderr_ = std::sqrt(var / static_cast<double>(samples));
  }
  return est;
}

}  // namespace

OracleResult brute_force(const Instance& inst, ObjectiveKind objective) {
  return brute_force_custom(inst, [objective](const Instance& i, std::span<const int> s) {
    return eval_objective(objective, i, s);
  });
}

OracleResult brute_force_serial(const Instance& inst, ObjectiveKind objective) {
  return brute_force_custom_serial(inst, [objective](const Instance& i, std::span<const int> s) {
    return eval_objective(objective, i, s);
  });
}

McEstimate monte_carlo_osd(const Instance& inst, const Ordering& ord, std::uint64_t samples,
                           std::uint64_t seed) {
  if (samples < 1) throw Error("monte_carlo_osd needs at least one sample");
  const std::uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<BlockStats> stats(blocks);
  const std::span<const int> order = ord.items();

#pragma omp parallel
  {
    std::vector<int> accepted;
    accepted.reserve(order.size());
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
      Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(b)));
      const std::uint64_t lo = static_cast<std::uint64_t>(b) * kMcBlock;
      const std::uint64_t hi = std::min(samples, lo + kMcBlock);
      BlockStats st;
      for (std::uint64_t s = lo; s < hi; ++s) {
        const double v = simulate_session(inst, order, rng, accepted);
        st.sum += v;
        st.sumsq += v * v;
        if (s == lo) {
          st.min = st.max = v;
        } else {
          st.min = std::min(st.min, v);
          st.max = std::max(st.max, v);
        }
      }
      stats[b] = st;
    }
  }
  return reduce_blocks(stats, samples, seed);
}

McEstimate monte_carlo_osd_serial(const Instance& inst, const Ordering& ord,
                                  std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1) throw Error("monte_carlo_osd needs at least one sample");
  const std::uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<BlockStats> stats(blocks);
  const std::span<const int> order = ord.items();
  std::vector<int> accepted;
  accepted.reserve(order.size());
  for (std::uint64_t b = 0; b < blocks; ++b) {
    Rng rng(Rng::derive(seed, b));
    const std::uint64_t lo = b * kMcBlock;
    const std::uint64_t hi = std::min(samples, lo + kMcBlock);
    BlockStats st;
    for (std::uint64_t s = lo; s < hi; ++s) {
      const double v = simulate_session(inst, order, rng, accepted);
      st.sum += v;
      st.sumsq += v * v;
      if (s == lo) {
        st.min = st.max = v;
      } else {
        st.min = std::min(st.min, v);
        st.max = std::max(st.max, v);
      }
    }
    stats[b] = st;
  }
  return reduce_blocks(stats, samples, seed);
}

}  // namespace seqdiv
