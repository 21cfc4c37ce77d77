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

#ifndef SEQDIV_ORACLE_HPP
#define SEQDIV_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <numeric>
#include <vector>

#include "seqdiv/core.hpp"
#include "seqdiv/objective.hpp"

namespace seqdiv {

class InstanceTooLarge : public Error {
 public:
  explicit InstanceTooLarge(int n)
      : Error("exhaustive enumeration refused for n = " + std::to_string(n) + " (cap is 10)") {}
};

enum class ObjectiveKind { osd, ocd, ohp };

struct OracleResult {
  Ordering best_ordering;
  double best_score = 0.0;
  std::uint64_t evaluated = 0;  // n! when exhaustive
};

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

constexpr int kBruteForceCap = 10;

// Exact optimum by full enumeration, any evaluator. Permutations are visited
// in lexicographic order and ties resolve to the first maximum encountered,
// so the result is the lexicographically smallest optimal ordering. The
// OpenMP variant splits on the first position and reduces in index order,
// which reproduces the serial answer independent of thread schedule.
template <typename Eval>
OracleResult brute_force_custom(const Instance& inst, Eval&& eval) {
  const int n = inst.n;
  if (n > kBruteForceCap) throw InstanceTooLarge(n);
  if (n == 1) {
    std::vector<int> identity{0};
    const double score = eval(inst, std::span<const int>(identity));
    return {Ordering(identity), score, 1};
  }

  struct Best {
    double score = 0.0;
    std::vector<int> perm;
    std::uint64_t evaluated = 0;
  };
  std::vector<Best> by_first(n);
  std::vector<std::exception_ptr> error_by_first(n);

#pragma omp parallel for schedule(dynamic)
  for (int first = 0; first < n; ++first) {
    try {
      std::vector<int> seq(n);
      seq[0] = first;
      std::vector<int> rest;
      rest.reserve(n - 1);
      for (int v = 0; v < n; ++v) {
        if (v != first) rest.push_back(v);
      }
      Best local;
      do {
        std::copy(rest.begin(), rest.end(), seq.begin() + 1);
        const double score = eval(inst, std::span<const int>(seq));
        ++local.evaluated;
        if (local.perm.empty() || score > local.score) {
          local.score = score;
          local.perm = seq;
        }
      } while (std::next_permutation(rest.begin(), rest.end()));
      by_first[first] = std::move(local);
    } catch (...) {
      error_by_first[first] = std::current_exception();
    }
  }
  for (int first = 0; first < n; ++first) {
    if (error_by_first[first]) std::rethrow_exception(error_by_first[first]);
  }

  Best global;
  for (int first = 0; first < n; ++first) {
    global.evaluated += by_first[first].evaluated;
    if (global.perm.empty() || by_first[first].score > global.score) {
      global.score = by_first[first].score;
      global.perm = std::move(by_first[first].perm);
    }
  }
  return {Ordering(std::move(global.perm)), global.score, global.evaluated};
}

// Single-loop serial twin of brute_force_custom; kept as the reference the
// parallel path is tested against (and timed against in the benchmark).
template <typename Eval>
OracleResult brute_force_custom_serial(const Instance& inst, Eval&& eval) {
  const int n = inst.n;
  if (n > kBruteForceCap) throw InstanceTooLarge(n);
  std::vector<int> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  double best_score = 0.0;
  std::vector<int> best;
  std::uint64_t evaluated = 0;
  do {
    const double score = eval(inst, std::span<const int>(seq));
    ++evaluated;
    if (best.empty() || score > best_score) {
      best_score = score;
      best = seq;
    }
  } while (std::next_permutation(seq.begin(), seq.end()));
  return {Ordering(std::move(best)), best_score, evaluated};
}

OracleResult brute_force(const Instance& inst, ObjectiveKind objective);
OracleResult brute_force_serial(const Instance& inst, ObjectiveKind objective);

// Simulates user sessions along ord: each examined item is accepted with its
// continuation probability, a rejection ends the session, and the sample
// value is the pairwise diversity of the accepted prefix. Samples are drawn
// in fixed-size blocks with per-block seeds derived from the master seed, so
// the estimate does not depend on the thread count or schedule; the serial
// variant reproduces it bit for bit.
McEstimate monte_carlo_osd(const Instance& inst, const Ordering& ord, std::uint64_t samples,
                           std::uint64_t seed);
McEstimate monte_carlo_osd_serial(const Instance& inst, const Ordering& ord,
                                  std::uint64_t samples, std::uint64_t seed);

}  // namespace seqdiv

#endif  // SEQDIV_ORACLE_HPP
