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

#ifndef SEQDIV_BASELINES_HPP
#define SEQDIV_BASELINES_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "seqdiv/core.hpp"

namespace seqdiv {

class KernelBreakdown : public Error {
 public:
  KernelBreakdown()
      : Error("similarity kernel is not positive definite even after regularization") {}
};

enum class ExploreAdaptation { accepted_then_random, concatenate_lists };

struct BaselineConfig {
  double lambda = 0.5;  // diversity vs relevance trade-off, in [0, 1]
  std::uint64_t seed = 0;
  double explore_alpha = 0.5;
  int explore_k = 10;      // recommendation list size
  int explore_steps = 10;  // expected exploration steps
  ExploreAdaptation explore_adaptation = ExploreAdaptation::accepted_then_random;
};

// Uniform random permutation; deterministic per seed.
Ordering random_rank(const Instance& inst, std::uint64_t seed);

// Maximal marginal relevance: repeatedly takes the item maximizing
// lambda * p_i - (1 - lambda) * max_{j selected} (1 - d(i, j)),
// where the max over an empty selection is 0.
Ordering mmr_rank(const Instance& inst, const BaselineConfig& cfg);

// Max-sum dispersion: repeatedly takes the item maximizing
// p_i + lambda * sum_{j selected} d(i, j).
Ordering msd_rank(const Instance& inst, const BaselineConfig& cfg);

// Greedy MAP-style selection under the similarity kernel S = 1 - d, scoring
// lambda * p_i + (1 - lambda) * (logdet(S_{R+i}) - logdet(S_R)). Log-dets are
// maintained through rank-one Cholesky updates; if the kernel loses positive
// definiteness the selection restarts once on S + 1e-6 I.
Ordering dpp_rank(const Instance& inst, const BaselineConfig& cfg);

// Utility-ordered coverage ranking: items sorted by probability descending,
// those contributing fresh categories first, duplicates deferred to the tail.
Ordering dum_rank(const Instance& inst);

// Session-simulation baseline: iteratively presents size-k lists scored by
// [p^(-a) + d(i,R)^(-a) - 1]^(-1/a) (score := p_i while nothing is selected),
// simulates acceptances, and linearizes per cfg.explore_adaptation.
Ordering explore_rank(const Instance& inst, const BaselineConfig& cfg);

struct LambdaSearch {
  double best_lambda = 0.0;
  std::vector<double> grid;      // ascending
  std::vector<double> mean_osd;  // aligned with grid
};

using RankMethod = std::function<Ordering(const Instance&, const BaselineConfig&)>;

// Evaluates mean sequential sum diversity across instances for every lambda
// in the grid; ties resolve to the smaller lambda.
LambdaSearch tune_lambda(std::span<const Instance> instances, const RankMethod& method,
                         std::span<const double> grid, const BaselineConfig& base_cfg = {});

// Log-determinants of the leading principal submatrices of `kernel` (flat
// n x n, row-major) along the given selection order, computed by the same
// incremental factorization dpp_rank uses. Exposed for oracle tests.
std::vector<double> incremental_logdet_prefixes(const std::vector<double>& kernel, int n,
                                                std::span<const int> order);

}  // namespace seqdiv

#endif  // SEQDIV_BASELINES_HPP
