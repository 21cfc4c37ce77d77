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

#ifndef SEQDIV_ALGORITHMS_HPP
#define SEQDIV_ALGORITHMS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "seqdiv/core.hpp"

namespace seqdiv {

class KappaOutOfRange : public Error {
 public:
  KappaOutOfRange(int kappa, int n);
};

class NonUniformProbsInUniformMode : public Error {
 public:
  NonUniformProbsInUniformMode()
      : Error("uniform mode requires all continuation probabilities equal (within 1e-12)") {}
};

enum class BkeMode { uniform, non_uniform };
enum class BkeExtension { greedy, arbitrary };

struct BkeConfig {
  int kappa = 2;
  BkeMode mode = BkeMode::non_uniform;
  // How the best-kappa prefix is completed to a full ranking: greedy
  // marginal-gain appends, or the remaining items in ascending index order.
  // The approximation guarantee holds either way.
  BkeExtension extension = BkeExtension::greedy;
  std::optional<int> candidate_cap;  // heuristic pre-filter size
};

// Vertex-disjoint edges in non-increasing weight order.
struct Matching {
  std::vector<std::pair<int, int>> edges;
};

// Exhaustive best-kappa-items ranking: finds the kappa-item sequence
// maximizing the truncated surrogate (ell_hat in uniform mode, ell_tilde
// otherwise) over all ordered kappa-subsequences, then extends it to a full
// ranking. Ties resolve to the lexicographically smallest sequence.
Ordering best_k_items(const Instance& inst, const BkeConfig& cfg);

// Same search restricted to a candidate set: the first min(cap, n) items of
// the greedy ranking. Requires cfg.candidate_cap.
Ordering best_k_items_heuristic(const Instance& inst, const BkeConfig& cfg);

// Greedy maximum-weight matching on the complete distance graph. Equal
// weights break ties by lexicographic pair order.
Matching greedy_matching(const Instance& inst);

// Ranking built from the greedy matching: edges laid onto consecutive
// position pairs in decreasing weight, the odd leftover vertex placed last,
// and each edge oriented back-to-front so that the endpoint farther from the
// next position becomes the connector.
Ordering greedy_matching_rank(const Instance& inst);

// Structural guarantees of greedy_matching_rank on metric instances:
// p1: consecutive edge weights are non-increasing across position pairs;
// p2: every connector is at least half the preceding edge.
struct BkmProperties {
  bool p1 = true;
  bool p2 = true;
};
BkmProperties bkm_properties(const Instance& inst, const Ordering& ord);

// Seeds with the ordered pair maximizing p_i * p_j * d(i, j), then appends
// the item with the largest marginal sequential-diversity gain at each step.
Ordering greedy_rank(const Instance& inst);

// Position-by-position greedy for the coverage objective: appends the item
// with the largest marginal expected-coverage gain; ties to lowest index.
Ordering coverage_greedy_rank(const Instance& inst);

}  // namespace seqdiv

#endif  // SEQDIV_ALGORITHMS_HPP
