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

#include "seqdiv/core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace seqdiv {

AsymmetricDistance::AsymmetricDistance(int i_, int j_)
    : Error("dist[" + std::to_string(i_) + "][" + std::to_string(j_) + "] != dist[" +
            std::to_string(j_) + "][" + std::to_string(i_) + "]"),
      i(i_),
      j(j_) {}

NonzeroDiagonal::NonzeroDiagonal(int i_)
    : Error("dist[" + std::to_string(i_) + "][" + std::to_string(i_) + "] != 0"), i(i_) {}

ProbabilityOutOfRange::ProbabilityOutOfRange(int i_, double value_)
    : Error("probs[" + std::to_string(i_) + "] = " + std::to_string(value_) +
            " outside [0, 1]"),
      i(i_),
      value(value_) {}

DistanceMatrix::DistanceMatrix(int n, std::vector<double> cells) : n_(n), cells_(std::move(cells)) {
  if (static_cast<size_t>(n) * n != cells_.size()) {
    throw DimensionMismatch("distance matrix has " + std::to_string(cells_.size()) +
                            " cells, expected " + std::to_string(n) + "x" + std::to_string(n));
  }
}

Ordering::Ordering(std::vector<int> perm) : perm_(std::move(perm)) {
  const int n = static_cast<int>(perm_.size());
  std::vector<char> seen(n, 0);
  for (int v : perm_) {
    if (v < 0 || v >= n || seen[v]) {
      throw DimensionMismatch("ordering is not a permutation of {0.." + std::to_string(n - 1) +
                              "}");
    }
    seen[v] = 1;
  }
}

Instance build_instance(const DistanceMatrix& dist, std::vector<double> probs,
                        std::optional<std::vector<std::vector<int>>> categories,
                        std::optional<std::vector<std::vector<double>>> features) {
  const int n = dist.size();
  if (n < 1) throw DimensionMismatch("instance needs at least one item");
  if (static_cast<int>(probs.size()) != n) {
    throw DimensionMismatch("probs has " + std::to_string(probs.size()) + " entries, expected " +
                            std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) throw NonzeroDiagonal(i);
    for (int j = i + 1; j < n; ++j) {
      if (dist(i, j) != dist(j, i)) throw AsymmetricDistance(i, j);
      if (!(dist(i, j) >= 0.0) || !std::isfinite(dist(i, j))) {
        throw Error("dist[" + std::to_string(i) + "][" + std::to_string(j) +
                    "] is negative or non-finite");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) throw ProbabilityOutOfRange(i, probs[i]);
  }

  Instance inst;
  inst.n = n;
  inst.dist = dist;
  inst.probs = std::move(probs);

  if (categories) {
    if (static_cast<int>(categories->size()) != n) {
      throw DimensionMismatch("categories has " + std::to_string(categories->size()) +
                              " entries, expected " + std::to_string(n));
    }
    // Remap arbitrary category ids to a dense range, by first appearance.
    std::unordered_map<int, int> remap;
    std::vector<std::vector<int>> dense(n);
    for (int i = 0; i < n; ++i) {
      for (int raw : (*categories)[i]) {
        auto [it, inserted] = remap.emplace(raw, static_cast<int>(remap.size()));
        dense[i].push_back(it->second);
      }
      std::sort(dense[i].begin(), dense[i].end());
      dense[i].erase(std::unique(dense[i].begin(), dense[i].end()), dense[i].end());
    }
    inst.categories = std::move(dense);
    inst.num_categories = static_cast<int>(remap.size());
  }

  if (features) {
    if (static_cast<int>(features->size()) != n) {
      throw DimensionMismatch("features has " + std::to_string(features->size()) +
                              " entries, expected " + std::to_string(n));
    }
    for (int i = 1; i < n; ++i) {
      if ((*features)[i].size() != (*features)[0].size()) {
        throw DimensionMismatch("feature vector " + std::to_string(i) +
                                " has inconsistent length");
      }
    }
    inst.features = std::move(features);
  }
  return inst;
}

PrefixProducts prefix_products(const Instance& inst, const Ordering& ord) {
  if (ord.size() != inst.n) {
    throw DimensionMismatch("ordering of " + std::to_string(ord.size()) +
                            " items on an instance of " + std::to_string(inst.n));
  }
  PrefixProducts out;
  out.cum.resize(inst.n);
  double running = 1.0;
  for (int i = 0; i < inst.n; ++i) {
    running *= inst.probs[ord.at(i)];
    out.cum[i] = running;
  }
  return out;
}

MetricReport check_metric(const Instance& inst, double tol) {
  if (tol < 0.0) throw Error("check_metric: tol must be non-negative");
  MetricReport report;
  const int n = inst.n;
  std::vector<double> worst_by_i(n, 0.0);
  std::vector<std::array<int, 3>> triple_by_i(n, {0, 0, 0});

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k < n; ++k) {
        if (k == i) continue;
        // Violation of d(j,k) <= d(j,i) + d(i,k), with i the midpoint.
        const double v = inst.dist(j, k) - inst.dist(j, i) - inst.dist(i, k);
        if (v > worst_by_i[i]) {
          worst_by_i[i] = v;
          triple_by_i[i] = {j, i, k};
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (worst_by_i[i] > report.worst_violation) {
      report.worst_violation = worst_by_i[i];
      report.violating_triple = triple_by_i[i];
    }
  }
  report.is_metric = report.worst_violation <= tol;
  if (report.is_metric) report.violating_triple.reset();
  return report;
}

}  // namespace seqdiv
