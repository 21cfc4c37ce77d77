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

#ifndef SEQDIV_CORE_HPP
#define SEQDIV_CORE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqdiv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class AsymmetricDistance : public Error {
 public:
  AsymmetricDistance(int i, int j);
  int i, j;
};

class NonzeroDiagonal : public Error {
 public:
  explicit NonzeroDiagonal(int i);
  int i;
};

class ProbabilityOutOfRange : public Error {
 public:
  ProbabilityOutOfRange(int i, double value);
  int i;
  double value;
};

class MissingCategories : public Error {
 public:
  MissingCategories() : Error("instance has no category sets") {}
};

class TooFewItems : public Error {
 public:
  explicit TooFewItems(const std::string& what) : Error(what) {}
};

// Dense symmetric distance matrix, row-major. Quadratic memory is fine at
// the instance sizes we handle (a few thousand items per user at most).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), cells_(static_cast<size_t>(n) * n, 0.0) {}
  DistanceMatrix(int n, std::vector<double> cells);

  int size() const { return n_; }
  double operator()(int i, int j) const { return cells_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, double d) {
    cells_[static_cast<size_t>(i) * n_ + j] = d;
    cells_[static_cast<size_t>(j) * n_ + i] = d;
  }
  const std::vector<double>& cells() const { return cells_; }

 private:
  int n_ = 0;
  std::vector<double> cells_;
};

// An item universe: pairwise distances, per-item continuation probabilities,
// and (optionally) category sets and feature vectors. Immutable after
// construction and safe to share across threads; every operation in this
// library is a pure function of its inputs.
struct Instance {
  int n = 0;
  DistanceMatrix dist;
  std::vector<double> probs;
  // Category ids are remapped densely to [0, num_categories) at build time;
  // each per-item set is sorted and duplicate-free.
  std::optional<std::vector<std::vector<int>>> categories;
  int num_categories = 0;
  std::optional<std::vector<std::vector<double>>> features;

  bool has_categories() const { return categories.has_value(); }
};

// A permutation of {0..n-1}; the universal algorithm output.
class Ordering {
 public:
  // Validates that perm is a bijection on {0..n-1}.
  explicit Ordering(std::vector<int> perm);

  int size() const { return static_cast<int>(perm_.size()); }
  int at(int pos) const { return perm_[pos]; }
  std::span<const int> items() const { return perm_; }
  const std::vector<int>& perm() const { return perm_; }

  bool operator==(const Ordering& other) const { return perm_ == other.perm_; }

 private:
  std::vector<int> perm_;
};

// Cumulative continuation products along an ordering:
// cum[i] = probs[perm[0]] * ... * probs[perm[i]].
struct PrefixProducts {
  std::vector<double> cum;
};

struct MetricReport {
  bool is_metric = true;
  double worst_violation = 0.0;                 // max over triples of d(i,k) - d(i,j) - d(j,k)
  std::optional<std::array<int, 3>> violating_triple;
};

// Validates all invariants eagerly: symmetry, zero diagonal, probabilities
// in [0,1], and per-item table lengths. Category ids may be arbitrary ints;
// they are remapped densely by first appearance.
Instance build_instance(const DistanceMatrix& dist, std::vector<double> probs,
                        std::optional<std::vector<std::vector<int>>> categories = std::nullopt,
                        std::optional<std::vector<std::vector<double>>> features = std::nullopt);

PrefixProducts prefix_products(const Instance& inst, const Ordering& ord);

// Exhaustive O(n^3) triangle-inequality scan.
MetricReport check_metric(const Instance& inst, double tol = 1e-9);

}  // namespace seqdiv

#endif  // SEQDIV_CORE_HPP
