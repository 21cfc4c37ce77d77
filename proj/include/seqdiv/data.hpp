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

#ifndef SEQDIV_DATA_HPP
#define SEQDIV_DATA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqdiv/core.hpp"

namespace seqdiv {

class ParseError : public Error {
 public:
  ParseError(const std::string& path, int line, const std::string& what);
};

class DuplicateRating : public Error {
 public:
  DuplicateRating(const std::string& user, const std::string& item);
};

class EmptyTable : public Error {
 public:
  EmptyTable() : Error("table holds no ratings") {}
};

class DegenerateRange : public Error {
 public:
  DegenerateRange(double vmin, double vmax);
};

class EmptyCategorySet : public Error {
 public:
  explicit EmptyCategorySet(int item);
  int item;
};

class ZeroNormVector : public Error {
 public:
  explicit ZeroNormVector(int item);
  int item;
};

// (user, item, rating) triples with vocabularies assigned by first
// appearance. No duplicate (user, item) pair.
struct RatingsTable {
  struct Triple {
    int user;
    int item;
    double rating;
  };
  std::vector<std::string> users;
  std::vector<std::string> items;
  std::unordered_map<std::string, int> user_index;
  std::unordered_map<std::string, int> item_index;
  std::vector<Triple> triples;
  double min_rating = 0.0;
  double max_rating = 0.0;

  int num_users() const { return static_cast<int>(users.size()); }
  int num_items() const { return static_cast<int>(items.size()); }
};

struct CategoryTable {
  std::vector<std::string> items;
  std::unordered_map<std::string, int> item_index;
  std::vector<std::string> category_names;
  std::vector<std::vector<int>> sets;  // dense category ids, sorted, per item
};

struct FeatureTable {
  std::vector<std::string> items;
  std::unordered_map<std::string, int> item_index;
  std::vector<std::vector<double>> rows;
};

// Target probability interval for relevance interpolation.
struct RegimeSpec {
  double lo = 0.0;
  double hi = 0.0;
  std::string name;

  // small [0.1,0.3], medium [0.4,0.6], large [0.7,0.9], full [0.1,0.9].
  static RegimeSpec named(const std::string& name);
};

struct MfConfig {
  int factors = 5;
  int epochs = 50;
  double learning_rate = 0.01;
  double regularization = 0.05;
  std::uint64_t seed = 0;
};

// Loaders for header-bearing delimited text (see the file schemas in the
// README). Vocabularies are assigned by first appearance, so reloading the
// same file always produces identical ids.
RatingsTable load_ratings(const std::string& path, char delimiter = ',');
CategoryTable load_categories(const std::string& path, char delimiter = ',');
FeatureTable load_features(const std::string& path, char delimiter = ',');

// Biasless matrix factorization trained by SGD on squared error with L2
// regularization. Returns the dense num_users x num_items estimate,
// row-major, with predictions clipped to the observed rating range.
// Deterministic per cfg.seed: factors are initialized from the seed and each
// epoch applies a fixed seed-derived shuffle of the triples.
std::vector<double> complete_ratings_mf(const RatingsTable& table, const MfConfig& cfg);

// Affine map of values from [vmin, vmax] onto [regime.lo, regime.hi], with
// endpoints mapped exactly and everything clipped into the interval.
std::vector<double> interpolate_probs(std::span<const double> values, double vmin, double vmax,
                                      const RegimeSpec& regime);

// d(i,j) = 1 - |C_i n C_j| / |C_i u C_j|. Every set must be non-empty; the
// result is a metric.
DistanceMatrix jaccard_distances(const std::vector<std::vector<int>>& category_sets);

// d(i,j) = 1 - cos(x_i, x_j). May violate the triangle inequality; callers
// that need the metric guarantee should consult check_metric.
DistanceMatrix cosine_distances(const std::vector<std::vector<double>>& features);

// Writes a deterministic synthetic recommendation dataset (ratings.csv +
// categories.csv) shaped like a small ratings benchmark: `users` users,
// `items` items, `per_user` ratings per user on the 1..5 integer scale.
void write_synthetic_rec_dataset(const std::string& dir, int users, int items, int per_user,
                                 int num_categories, std::uint64_t seed);

// Writes a synthetic retrieval dataset (ratings.csv with one query per user
// and graded relevance 0..4, features.csv with dense document vectors).
void write_synthetic_ir_dataset(const std::string& dir, int queries, int docs_per_query, int dims,
                                std::uint64_t seed);

}  // namespace seqdiv

#endif  // SEQDIV_DATA_HPP
