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

#ifndef SEQDIV_EXPERIMENT_HPP
#define SEQDIV_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seqdiv/baselines.hpp"
#include "seqdiv/core.hpp"

namespace seqdiv {

class IoError : public Error {
 public:
  using Error::Error;
};

enum class DatasetKind { rec, ir };

// Known algorithm keys: random, explore, dum, msd, mmr, dpp, b2i, b3i, b4i,
// b3i-h, b4i-h, bkm, coverage-greedy.
// Known metric keys: osd, ocd, expdcg, expserendipity, expnum.
struct ExperimentConfig {
  DatasetKind kind = DatasetKind::rec;
  std::string ratings_path;
  std::string categories_path;  // rec datasets
  std::string features_path;    // ir datasets
  char delimiter = ',';
  std::string regime = "medium";
  std::vector<std::string> algorithms;
  std::vector<std::string> metrics;
  std::vector<double> lambda_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  // Grid search runs on the first lambda_tune_users users; rankings for the
  // report itself always cover every user.
  int lambda_tune_users = 50;
  int bke_candidate_cap = 100;
  int explore_k = 10;
  int explore_steps = 10;
  ExploreAdaptation explore_adaptation = ExploreAdaptation::accepted_then_random;
  std::uint64_t mc_samples = 0;  // when > 0, adds an osd_mc metric row
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string format = "csv";  // aggregate table format: csv or json
  std::string dataset_name;    // defaults to the ratings file stem
};

struct RankRow {
  std::string user;
  std::string algorithm;
  std::string metric;
  double value;
};

struct AggregateRow {
  std::string dataset;
  std::string regime;
  std::string algorithm;
  std::string metric;
  double mean;
  double stddev;
  int n_users;
};

struct RankReport {
  std::string dataset;
  std::string regime;
  std::vector<RankRow> per_user;
  std::vector<AggregateRow> aggregates;
  std::vector<std::pair<std::string, double>> tuned_lambdas;
  std::vector<std::string> notes;
};

// Builds one instance per user (probabilities from the selected regime,
// distances per dataset kind), tunes lambda-dependent baselines, runs every
// requested algorithm, and scores every requested metric. Users are
// processed in parallel; rows come out in (user, algorithm, metric) order
// regardless of schedule. When cfg.out_dir is non-empty, writes
// per_user.csv, aggregate.json and (for format csv) aggregate.csv there.
RankReport run_experiment(const ExperimentConfig& cfg);

// Writes the aggregate table in the requested format. Columns, in order:
// dataset, regime, algorithm, metric, mean, std, n_users. Doubles are
// emitted with round-trip precision.
void emit_tables(const RankReport& report, const std::string& format, const std::string& out_dir);

std::vector<AggregateRow> parse_aggregate_csv(const std::string& path);

}  // namespace seqdiv

#endif  // SEQDIV_EXPERIMENT_HPP
