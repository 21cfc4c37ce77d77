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

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "seqdiv/data.hpp"
#include "seqdiv/experiment.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "lo:hi:step", e.g. "0:1:0.1".
std::vector<double> parse_grid(const std::string& s) {
  double lo = 0.0, hi = 1.0, step = 0.1;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0 || hi < lo) {
    throw CLI::ValidationError("--lambda-grid expects lo:hi:step");
  }
  const int count = 1 + static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) grid[i] = lo + i * step;
  // Index arithmetic avoids drift; snap the last point onto hi when the
  // range divides evenly.
  if (std::abs(grid.back() - hi) < 1e-9) grid.back() = hi;
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sequential-diversity ranking benchmark"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "run algorithms over a dataset and emit result tables");
  std::string kind = "rec";
  std::string ratings, categories, features, regime = "medium";
  std::string algorithms = "random,b2i";
  std::string metrics = "osd";
  std::string grid = "0:1:0.1";
  std::string out_dir = "out";
  std::string format = "csv";
  std::string delimiter = ",";
  std::string adaptation = "accepted";
  std::uint64_t mc_samples = 0, seed = 0;
  int tune_users = 50, candidate_cap = 100, explore_k = 10, explore_steps = 10, threads = 0;
  run->add_option("--dataset-kind", kind, "rec or ir")->check(CLI::IsMember({"rec", "ir"}));
  run->add_option("--ratings", ratings, "ratings.csv (user,item,rating)")->required();
  run->add_option("--categories", categories, "categories.csv (item,category)");
  run->add_option("--features", features, "features.csv (item,f0,f1,...)");
  run->add_option("--regime", regime, "probability regime")
      ->check(CLI::IsMember({"small", "medium", "large", "full"}));
  run->add_option("--algorithms", algorithms, "comma-separated algorithm list");
  run->add_option("--metrics", metrics, "comma-separated metric list");
  run->add_option("--lambda-grid", grid, "grid as lo:hi:step");
  run->add_option("--lambda-tune-users", tune_users, "users used for the lambda grid search");
  run->add_option("--candidate-cap", candidate_cap, "candidate set size for b3i-h/b4i-h");
  run->add_option("--explore-k", explore_k, "explore list size");
  run->add_option("--explore-steps", explore_steps, "explore session steps");
  run->add_option("--explore-adaptation", adaptation, "accepted or concat")
      ->check(CLI::IsMember({"accepted", "concat"}));
  run->add_option("--mc-samples", mc_samples, "if > 0, adds an osd_mc metric");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--format", format, "aggregate table format")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--delimiter", delimiter, "field delimiter override");
  run->add_option("--threads", threads, "worker threads (0 = library default)");

  // --- synth ---
  auto* synth = app.add_subcommand("synth", "write a deterministic synthetic dataset");
  std::string synth_kind = "rec", synth_out = "synth";
  int users = 290, items = 300, per_user = 24, num_categories = 30;
  int queries = 50, docs_per_query = 40, dims = 8;
  std::uint64_t synth_seed = 7;
  synth->add_option("--kind", synth_kind, "rec or ir")->check(CLI::IsMember({"rec", "ir"}));
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--users", users, "rec: number of users");
  synth->add_option("--items", items, "rec: number of items");
  synth->add_option("--per-user", per_user, "rec: ratings per user");
  synth->add_option("--num-categories", num_categories, "rec: category pool size");
  synth->add_option("--queries", queries, "ir: number of queries");
  synth->add_option("--docs-per-query", docs_per_query, "ir: documents per query");
  synth->add_option("--dims", dims, "ir: feature dimensions");
  synth->add_option("--seed", synth_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      if (synth_kind == "rec") {
        seqdiv::write_synthetic_rec_dataset(synth_out, users, items, per_user, num_categories,
                                            synth_seed);
        std::printf("wrote %s/ratings.csv and %s/categories.csv\n", synth_out.c_str(),
                    synth_out.c_str());
      } else {
        seqdiv::write_synthetic_ir_dataset(synth_out, queries, docs_per_query, dims, synth_seed);
        std::printf("wrote %s/ratings.csv and %s/features.csv\n", synth_out.c_str(),
                    synth_out.c_str());
      }
      return 0;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif
    seqdiv::ExperimentConfig cfg;
    cfg.kind = kind == "rec" ? seqdiv::DatasetKind::rec : seqdiv::DatasetKind::ir;
    cfg.ratings_path = ratings;
    cfg.categories_path = categories;
    cfg.features_path = features;
    cfg.delimiter = delimiter.empty() ? ',' : delimiter[0];
    cfg.regime = regime;
    cfg.algorithms = split_list(algorithms);
    cfg.metrics = split_list(metrics);
    cfg.lambda_grid = parse_grid(grid);
    cfg.lambda_tune_users = tune_users;
    cfg.bke_candidate_cap = candidate_cap;
    cfg.explore_k = explore_k;
    cfg.explore_steps = explore_steps;
    cfg.explore_adaptation = adaptation == "concat"
                                 ? seqdiv::ExploreAdaptation::concatenate_lists
                                 : seqdiv::ExploreAdaptation::accepted_then_random;
    cfg.mc_samples = mc_samples;
    cfg.seed = seed;
    cfg.out_dir = out_dir;
    cfg.format = format;

    const seqdiv::RankReport report = seqdiv::run_experiment(cfg);
    for (const auto& [algo, lambda] : report.tuned_lambdas) {
      std::printf("tuned lambda[%s] = %.2f\n", algo.c_str(), lambda);
    }
    for (const auto& note : report.notes) std::printf("note: %s\n", note.c_str());
    std::printf("%-16s %-16s %12s %12s %8s\n", "algorithm", "metric", "mean", "std", "users");
    for (const auto& row : report.aggregates) {
      std::printf("%-16s %-16s %12.6f %12.6f %8d\n", row.algorithm.c_str(), row.metric.c_str(),
                  row.mean, row.stddev, row.n_users);
    }
    std::printf("tables written to %s\n", out_dir.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
