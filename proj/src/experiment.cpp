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

#include "seqdiv/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>

#include <json.hpp>

#include "seqdiv/algorithms.hpp"
#include "seqdiv/data.hpp"
#include "seqdiv/objective.hpp"
#include "seqdiv/oracle.hpp"
#include "seqdiv/rng.hpp"

namespace seqdiv {

namespace {

const std::set<std::string> kAlgorithms = {"random", "explore", "dum",   "msd",   "mmr",
                                           "dpp",    "b2i",     "b3i",   "b4i",   "b3i-h",
                                           "b4i-h",  "bkm",     "coverage-greedy"};
const std::set<std::string> kMetrics = {"osd", "ocd", "expdcg", "expserendipity", "expnum"};
const std::set<std::string> kLambdaAlgos = {"msd", "mmr", "dpp"};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Everything needed to materialize one user's instance.
struct PreparedData {
  std::vector<std::string> user_keys;
  // rec: one shared distance matrix plus per-user probability rows over the
  // full item set. ir: per-user item lists with their own matrices built on
  // demand from the feature table.
  DistanceMatrix shared_dist;  // rec only
  std::vector<std::vector<int>> item_categories;
  bool has_categories = false;
  std::vector<std::vector<double>> user_probs;      // per user, aligned with user items
  std::vector<std::vector<int>> user_items;         // ir: feature-table row ids per user
  std::vector<std::vector<char>> user_novelty;      // per user, per item in the user's universe
  FeatureTable features;                            // ir
  DatasetKind kind = DatasetKind::rec;
};

Instance build_user_instance(const PreparedData& prep, int u) {
  if (prep.kind == DatasetKind::rec) {
    std::optional<std::vector<std::vector<int>>> cats;
    if (prep.has_categories) cats = prep.item_categories;
    return build_instance(prep.shared_dist, prep.user_probs[u], std::move(cats));
  }
  std::vector<std::vector<double>> feats;
  feats.reserve(prep.user_items[u].size());
  for (int item : prep.user_items[u]) feats.push_back(prep.features.rows[item]);
  return build_instance(cosine_distances(feats), prep.user_probs[u]);
}

PreparedData prepare(const ExperimentConfig& cfg, const RatingsTable& table,
                     std::vector<std::string>& notes) {
  PreparedData prep;
  prep.kind = cfg.kind;
  prep.user_keys = table.users;
  const RegimeSpec regime = RegimeSpec::named(cfg.regime);
  const int nu = table.num_users();

  if (cfg.kind == DatasetKind::rec) {
    if (cfg.categories_path.empty()) {
      throw Error("rec datasets need --categories for the Jaccard distance");
    }
    const CategoryTable cats = load_categories(cfg.categories_path, cfg.delimiter);
    prep.item_categories.resize(table.num_items());
    for (int i = 0; i < table.num_items(); ++i) {
      auto it = cats.item_index.find(table.items[i]);
      if (it != cats.item_index.end()) prep.item_categories[i] = cats.sets[it->second];
    }
    prep.has_categories = true;
    try {
      prep.shared_dist = jaccard_distances(prep.item_categories);
    } catch (const EmptyCategorySet& e) {
      throw Error("item '" + table.items[e.item] + "' has no categories; every ranked item "
                  "needs at least one for the Jaccard distance");
    }
    const MetricReport metric = check_metric(
        build_instance(prep.shared_dist, std::vector<double>(table.num_items(), 0.0)));
    if (!metric.is_metric) {
      notes.push_back("warning: item distances violate the triangle inequality (worst " +
                      std::to_string(metric.worst_violation) +
                      "); matching-based guarantees degrade");
    }
    {
      double sum = 0.0;
      const int ni = table.num_items();
      for (int i = 0; i < ni; ++i) {
        for (int j = i + 1; j < ni; ++j) sum += prep.shared_dist(i, j);
      }
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.2f", sum / (0.5 * ni * (ni - 1)));
      notes.push_back("average item-item distance: " + std::string(buf));
    }

    MfConfig mf;
    mf.seed = cfg.seed;
    mf.factors = table.triples.size() >= 1000000 ? 10 : 5;
    const std::vector<double> estimate = complete_ratings_mf(table, mf);
    const int ni = table.num_items();
    prep.user_probs.resize(nu);
    for (int u = 0; u < nu; ++u) {
      const std::span<const double> row(&estimate[static_cast<size_t>(u) * ni], ni);
      prep.user_probs[u] = interpolate_probs(row, table.min_rating, table.max_rating, regime);
    }

    // Novelty: an item is serendipitous when it covers a category outside
    // the user's rated history.
    std::vector<std::vector<char>> rated(nu, std::vector<char>(ni, 0));
    for (const auto& t : table.triples) rated[t.user][t.item] = 1;
    int all_covered_users = 0;
    prep.user_novelty.resize(nu);
    for (int u = 0; u < nu; ++u) {
      std::set<int> history_cats;
      for (int i = 0; i < ni; ++i) {
        if (rated[u][i]) history_cats.insert(prep.item_categories[i].begin(),
                                             prep.item_categories[i].end());
      }
      prep.user_novelty[u].resize(ni, 0);
      bool any = false;
      for (int i = 0; i < ni; ++i) {
        for (int c : prep.item_categories[i]) {
          if (!history_cats.count(c)) {
            prep.user_novelty[u][i] = 1;
            any = true;
            break;
          }
        }
      }
      if (!any) ++all_covered_users;
    }
    if (all_covered_users > 0) {
      notes.push_back("expserendipity is 0 for " + std::to_string(all_covered_users) +
                      " user(s) whose history covers every reachable category");
    }
  } else {
    if (cfg.features_path.empty()) {
      throw Error("ir datasets need --features for the cosine distance");
    }
    prep.features = load_features(cfg.features_path, cfg.delimiter);
    prep.user_items.resize(nu);
    std::vector<std::vector<double>> rels(nu);
    for (const auto& t : table.triples) {
      auto it = prep.features.item_index.find(table.items[t.item]);
      if (it == prep.features.item_index.end()) {
        throw Error("item '" + table.items[t.item] + "' has no feature row");
      }
      prep.user_items[t.user].push_back(it->second);
      rels[t.user].push_back(t.rating);
    }
    prep.user_probs.resize(nu);
    prep.user_novelty.resize(nu);
    for (int u = 0; u < nu; ++u) {
      prep.user_probs[u] =
          interpolate_probs(rels[u], table.min_rating, table.max_rating, regime);
      // Every document of the query is already in the user's history, so
      // nothing is novel.
      prep.user_novelty[u].assign(prep.user_items[u].size(), 0);
    }
    notes.push_back("expserendipity is identically 0: retrieval sequences contain only rated items");
  }
  return prep;
}

using RankFn = std::function<Ordering(const Instance&, int user)>;

RankFn make_ranker(const std::string& algo, const ExperimentConfig& cfg,
                   const std::vector<std::pair<std::string, double>>& tuned) {
  auto tuned_lambda = [&tuned](const std::string& name) {
    for (const auto& [algo_name, lambda] : tuned) {
      if (algo_name == name) return lambda;
    }
    return 0.5;
  };
  const std::uint64_t algo_seed = cfg.seed ^ fnv1a(algo);

  if (algo == "random") {
    return [algo_seed](const Instance& inst, int user) {
      return random_rank(inst, Rng::derive(algo_seed, user));
    };
  }
  if (algo == "explore") {
    BaselineConfig base;
    base.explore_k = cfg.explore_k;
    base.explore_steps = cfg.explore_steps;
    base.explore_adaptation = cfg.explore_adaptation;
    return [base, algo_seed](const Instance& inst, int user) {
      BaselineConfig c = base;
      c.seed = Rng::derive(algo_seed, user);
      return explore_rank(inst, c);
    };
  }
  if (algo == "dum") {
    return [](const Instance& inst, int) { return dum_rank(inst); };
  }
  if (algo == "msd" || algo == "mmr" || algo == "dpp") {
    BaselineConfig c;
    c.lambda = tuned_lambda(algo);
    if (algo == "msd") return [c](const Instance& inst, int) { return msd_rank(inst, c); };
    if (algo == "mmr") return [c](const Instance& inst, int) { return mmr_rank(inst, c); };
    return [c](const Instance& inst, int) { return dpp_rank(inst, c); };
  }
  if (algo == "b2i") {
    return [](const Instance& inst, int) { return greedy_rank(inst); };
  }
  if (algo == "b3i" || algo == "b4i") {
    BkeConfig c;
    c.kappa = algo == "b3i" ? 3 : 4;
    return [c](const Instance& inst, int) { return best_k_items(inst, c); };
  }
  if (algo == "b3i-h" || algo == "b4i-h") {
    BkeConfig c;
    c.kappa = algo == "b3i-h" ? 3 : 4;
    c.candidate_cap = cfg.bke_candidate_cap;
    return [c](const Instance& inst, int) { return best_k_items_heuristic(inst, c); };
  }
  if (algo == "bkm") {
    return [](const Instance& inst, int) { return greedy_matching_rank(inst); };
  }
  if (algo == "coverage-greedy") {
    return [](const Instance& inst, int) { return coverage_greedy_rank(inst); };
  }
  throw Error("unknown algorithm '" + algo + "'");
}

double compute_metric(const std::string& metric, const Instance& inst, const Ordering& ord,
                      const std::vector<char>& novelty) {
  const int n = inst.n;
  if (metric == "osd") return osd(inst, ord);
  if (metric == "ocd") return ocd(inst, ord);
  std::vector<double> probs_in_order(n);
  for (int pos = 0; pos < n; ++pos) probs_in_order[pos] = inst.probs[ord.at(pos)];
  if (metric == "expdcg") return exp_dcg(probs_in_order);
  if (metric == "expnum") return exp_num(probs_in_order);
  if (metric == "expserendipity") {
    std::vector<char> flags(n);
    for (int pos = 0; pos < n; ++pos) flags[pos] = novelty[ord.at(pos)];
    return exp_serendipity(probs_in_order, flags);
  }
  throw Error("unknown metric '" + metric + "'");
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << contents;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace

RankReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.algorithms.empty()) throw Error("config needs at least one algorithm");
  if (cfg.metrics.empty()) throw Error("config needs at least one metric");
  for (const auto& a : cfg.algorithms) {
    if (!kAlgorithms.count(a)) throw Error("unknown algorithm '" + a + "'");
  }
  for (const auto& m : cfg.metrics) {
    if (!kMetrics.count(m)) throw Error("unknown metric '" + m + "'");
  }

  RankReport report;
  report.regime = cfg.regime;
  report.dataset = cfg.dataset_name.empty()
                       ? std::filesystem::path(cfg.ratings_path).stem().string()
                       : cfg.dataset_name;

  const RatingsTable table = load_ratings(cfg.ratings_path, cfg.delimiter);
  if (table.triples.empty()) throw EmptyTable();
  PreparedData prep = prepare(cfg, table, report.notes);
  const int nu = table.num_users();

  // Tune lambda-dependent baselines on a user prefix before the full run.
  std::vector<std::string> lambda_algos;
  for (const auto& a : cfg.algorithms) {
    if (kLambdaAlgos.count(a)) lambda_algos.push_back(a);
  }
  if (!lambda_algos.empty()) {
    const int tune_n = std::min(nu, std::max(1, cfg.lambda_tune_users));
    std::vector<Instance> tune_instances;
    tune_instances.reserve(tune_n);
    for (int u = 0; u < tune_n; ++u) tune_instances.push_back(build_user_instance(prep, u));
    for (const auto& algo : lambda_algos) {
      RankMethod method;
      if (algo == "msd") method = [](const Instance& i, const BaselineConfig& c) { return msd_rank(i, c); };
      if (algo == "mmr") method = [](const Instance& i, const BaselineConfig& c) { return mmr_rank(i, c); };
      if (algo == "dpp") method = [](const Instance& i, const BaselineConfig& c) { return dpp_rank(i, c); };
      const LambdaSearch search = tune_lambda(tune_instances, method, cfg.lambda_grid);
      report.tuned_lambdas.emplace_back(algo, search.best_lambda);
    }
  }

  std::vector<RankFn> rankers;
  rankers.reserve(cfg.algorithms.size());
  for (const auto& algo : cfg.algorithms) {
    rankers.push_back(make_ranker(algo, cfg, report.tuned_lambdas));
  }

  const bool with_mc = cfg.mc_samples > 0;
  const size_t metrics_per_algo = cfg.metrics.size() + (with_mc ? 1 : 0);
  std::vector<std::vector<RankRow>> rows_by_user(nu);
  std::vector<std::string> error_by_user(nu);
  std::vector<char> non_metric(nu, 0);

#pragma omp parallel for schedule(dynamic)
  for (int u = 0; u < nu; ++u) {
    try {
      const Instance inst = build_user_instance(prep, u);
      if (cfg.kind == DatasetKind::ir && !check_metric(inst).is_metric) non_metric[u] = 1;
      const std::vector<char>& novelty = prep.user_novelty[u];
      auto& rows = rows_by_user[u];
      rows.reserve(cfg.algorithms.size() * metrics_per_algo);
      for (size_t a = 0; a < cfg.algorithms.size(); ++a) {
        const Ordering ord = rankers[a](inst, u);
        for (const auto& metric : cfg.metrics) {
          rows.push_back(
              {table.users[u], cfg.algorithms[a], metric, compute_metric(metric, inst, ord, novelty)});
        }
        if (with_mc) {
          const McEstimate mc = monte_carlo_osd(inst, ord, cfg.mc_samples,
                                                Rng::derive(cfg.seed ^ fnv1a("mc"), u));
          rows.push_back({table.users[u], cfg.algorithms[a], "osd_mc", mc.mean});
        }
      }
    } catch (const std::exception& e) {
      error_by_user[u] = e.what();
    }
  }
  for (int u = 0; u < nu; ++u) {
    if (!error_by_user[u].empty()) {
      throw Error("user '" + table.users[u] + "': " + error_by_user[u]);
    }
  }
  const int non_metric_users = static_cast<int>(
      std::count(non_metric.begin(), non_metric.end(), static_cast<char>(1)));
  if (non_metric_users > 0) {
    report.notes.push_back("warning: cosine distances violate the triangle inequality for " +
                           std::to_string(non_metric_users) + " of " + std::to_string(nu) +
                           " users; matching-based guarantees degrade");
  }

  for (int u = 0; u < nu; ++u) {
    report.per_user.insert(report.per_user.end(), rows_by_user[u].begin(), rows_by_user[u].end());
  }

  // Aggregate per (algorithm, metric), preserving the configured order.
  std::vector<std::string> metric_names = cfg.metrics;
  if (with_mc) metric_names.push_back("osd_mc");
  for (const auto& algo : cfg.algorithms) {
    for (const auto& metric : metric_names) {
      double sum = 0.0;
      int count = 0;
      for (const auto& row : report.per_user) {
        if (row.algorithm == algo && row.metric == metric) {
          sum += row.value;
          ++count;
        }
      }
      const double mean = count > 0 ? sum / count : 0.0;
      double sq = 0.0;
      for (const auto& row : report.per_user) {
        if (row.algorithm == algo && row.metric == metric) {
          sq += (row.value - mean) * (row.value - mean);
        }
      }
      const double stddev = count > 1 ? std::sqrt(sq / (count - 1)) : 0.0;
      report.aggregates.push_back({report.dataset, report.regime, algo, metric, mean, stddev, count});
    }
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    std::string per_user = "user,algorithm,metric,value\n";
    for (const auto& row : report.per_user) {
      per_user += row.user + "," + row.algorithm + "," + row.metric + "," + fmt_double(row.value) +
                  "\n";
    }
    write_file(cfg.out_dir + "/per_user.csv", per_user);
    emit_tables(report, "json", cfg.out_dir);
    if (cfg.format == "csv") emit_tables(report, "csv", cfg.out_dir);
  }
  return report;
}

void emit_tables(const RankReport& report, const std::string& format, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  if (format == "csv") {
    std::string csv = "dataset,regime,algorithm,metric,mean,std,n_users\n";
    for (const auto& row : report.aggregates) {
      csv += row.dataset + "," + row.regime + "," + row.algorithm + "," + row.metric + "," +
             fmt_double(row.mean) + "," + fmt_double(row.stddev) + "," +
             std::to_string(row.n_users) + "\n";
    }
    write_file(out_dir + "/aggregate.csv", csv);
    return;
  }
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["dataset"] = report.dataset;
    doc["regime"] = report.regime;
    nlohmann::ordered_json lambdas = nlohmann::ordered_json::object();
    for (const auto& [algo, lambda] : report.tuned_lambdas) lambdas[algo] = lambda;
    doc["tuned_lambdas"] = lambdas;
    doc["notes"] = report.notes;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.aggregates) {
      doc["rows"].push_back({{"dataset", row.dataset},
                             {"regime", row.regime},
                             {"algorithm", row.algorithm},
                             {"metric", row.metric},
                             {"mean", row.mean},
                             {"std", row.stddev},
                             {"n_users", row.n_users}});
    }
    write_file(out_dir + "/aggregate.json", doc.dump(2) + "\n");
    return;
  }
  throw Error("unknown table format '" + format + "'");
}

std::vector<AggregateRow> parse_aggregate_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<AggregateRow> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 7) throw ParseError(path, line_no, "expected 7 fields");
    rows.push_back({fields[0], fields[1], fields[2], fields[3], std::stod(fields[4]),
                    std::stod(fields[5]), std::stoi(fields[6])});
  }
  return rows;
}

}  // namespace seqdiv
