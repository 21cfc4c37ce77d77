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

#include "seqdiv/data.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "seqdiv/rng.hpp"

namespace seqdiv {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, delimiter)) fields.push_back(field);
  if (!line.empty() && line.back() == delimiter) fields.emplace_back();
  return fields;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

double parse_double(const std::string& s, const std::string& path, int line) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line, "cannot parse number '" + s + "'");
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

int intern(std::vector<std::string>& names, std::unordered_map<std::string, int>& index,
           const std::string& key) {
  auto [it, inserted] = index.emplace(key, static_cast<int>(names.size()));
  if (inserted) names.push_back(key);
  return it->second;
}

}  // namespace

ParseError::ParseError(const std::string& path, int line, const std::string& what)
    : Error(path + ":" + std::to_string(line) + ": " + what) {}

DuplicateRating::DuplicateRating(const std::string& user, const std::string& item)
    : Error("duplicate rating for (" + user + ", " + item + ")") {}

DegenerateRange::DegenerateRange(double vmin, double vmax)
    : Error("value range [" + std::to_string(vmin) + ", " + std::to_string(vmax) +
            "] has no width") {}

EmptyCategorySet::EmptyCategorySet(int item_)
    : Error("item " + std::to_string(item_) + " has an empty category set"), item(item_) {}

ZeroNormVector::ZeroNormVector(int item_)
    : Error("item " + std::to_string(item_) + " has a zero-norm feature vector"), item(item_) {}

RegimeSpec RegimeSpec::named(const std::string& name) {
  if (name == "small") return {0.1, 0.3, "small"};
  if (name == "medium") return {0.4, 0.6, "medium"};
  if (name == "large") return {0.7, 0.9, "large"};
  if (name == "full") return {0.1, 0.9, "full"};
  throw Error("unknown probability regime '" + name + "'");
}

RatingsTable load_ratings(const std::string& path, char delimiter) {
  std::ifstream in = open_or_throw(path);
  RatingsTable table;
  std::unordered_map<std::uint64_t, char> seen_pair;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line_no == 1) continue;  // header
    const auto fields = split_line(line, delimiter);
    if (fields.size() != 3) {
      throw ParseError(path, line_no, "expected 3 fields, got " + std::to_string(fields.size()));
    }
    const int u = intern(table.users, table.user_index, fields[0]);
    const int i = intern(table.items, table.item_index, fields[1]);
    const double r = parse_double(fields[2], path, line_no);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(i);
    if (!seen_pair.emplace(key, 1).second) throw DuplicateRating(fields[0], fields[1]);
    table.triples.push_back({u, i, r});
    if (table.triples.size() == 1) {
      table.min_rating = table.max_rating = r;
    } else {
      table.min_rating = std::min(table.min_rating, r);
      table.max_rating = std::max(table.max_rating, r);
    }
  }
  return table;
}

CategoryTable load_categories(const std::string& path, char delimiter) {
  std::ifstream in = open_or_throw(path);
  CategoryTable table;
  std::unordered_map<std::string, int> cat_index;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    if (line_no == 1) continue;
    const auto fields = split_line(line, delimiter);
    if (fields.size() != 2) {
      throw ParseError(path, line_no, "expected 2 fields, got " + std::to_string(fields.size()));
    }
    const int item = intern(table.items, table.item_index, fields[0]);
    const int cat = intern(table.category_names, cat_index, fields[1]);
    if (static_cast<int>(table.sets.size()) <= item) table.sets.resize(item + 1);
    table.sets[item].push_back(cat);
  }
  for (auto& set : table.sets) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return table;
}

FeatureTable load_features(const std::string& path, char delimiter) {
  std::ifstream in = open_or_throw(path);
  FeatureTable table;
  std::string line;
  int line_no = 0;
  size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split_line(line, delimiter);
    if (line_no == 1) {
      if (fields.size() < 2) throw ParseError(path, line_no, "feature header needs >= 2 fields");
      width = fields.size();
      continue;
    }
    if (fields.size() != width) {
      throw ParseError(path, line_no, "expected " + std::to_string(width) + " fields, got " +
                                          std::to_string(fields.size()));
    }
    const int item = intern(table.items, table.item_index, fields[0]);
    if (item != static_cast<int>(table.rows.size())) {
      throw ParseError(path, line_no, "duplicate feature row for item '" + fields[0] + "'");
    }
    std::vector<double> row(width - 1);
    for (size_t f = 1; f < width; ++f) row[f - 1] = parse_double(fields[f], path, line_no);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<double> complete_ratings_mf(const RatingsTable& table, const MfConfig& cfg) {
  if (table.triples.empty()) throw EmptyTable();
  if (cfg.factors < 1) throw Error("complete_ratings_mf: factors must be >= 1");
  if (!(cfg.learning_rate > 0.0)) throw Error("complete_ratings_mf: learning rate must be > 0");
  const int nu = table.num_users();
  const int ni = table.num_items();
  const int f = cfg.factors;

  Rng rng(cfg.seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f));
  std::vector<double> pu(static_cast<size_t>(nu) * f);
  std::vector<double> qi(static_cast<size_t>(ni) * f);
  for (double& x : pu) x = rng.uniform(0.01, scale);
  for (double& x : qi) x = rng.uniform(0.01, scale);

  std::vector<std::uint32_t> visit(table.triples.size());
  for (size_t t = 0; t < visit.size(); ++t) visit[t] = static_cast<std::uint32_t>(t);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle(visit, rng);
    for (std::uint32_t t : visit) {
      const auto& tr = table.triples[t];
      double* p = &pu[static_cast<size_t>(tr.user) * f];
      double* q = &qi[static_cast<size_t>(tr.item) * f];
      double pred = 0.0;
      for (int k = 0; k < f; ++k) pred += p[k] * q[k];
      const double err = tr.rating - pred;
      for (int k = 0; k < f; ++k) {
        const double pk = p[k];
        p[k] += cfg.learning_rate * (err * q[k] - cfg.regularization * pk);
        q[k] += cfg.learning_rate * (err * pk - cfg.regularization * q[k]);
      }
    }
  }

  std::vector<double> estimate(static_cast<size_t>(nu) * ni);
  for (int u = 0; u < nu; ++u) {
    for (int i = 0; i < ni; ++i) {
      double pred = 0.0;
      for (int k = 0; k < f; ++k) pred += pu[static_cast<size_t>(u) * f + k] * qi[static_cast<size_t>(i) * f + k];
      estimate[static_cast<size_t>(u) * ni + i] =
          std::clamp(pred, table.min_rating, table.max_rating);
    }
  }
  return estimate;
}

std::vector<double> interpolate_probs(std::span<const double> values, double vmin, double vmax,
                                      const RegimeSpec& regime) {
  if (!(vmax > vmin)) throw DegenerateRange(vmin, vmax);
  std::vector<double> probs(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    double t = (values[i] - vmin) / (vmax - vmin);
    t = std::clamp(t, 0.0, 1.0);
    // Convex form maps both endpoints exactly.
    probs[i] = std::clamp(regime.lo * (1.0 - t) + regime.hi * t, regime.lo, regime.hi);
  }
  return probs;
}

DistanceMatrix jaccard_distances(const std::vector<std::vector<int>>& category_sets) {
  const int n = static_cast<int>(category_sets.size());
  for (int i = 0; i < n; ++i) {
    if (category_sets[i].empty()) throw EmptyCategorySet(i);
  }
  std::vector<std::vector<int>> sorted = category_sets;
  for (auto& s : sorted) std::sort(s.begin(), s.end());

  DistanceMatrix dist(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = sorted[i];
      const auto& b = sorted[j];
      size_t ai = 0, bi = 0, inter = 0;
      while (ai < a.size() && bi < b.size()) {
        if (a[ai] < b[bi]) {
          ++ai;
        } else if (b[bi] < a[ai]) {
          ++bi;
        } else {
          ++inter;
          ++ai;
          ++bi;
        }
      }
      const size_t uni = a.size() + b.size() - inter;
      dist.set(i, j, 1.0 - static_cast<double>(inter) / static_cast<double>(uni));
    }
  }
  return dist;
}

DistanceMatrix cosine_distances(const std::vector<std::vector<double>>& features) {
  const int n = static_cast<int>(features.size());
  std::vector<double> norm(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (double x : features[i]) s += x * x;
    norm[i] = std::sqrt(s);
    if (norm[i] == 0.0) throw ZeroNormVector(i);
  }
  DistanceMatrix dist(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (size_t k = 0; k < features[i].size(); ++k) dot += features[i][k] * features[j][k];
      dist.set(i, j, 1.0 - dot / (norm[i] * norm[j]));
    }
  }
  return dist;
}

void write_synthetic_rec_dataset(const std::string& dir, int users, int items, int per_user,
                                 int num_categories, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  Rng rng(seed);

  std::vector<double> quality(items);
  for (double& q : quality) q = rng.uniform(1.0, 5.0);

  std::ofstream ratings(dir + "/ratings.csv");
  if (!ratings) throw Error("cannot write " + dir + "/ratings.csv");
  ratings << "user,item,rating\n";
  std::vector<int> pool(items);
  for (int i = 0; i < items; ++i) pool[i] = i;
  for (int u = 0; u < users; ++u) {
    // Partial Fisher-Yates: the first per_user entries are a uniform sample.
    for (int t = 0; t < per_user; ++t) {
      const int j = t + static_cast<int>(rng.next_below(items - t));
      std::swap(pool[t], pool[j]);
    }
    for (int t = 0; t < per_user; ++t) {
      const int item = pool[t];
      const double noisy = quality[item] + rng.uniform(-1.5, 1.5);
      const int r = std::clamp(static_cast<int>(std::lround(noisy)), 1, 5);
      ratings << "u" << u << ",i" << item << "," << r << "\n";
    }
  }

  std::ofstream cats(dir + "/categories.csv");
  if (!cats) throw Error("cannot write " + dir + "/categories.csv");
  cats << "item,category\n";
  for (int i = 0; i < items; ++i) {
    const int count = 1 + static_cast<int>(rng.next_below(3));
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < count) {
      const int c = static_cast<int>(rng.next_below(num_categories));
      if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
    }
    for (int c : chosen) cats << "i" << i << ",c" << c << "\n";
  }
}

void write_synthetic_ir_dataset(const std::string& dir, int queries, int docs_per_query, int dims,
                                std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  Rng rng(seed);

  std::ofstream ratings(dir + "/ratings.csv");
  if (!ratings) throw Error("cannot write " + dir + "/ratings.csv");
  ratings << "user,item,rating\n";
  std::ofstream features(dir + "/features.csv");
  if (!features) throw Error("cannot write " + dir + "/features.csv");
  features << "item";
  for (int k = 0; k < dims; ++k) features << ",f" << k;
  features << "\n";

  for (int q = 0; q < queries; ++q) {
    for (int d = 0; d < docs_per_query; ++d) {
      const std::string doc = "q" + std::to_string(q) + "_d" + std::to_string(d);
      ratings << "q" << q << "," << doc << "," << rng.next_below(5) << "\n";
      features << doc;
      for (int k = 0; k < dims; ++k) features << "," << rng.uniform(0.05, 1.0);
      features << "\n";
    }
  }
}

}  // namespace seqdiv
