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

#include "seqdiv/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seqdiv/objective.hpp"

namespace seqdiv {

namespace {

constexpr double kUniformTol = 1e-12;

struct SearchResult {
  bool found = false;
  double value = 0.0;
  std::vector<int> seq;
};

// Conservative inflation so that floating rounding can never turn the upper
// bound into an accidental under-estimate.
inline double inflate(double ub) { return ub * (1.0 + 1e-12) + 1e-300; }

void take_if_better(SearchResult& best, double value, const std::vector<int>& seq) {
  if (!best.found || value > best.value) {
    best.found = true;
    best.value = value;
    best.seq = seq;
  }
}

double max_distance(const Instance& inst, const std::vector<int>& candidates) {
  double d_max = 0.0;
  for (size_t a = 0; a < candidates.size(); ++a) {
    for (size_t b = a + 1; b < candidates.size(); ++b) {
      d_max = std::max(d_max, inst.dist(candidates[a], candidates[b]));
    }
  }
  return d_max;
}

// Depth-first over sequences of candidates in ascending index order, uniform
// surrogate. Edge e (0-based) carries the fixed coefficient p^{e+2}/(1-p),
// so the remaining mass is bounded by the coefficient tail times d_max.
class UniformSearch {
 public:
  UniformSearch(const Instance& inst, const std::vector<int>& candidates, int kappa, double p,
                double d_max)
      : inst_(inst), candidates_(candidates), kappa_(kappa), d_max_(d_max) {
    coef_.resize(kappa - 1);
    double c = p * p / (1.0 - p);
    for (int e = 0; e < kappa - 1; ++e) {
      coef_[e] = c;
      c *= p;
    }
    tail_.assign(kappa, 0.0);
    for (int e = kappa - 2; e >= 0; --e) tail_[e] = tail_[e + 1] + coef_[e];
    used_.assign(candidates.size(), 0);
    seq_.reserve(kappa);
  }

  SearchResult run_from(int first_idx) {
    SearchResult best;
    used_[first_idx] = 1;
    seq_.push_back(candidates_[first_idx]);
    descend(0.0, best);
    seq_.pop_back();
    used_[first_idx] = 0;
    return best;
  }

 private:
  void descend(double value, SearchResult& best) {
    const int m = static_cast<int>(seq_.size());
    if (m == kappa_) {
      take_if_better(best, value, seq_);
      return;
    }
    if (best.found && inflate(value + tail_[m - 1] * d_max_) <= best.value) return;
    for (size_t idx = 0; idx < candidates_.size(); ++idx) {
      if (used_[idx]) continue;
      used_[idx] = 1;
      seq_.push_back(candidates_[idx]);
      descend(value + coef_[m - 1] * inst_.dist(seq_[m - 1], seq_[m]), best);
      seq_.pop_back();
      used_[idx] = 0;
    }
  }

  const Instance& inst_;
  const std::vector<int>& candidates_;
  int kappa_;
  double d_max_;
  std::vector<double> coef_;
  std::vector<double> tail_;
  std::vector<char> used_;
  std::vector<int> seq_;
};

// Depth-first search for the non-uniform surrogate. Written against the
// position-sum form: value = sum over positions j >= 1 of (prefix product
// through j) * (path length through j). Future positions are bounded by
// letting every later probability be b and every later edge be d_max.
class NonUniformSearch {
 public:
  NonUniformSearch(const Instance& inst, const std::vector<int>& candidates, int kappa,
                   double d_max)
      : inst_(inst), candidates_(candidates), kappa_(kappa), d_max_(d_max) {
    b_ = 0.0;
    for (int c : candidates) b_ = std::max(b_, inst.probs[c]);
    used_.assign(candidates.size(), 0);
    seq_.reserve(kappa);
  }

  SearchResult run_from(int first_idx) {
    SearchResult best;
    used_[first_idx] = 1;
    seq_.push_back(candidates_[first_idx]);
    descend(0.0, inst_.probs[candidates_[first_idx]], 0.0, best);
    seq_.pop_back();
    used_[first_idx] = 0;
    return best;
  }

 private:
  void descend(double value, double prod, double path_len, SearchResult& best) {
    const int m = static_cast<int>(seq_.size());
    if (m == kappa_) {
      take_if_better(best, value, seq_);
      return;
    }
    if (best.found) {
      double ub = value;
      double pb = prod;
      double pl = path_len;
      for (int j = m; j < kappa_; ++j) {
        pb *= b_;
        pl += d_max_;
        ub += pb * pl;
      }
      if (inflate(ub) <= best.value) return;
    }
    for (size_t idx = 0; idx < candidates_.size(); ++idx) {
      if (used_[idx]) continue;
      const int item = candidates_[idx];
      const double new_len = path_len + inst_.dist(seq_[m - 1], item);
      const double new_prod = prod * inst_.probs[item];
      used_[idx] = 1;
      seq_.push_back(item);
      descend(value + new_prod * new_len, new_prod, new_len, best);
      seq_.pop_back();
      used_[idx] = 0;
    }
  }

  const Instance& inst_;
  const std::vector<int>& candidates_;
  int kappa_;
  double d_max_;
  double b_;
  std::vector<char> used_;
  std::vector<int> seq_;
};

// Splits the search on the first item; each branch stays lexicographic, and
// the index-ordered reduction keeps the result schedule-independent.
template <typename Search>
SearchResult parallel_search(const std::vector<int>& candidates, Search make_search) {
  const int c = static_cast<int>(candidates.size());
  std::vector<SearchResult> per_first(c);
#pragma omp parallel for schedule(dynamic)
  for (int first = 0; first < c; ++first) {
    auto search = make_search();
    per_first[first] = search.run_from(first);
  }
  SearchResult best;
  for (int first = 0; first < c; ++first) {
    if (per_first[first].found) take_if_better(best, per_first[first].value, per_first[first].seq);
  }
  return best;
}

// Appends every remaining item, each step taking the marginal gain
// maximizer: gain(v) = (prefix product) * p_v * (distance of v to the
// prefix). Ties go to the lowest index; a zero prefix product degenerates to
// ascending index order.
void extend_greedy_osd(const Instance& inst, std::vector<int>& seq) {
  const int n = inst.n;
  std::vector<char> placed(n, 0);
  double prod = 1.0;
  for (int item : seq) {
    placed[item] = 1;
    prod *= inst.probs[item];
  }
  std::vector<double> to_prefix(n, 0.0);
  for (int v = 0; v < n; ++v) {
    if (placed[v]) continue;
    for (int item : seq) to_prefix[v] += inst.dist(v, item);
  }
  while (static_cast<int>(seq.size()) < n) {
    int pick = -1;
    double best_gain = -1.0;
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      const double gain = prod * inst.probs[v] * to_prefix[v];
      if (pick < 0 || gain > best_gain) {
        pick = v;
        best_gain = gain;
      }
    }
    placed[pick] = 1;
    prod *= inst.probs[pick];
    seq.push_back(pick);
    for (int v = 0; v < n; ++v) {
      if (!placed[v]) to_prefix[v] += inst.dist(v, pick);
    }
  }
}

void extend_ascending(const Instance& inst, std::vector<int>& seq) {
  std::vector<char> placed(inst.n, 0);
  for (int item : seq) placed[item] = 1;
  for (int v = 0; v < inst.n; ++v) {
    if (!placed[v]) seq.push_back(v);
  }
}

Ordering best_k_over_candidates(const Instance& inst, const BkeConfig& cfg,
                                std::vector<int> candidates) {
  if (cfg.kappa < 2 || cfg.kappa > inst.n) throw KappaOutOfRange(cfg.kappa, inst.n);
  if (cfg.kappa > static_cast<int>(candidates.size())) {
    throw KappaOutOfRange(cfg.kappa, static_cast<int>(candidates.size()));
  }
  std::sort(candidates.begin(), candidates.end());
  const double d_max = max_distance(inst, candidates);

  SearchResult best;
  if (cfg.mode == BkeMode::uniform) {
    const auto [lo, hi] = std::minmax_element(inst.probs.begin(), inst.probs.end());
    if (*hi - *lo > kUniformTol) throw NonUniformProbsInUniformMode();
    const double p = inst.probs[0];
    if (!(p > 0.0 && p < 1.0)) throw DegenerateProbability(p);
    best = parallel_search(candidates, [&] {
      return UniformSearch(inst, candidates, cfg.kappa, p, d_max);
    });
  } else {
    best = parallel_search(candidates, [&] {
      return NonUniformSearch(inst, candidates, cfg.kappa, d_max);
    });
  }

  std::vector<int> seq = std::move(best.seq);
  if (cfg.extension == BkeExtension::greedy) {
    extend_greedy_osd(inst, seq);
  } else {
    extend_ascending(inst, seq);
  }
  return Ordering(std::move(seq));
}

}  // namespace

KappaOutOfRange::KappaOutOfRange(int kappa, int n)
    : Error("kappa = " + std::to_string(kappa) + " outside [2, " + std::to_string(n) + "]") {}

Ordering best_k_items(const Instance& inst, const BkeConfig& cfg) {
  std::vector<int> all(inst.n);
  for (int v = 0; v < inst.n; ++v) all[v] = v;
  return best_k_over_candidates(inst, cfg, std::move(all));
}

Ordering best_k_items_heuristic(const Instance& inst, const BkeConfig& cfg) {
  if (!cfg.candidate_cap) {
    throw Error("best_k_items_heuristic requires a candidate_cap");
  }
  if (*cfg.candidate_cap < cfg.kappa) throw KappaOutOfRange(cfg.kappa, *cfg.candidate_cap);
  const int cap = std::min(*cfg.candidate_cap, inst.n);
  const Ordering greedy = greedy_rank(inst);
  std::vector<int> candidates(greedy.perm().begin(), greedy.perm().begin() + cap);
  return best_k_over_candidates(inst, cfg, std::move(candidates));
}

Matching greedy_matching(const Instance& inst) {
  if (inst.n < 2) throw TooFewItems("matching needs at least two items");
  struct Edge {
    double d;
    int u, v;
  };
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(inst.n) * (inst.n - 1) / 2);
  for (int u = 0; u < inst.n; ++u) {
    for (int v = u + 1; v < inst.n; ++v) edges.push_back({inst.dist(u, v), u, v});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.d != b.d) return a.d > b.d;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });

  Matching m;
  const size_t target = inst.n / 2;
  std::vector<char> matched(inst.n, 0);
  for (const Edge& e : edges) {
    if (matched[e.u] || matched[e.v]) continue;
    matched[e.u] = matched[e.v] = 1;
    m.edges.emplace_back(e.u, e.v);
    if (m.edges.size() == target) break;
  }
  return m;
}

Ordering greedy_matching_rank(const Instance& inst) {
  const Matching m = greedy_matching(inst);
  const int n = inst.n;
  const int half = static_cast<int>(m.edges.size());
  std::vector<int> pi(n, -1);

  if (n % 2 == 1) {
    std::vector<char> matched(n, 0);
    for (auto [u, v] : m.edges) matched[u] = matched[v] = 1;
    for (int v = 0; v < n; ++v) {
      if (!matched[v]) pi[n - 1] = v;
    }
  }

  // Orient back to front. The heaviest edge occupies the first two
  // positions; each edge hands the endpoint farther from the following
  // position to the connector slot.
  for (int i = half; i >= 1; --i) {
    const auto [u, v] = m.edges[i - 1];
    if (i == half && n % 2 == 0) {
      pi[2 * i - 2] = v;
      pi[2 * i - 1] = u;
      continue;
    }
    const int next = pi[2 * i];
    if (inst.dist(v, next) >= inst.dist(u, next)) {
      pi[2 * i - 2] = u;
      pi[2 * i - 1] = v;
    } else {
      pi[2 * i - 2] = v;
      pi[2 * i - 1] = u;
    }
  }
  return Ordering(std::move(pi));
}

BkmProperties bkm_properties(const Instance& inst, const Ordering& ord) {
  BkmProperties props;
  const int n = ord.size();
  const int half = n / 2;
  for (int i = 1; i < half; ++i) {
    // Positions are 1-based in the pair layout: edge i sits at (2i-1, 2i).
    const double cur = inst.dist(ord.at(2 * i - 2), ord.at(2 * i - 1));
    const double nxt = inst.dist(ord.at(2 * i), ord.at(2 * i + 1));
    if (cur < nxt) props.p1 = false;
  }
  for (int i = 1; i <= half; ++i) {
    if (2 * i >= n) break;  // no connector after the final edge
    const double edge = inst.dist(ord.at(2 * i - 2), ord.at(2 * i - 1));
    const double connector = inst.dist(ord.at(2 * i - 1), ord.at(2 * i));
    if (connector < 0.5 * edge) props.p2 = false;
  }
  return props;
}

Ordering greedy_rank(const Instance& inst) {
  const int n = inst.n;
  if (n < 2) throw TooFewItems("greedy ranking needs at least two items");
  int bi = 0, bj = 1;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = inst.probs[i] * inst.probs[j] * inst.dist(i, j);
      if (v > best) {
        best = v;
        bi = i;
        bj = j;
      }
    }
  }
  std::vector<int> seq{bi, bj};
  extend_greedy_osd(inst, seq);
  return Ordering(std::move(seq));
}

Ordering coverage_greedy_rank(const Instance& inst) {
  if (!inst.has_categories()) throw MissingCategories();
  const int n = inst.n;
  std::vector<char> covered(inst.num_categories, 0);
  std::vector<char> placed(n, 0);
  std::vector<int> seq;
  seq.reserve(n);
  double prod = 1.0;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    double best_gain = -1.0;
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      int fresh = 0;
      for (int c : (*inst.categories)[v]) fresh += !covered[c];
      // Marginal expected-coverage gain of appending v.
      const double gain = prod * inst.probs[v] * fresh;
      if (pick < 0 || gain > best_gain) {
        pick = v;
        best_gain = gain;
      }
    }
    placed[pick] = 1;
    prod *= inst.probs[pick];
    for (int c : (*inst.categories)[pick]) covered[c] = 1;
    seq.push_back(pick);
  }
  return Ordering(std::move(seq));
}

}  // namespace seqdiv
