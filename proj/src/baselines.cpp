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

#include "seqdiv/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seqdiv/objective.hpp"
#include "seqdiv/rng.hpp"

namespace seqdiv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKernelJitter = 1e-6;

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error("lambda = " + std::to_string(lambda) + " outside [0, 1]");
  }
}

std::vector<int> probs_descending(const Instance& inst) {
  std::vector<int> order(inst.n);
  for (int v = 0; v < inst.n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.probs[a] > inst.probs[b];
  });
  return order;
}

// Incremental Cholesky over a symmetric kernel: keeps, for every item, its
// factor row against the selected set and the residual pivot
// d2[i] = K_ii - |row_i|^2, which is exactly the log-det increment exp'd.
class CholeskyGreedyState {
 public:
  CholeskyGreedyState(const std::vector<double>& kernel, int n, double jitter)
      : kernel_(kernel), n_(n), rows_(static_cast<size_t>(n) * n, 0.0), row_len_(0), d2_(n) {
    for (int i = 0; i < n; ++i) d2_[i] = kernel_[static_cast<size_t>(i) * n + i] + jitter;
  }

  double pivot(int i) const { return d2_[i]; }

  // Commits item j to the selection and refreshes every pivot.
  // Pre: pivot(j) > 0.
  void select(int j) {
    const double dj = std::sqrt(d2_[j]);
    const double* cj = &rows_[static_cast<size_t>(j) * n_];
    for (int i = 0; i < n_; ++i) {
      if (i == j) continue;
      const double* ci = &rows_[static_cast<size_t>(i) * n_];
      double dot = 0.0;
      for (int t = 0; t < row_len_; ++t) dot += cj[t] * ci[t];
      const double e = (kernel_[static_cast<size_t>(j) * n_ + i] - dot) / dj;
      rows_[static_cast<size_t>(i) * n_ + row_len_] = e;
      d2_[i] -= e * e;
    }
    d2_[j] = 0.0;
    ++row_len_;
  }

 private:
  const std::vector<double>& kernel_;
  int n_;
  std::vector<double> rows_;
  int row_len_;
  std::vector<double> d2_;
};

std::vector<double> similarity_kernel(const Instance& inst) {
  std::vector<double> s(static_cast<size_t>(inst.n) * inst.n);
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      s[static_cast<size_t>(i) * inst.n + j] = 1.0 - inst.dist(i, j);
    }
  }
  return s;
}

// One full greedy DPP pass; returns false when every remaining pivot is
// non-positive, i.e. the factorization broke down.
bool dpp_select(const Instance& inst, const std::vector<double>& kernel, double lambda,
                double jitter, std::vector<int>& out) {
  const int n = inst.n;
  CholeskyGreedyState chol(kernel, n, jitter);
  std::vector<char> selected(n, 0);
  out.clear();
  out.reserve(n);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    double best = -kInf;
    for (int i = 0; i < n; ++i) {
      if (selected[i]) continue;
      const double d2 = chol.pivot(i);
      if (d2 <= 0.0) continue;
      const double score = lambda * inst.probs[i] + (1.0 - lambda) * std::log(d2);
      if (pick < 0 || score > best) {
        pick = i;
        best = score;
      }
    }
    if (pick < 0) return false;
    selected[pick] = 1;
    out.push_back(pick);
    chol.select(pick);
  }
  return true;
}

}  // namespace

Ordering random_rank(const Instance& inst, std::uint64_t seed) {
  std::vector<int> perm(inst.n);
  for (int v = 0; v < inst.n; ++v) perm[v] = v;
  Rng rng(seed);
  shuffle(perm, rng);
  return Ordering(std::move(perm));
}

Ordering mmr_rank(const Instance& inst, const BaselineConfig& cfg) {
  check_lambda(cfg.lambda);
  const int n = inst.n;
  const double lambda = cfg.lambda;
  std::vector<char> selected(n, 0);
  std::vector<double> max_sim(n, -kInf);  // max over selected of 1 - d
  std::vector<int> seq;
  seq.reserve(n);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    double best = -kInf;
    for (int i = 0; i < n; ++i) {
      if (selected[i]) continue;
      const double penalty = step == 0 ? 0.0 : max_sim[i];
      const double score = lambda * inst.probs[i] - (1.0 - lambda) * penalty;
      if (pick < 0 || score > best) {
        pick = i;
        best = score;
      }
    }
    selected[pick] = 1;
    seq.push_back(pick);
    for (int i = 0; i < n; ++i) {
      if (!selected[i]) max_sim[i] = std::max(max_sim[i], 1.0 - inst.dist(i, pick));
    }
  }
  return Ordering(std::move(seq));
}

Ordering msd_rank(const Instance& inst, const BaselineConfig& cfg) {
  check_lambda(cfg.lambda);
  const int n = inst.n;
  std::vector<char> selected(n, 0);
  std::vector<double> dist_sum(n, 0.0);
  std::vector<int> seq;
  seq.reserve(n);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    double best = -kInf;
    for (int i = 0; i < n; ++i) {
      if (selected[i]) continue;
      const double score = inst.probs[i] + cfg.lambda * dist_sum[i];
      if (pick < 0 || score > best) {
        pick = i;
        best = score;
      }
    }
    selected[pick] = 1;
    seq.push_back(pick);
    for (int i = 0; i < n; ++i) {
      if (!selected[i]) dist_sum[i] += inst.dist(i, pick);
    }
  }
  return Ordering(std::move(seq));
}

Ordering dpp_rank(const Instance& inst, const BaselineConfig& cfg) {
  check_lambda(cfg.lambda);
  if (cfg.lambda >= 1.0) {
    return Ordering(probs_descending(inst));
  }
  const std::vector<double> kernel = similarity_kernel(inst);
  std::vector<int> seq;
  if (dpp_select(inst, kernel, cfg.lambda, 0.0, seq)) return Ordering(std::move(seq));
  if (dpp_select(inst, kernel, cfg.lambda, kKernelJitter, seq)) return Ordering(std::move(seq));
  throw KernelBreakdown();
}

Ordering dum_rank(const Instance& inst) {
  if (!inst.has_categories()) throw MissingCategories();
  const std::vector<int> by_prob = probs_descending(inst);
  std::vector<char> covered(inst.num_categories, 0);
  std::vector<int> front, tail;
  for (int v : by_prob) {
    bool fresh = false;
    for (int c : (*inst.categories)[v]) {
      if (!covered[c]) {
        covered[c] = 1;
        fresh = true;
      }
    }
    (fresh ? front : tail).push_back(v);
  }
  front.insert(front.end(), tail.begin(), tail.end());
  return Ordering(std::move(front));
}

Ordering explore_rank(const Instance& inst, const BaselineConfig& cfg) {
  const int n = inst.n;
  const double alpha = cfg.explore_alpha;
  if (!(alpha > 0.0)) throw Error("explore_rank requires alpha > 0");
  Rng rng(cfg.seed);

  std::vector<int> accepted;
  std::vector<char> in_accepted(n, 0);
  std::vector<std::vector<int>> presented_lists;

  for (int step = 0; step < cfg.explore_steps; ++step) {
    struct Scored {
      double score;
      int item;
    };
    std::vector<Scored> scored;
    scored.reserve(n);
    for (int i = 0; i < n; ++i) {
      if (in_accepted[i]) continue;
      double score;
      if (accepted.empty()) {
        score = inst.probs[i];
      } else if (inst.probs[i] <= 0.0) {
        score = 0.0;
      } else {
        double d = kInf;
        for (int j : accepted) d = std::min(d, inst.dist(i, j));
        if (d <= 0.0) {
          score = 0.0;
        } else {
          const double bracket =
              std::pow(inst.probs[i], -alpha) + std::pow(d, -alpha) - 1.0;
          score = std::pow(bracket, -1.0 / alpha);
        }
      }
      scored.push_back({score, i});
    }
    if (scored.empty()) break;
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.item < b.item;
    });
    const int k = std::min<int>(cfg.explore_k, static_cast<int>(scored.size()));
    std::vector<int> list(k);
    for (int t = 0; t < k; ++t) list[t] = scored[t].item;
    presented_lists.push_back(list);

    // The user picks one item from the list in proportion to relevance, then
    // continues with that item's continuation probability.
    double total_p = 0.0;
    for (int item : list) total_p += inst.probs[item];
    if (total_p <= 0.0) break;
    double x = rng.next_double() * total_p;
    int chosen = list.back();
    for (int item : list) {
      x -= inst.probs[item];
      if (x < 0.0) {
        chosen = item;
        break;
      }
    }
    if (rng.next_double() >= inst.probs[chosen]) break;
    accepted.push_back(chosen);
    in_accepted[chosen] = 1;
    if (static_cast<int>(accepted.size()) == n) break;
  }

  std::vector<int> seq;
  std::vector<char> in_seq(n, 0);
  auto push_unique = [&](int item) {
    if (!in_seq[item]) {
      in_seq[item] = 1;
      seq.push_back(item);
    }
  };
  if (cfg.explore_adaptation == ExploreAdaptation::accepted_then_random) {
    for (int item : accepted) push_unique(item);
  } else {
    for (const auto& list : presented_lists) {
      for (int item : list) push_unique(item);
    }
  }
  std::vector<int> rest;
  for (int v = 0; v < n; ++v) {
    if (!in_seq[v]) rest.push_back(v);
  }
  shuffle(rest, rng);
  for (int item : rest) seq.push_back(item);
  return Ordering(std::move(seq));
}

LambdaSearch tune_lambda(std::span<const Instance> instances, const RankMethod& method,
                         std::span<const double> grid, const BaselineConfig& base_cfg) {
  if (grid.empty()) throw Error("tune_lambda needs a non-empty grid");
  if (instances.empty()) throw Error("tune_lambda needs at least one instance");

  LambdaSearch out;
  out.grid.assign(grid.begin(), grid.end());
  std::sort(out.grid.begin(), out.grid.end());
  const int l = static_cast<int>(out.grid.size());
  const int u = static_cast<int>(instances.size());
  std::vector<double> scores(static_cast<size_t>(l) * u, 0.0);
  std::vector<std::exception_ptr> errors(static_cast<size_t>(l) * u);

#pragma omp parallel for schedule(dynamic) collapse(2)
  for (int li = 0; li < l; ++li) {
    for (int ui = 0; ui < u; ++ui) {
      try {
        BaselineConfig cfg = base_cfg;
        cfg.lambda = out.grid[li];
        const Ordering ord = method(instances[ui], cfg);
        scores[static_cast<size_t>(li) * u + ui] = osd(instances[ui], ord);
      } catch (...) {
        errors[static_cast<size_t>(li) * u + ui] = std::current_exception();
      }
    }
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  out.mean_osd.resize(l);
  for (int li = 0; li < l; ++li) {
    double sum = 0.0;
    for (int ui = 0; ui < u; ++ui) sum += scores[static_cast<size_t>(li) * u + ui];
    out.mean_osd[li] = sum / u;
  }
  int best = 0;
  for (int li = 1; li < l; ++li) {
    if (out.mean_osd[li] > out.mean_osd[best]) best = li;
  }
  out.best_lambda = out.grid[best];
  return out;
}

std::vector<double> incremental_logdet_prefixes(const std::vector<double>& kernel, int n,
                                                std::span<const int> order) {
  CholeskyGreedyState chol(kernel, n, 0.0);
  std::vector<double> logdets;
  logdets.reserve(order.size());
  double acc = 0.0;
  for (int item : order) {
    const double d2 = chol.pivot(item);
    if (d2 <= 0.0) throw KernelBreakdown();
    acc += std::log(d2);
    logdets.push_back(acc);
    chol.select(item);
  }
  return logdets;
}

}  // namespace seqdiv
