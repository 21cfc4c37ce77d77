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

// Shared instance generators and independent reference evaluators. The
// evaluators here deliberately avoid every fast path in the library: they
// are the oracles the implementations are checked against.

#ifndef SEQDIV_TESTS_SUPPORT_HPP
#define SEQDIV_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "seqdiv/core.hpp"
#include "seqdiv/rng.hpp"

namespace seqdiv::testsupport {

// Random symmetric distances in [0, 2] forced metric by shortest-path
// completion, probabilities uniform in [p_lo, p_hi].
inline Instance random_metric_instance(int n, Rng& rng, double p_lo = 0.05, double p_hi = 0.95) {
  DistanceMatrix d(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d.set(i, j, rng.uniform(0.0, 2.0));
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d(i, k) + d(k, j) < d(i, j)) d.set(i, j, d(i, k) + d(k, j));
      }
    }
  }
  std::vector<double> probs(n);
  for (double& p : probs) p = rng.uniform(p_lo, p_hi);
  return build_instance(d, probs);
}

inline Instance random_uniform_instance(int n, Rng& rng, double p) {
  Instance base = random_metric_instance(n, rng);
  return build_instance(base.dist, std::vector<double>(n, p));
}

inline Instance random_category_instance(int n, Rng& rng, int num_categories = 6,
                                         double p_lo = 0.1, double p_hi = 0.9) {
  Instance base = random_metric_instance(n, rng, p_lo, p_hi);
  std::vector<std::vector<int>> cats(n);
  for (int i = 0; i < n; ++i) {
    const int count = 1 + static_cast<int>(rng.next_below(3));
    std::set<int> chosen;
    while (static_cast<int>(chosen.size()) < count) {
      chosen.insert(static_cast<int>(rng.next_below(num_categories)));
    }
    cats[i].assign(chosen.begin(), chosen.end());
  }
  return build_instance(base.dist, base.probs, cats);
}

// Uniform continuation probability; the regime where the coverage
// objective's diminishing-returns property is provable.
inline Instance random_uniform_category_instance(int n, Rng& rng, int num_categories = 6) {
  const double p = rng.uniform(0.1, 0.9);
  Instance base = random_category_instance(n, rng, num_categories);
  return build_instance(base.dist, std::vector<double>(n, p), *base.categories);
}

// d(u1,u2) = 0.3, d(u1,u3) = d(u2,u3) = 1, p = (1, 1, 0).
inline Instance example1_instance() {
  DistanceMatrix d(3);
  d.set(0, 1, 0.3);
  d.set(0, 2, 1.0);
  d.set(1, 2, 1.0);
  return build_instance(d, {1.0, 1.0, 0.0});
}

// ---- independent evaluators ----

// Expected diversity straight from the acceptance law, set arithmetic only.
inline double osd_by_law(const Instance& inst, std::span<const int> seq) {
  const size_t m = seq.size();
  double total = 0.0;
  for (size_t k = 0; k <= m; ++k) {
    double pr;
    if (k == m) {
      pr = 1.0;
      for (size_t t = 0; t < m; ++t) pr *= inst.probs[seq[t]];
    } else {
      pr = 1.0 - inst.probs[seq[k]];
      for (size_t t = 0; t < k; ++t) pr *= inst.probs[seq[t]];
    }
    double div = 0.0;
    for (size_t a = 0; a < k; ++a) {
      for (size_t b = a + 1; b < k; ++b) div += inst.dist(seq[a], seq[b]);
    }
    total += pr * div;
  }
  return total;
}

inline double ocd_by_law(const Instance& inst, std::span<const int> seq) {
  const size_t m = seq.size();
  double total = 0.0;
  for (size_t k = 0; k <= m; ++k) {
    double pr;
    if (k == m) {
      pr = 1.0;
      for (size_t t = 0; t < m; ++t) pr *= inst.probs[seq[t]];
    } else {
      pr = 1.0 - inst.probs[seq[k]];
      for (size_t t = 0; t < k; ++t) pr *= inst.probs[seq[t]];
    }
    std::set<int> cover;
    for (size_t t = 0; t < k; ++t) {
      cover.insert((*inst.categories)[seq[t]].begin(), (*inst.categories)[seq[t]].end());
    }
    total += pr * static_cast<double>(cover.size());
  }
  return total;
}

// Path-prefix reformulation of the ordered Hamiltonian path value.
inline double ohp_path_prefix_form(const Instance& inst, std::span<const int> seq) {
  const size_t m = seq.size();
  double total = 0.0;
  for (size_t i = 1; i < m; ++i) {
    double prod = 1.0;
    for (size_t t = 0; t <= i; ++t) prod *= inst.probs[seq[t]];
    double path = 0.0;
    for (size_t t = 0; t < i; ++t) path += inst.dist(seq[t], seq[t + 1]);
    total += prod * path;
  }
  return total;
}

// Literal double sum for the truncated non-uniform surrogate.
inline double ell_tilde_double_sum(const Instance& inst, std::span<const int> prefix) {
  const size_t k = prefix.size();
  double total = 0.0;
  for (size_t i = 0; i + 1 < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      double prod = 1.0;
      for (size_t t = 0; t <= j; ++t) prod *= inst.probs[prefix[t]];
      total += prod * inst.dist(prefix[i], prefix[i + 1]);
    }
  }
  return total;
}

struct BestSequence {
  double value = 0.0;
  std::vector<int> seq;
  bool found = false;
};

// Exhaustive enumerator over ordered k-subsequences, lexicographic, no
// pruning. Used to certify the pruned search.
template <typename Eval>
void enumerate_sequences(const std::vector<int>& candidates, int k, std::vector<int>& seq,
                         std::vector<char>& used, const Eval& eval, BestSequence& best) {
  if (static_cast<int>(seq.size()) == k) {
    const double v = eval(seq);
    if (!best.found || v > best.value) {
      best.found = true;
      best.value = v;
      best.seq = seq;
    }
    return;
  }
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    seq.push_back(candidates[i]);
    enumerate_sequences(candidates, k, seq, used, eval, best);
    seq.pop_back();
    used[i] = 0;
  }
}

template <typename Eval>
BestSequence best_sequence_exhaustive(const std::vector<int>& candidates, int k,
                                      const Eval& eval) {
  BestSequence best;
  std::vector<int> seq;
  std::vector<char> used(candidates.size(), 0);
  enumerate_sequences(candidates, k, seq, used, eval, best);
  return best;
}

// Dense log-determinant by Gaussian elimination with partial pivoting.
inline double logdet_dense(std::vector<double> a, int n) {
  double logdet = 0.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    }
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
      // Row swap flips the determinant sign; the kernels under test are
      // positive definite, so the product of pivots stays positive.
    }
    const double diag = a[col * n + col];
    logdet += std::log(std::abs(diag));
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / diag;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return logdet;
}

// Random symmetric positive-definite kernel built as G G^T / s + eps I.
inline std::vector<double> random_pd_kernel(int n, Rng& rng) {
  std::vector<double> g(static_cast<size_t>(n) * n);
  for (double& x : g) x = rng.uniform(-1.0, 1.0);
  std::vector<double> k(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double dot = 0.0;
      for (int t = 0; t < n; ++t) dot += g[i * n + t] * g[j * n + t];
      k[i * n + j] = dot / n + (i == j ? 0.1 : 0.0);
    }
  }
  return k;
}

}  // namespace seqdiv::testsupport

#endif  // SEQDIV_TESTS_SUPPORT_HPP
