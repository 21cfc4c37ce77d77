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

#include "seqdiv/objective.hpp"

#include <cmath>

namespace seqdiv {

DegenerateProbability::DegenerateProbability(double p)
    : Error("uniform continuation probability " + std::to_string(p) +
            " must lie strictly inside (0, 1)") {}

double div_sum(const Instance& inst, std::span<const int> items) {
  double total = 0.0;
  for (size_t a = 0; a < items.size(); ++a) {
    for (size_t b = a + 1; b < items.size(); ++b) {
      total += inst.dist(items[a], items[b]);
    }
  }
  return total;
}

double div_cov(const Instance& inst, std::span<const int> items) {
  if (!inst.has_categories()) throw MissingCategories();
  std::vector<char> covered(inst.num_categories, 0);
  int count = 0;
  for (int item : items) {
    for (int c : (*inst.categories)[item]) {
      if (!covered[c]) {
        covered[c] = 1;
        ++count;
      }
    }
  }
  return static_cast<double>(count);
}

std::vector<double> acceptance_distribution(const Instance& inst, std::span<const int> seq) {
  const size_t m = seq.size();
  std::vector<double> law(m + 1);
  double running = 1.0;
  for (size_t k = 0; k < m; ++k) {
    law[k] = running * (1.0 - inst.probs[seq[k]]);
    running *= inst.probs[seq[k]];
  }
  law[m] = running;
  return law;
}

double osd_definitional(const Instance& inst, std::span<const int> seq) {
  const std::vector<double> law = acceptance_distribution(inst, seq);
  double total = 0.0;
  for (size_t k = 0; k <= seq.size(); ++k) {
    total += law[k] * div_sum(inst, seq.subspan(0, k));
  }
  return total;
}

double osd(const Instance& inst, std::span<const int> seq) {
  const size_t m = seq.size();
  double total = 0.0;
  double running = m > 0 ? inst.probs[seq[0]] : 1.0;
  for (size_t pos = 1; pos < m; ++pos) {
    running *= inst.probs[seq[pos]];
    double to_prefix = 0.0;
    for (size_t t = 0; t < pos; ++t) to_prefix += inst.dist(seq[pos], seq[t]);
    total += running * to_prefix;
  }
  return total;
}

double ocd(const Instance& inst, std::span<const int> seq) {
  if (!inst.has_categories()) throw MissingCategories();
  const std::vector<double> law = acceptance_distribution(inst, seq);
  std::vector<char> covered(inst.num_categories, 0);
  int count = 0;
  double total = 0.0;  // law[0] * div_cov(empty) == 0
  for (size_t k = 0; k < seq.size(); ++k) {
    for (int c : (*inst.categories)[seq[k]]) {
      if (!covered[c]) {
        covered[c] = 1;
        ++count;
      }
    }
    total += law[k + 1] * count;
  }
  return total;
}

std::vector<double> weight_vector(const Instance& inst, std::span<const int> seq) {
  const size_t m = seq.size();
  std::vector<double> cum(m);
  double running = 1.0;
  for (size_t i = 0; i < m; ++i) {
    running *= inst.probs[seq[i]];
    cum[i] = running;
  }
  std::vector<double> w(m >= 1 ? m - 1 : 0);
  double tail = 0.0;
  for (size_t i = m; i-- > 1;) {
    tail += cum[i];
    w[i - 1] = tail;
  }
  return w;
}

double ohp(const Instance& inst, std::span<const int> seq) {
  if (seq.size() < 2) {
    throw TooFewItems("ohp needs at least two items; it is undefined over an empty edge set");
  }
  const std::vector<double> w = weight_vector(inst, seq);
  double total = 0.0;
  for (size_t i = 0; i + 1 < seq.size(); ++i) {
    total += w[i] * inst.dist(seq[i], seq[i + 1]);
  }
  return total;
}

double ell_hat(const Instance& inst, std::span<const int> prefix, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DegenerateProbability(p);
  if (prefix.size() < 2) throw TooFewItems("ell_hat needs a prefix of at least two items");
  double coef = p * p / (1.0 - p);  // first edge carries p^2 / (1 - p)
  double total = 0.0;
  for (size_t i = 0; i + 1 < prefix.size(); ++i) {
    total += coef * inst.dist(prefix[i], prefix[i + 1]);
    coef *= p;
  }
  return total;
}

double ell_tilde(const Instance& inst, std::span<const int> prefix) {
  const size_t k = prefix.size();
  if (k < 2) throw TooFewItems("ell_tilde needs a prefix of at least two items");
  std::vector<double> cum(k);
  double running = 1.0;
  for (size_t i = 0; i < k; ++i) {
    running *= inst.probs[prefix[i]];
    cum[i] = running;
  }
  double total = 0.0;
  double tail = 0.0;
  for (size_t i = k - 1; i-- > 0;) {
    tail += cum[i + 1];
    total += tail * inst.dist(prefix[i], prefix[i + 1]);
  }
  return total;
}

double exp_dcg(std::span<const double> probs_in_order) {
  const size_t n = probs_in_order.size();
  double inner = 0.0;
  double prod = 1.0;
  double total = 0.0;
  for (size_t j = 0; j < n; ++j) {
    inner += probs_in_order[j] / std::log2(static_cast<double>(j) + 2.0);
    prod *= probs_in_order[j];
    const double p_next = j + 1 < n ? probs_in_order[j + 1] : 0.0;
    total += inner * (1.0 - p_next) * prod;
  }
  return total;
}

double exp_serendipity(std::span<const double> probs_in_order, std::span<const char> novelty) {
  if (probs_in_order.size() != novelty.size()) {
    throw DimensionMismatch("novelty flags length " + std::to_string(novelty.size()) +
                            " does not match " + std::to_string(probs_in_order.size()) +
                            " probabilities");
  }
  const size_t n = probs_in_order.size();
  double inner = 0.0;
  double prod = 1.0;
  double total = 0.0;
  for (size_t j = 0; j < n; ++j) {
    if (novelty[j]) inner += probs_in_order[j];
    prod *= probs_in_order[j];
    const double p_next = j + 1 < n ? probs_in_order[j + 1] : 0.0;
    total += inner * (1.0 - p_next) * prod;
  }
  return total;
}

double exp_num(std::span<const double> probs_in_order) {
  double prod = 1.0;
  double total = 0.0;
  for (double p : probs_in_order) {
    prod *= p;
    total += prod;
  }
  return total;
}

}  // namespace seqdiv
