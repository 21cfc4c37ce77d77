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

#ifndef SEQDIV_OBJECTIVE_HPP
#define SEQDIV_OBJECTIVE_HPP

#include <span>
#include <vector>

#include "seqdiv/core.hpp"

namespace seqdiv {

class DegenerateProbability : public Error {
 public:
  explicit DegenerateProbability(double p);
};

// All evaluators accept any sequence of distinct item indices (a full
// ordering or a prefix of one); sequences shorter than the universe model a
// session truncated after the last listed item.

// Sum of d over unordered item pairs. Each pair counts once.
double div_sum(const Instance& inst, std::span<const int> items);

// Number of distinct categories covered by the items.
double div_cov(const Instance& inst, std::span<const int> items);

// Law of the accepted prefix: out[k] = Pr(user accepts exactly the first k
// items), k = 0..m. Sums to 1 by telescoping.
std::vector<double> acceptance_distribution(const Instance& inst, std::span<const int> seq);

// Expected pairwise diversity of the accepted prefix, expanded term by term
// over the acceptance law. Slow reference; osd() matches it to 1e-9.
double osd_definitional(const Instance& inst, std::span<const int> seq);

// Closed form: sum over positions of (prefix product) * (distance of the
// item to everything before it). O(m^2).
double osd(const Instance& inst, std::span<const int> seq);

// Expected number of distinct categories covered by the accepted prefix.
double ocd(const Instance& inst, std::span<const int> seq);

// Tail sums of prefix products: w[i] = sum_{j > i} cum[j], i = 0..m-2.
// These are the coefficients of consecutive-edge weights in ohp().
std::vector<double> weight_vector(const Instance& inst, std::span<const int> seq);

// Ordered Hamiltonian path value: sum_i w[i] * d(seq[i], seq[i+1]).
// Undefined over an empty edge set; throws TooFewItems for m < 2.
double ohp(const Instance& inst, std::span<const int> seq);

// Truncated top-k surrogate, uniform probabilities: coefficient of the i-th
// edge (0-based) is p^{i+2} / (1 - p).
double ell_hat(const Instance& inst, std::span<const int> prefix, double p);

// Truncated top-k surrogate, general probabilities: coefficient of the i-th
// edge is the sum of prefix products over later positions of the prefix.
double ell_tilde(const Instance& inst, std::span<const int> prefix);

// Engagement metrics over probabilities listed in rank order. The sum for
// rank j carries a factor (1 - p_{j+1}); past the last item p := 0, i.e. the
// terminal prefix is always credited.
double exp_dcg(std::span<const double> probs_in_order);
double exp_serendipity(std::span<const double> probs_in_order, std::span<const char> novelty);

// Expected count of accepted items: sum over k of Pr(at least k accepted).
double exp_num(std::span<const double> probs_in_order);

inline double osd(const Instance& inst, const Ordering& ord) { return osd(inst, ord.items()); }
inline double osd_definitional(const Instance& inst, const Ordering& ord) {
  return osd_definitional(inst, ord.items());
}
inline double ocd(const Instance& inst, const Ordering& ord) { return ocd(inst, ord.items()); }
inline double ohp(const Instance& inst, const Ordering& ord) { return ohp(inst, ord.items()); }

}  // namespace seqdiv

#endif  // SEQDIV_OBJECTIVE_HPP
