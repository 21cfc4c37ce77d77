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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "seqdiv/algorithms.hpp"
#include "seqdiv/objective.hpp"
#include "seqdiv/oracle.hpp"
#include "support.hpp"

using namespace seqdiv;
using namespace seqdiv::testsupport;

namespace {

std::vector<int> iota_vec(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Greedy ranking recomputed the slow way: every marginal gain evaluated by
// two full objective calls. The incremental implementation must match it.
Ordering greedy_rank_recompute(const Instance& inst) {
  const int n = inst.n;
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
  std::vector<char> placed(n, 0);
  placed[bi] = placed[bj] = 1;
  while (static_cast<int>(seq.size()) < n) {
    int pick = -1;
    double best_gain = 0.0;
    const double base = osd(inst, seq);
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      std::vector<int> ext = seq;
      ext.push_back(v);
      const double gain = osd(inst, ext) - base;
      if (pick < 0 || gain > best_gain) {
        pick = v;
        best_gain = gain;
      }
    }
    placed[pick] = 1;
    seq.push_back(pick);
  }
  return Ordering(seq);
}

}  // namespace

TEST_CASE("best pair on the example instance") {
  BkeConfig cfg;
  cfg.kappa = 2;
  const Ordering ord = best_k_items(example1_instance(), cfg);
  CHECK(ord.at(0) == 0);
  CHECK(ord.at(1) == 1);
  const std::vector<int> prefix{ord.at(0), ord.at(1)};
  CHECK(ell_tilde(example1_instance(), prefix) == doctest::Approx(0.3));
}

TEST_CASE("kappa equal to n in uniform mode is a full permutation search") {
  Rng rng(3);
  const Instance inst = random_uniform_instance(5, rng, 0.5);
  BkeConfig cfg;
  cfg.kappa = 5;
  cfg.mode = BkeMode::uniform;
  const Ordering ord = best_k_items(inst, cfg);

  const auto oracle = best_sequence_exhaustive(iota_vec(5), 5, [&](const std::vector<int>& seq) {
    return ell_hat(inst, seq, 0.5);
  });
  CHECK(ord.perm() == oracle.seq);
  CHECK(ell_hat(inst, ord.items(), 0.5) == doctest::Approx(oracle.value));
}

TEST_CASE("zero distances tie to the lowest index pair") {
  const Instance inst = build_instance(DistanceMatrix(4), {0.9, 0.9, 0.9, 0.9});
  BkeConfig cfg;
  cfg.kappa = 2;
  const Ordering ord = best_k_items(inst, cfg);
  CHECK(ord.perm() == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("config validation") {
  const Instance inst = example1_instance();
  BkeConfig cfg;
  cfg.kappa = 1;
  CHECK_THROWS_AS(best_k_items(inst, cfg), KappaOutOfRange);
  cfg.kappa = 4;
  CHECK_THROWS_AS(best_k_items(inst, cfg), KappaOutOfRange);

  cfg.kappa = 2;
  cfg.mode = BkeMode::uniform;
  CHECK_THROWS_AS(best_k_items(inst, cfg), NonUniformProbsInUniformMode);

  const Instance all_one = build_instance(example1_instance().dist, {1.0, 1.0, 1.0});
  CHECK_THROWS_AS(best_k_items(all_one, cfg), DegenerateProbability);

  // Equality within 1e-12 still counts as uniform.
  const Instance nearly =
      build_instance(example1_instance().dist, {0.5, 0.5 + 1e-13, 0.5});
  CHECK_NOTHROW(best_k_items(nearly, cfg));
}

TEST_CASE("pruned search equals the unpruned enumerator, both modes") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(6));  // up to 9
    const int kappa = 2 + static_cast<int>(rng.next_below(3));
    {
      const Instance inst = random_metric_instance(n, rng);
      BkeConfig cfg;
      cfg.kappa = kappa;
      const Ordering ord = best_k_items(inst, cfg);
      const auto oracle =
          best_sequence_exhaustive(iota_vec(n), kappa, [&](const std::vector<int>& seq) {
            return ell_tilde(inst, seq);
          });
      const std::vector<int> prefix(ord.perm().begin(), ord.perm().begin() + kappa);
      CHECK(prefix == oracle.seq);
    }
    {
      const double p = 0.2 + 0.6 * rng.next_double();
      const Instance inst = random_uniform_instance(n, rng, p);
      BkeConfig cfg;
      cfg.kappa = kappa;
      cfg.mode = BkeMode::uniform;
      const Ordering ord = best_k_items(inst, cfg);
      const auto oracle =
          best_sequence_exhaustive(iota_vec(n), kappa, [&](const std::vector<int>& seq) {
            return ell_hat(inst, seq, p);
          });
      const std::vector<int> prefix(ord.perm().begin(), ord.perm().begin() + kappa);
      CHECK(prefix == oracle.seq);
    }
  }
}

TEST_CASE("extension choice changes the tail but never the prefix") {
  Rng rng(11);
  const Instance inst = random_metric_instance(8, rng);
  BkeConfig greedy_ext;
  greedy_ext.kappa = 3;
  BkeConfig arbitrary_ext = greedy_ext;
  arbitrary_ext.extension = BkeExtension::arbitrary;
  const Ordering a = best_k_items(inst, greedy_ext);
  const Ordering b = best_k_items(inst, arbitrary_ext);
  for (int i = 0; i < 3; ++i) CHECK(a.at(i) == b.at(i));
  // Arbitrary extension appends the leftovers in ascending index order.
  std::vector<int> tail(b.perm().begin() + 3, b.perm().end());
  CHECK(std::is_sorted(tail.begin(), tail.end()));
}

TEST_CASE("vacuous candidate cap reproduces the exact search") {
  Rng rng(13);
  const Instance inst = random_metric_instance(9, rng);
  BkeConfig cfg;
  cfg.kappa = 3;
  cfg.candidate_cap = 100;
  CHECK(best_k_items_heuristic(inst, cfg).perm() == best_k_items(inst, cfg).perm());
}

TEST_CASE("cap equal to kappa orders the greedy candidate set optimally") {
  Rng rng(17);
  const Instance inst = random_metric_instance(10, rng);
  BkeConfig cfg;
  cfg.kappa = 3;
  cfg.candidate_cap = 3;
  const Ordering ord = best_k_items_heuristic(inst, cfg);
  const Ordering greedy = greedy_rank(inst);
  const std::set<int> candidates(greedy.perm().begin(), greedy.perm().begin() + 3);
  std::vector<int> sorted_candidates(candidates.begin(), candidates.end());

  const std::set<int> prefix(ord.perm().begin(), ord.perm().begin() + 3);
  CHECK(prefix == candidates);
  const auto oracle =
      best_sequence_exhaustive(sorted_candidates, 3, [&](const std::vector<int>& seq) {
        return ell_tilde(inst, seq);
      });
  const std::vector<int> got(ord.perm().begin(), ord.perm().begin() + 3);
  CHECK(got == oracle.seq);
}

TEST_CASE("filtered search never beats the exact one") {
  Rng rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const Instance inst = random_metric_instance(30, rng);
    BkeConfig exact;
    exact.kappa = 3;
    BkeConfig heur = exact;
    heur.candidate_cap = 10;
    const Ordering he = best_k_items_heuristic(inst, heur);
    const Ordering ex = best_k_items(inst, exact);
    const std::vector<int> hp(he.perm().begin(), he.perm().begin() + 3);
    const std::vector<int> ep(ex.perm().begin(), ex.perm().begin() + 3);
    CHECK(ell_tilde(inst, hp) <= ell_tilde(inst, ep) + 1e-12);
  }

  BkeConfig no_cap;
  no_cap.kappa = 3;
  CHECK_THROWS_AS(best_k_items_heuristic(random_metric_instance(5, rng), no_cap), Error);
}

TEST_CASE("two items produce the single oriented edge") {
  DistanceMatrix d(2);
  d.set(0, 1, 0.4);
  const Instance inst = build_instance(d, {0.5, 0.5});
  const Ordering ord = greedy_matching_rank(inst);
  CHECK(ord.perm() == std::vector<int>{1, 0});

  const Instance one = build_instance(DistanceMatrix(1), {0.5});
  CHECK_THROWS_AS(greedy_matching_rank(one), TooFewItems);
}

TEST_CASE("equal weights tie-break to lexicographic pairs") {
  const int n = 6;
  DistanceMatrix d(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d.set(i, j, 1.0);
  }
  const Instance inst = build_instance(d, std::vector<double>(n, 0.5));
  const Matching m = greedy_matching(inst);
  CHECK(m.edges ==
        std::vector<std::pair<int, int>>{{0, 1}, {2, 3}, {4, 5}});
}

TEST_CASE("matching edges are disjoint and sorted by weight") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(11));
    const Instance inst = random_metric_instance(n, rng);
    const Matching m = greedy_matching(inst);
    CHECK(static_cast<int>(m.edges.size()) == n / 2);
    std::set<int> seen;
    double prev = std::numeric_limits<double>::infinity();
    for (auto [u, v] : m.edges) {
      CHECK(seen.insert(u).second);
      CHECK(seen.insert(v).second);
      CHECK(inst.dist(u, v) <= prev);
      prev = inst.dist(u, v);
    }
  }
}

TEST_CASE("structural properties hold on metric instances") {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(9));  // 4..12
    const Instance inst = random_metric_instance(n, rng);
    const Ordering ord = greedy_matching_rank(inst);
    const BkmProperties props = bkm_properties(inst, ord);
    CHECK(props.p1);
    CHECK(props.p2);
  }
}

TEST_CASE("greedy ranking on the example instance") {
  const Ordering ord = greedy_rank(example1_instance());
  CHECK(ord.at(0) == 0);
  CHECK(ord.at(1) == 1);
  CHECK(osd(example1_instance(), ord) == doctest::Approx(0.3));
}

TEST_CASE("greedy ranking degenerates to index order without distances") {
  const Instance flat = build_instance(DistanceMatrix(5), {0.2, 0.9, 0.4, 0.6, 0.1});
  const Ordering ord = greedy_rank(flat);
  CHECK(ord.perm() == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(osd(flat, ord) == 0.0);
}

TEST_CASE("incremental greedy equals recomputation and respects the optimum") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = random_metric_instance(7, rng);
    const Ordering fast = greedy_rank(inst);
    const Ordering slow = greedy_rank_recompute(inst);
    CHECK(fast.perm() == slow.perm());
    const OracleResult opt = brute_force(inst, ObjectiveKind::osd);
    CHECK(osd(inst, fast) <= opt.best_score + 1e-12);
  }
}

TEST_CASE("b2i is the pair-seeded greedy") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = random_metric_instance(8, rng);
    BkeConfig cfg;
    cfg.kappa = 2;
    CHECK(best_k_items(inst, cfg).perm() == greedy_rank(inst).perm());
  }
}

TEST_CASE("greedy approximation ratio from the pair bound") {
  // ratio >= a(1-b)/(2b(1-a)) * a^2 (1-b)^2 / (a^2 + b^2)
  Rng rng(41);
  const double a = 0.4, b = 0.6;
  const double alpha = a * a * (1 - b) * (1 - b) / (a * a + b * b);
  const double bound = a * (1 - b) / (2 * b * (1 - a)) * alpha;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(4));
    const Instance inst = random_metric_instance(n, rng, a, b);
    const double greedy = osd(inst, greedy_rank(inst));
    const double opt = brute_force(inst, ObjectiveKind::osd).best_score;
    CHECK(greedy >= bound * opt - 1e-12);
  }
}

TEST_CASE("coverage greedy ties to index order when items are identical") {
  const Instance inst = build_instance(
      DistanceMatrix(4), std::vector<double>(4, 0.5),
      std::vector<std::vector<int>>{{1, 2}, {1, 2}, {1, 2}, {1, 2}});
  const Ordering ord = coverage_greedy_rank(inst);
  CHECK(ord.perm() == std::vector<int>{0, 1, 2, 3});
  // With identical sets the value reduces to |set| times the probability
  // that at least the first item is accepted.
  CHECK(ocd(inst, ord) == doctest::Approx(2.0 * 0.5));

  const Instance no_cats = build_instance(DistanceMatrix(2), {1, 1});
  CHECK_THROWS_AS(coverage_greedy_rank(no_cats), MissingCategories);
}

TEST_CASE("coverage greedy achieves half of the optimum") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(5));
    const Instance inst = random_category_instance(n, rng);
    const double greedy = ocd(inst, coverage_greedy_rank(inst));
    const double opt = brute_force(inst, ObjectiveKind::ocd).best_score;
    CHECK(greedy >= 0.5 * opt - 1e-12);
  }
}

TEST_CASE("coverage greedy avoids dead items while alternatives exist") {
  const Instance inst = build_instance(
      DistanceMatrix(3), {0.0, 0.3, 0.9},
      std::vector<std::vector<int>>{{1, 2, 3}, {4}, {5}});
  const Ordering ord = coverage_greedy_rank(inst);
  CHECK(ord.at(0) != 0);
  // The zero-probability item only appears once everything else is placed.
  CHECK(ord.at(2) == 0);
}

TEST_CASE("greedy marginal gains match a from-scratch coverage recompute") {
  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = random_category_instance(6, rng);
    const Ordering ord = coverage_greedy_rank(inst);
    // Walk the chosen ordering and verify each step was a gain maximizer
    // under the subtract-two-evaluations definition.
    std::vector<int> prefix;
    std::vector<char> placed(inst.n, 0);
    for (int step = 0; step < inst.n; ++step) {
      const double base = prefix.empty() ? 0.0 : ocd(inst, prefix);
      double best_gain = -1.0;
      int best_v = -1;
      for (int v = 0; v < inst.n; ++v) {
        if (placed[v]) continue;
        std::vector<int> ext = prefix;
        ext.push_back(v);
        const double gain = ocd(inst, ext) - base;
        if (best_v < 0 || gain > best_gain + 1e-12) {
          best_v = v;
          best_gain = gain;
        }
      }
      const int chosen = ord.at(step);
      std::vector<int> ext = prefix;
      ext.push_back(chosen);
      CHECK(ocd(inst, ext) - base == doctest::Approx(best_gain).epsilon(1e-9));
      placed[chosen] = 1;
      prefix.push_back(chosen);
    }
  }
}
