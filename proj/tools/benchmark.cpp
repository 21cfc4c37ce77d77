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

// Times the OpenMP kernels against their serial reference implementations
// and checks on the fly that both sides agree.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seqdiv/algorithms.hpp"
#include "seqdiv/core.hpp"
#include "seqdiv/objective.hpp"
#include "seqdiv/oracle.hpp"
#include "seqdiv/rng.hpp"

using namespace seqdiv;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

Instance random_metric_instance(int n, Rng& rng) {
  DistanceMatrix d(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) d.set(i, j, rng.uniform(0.0, 2.0));
  }
  // Shortest-path completion makes the matrix metric.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (d(i, k) + d(k, j) < d(i, j)) d.set(i, j, d(i, k) + d(k, j));
      }
    }
  }
  std::vector<double> probs(n);
  for (double& p : probs) p = rng.uniform(0.05, 0.95);
  return build_instance(d, probs);
}

void report(const std::string& name, double serial, double parallel, bool agree) {
  std::printf("%-28s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", name.c_str(),
              serial, parallel, serial / parallel, agree ? "match" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; both columns run serially\n");
#endif
  Rng rng(2026);

  {
    const Instance inst = random_metric_instance(10, rng);
    OracleResult par{Ordering(std::vector<int>{0}), 0.0, 0};
    OracleResult ser = par;
    const double tp = seconds([&] { par = brute_force(inst, ObjectiveKind::osd); });
    const double ts = seconds([&] { ser = brute_force_serial(inst, ObjectiveKind::osd); });
    report("brute_force osd n=10", ts, tp,
           par.best_ordering == ser.best_ordering && par.best_score == ser.best_score);
  }

  {
    const Instance inst = random_metric_instance(200, rng);
    std::vector<int> perm(inst.n);
    for (int i = 0; i < inst.n; ++i) perm[i] = i;
    const Ordering ord(perm);
    McEstimate par, ser;
    const std::uint64_t samples = 2000000;
    const double tp = seconds([&] { par = monte_carlo_osd(inst, ord, samples, 42); });
    const double ts = seconds([&] { ser = monte_carlo_osd_serial(inst, ord, samples, 42); });
    report("monte_carlo 2e6 n=200", ts, tp, par.mean == ser.mean && par.stderr_ == ser.stderr_);
  }

  {
    const Instance inst = random_metric_instance(150, rng);
    BkeConfig cfg;
    cfg.kappa = 4;
    Ordering par(std::vector<int>{0}), ser(std::vector<int>{0});
    const double tp = seconds([&] { par = best_k_items(inst, cfg); });
#ifdef _OPENMP
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double ts = seconds([&] { ser = best_k_items(inst, cfg); });
    omp_set_num_threads(saved);
#else
    const double ts = seconds([&] { ser = best_k_items(inst, cfg); });
#endif
    report("best_k_items k=4 n=150", ts, tp, par == ser);
  }

  {
    // Closed form vs definitional expansion of the same objective.
    const Instance inst = random_metric_instance(300, rng);
    std::vector<int> perm(inst.n);
    for (int i = 0; i < inst.n; ++i) perm[i] = i;
    const Ordering ord(perm);
    double fast = 0.0, slow = 0.0;
    const double tf = seconds([&] {
      for (int r = 0; r < 50; ++r) fast = osd(inst, ord);
    });
    const double td = seconds([&] { slow = osd_definitional(inst, ord); });
    std::printf("%-28s closed-form 50x %6.3fs   definitional 1x %6.3fs   |diff| = %.2e\n",
                "osd n=300", tf, td, std::abs(fast - slow));
  }
  return 0;
}
