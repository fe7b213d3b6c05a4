// Copyright 2026 The pssched Authors
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

// Shared generators and independent reference computations for the tests.

#ifndef PSSCHED_TESTS_SUPPORT_H_
#define PSSCHED_TESTS_SUPPORT_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "pssched/model.h"

namespace pssched::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random valid instance with 1 <= n <= max_n. Slowdown ranges up to 95% of
// the admissible maximum.
inline Instance random_instance(Rng& rng, int max_n, double max_gamma = 3.0) {
  const int n = uniform_int(rng, 1, max_n);
  const double beta = uniform(rng, 0.5, 2.0);
  const double alpha =
      n > 1 ? uniform(rng, 0.0, 0.95 * beta / (n - 1)) : uniform(rng, 0.0, 1.0);
  const double gamma = uniform(rng, 0.0, max_gamma);
  std::vector<double> d_star(n);
  const double span = uniform(rng, 0.1, 2.0) * n / beta;
  for (auto& v : d_star) v = uniform(rng, 0.0, span);
  std::sort(d_star.begin(), d_star.end());
  return Instance(alpha, beta, gamma, std::move(d_star));
}

// Sorted arrivals; `spread` scales the window relative to n / beta so that
// small values force heavy overlap.
inline std::vector<double> random_arrivals(Rng& rng, const Instance& instance,
                                           double spread = 1.0) {
  const int n = instance.n();
  std::vector<double> a(n);
  const double width = spread * n / instance.beta();
  const double start = instance.d_star(0) - width;
  for (auto& v : a) v = start + uniform(rng, 0.0, width);
  std::sort(a.begin(), a.end());
  // Occasionally create simultaneous arrivals.
  if (n > 1 && uniform(rng, 0, 1) < 0.2) {
    const int i = uniform_int(rng, 0, n - 2);
    a[i + 1] = a[i];
  }
  return a;
}

// Work received by `user` over [a_i, d_i], integrating the rate of the
// number of users present between consecutive event times.
inline double received_work(const Instance& instance,
                            std::span<const double> arrivals,
                            std::span<const double> departures, int user) {
  std::vector<double> times;
  for (double t : arrivals) times.push_back(t);
  for (double t : departures) times.push_back(t);
  std::sort(times.begin(), times.end());
  double work = 0;
  for (std::size_t e = 0; e + 1 < times.size(); ++e) {
    const double lo = std::max(times[e], arrivals[user]);
    const double hi = std::min(times[e + 1], departures[user]);
    if (hi <= lo) continue;
    const double mid = 0.5 * (lo + hi);
    int present = 0;
    for (std::size_t j = 0; j < arrivals.size(); ++j) {
      if (arrivals[j] <= mid && mid < departures[j]) ++present;
    }
    work += (hi - lo) * instance.rate(present);
  }
  return work;
}

inline double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  double m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

}  // namespace pssched::testing

#endif  // PSSCHED_TESTS_SUPPORT_H_
