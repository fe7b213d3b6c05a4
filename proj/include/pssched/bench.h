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

// Deterministic instance families and the experiment harness.

#ifndef PSSCHED_BENCH_H_
#define PSSCHED_BENCH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pssched/coordinate_search.h"
#include "pssched/heuristic.h"
#include "pssched/model.h"

namespace pssched {

// Inverse of the standard normal distribution function, p in (0, 1).
double normal_quantile(double p);

enum class QuantileRule {
  kUniform,   // p_i = i / (n + 1)
  kMidpoint,  // p_i = (i - 1/2) / n
};

struct ExperimentSpec {
  std::vector<int> sizes;
  std::vector<double> gammas;
  double beta = 1.0;
  // alpha = alpha_scale / n.
  double alpha_scale = 0.8;
  // Ideal departures are normal quantiles with this location and standard
  // deviation; the deviation is multiplied by n when sigma_per_user is set.
  double location = 0.0;
  double sigma = 0.5;
  bool sigma_per_user = false;
  QuantileRule rule = QuantileRule::kUniform;
  int starts = kDefaultStarts;
  double epsilon = kDefaultEpsilon;
  // Also run the exhaustive search for n up to exhaustive_limit.
  bool exhaustive = false;
  int exhaustive_limit = 12;
  int threads = 0;

  // Deviation 0.04 n, a single start.
  static ExperimentSpec scaling_family();
  // Deviation 1/2, three starts.
  static ExperimentSpec diagram_family();
};

Instance generate_instance(const ExperimentSpec& spec, int n, double gamma);

struct ExperimentRow {
  int n = 0;
  double gamma = 0;
  double value = 0;
  int cpi_cycles = 0;
  std::int64_t breakpoints = 0;
  int neighbour_qps = 0;
  double seconds = 0;
  std::optional<std::uint64_t> profiles;
  std::optional<double> exhaustive_value;
  std::optional<double> exhaustive_seconds;
  // Schedule of the heuristic, by user.
  std::vector<double> arrivals;
  std::vector<double> departures;
  std::vector<double> d_star;
  double beta = 1;

  // Heuristic within 1e-6 relative of the exhaustive optimum.
  std::optional<bool> matches_exhaustive() const;
};

// Runs every (n, gamma) cell in order. `on_row` is called after each cell.
std::vector<ExperimentRow> run_experiment(
    const ExperimentSpec& spec,
    const std::function<void(const ExperimentRow&)>& on_row = {});

}  // namespace pssched

#endif  // PSSCHED_BENCH_H_
