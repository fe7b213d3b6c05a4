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

// Closed-form schedules for the two extreme sojourn weights, the family of
// starting points between them, and the combined global/local heuristic.

#ifndef PSSCHED_HEURISTIC_H_
#define PSSCHED_HEURISTIC_H_

#include <cstdint>
#include <vector>

#include "pssched/coordinate_search.h"
#include "pssched/model.h"

namespace pssched {

// Every user departs exactly on time: optimal when gamma = 0.
std::vector<double> solve_gamma_zero(const Instance& instance);

// Back-to-back service without overlap, as close to the due dates as the
// chain a_{i+1} - a_i >= 1/beta allows: the limit of large gamma.
std::vector<double> solve_gamma_inf(const Instance& instance);

// Point m of M is a0 * m/(M-1) + a_inf * (1 - m/(M-1)); M = 1 gives {a0}.
std::vector<std::vector<double>> initial_points(const Instance& instance,
                                               int count);

inline constexpr int kDefaultStarts = 3;

struct StartDiagnostics {
  std::vector<double> start;
  double cpi_value = 0;
  int cpi_cycles = 0;
  std::int64_t breakpoints = 0;
  std::vector<double> cycle_costs;
  // Neighbour search from the profile of the CPI point.
  bool neighbour_ran = false;
  double neighbour_value = 0;
  int neighbour_qps = 0;
  std::vector<double> neighbour_trajectory;
  // Best point of this start and its cost.
  std::vector<double> a_star;
  double value = 0;
};

struct CombinedResult {
  std::vector<double> a_star;
  double value = 0;
  int best_start = 0;
  std::vector<StartDiagnostics> starts;
};

// Runs CPI from every initial point, then a neighbour search from the
// profile CPI ends in, and keeps the best. Starts run on up to `threads`
// threads (<= 0: hardware concurrency); the result does not depend on it.
CombinedResult combined_search(const Instance& instance,
                               int starts = kDefaultStarts,
                               double epsilon = kDefaultEpsilon,
                               int threads = 0);

}  // namespace pssched

#endif  // PSSCHED_HEURISTIC_H_
