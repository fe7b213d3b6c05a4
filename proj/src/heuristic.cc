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

#include "pssched/heuristic.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "pssched/dynamics.h"
#include "pssched/neighbour_search.h"
#include "pssched/qp_solver.h"

namespace pssched {

std::vector<double> solve_gamma_zero(const Instance& instance) {
  return inverse_dynamics(instance, instance.d_star()).times;
}

std::vector<double> solve_gamma_inf(const Instance& instance) {
  const int n = instance.n();
  const double service = 1.0 / instance.beta();
  QuadraticProgram qp;
  qp.hessian = 2.0 * Eigen::MatrixXd::Identity(n, n);
  qp.linear.resize(n);
  for (int i = 0; i < n; ++i) qp.linear[i] = 2.0 * (service - instance.d_star(i));
  qp.constraint = Eigen::MatrixXd::Zero(std::max(n - 1, 0), n);
  qp.lower = Eigen::VectorXd::Constant(std::max(n - 1, 0), service);
  for (int i = 0; i + 1 < n; ++i) {
    qp.constraint(i, i + 1) = 1.0;
    qp.constraint(i, i) = -1.0;
  }
  const auto result = solve_dual_active_set(qp);
  if (result.status != QpStatus::kOptimal) {
    throw std::logic_error("no-overlap program did not converge");
  }
  return {result.x.data(), result.x.data() + n};
}

std::vector<std::vector<double>> initial_points(const Instance& instance,
                                               int count) {
  if (count < 1) throw ContractViolation("need at least one initial point");
  const auto a0 = solve_gamma_zero(instance);
  if (count == 1) return {a0};
  const auto a_inf = solve_gamma_inf(instance);
  std::vector<std::vector<double>> points;
  for (int m = 0; m < count; ++m) {
    const double w = static_cast<double>(m) / (count - 1);
    std::vector<double> point(instance.n());
    for (int i = 0; i < instance.n(); ++i) {
      point[i] = a0[i] * w + a_inf[i] * (1.0 - w);
    }
    points.push_back(order(point));
  }
  return points;
}

namespace {

StartDiagnostics run_start(const Instance& instance, std::vector<double> start,
                           double epsilon) {
  StartDiagnostics diag;
  auto global = cpi(instance, start, epsilon);
  diag.start = std::move(start);
  diag.cpi_value = global.value;
  diag.cpi_cycles = global.cycles;
  diag.breakpoints = global.breakpoints;
  diag.cycle_costs = global.cycle_costs;
  diag.value = global.value;

  const auto profile = forward_dynamics(instance, global.a_star).profile;
  diag.a_star = std::move(global.a_star);
  try {
    auto local = neighbour_search(instance, profile);
    diag.neighbour_ran = true;
    diag.neighbour_value = local.value;
    diag.neighbour_qps = local.qp_solves;
    diag.neighbour_trajectory = std::move(local.accepted_values);
    if (local.value < diag.value) {
      diag.value = local.value;
      diag.a_star = std::move(local.a_star);
    }
  } catch (const ContractViolation&) {
    // CPI ended outside every polytope of the search box; keep its point.
  }
  return diag;
}

}  // namespace

CombinedResult combined_search(const Instance& instance, int starts,
                               double epsilon, int threads) {
  const auto points = initial_points(instance, starts);
  const int count = static_cast<int>(points.size());
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);

  std::vector<StartDiagnostics> diags(count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int m = next++; m < count; m = next++) {
      diags[m] = run_start(instance, points[m], epsilon);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  CombinedResult result;
  result.best_start = 0;
  for (int m = 1; m < count; ++m) {
    if (diags[m].value < diags[result.best_start].value) result.best_start = m;
  }
  result.value = diags[result.best_start].value;
  result.a_star = diags[result.best_start].a_star;
  result.starts = std::move(diags);
  return result;
}

}  // namespace pssched
