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

#include "pssched/neighbour_search.h"

namespace pssched {

std::optional<OrderProfile> apply_move(const OrderProfile& profile,
                                       NeighbourMove move) {
  const int n = profile.size();
  const int i = move.user;
  if (i < 0 || i >= n - 1) return std::nullopt;  // k_n is pinned
  std::vector<int> k = profile.k;
  k[i] += move.direction == NeighbourMove::Direction::kIncrement ? 1 : -1;
  if (k[i] < i || k[i] > n - 1) return std::nullopt;
  if (i > 0 && k[i] < k[i - 1]) return std::nullopt;
  if (k[i] > k[i + 1]) return std::nullopt;
  return OrderProfile::from_k(std::move(k));
}

ActiveSets active_index_sets(const QPSolution& solution,
                             const OrderProfile& /*profile*/) {
  return {solution.active_upper, solution.active_lower};
}

std::vector<std::pair<NeighbourMove, OrderProfile>> neighbours(
    const QPSolution& solution, const OrderProfile& profile) {
  std::vector<std::pair<NeighbourMove, OrderProfile>> out;
  const auto sets = active_index_sets(solution, profile);
  auto push = [&](int user, NeighbourMove::Direction direction) {
    const NeighbourMove move{user, direction};
    if (auto next = apply_move(profile, move)) {
      out.emplace_back(move, std::move(*next));
    }
  };
  for (int i : sets.upper) push(i, NeighbourMove::Direction::kIncrement);
  for (int i : sets.lower) push(i, NeighbourMove::Direction::kDecrement);
  return out;
}

NeighbourResult neighbour_search(const Instance& instance,
                                 const OrderProfile& start) {
  NeighbourResult result;
  result.solution = solve_qp(instance, start);
  result.qp_solves = 1;
  if (!result.solution.feasible) {
    throw ContractViolation(
        "start profile has an empty polytope; supply a feasible start");
  }
  result.profile = start;
  result.accepted_values.push_back(result.solution.value);
  result.visited.push_back(start);

  bool improved = true;
  while (improved) {
    improved = false;
    for (auto& [move, candidate] : neighbours(result.solution, result.profile)) {
      auto solution = solve_qp(instance, candidate);
      ++result.qp_solves;
      if (!solution.feasible ||
          solution.value >= result.solution.value - kImprovementThreshold) {
        continue;
      }
      result.solution = std::move(solution);
      result.profile = std::move(candidate);
      result.accepted_values.push_back(result.solution.value);
      result.visited.push_back(result.profile);
      improved = true;
      break;
    }
  }
  result.a_star = result.solution.a_star;
  result.value = result.solution.value;
  return result;
}

}  // namespace pssched
