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

// Local search over adjacent polytopes: a profile whose optimum has an
// active interval constraint is compared with the profile that moves the
// corresponding departure across that arrival.

#ifndef PSSCHED_NEIGHBOUR_SEARCH_H_
#define PSSCHED_NEIGHBOUR_SEARCH_H_

#include <optional>
#include <vector>

#include "pssched/model.h"
#include "pssched/polytope.h"

namespace pssched {

struct NeighbourMove {
  enum class Direction { kIncrement, kDecrement };
  int user;
  Direction direction;
};

// Profile with k_user shifted by one, or nullopt if that leaves the set of
// valid profiles.
std::optional<OrderProfile> apply_move(const OrderProfile& profile,
                                       NeighbourMove move);

struct ActiveSets {
  std::vector<int> upper;  // d_i sits on a_{k_i + 1}
  std::vector<int> lower;  // d_i sits on a_{k_i}
};
ActiveSets active_index_sets(const QPSolution& solution,
                             const OrderProfile& profile);

// Candidate moves in scan order: upper-active users ascending (increment),
// then lower-active users ascending (decrement). Invalid moves are dropped.
std::vector<std::pair<NeighbourMove, OrderProfile>> neighbours(
    const QPSolution& solution, const OrderProfile& profile);

// Required drop in value for a neighbour to be accepted.
inline constexpr double kImprovementThreshold = 1e-10;

struct NeighbourResult {
  std::vector<double> a_star;
  double value = 0;
  OrderProfile profile;
  QPSolution solution;
  int qp_solves = 0;
  // Values of the accepted profiles, starting with the initial one.
  std::vector<double> accepted_values;
  std::vector<OrderProfile> visited;
};

// First-improvement descent starting from `start`. Throws ContractViolation
// when the start profile's polytope is empty.
NeighbourResult neighbour_search(const Instance& instance,
                                 const OrderProfile& start);

}  // namespace pssched

#endif  // PSSCHED_NEIGHBOUR_SEARCH_H_
