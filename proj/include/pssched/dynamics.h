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

// Exact arrival/departure dynamics under linear slowdown.

#ifndef PSSCHED_DYNAMICS_H_
#define PSSCHED_DYNAMICS_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pssched/model.h"

namespace pssched {

struct DynamicsResult {
  // Departures for forward_dynamics, arrivals for inverse_dynamics.
  std::vector<double> times;
  OrderProfile profile;
  // Number of closed-form candidate evaluations performed.
  int evaluations = 0;
};

// Departures induced by sorted arrivals. Throws ContractViolation with
// "arrivals not sorted" otherwise.
DynamicsResult forward_dynamics(const Instance& instance,
                                std::span<const double> arrivals);

// Arrivals that produce the given sorted departures.
DynamicsResult inverse_dynamics(const Instance& instance,
                                std::span<const double> departures);

// Coefficient matrices of the linear system D d - A a = 1 that holds on the
// polytope of `profile`.
struct BalanceMatrices {
  Eigen::MatrixXd arrival;    // A
  Eigen::MatrixXd departure;  // D
};
BalanceMatrices build_matrices(const Instance& instance,
                               const OrderProfile& profile);

// Row-wise max |D d - A a - 1|.
double balance_residual(const Instance& instance, const OrderProfile& profile,
                        std::span<const double> arrivals,
                        std::span<const double> departures);

// Independent event-driven simulation: tracks each present user's remaining
// work and advances between arrivals and work exhaustions.
std::vector<double> simulate_oracle(const Instance& instance,
                                    std::span<const double> arrivals);

// Total cost of an arrival vector in any order. Users keep their own ideal
// departure; the order of arrivals is resolved by a stable sort.
double cost_of_arrivals(const Instance& instance,
                        std::span<const double> arrivals);

}  // namespace pssched

#endif  // PSSCHED_DYNAMICS_H_
