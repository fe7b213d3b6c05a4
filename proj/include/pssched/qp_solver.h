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

// Strictly convex quadratic programs with linear inequality constraints,
// solved by a dual active-set method (Goldfarb and Idnani).
//
//   minimize 1/2 x'Hx + f'x   subject to   C x >= l

#ifndef PSSCHED_QP_SOLVER_H_
#define PSSCHED_QP_SOLVER_H_

#include <vector>

#include <Eigen/Dense>

namespace pssched {

struct QuadraticProgram {
  Eigen::MatrixXd hessian;     // H, n x n, symmetric positive definite
  Eigen::VectorXd linear;      // f
  Eigen::MatrixXd constraint;  // C, m x n
  Eigen::VectorXd lower;       // l
};

enum class QpStatus { kOptimal, kInfeasible, kIterationLimit };

struct QpResult {
  QpStatus status = QpStatus::kInfeasible;
  Eigen::VectorXd x;
  // 1/2 x'Hx + f'x at x.
  double objective = 0;
  // Constraints in the final active set with their multipliers.
  std::vector<int> active;
  std::vector<double> multipliers;
  int iterations = 0;
};

// A constraint whose final violation exceeds this is reported infeasible.
inline constexpr double kInfeasibilityThreshold = 1e-7;

QpResult solve_dual_active_set(const QuadraticProgram& program);

}  // namespace pssched

#endif  // PSSCHED_QP_SOLVER_H_
